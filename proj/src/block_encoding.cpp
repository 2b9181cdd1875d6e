#include "fermiwalk/block_encoding.hpp"

#include <cmath>
#include <stdexcept>

namespace fermiwalk {

namespace {

void add_id_controls(Gate& g, const RegisterLayout& lay, std::size_t j) {
    for (int b = 0; b < lay.id_bits; ++b)
        g.control(lay.id0() + b, (j >> b) & 1ULL);
}

std::uint64_t orbital_mask(const std::vector<int>& orbitals) {
    std::uint64_t m = 0;
    for (int p : orbitals) m |= 1ULL << p;
    return m;
}

}  // namespace

GateCircuit build_oracle_OF(const SqHamiltonian& h, bool conjugate,
                            const RegisterLayout& layout) {
    GateCircuit c(layout.width());
    // Step 1: duplicate the Fock state, qubit-wise CNOT s -> cp.
    for (int p = 0; p < layout.n_sp; ++p)
        c.append(Gate::x(layout.cp0() + p).control(layout.s0() + p, true));

    for (std::size_t j = 0; j < h.d(); ++j) {
        const Monomial& m = h.monomials[j];
        for (int p : m.annihilations)
            if (p >= h.n_sp) throw std::invalid_argument("build_oracle_OF: orbital >= n_sp");
        for (int p : m.creations)
            if (p >= h.n_sp) throw std::invalid_argument("build_oracle_OF: orbital >= n_sp");
        // The adjoint's j-th monomial has the P/Q roles swapped.
        const auto& annih = conjugate ? m.creations : m.annihilations;
        const auto& creat = conjugate ? m.annihilations : m.creations;

        // Step 2: all annihilation orbitals occupied -> flip e_p, then clear them.
        Gate check_p = Gate::x(layout.ep());
        add_id_controls(check_p, layout, j);
        for (int p : annih) check_p.control(layout.cp0() + p, true);
        c.append(check_p);
        for (int p : annih) {
            Gate flip = Gate::x(layout.cp0() + p);
            add_id_controls(flip, layout, j);
            c.append(flip);
        }

        // Step 3: all creation orbitals vacant -> flip e_q, then set them.
        Gate check_q = Gate::x(layout.eq());
        add_id_controls(check_q, layout, j);
        for (int p : creat) check_q.control(layout.cp0() + p, false);
        c.append(check_q);
        for (int p : creat) {
            Gate flip = Gate::x(layout.cp0() + p);
            add_id_controls(flip, layout, j);
            c.append(flip);
        }
    }
    // Padded indices j >= D: identity on cp, both error flags stay |1>.
    return c;
}

std::vector<int> occupancy_windows(const std::vector<int>& orbitals) {
    std::vector<int> win;
    const std::size_t n = orbitals.size();
    if (n == 0) return win;
    std::size_t start = 0;
    if (n % 2 == 1) {
        for (int k = 0; k < orbitals[0]; ++k) win.push_back(k);
        start = 1;
    }
    for (std::size_t i = start; i + 1 < n; i += 2)
        for (int k = orbitals[i] + 1; k < orbitals[i + 1]; ++k) win.push_back(k);
    return win;
}

int window_sign(const Monomial& m, const FockState& f) {
    const std::uint64_t result =
        f.bits ^ orbital_mask(m.annihilations) ^ orbital_mask(m.creations);
    int parity = 0;
    for (int k : occupancy_windows(m.annihilations)) parity ^= (f.bits >> k) & 1ULL;
    for (int k : occupancy_windows(m.creations)) parity ^= (result >> k) & 1ULL;
    return parity ? -1 : 1;
}

GateCircuit build_oracle_OH(const SqHamiltonian& h, const RegisterLayout& layout) {
    GateCircuit c(layout.width());
    for (std::size_t j = 0; j < h.d(); ++j) {
        const Monomial& m = h.monomials[j];
        if (m.rho > 1.0 + 1e-12)
            throw std::invalid_argument("build_oracle_OH: rho > 1 violates the Lambda bound");

        // Step 1: sign via occupancy-window parity. P windows read the input
        // state in s, Q windows read the flipped state in cp.
        std::vector<Gate> parity_cnots;
        for (int k : occupancy_windows(m.annihilations)) {
            Gate g = Gate::x(layout.zeta());
            add_id_controls(g, layout, j);
            g.control(layout.s0() + k, true);
            parity_cnots.push_back(g);
        }
        for (int k : occupancy_windows(m.creations)) {
            Gate g = Gate::x(layout.zeta());
            add_id_controls(g, layout, j);
            g.control(layout.cp0() + k, true);
            parity_cnots.push_back(g);
        }
        for (const auto& g : parity_cnots) c.append(g);
        Gate z = Gate::z(layout.zeta());
        add_id_controls(z, layout, j);
        c.append(z);
        for (auto it = parity_cnots.rbegin(); it != parity_cnots.rend(); ++it)
            c.append(*it);

        // Step 2: encode the scaled matrix element on me.
        Gate px = Gate::phase_on_zero(layout.me(), m.theta);
        add_id_controls(px, layout, j);
        c.append(px);
        // Takes |0> to rho|0> + sqrt(1-rho^2)|1>.
        const double alpha = 2.0 * std::acos(std::min(m.rho, 1.0));
        Gate ry = Gate::rot_y(layout.me(), alpha);
        add_id_controls(ry, layout, j);
        c.append(ry);
    }
    return c;
}

GateCircuit build_isometry(const SqHamiltonian& h, WalkDirection dir,
                           const RegisterLayout& layout) {
    GateCircuit c(layout.width());
    c.append(Gate::x(layout.ep()));
    c.append(Gate::x(layout.eq()));
    for (int b = 0; b < layout.id_bits; ++b) c.append(Gate::h(layout.id0() + b));
    c.append(build_oracle_OF(h, dir == WalkDirection::Backward, layout));
    if (dir == WalkDirection::Forward) c.append(build_oracle_OH(h, layout));
    return c;
}

GateCircuit build_swap_s(const RegisterLayout& layout) {
    GateCircuit c(layout.width());
    for (int p = 0; p < layout.n_sp; ++p)
        c.append(Gate::swap(layout.s0() + p, layout.cp0() + p));
    c.append(Gate::swap(layout.ep(), layout.bp()));
    c.append(Gate::swap(layout.eq(), layout.bq()));
    return c;
}

SparseState WalkOperator::prepare(const FockState& f) const {
    if (f.n_sp != layout.n_sp)
        throw std::invalid_argument("WalkOperator::prepare: n_sp mismatch");
    return SparseState::basis_state(layout, layout.key_for(f));
}

SparseState WalkOperator::apply(const SparseState& s, bool dagger,
                                RunStats* stats) const {
    // U_H = T_b^dag S T_f, U_H^dag = T_f^dag S T_b.
    SparseState r = run_circuit(s, dagger ? tb : tf, stats);
    r = run_circuit(r, swaps, stats);
    return run_circuit(r, dagger ? tf_inv : tb_inv, stats);
}

WalkOperator make_walk_operator(const SqHamiltonian& h) {
    WalkOperator w;
    w.h = h;
    w.layout = RegisterLayout::for_hamiltonian(h);
    w.tf = build_isometry(h, WalkDirection::Forward, w.layout);
    w.tb = build_isometry(h, WalkDirection::Backward, w.layout);
    w.swaps = build_swap_s(w.layout);
    w.tf_inv = w.tf.inverse();
    w.tb_inv = w.tb.inverse();
    return w;
}

SparseState apply_reflection_pi(SparseState s) {
    const std::uint64_t mask = s.layout.ancilla_mask();
    for (auto& [k, a] : s.amps)
        if (k & mask) a = -a;
    return s;
}

Eigen::MatrixXcd block_encode_matrix(const WalkOperator& walk,
                                     const std::vector<FockState>& basis,
                                     RunStats* stats) {
    const std::size_t n = basis.size();
    Eigen::MatrixXcd m(n, n);
    for (std::size_t f = 0; f < n; ++f) {
        SparseState out = walk.apply(walk.prepare(basis[f]), false, stats);
        for (std::size_t g = 0; g < n; ++g)
            m(g, f) = out.amplitude(walk.layout.key_for(basis[g]));
    }
    return m;
}

CircuitCostRow measure_costs(const SqHamiltonian& h) {
    CircuitCostRow row;
    row.n_sp = h.n_sp;
    row.d = h.d();
    row.d_pad = h.d_pad;
    const RegisterLayout lay = RegisterLayout::for_hamiltonian(h);
    row.of_counts = build_oracle_OF(h, false, lay).counts;
    row.oh_counts = build_oracle_OH(h, lay).counts;
    GateCircuit uh(lay.width());
    uh.append(build_isometry(h, WalkDirection::Forward, lay));
    uh.append(build_swap_s(lay));
    uh.append(build_isometry(h, WalkDirection::Backward, lay).inverse());
    row.uh_counts = uh.counts;
    return row;
}

namespace {

double slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

ScalingFit fit_scaling(const std::vector<CircuitCostRow>& rows) {
    if (rows.size() < 2)
        throw std::invalid_argument("fit_scaling: need at least two family members");
    std::vector<double> log_d, log_dn, log_n, of, oh, uh;
    for (const auto& r : rows) {
        log_d.push_back(std::log(static_cast<double>(r.d)));
        log_dn.push_back(std::log(static_cast<double>(r.d) * r.n_sp));
        log_n.push_back(std::log(static_cast<double>(r.n_sp)));
        of.push_back(std::log(static_cast<double>(r.of_counts.total)));
        oh.push_back(std::log(static_cast<double>(r.oh_counts.total)));
        uh.push_back(std::log(static_cast<double>(r.uh_counts.total)));
    }
    return ScalingFit{slope(log_d, of), slope(log_dn, oh), slope(log_n, uh)};
}

}  // namespace fermiwalk
