#include "fermiwalk/sparse_state.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fermiwalk {

RegisterLayout RegisterLayout::for_hamiltonian(const SqHamiltonian& h) {
    RegisterLayout lay;
    lay.id_bits = h.id_qubits();
    lay.n_sp = h.n_sp;
    if (lay.width() > 62)
        throw std::invalid_argument("RegisterLayout: register space exceeds 62 qubits");
    return lay;
}

SparseState SparseState::basis_state(const RegisterLayout& lay, std::uint64_t key) {
    SparseState s;
    s.layout = lay;
    s.amps.emplace(key, Complex(1.0, 0.0));
    return s;
}

double SparseState::norm() const {
    long double n = 0.0L;
    for (const auto& [k, a] : amps) n += std::norm(a);
    return static_cast<double>(std::sqrt(n));
}

void SparseState::prune(double eps) {
    for (auto it = amps.begin(); it != amps.end();)
        it = std::abs(it->second) < eps ? amps.erase(it) : std::next(it);
}

Complex SparseState::amplitude(std::uint64_t key) const {
    auto it = amps.find(key);
    return it == amps.end() ? Complex(0.0, 0.0) : it->second;
}

std::string SparseState::dump() const {
    std::vector<std::pair<std::uint64_t, Complex>> entries;
    for (const auto& [k, a] : amps)
        if (std::abs(a) >= 1e-12) entries.emplace_back(k, a);
    std::sort(entries.begin(), entries.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    std::ostringstream os;
    os.precision(17);
    for (const auto& [k, a] : entries) {
        std::string bits(layout.width(), '0');
        for (int q = 0; q < layout.width(); ++q)
            if ((k >> q) & 1ULL) bits[q] = '1';
        os << bits << ' ' << a.real() << ' ' << a.imag() << '\n';
    }
    return os.str();
}

Complex inner_product(const SparseState& a, const SparseState& b) {
    if (!(a.layout == b.layout))
        throw std::invalid_argument("inner_product: register layout mismatch");
    const SparseState& small = a.support() <= b.support() ? a : b;
    const SparseState& large = a.support() <= b.support() ? b : a;
    const bool swapped = &small != &a;
    std::complex<long double> acc{0.0L, 0.0L};
    for (const auto& [k, amp] : small.amps) {
        auto it = large.amps.find(k);
        if (it == large.amps.end()) continue;
        const Complex lhs = swapped ? it->second : amp;
        const Complex rhs = swapped ? amp : it->second;
        acc += std::complex<long double>(std::conj(lhs)) *
               std::complex<long double>(rhs);
    }
    return Complex(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
}

// ------------------------------ gates ---------------------------------------

Gate Gate::x(int t) { return Gate{GateKind::X, t, -1, 0.0, 0, 0}; }
Gate Gate::z(int t) { return Gate{GateKind::Z, t, -1, 0.0, 0, 0}; }
Gate Gate::phase_on_zero(int t, double theta) {
    return Gate{GateKind::PhaseOnZero, t, -1, theta, 0, 0};
}
Gate Gate::rot_y(int t, double theta) { return Gate{GateKind::RotY, t, -1, theta, 0, 0}; }
Gate Gate::h(int t) { return Gate{GateKind::H, t, -1, 0.0, 0, 0}; }
Gate Gate::swap(int a, int b) { return Gate{GateKind::Swap, a, b, 0.0, 0, 0}; }

Gate& Gate::control(int qubit, bool closed) {
    const std::uint64_t bit = 1ULL << qubit;
    if (ctrl_mask & bit) throw std::invalid_argument("Gate: duplicate control qubit");
    ctrl_mask |= bit;
    if (closed) ctrl_val |= bit;
    return *this;
}

Gate Gate::inverse() const {
    Gate g = *this;
    if (kind == GateKind::PhaseOnZero || kind == GateKind::RotY) g.angle = -g.angle;
    return g;
}

int Gate::control_count() const { return std::popcount(ctrl_mask); }

bool Gate::is_local() const {
    if (kind == GateKind::H) return false;
    if (kind == GateKind::RotY) return angle == 0.0;
    return true;
}

std::string Gate::name() const {
    switch (kind) {
        case GateKind::X: return "X";
        case GateKind::Z: return "Z";
        case GateKind::PhaseOnZero: return "PX";
        case GateKind::RotY: return "RY";
        case GateKind::H: return "H";
        case GateKind::Swap: return "SWAP";
    }
    return "?";
}

void GateCounts::add(const Gate& g) {
    per_kind[static_cast<int>(g.kind)] += 1;
    total += 1;
    const int c = g.control_count();
    controls_total += c;
    if (c >= 2) {
        multi_controlled += 1;
        toffoli_equiv += 2 * c - 3;
    }
}

void GateCircuit::append(const Gate& g) {
    auto check = [&](int q) {
        if (q < 0 || q >= width)
            throw std::invalid_argument("GateCircuit: qubit index outside layout width");
    };
    check(g.target);
    if (g.kind == GateKind::Swap) check(g.target2);
    if (g.ctrl_mask >> width)
        throw std::invalid_argument("GateCircuit: control outside layout width");
    if (g.ctrl_mask & (1ULL << g.target))
        throw std::invalid_argument("GateCircuit: target is also a control");
    gates.push_back(g);
    counts.add(g);
}

void GateCircuit::append(const GateCircuit& other) {
    for (const auto& g : other.gates) append(g);
}

GateCircuit GateCircuit::inverse() const {
    GateCircuit inv(width);
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) inv.append(it->inverse());
    return inv;
}

std::string GateCircuit::export_text() const {
    std::ostringstream os;
    os.precision(17);
    for (const auto& g : gates) {
        os << g.name() << ' ' << g.target;
        if (g.kind == GateKind::Swap) os << ',' << g.target2;
        os << ' ';
        bool first = true;
        for (int q = 0; q < width; ++q) {
            if (!(g.ctrl_mask >> q & 1ULL)) continue;
            if (!first) os << ',';
            os << q << ((g.ctrl_val >> q & 1ULL) ? '+' : '-');
            first = false;
        }
        if (first) os << '-';
        if (g.kind == GateKind::PhaseOnZero || g.kind == GateKind::RotY)
            os << ' ' << g.angle;
        os << '\n';
    }
    return os.str();
}

// ----------------------------- execution ------------------------------------

namespace {

inline bool controls_match(const Gate& g, std::uint64_t key) {
    return (key & g.ctrl_mask) == g.ctrl_val;
}

// Rounding dust below the prune threshold is kept until the end of the
// circuit so it can still cancel; exact zeros are dropped eagerly.
inline void drop_exact_zeros(AmpMap& amps) {
    for (auto it = amps.begin(); it != amps.end();)
        it = (it->second == Complex(0.0, 0.0)) ? amps.erase(it) : std::next(it);
}

// One key through a run of local gates.
inline void apply_local_run(const Gate* begin, const Gate* end, std::uint64_t& key,
                            Complex& amp) {
    for (const Gate* g = begin; g != end; ++g) {
        if (!controls_match(*g, key)) continue;
        switch (g->kind) {
            case GateKind::X:
                key ^= 1ULL << g->target;
                break;
            case GateKind::Z:
                if ((key >> g->target) & 1ULL) amp = -amp;
                break;
            case GateKind::PhaseOnZero:
                if (!((key >> g->target) & 1ULL))
                    amp *= Complex(std::cos(g->angle), std::sin(g->angle));
                break;
            case GateKind::Swap: {
                const std::uint64_t b1 = (key >> g->target) & 1ULL;
                const std::uint64_t b2 = (key >> g->target2) & 1ULL;
                if (b1 != b2) key ^= (1ULL << g->target) | (1ULL << g->target2);
                break;
            }
            case GateKind::RotY:  // angle == 0 here
                break;
            case GateKind::H:
                break;  // unreachable
        }
    }
}

}  // namespace

SparseState run_circuit(const SparseState& in, const GateCircuit& c, RunStats* stats) {
    if (c.width != in.layout.width())
        throw std::invalid_argument("run_circuit: circuit width does not match layout");
    SparseState out = in;
    auto track = [&](std::size_t support) {
        if (stats) stats->support_high_water = std::max(stats->support_high_water, support);
    };
    track(out.support());

    std::size_t i = 0;
    const auto& gs = c.gates;
    while (i < gs.size()) {
        if (gs[i].is_local()) {
            std::size_t j = i;
            while (j < gs.size() && gs[j].is_local()) ++j;
            const std::size_t before = out.support();
            AmpMap next;
            next.reserve(out.amps.size());
            for (const auto& [k0, a0] : out.amps) {
                std::uint64_t key = k0;
                Complex amp = a0;
                apply_local_run(&gs[i], &gs[i] + (j - i), key, amp);
                next[key] += amp;
            }
            out.amps = std::move(next);
            drop_exact_zeros(out.amps);
            if (stats && out.support() > before) stats->local_pass_grew_support = true;
            if (stats) stats->passes += 1;
            i = j;
        } else {
            const Gate& g = gs[i];
            std::vector<std::pair<std::uint64_t, Complex>> matched;
            for (const auto& [k, a] : out.amps)
                if (controls_match(g, k)) matched.emplace_back(k, a);
            for (const auto& [k, a] : matched) out.amps.erase(k);
            const std::uint64_t bit = 1ULL << g.target;
            if (g.kind == GateKind::H) {
                const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
                for (const auto& [k, a] : matched) {
                    const std::uint64_t k0 = k & ~bit, k1 = k | bit;
                    if (k & bit) {
                        out.amps[k0] += a * inv_sqrt2;
                        out.amps[k1] -= a * inv_sqrt2;
                    } else {
                        out.amps[k0] += a * inv_sqrt2;
                        out.amps[k1] += a * inv_sqrt2;
                    }
                }
            } else {  // RotY, angle != 0
                const double cos_half = std::cos(g.angle / 2.0);
                const double sin_half = std::sin(g.angle / 2.0);
                for (const auto& [k, a] : matched) {
                    const std::uint64_t k0 = k & ~bit, k1 = k | bit;
                    if (k & bit) {
                        out.amps[k0] -= a * sin_half;
                        out.amps[k1] += a * cos_half;
                    } else {
                        out.amps[k0] += a * cos_half;
                        out.amps[k1] += a * sin_half;
                    }
                }
            }
            drop_exact_zeros(out.amps);
            if (stats) stats->passes += 1;
            i += 1;
        }
        track(out.support());
    }
    out.prune();
    if (stats) stats->final_norm = out.norm();
    return out;
}

SparseState apply_gate(const SparseState& in, const Gate& g) {
    GateCircuit c(in.layout.width());
    c.append(g);
    return run_circuit(in, c);
}

}  // namespace fermiwalk
