#include "fermiwalk/fock.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

namespace fermiwalk {

FockState::FockState(std::uint64_t b, int n) : bits(b), n_sp(n) {
    if (n < 0 || n > 63) throw std::invalid_argument("FockState: n_sp out of range");
    if (n < 63 && (b >> n) != 0)
        throw std::invalid_argument("FockState: bits beyond n_sp");
}

FockState FockState::from_orbitals(const std::vector<int>& orbitals, int n_sp) {
    std::uint64_t b = 0;
    for (int p : orbitals) {
        if (p < 0 || p >= n_sp) throw std::invalid_argument("FockState: orbital out of range");
        if ((b >> p) & 1ULL) throw std::invalid_argument("FockState: duplicate orbital");
        b |= 1ULL << p;
    }
    return FockState(b, n_sp);
}

int FockState::particle_count() const { return std::popcount(bits); }

int FockState::twice_mj(const std::vector<int>& orbital_twice_m) const {
    if (static_cast<int>(orbital_twice_m.size()) < n_sp)
        throw std::invalid_argument("twice_mj: m-value table too short");
    int t = 0;
    for (int p = 0; p < n_sp; ++p)
        if (occupied(p)) t += orbital_twice_m[p];
    return t;
}

std::vector<int> FockState::orbitals() const {
    std::vector<int> occ;
    for (int p = 0; p < n_sp; ++p)
        if (occupied(p)) occ.push_back(p);
    return occ;
}

std::string FockState::to_string() const {
    std::string s(n_sp, '0');
    for (int p = 0; p < n_sp; ++p)
        if (occupied(p)) s[p] = '1';
    return s;
}

namespace {

void check_orbital_list(const std::vector<int>& v, int n_sp, const char* what) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] < 0 || v[i] >= n_sp)
            throw std::invalid_argument(std::string(what) + ": orbital out of range");
        if (i > 0 && v[i] <= v[i - 1])
            throw std::invalid_argument(std::string(what) + ": indices not strictly ascending");
    }
}

inline std::uint64_t below_mask(int p) { return (1ULL << p) - 1ULL; }

}  // namespace

std::optional<std::pair<int, FockState>> apply_monomial(const Monomial& m,
                                                        const FockState& f) {
    for (int p : m.annihilations)
        if (p >= f.n_sp) throw std::invalid_argument("apply_monomial: orbital >= n_sp");
    for (int p : m.creations)
        if (p >= f.n_sp) throw std::invalid_argument("apply_monomial: orbital >= n_sp");

    std::uint64_t bits = f.bits;
    int parity = 0;
    // b_P = a_w ... a_v a_u with u < v < ... < w acts smallest-index first.
    for (int p : m.annihilations) {
        if (!((bits >> p) & 1ULL)) return std::nullopt;
        parity ^= std::popcount(bits & below_mask(p)) & 1;
        bits &= ~(1ULL << p);
    }
    // b+_Q = a+_p ... a+_r with p < ... < r acts largest-index first.
    for (auto it = m.creations.rbegin(); it != m.creations.rend(); ++it) {
        if ((bits >> *it) & 1ULL) return std::nullopt;
        parity ^= std::popcount(bits & below_mask(*it)) & 1;
        bits |= 1ULL << *it;
    }
    return std::make_pair(parity ? -1 : 1, FockState(bits, f.n_sp));
}

std::optional<std::pair<int, FockState>> sign_brute_force(const Monomial& m,
                                                          const FockState& f) {
    // |f> as the ordered creation string a+_{i0} a+_{i1} ... |0>, i0 < i1 < ...
    // Moving an operator to its slot costs one transposition per creation
    // operator it passes.
    std::vector<int> occ = f.orbitals();
    int parity = 0;
    for (int p : m.annihilations) {
        auto it = std::find(occ.begin(), occ.end(), p);
        if (it == occ.end()) return std::nullopt;
        parity += static_cast<int>(it - occ.begin());
        occ.erase(it);
    }
    for (auto rit = m.creations.rbegin(); rit != m.creations.rend(); ++rit) {
        auto it = std::lower_bound(occ.begin(), occ.end(), *rit);
        if (it != occ.end() && *it == *rit) return std::nullopt;
        parity += static_cast<int>(it - occ.begin());
        occ.insert(it, *rit);
    }
    return std::make_pair(parity % 2 ? -1 : 1, FockState::from_orbitals(occ, f.n_sp));
}

int SqHamiltonian::id_qubits() const {
    int b = 0;
    while ((1ULL << b) < d_pad) ++b;
    return b;
}

SqHamiltonian hermitize(const std::vector<HamiltonianTerm>& upper_terms, int n_sp) {
    SqHamiltonian h;
    h.n_sp = n_sp;
    std::map<std::pair<std::vector<int>, std::vector<int>>, std::size_t> seen;

    for (const auto& t : upper_terms) {
        check_orbital_list(t.creations, n_sp, "hermitize(Q)");
        check_orbital_list(t.annihilations, n_sp, "hermitize(P)");
        auto key = std::make_pair(t.creations, t.annihilations);
        if (seen.count(key))
            throw std::invalid_argument("hermitize: duplicate (Q,P) key");
        if (seen.count(std::make_pair(t.annihilations, t.creations)))
            throw std::invalid_argument(
                "hermitize: both members of a conjugate pair supplied; pass the upper half only");
        seen.emplace(std::move(key), h.monomials.size());
        Monomial m;
        m.creations = t.creations;
        m.annihilations = t.annihilations;
        m.coeff = t.coeff;
        h.monomials.push_back(std::move(m));
    }

    const std::size_t n_upper = h.monomials.size();
    h.conjugate_of.resize(n_upper);
    for (std::size_t j = 0; j < n_upper; ++j) {
        if (h.monomials[j].diagonal()) {
            h.conjugate_of[j] = j;  // self-conjugate, appears once
        } else {
            Monomial c;
            c.creations = h.monomials[j].annihilations;
            c.annihilations = h.monomials[j].creations;
            c.coeff = std::conj(h.monomials[j].coeff);
            h.conjugate_of[j] = h.monomials.size();
            h.conjugate_of.push_back(j);
            h.monomials.push_back(std::move(c));
        }
    }

    h.lambda = 0.0;
    for (const auto& m : h.monomials) h.lambda = std::max(h.lambda, std::abs(m.coeff));
    h.d_pad = std::bit_ceil(std::max<std::size_t>(h.monomials.size(), 1));

    for (auto& m : h.monomials) {
        m.rho = h.lambda > 0.0 ? std::abs(m.coeff) / h.lambda : 0.0;
        m.theta = std::atan2(m.coeff.imag(), m.coeff.real());
        if (m.theta <= -M_PI) m.theta = M_PI;
    }
    return h;
}

std::vector<FockState> enumerate_particle_sector(int n_sp, int particle_number) {
    if (n_sp < 0 || n_sp > 24)
        throw std::invalid_argument("enumerate_particle_sector: n_sp out of supported range");
    std::vector<FockState> out;
    for (std::uint64_t b = 0; b < (1ULL << n_sp); ++b)
        if (std::popcount(b) == particle_number) out.emplace_back(b, n_sp);
    return out;
}

std::vector<FockState> enumerate_sector(int n_sp, const SymmetrySector& sector,
                                        const std::vector<int>& orbital_twice_m) {
    std::vector<FockState> out;
    for (auto& f : enumerate_particle_sector(n_sp, sector.particle_number))
        if (f.twice_mj(orbital_twice_m) == sector.twice_mj) out.push_back(f);
    return out;
}

Eigen::MatrixXcd build_fci_matrix(const SqHamiltonian& h,
                                  const std::vector<FockState>& basis) {
    std::map<std::uint64_t, int> index;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (!index.emplace(basis[i].bits, static_cast<int>(i)).second)
            throw std::invalid_argument("build_fci_matrix: duplicate basis state");
    }
    Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
    for (std::size_t f = 0; f < basis.size(); ++f) {
        for (const auto& m : h.monomials) {
            auto r = apply_monomial(m, basis[f]);
            if (!r) continue;
            auto it = index.find(r->second.bits);
            if (it == index.end()) continue;
            mat(it->second, f) += static_cast<double>(r->first) * m.coeff;
        }
    }
    return mat;
}

double diagonal_element(const SqHamiltonian& h, const FockState& f) {
    Complex e{0.0, 0.0};
    for (const auto& m : h.monomials) {
        auto r = apply_monomial(m, f);
        if (r && r->second == f) e += static_cast<double>(r->first) * m.coeff;
    }
    return e.real();
}

}  // namespace fermiwalk
