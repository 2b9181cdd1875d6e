#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace fermiwalk {

using Complex = std::complex<double>;

/// Occupation-number state over n_sp single-particle orbitals.
/// Bit p of `bits` is 1 iff orbital p is occupied; the reference ket is the
/// ascending-ordered creation product on the vacuum, a+_0 a+_1 ... |0>.
struct FockState {
    std::uint64_t bits{0};
    int n_sp{0};

    FockState() = default;
    FockState(std::uint64_t b, int n);
    static FockState from_orbitals(const std::vector<int>& orbitals, int n_sp);

    bool occupied(int p) const { return (bits >> p) & 1ULL; }
    int particle_count() const;
    int twice_mj(const std::vector<int>& orbital_twice_m) const;
    std::vector<int> orbitals() const;

    // "1100..." with orbital 0 printed first.
    std::string to_string() const;

    bool operator==(const FockState& o) const {
        return bits == o.bits && n_sp == o.n_sp;
    }
};

/// One normal-ordered term <Q|H|P> b+_Q b_P. Q and P are strictly ascending
/// orbital index lists; b+_Q = a+_{q0} a+_{q1} ... and b_P = a_{pLast} ... a_{p0}.
struct Monomial {
    std::vector<int> creations;      // Q
    std::vector<int> annihilations;  // P
    Complex coeff{0.0, 0.0};         // MeV
    double rho{0.0};                 // |coeff| / Lambda, set by hermitize
    double theta{0.0};               // arg(coeff) in (-pi, pi], set by hermitize

    bool diagonal() const { return creations == annihilations; }
};

struct HamiltonianTerm {
    std::vector<int> creations;
    std::vector<int> annihilations;
    Complex coeff{0.0, 0.0};
};

/// Indexed monomial collection with the conjugate-index map j <-> k and the
/// block-encoding scale Lambda.
struct SqHamiltonian {
    std::vector<Monomial> monomials;
    std::vector<std::size_t> conjugate_of;  // conjugate_of[j] = k
    double lambda{0.0};                     // max_j |coeff_j|, MeV
    std::size_t d_pad{1};                   // next power of two >= D
    int n_sp{0};

    std::size_t d() const { return monomials.size(); }
    int id_qubits() const;
};

struct SymmetrySector {
    int particle_number{0};
    int twice_mj{0};
};

/// Apply b+_Q b_P to |f>. Returns nothing when an annihilation orbital is
/// vacant or a creation orbital is already occupied (after the annihilations);
/// otherwise the resulting state and the fermionic sign <f'|b+_Q b_P|f>.
/// Signs come from popcounts of occupied orbitals below the acting index.
std::optional<std::pair<int, FockState>> apply_monomial(const Monomial& m,
                                                        const FockState& f);

/// Same contract as apply_monomial, computed by literal normal ordering on an
/// ordered list of creation indices, one operator at a time. Independent
/// oracle: never uses the bitmask popcount shortcut.
std::optional<std::pair<int, FockState>> sign_brute_force(const Monomial& m,
                                                          const FockState& f);

/// Build the full monomial list from the upper-half term list (at most one of
/// each conjugate pair, diagonals once). Conjugates of off-diagonal terms are
/// appended at the end; Lambda = max |coeff|; D_pad = next power of two >= D.
/// Throws on duplicate (Q,P) keys, non-ascending index lists, out-of-range
/// orbitals, or when both members of a conjugate pair are supplied.
SqHamiltonian hermitize(const std::vector<HamiltonianTerm>& upper_terms, int n_sp);

/// All Fock states with the given particle number, ascending bit pattern.
std::vector<FockState> enumerate_particle_sector(int n_sp, int particle_number);

/// All Fock states in the (N, 2M_J) sector, ascending bit pattern.
std::vector<FockState> enumerate_sector(int n_sp, const SymmetrySector& sector,
                                        const std::vector<int>& orbital_twice_m);

/// M[g][f] = <basis[g]| H |basis[f]> in MeV.
Eigen::MatrixXcd build_fci_matrix(const SqHamiltonian& h,
                                  const std::vector<FockState>& basis);

/// Re <f|H|f> without building the full matrix.
double diagonal_element(const SqHamiltonian& h, const FockState& f);

}  // namespace fermiwalk
