#pragma once

#include <vector>

#include "fermiwalk/fock.hpp"

namespace fermiwalk {

/// Harmonic-oscillator single-particle orbital. Angular momenta are doubled
/// so half-integers stay integral; twice_tau = -1 labels a neutron.
struct SpOrbital {
    int n{0};
    int l{0};
    int twice_j{0};
    int twice_m{0};
    int twice_tau{-1};
};

struct ModelParams {
    double g{0.147439};       // MeV, pairing strength
    double chi{-3.934e8};     // quadrupole coupling, natural units
    double hbar_omega{12.0};  // MeV
    double m_n{938.919};      // MeV
    double r0_squared() const { return 1.0 / (m_n * hbar_omega); }  // MeV^-2
};

/// Wigner 3j symbol with doubled arguments. Zero on any selection-rule
/// violation; throws if a (j, m) pair has mismatched parity.
double wigner_3j(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3);

/// Clebsch-Gordan (l m_l s m_s | j m_j), Condon-Shortley, doubled arguments.
double clebsch_gordan(int tl, int tml, int ts, int tms, int tj, int tmj);

/// Closed-form radial integral of r^2 between oscillator states, in units of
/// r0^2. Vanishes unless l_p = l_q or |l_p - l_q| = 2.
double radial_integral_r2(int n_p, int l_p, int n_q, int l_q);

/// <p| r^2 Y_{2 sigma} |q> in units of r0^2.
double quadrupole_me(const SpOrbital& p, const SpOrbital& q, int sigma);

/// Antisymmetrized two-body element <pq|H_A|uv> in MeV: pairing between
/// time-reversed pairs plus the symmetrized quadrupole-quadrupole coupling,
/// direct minus exchange. Accepts any orbital ordering (odd permutations of a
/// bra or ket pair flip the sign).
double two_body_me(const SpOrbital& p, const SpOrbital& q, const SpOrbital& u,
                   const SpOrbital& v, const ModelParams& params);

struct TwoBodyRow {
    int p, q, u, v;  // orbital indices, p<q and u<v
    double value;    // MeV
};

/// All nonzero <pq|H_A|uv> over p<q, u<v (both conjugate orders), row-major in
/// (p,q,u,v). For the default space this is the 64-element table.
std::vector<TwoBodyRow> two_body_table(const std::vector<SpOrbital>& orbitals,
                                       const ModelParams& params);

/// Hermitized valence-space Hamiltonian; the upper representative of each
/// conjugate pair is fed to hermitize.
SqHamiltonian build_valence_hamiltonian(const std::vector<SpOrbital>& orbitals,
                                        const ModelParams& params);

/// The eight 0f_{7/2} neutron orbitals in table order (+m before -m).
std::vector<SpOrbital> default_0f72_space();

/// Single-j neutron shell (n=0, j = l + 1/2) with 2j+1 orbitals, same m
/// ordering as the default space. Used for generated Hamiltonian families.
std::vector<SpOrbital> single_j_shell(int twice_j);

std::vector<int> orbital_twice_m(const std::vector<SpOrbital>& orbitals);

}  // namespace fermiwalk
