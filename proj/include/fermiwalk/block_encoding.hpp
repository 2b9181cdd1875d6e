#pragma once

#include <vector>

#include "fermiwalk/fock.hpp"
#include "fermiwalk/sparse_state.hpp"

namespace fermiwalk {

enum class WalkDirection { Forward, Backward };

/// Enumerator oracle O_F: per index j, check/flag annihilation occupancy on
/// e_p, flip the P bits in cp, check/flag creation vacancy on e_q, flip the Q
/// bits. conjugate = true builds the oracle for the adjoint Hamiltonian
/// (coordinated indices: block j uses the swapped P/Q roles).
GateCircuit build_oracle_OF(const SqHamiltonian& h, bool conjugate,
                            const RegisterLayout& layout);

/// Matrix-element oracle O_H: per index j, occupancy-window parity onto zeta,
/// Z, uncompute, then PhaseOnZero(theta_j) and RotY(-2 arccos rho_j) on me.
GateCircuit build_oracle_OH(const SqHamiltonian& h, const RegisterLayout& layout);

/// Walk-state isometry: X on e_p/e_q, Hadamards over id, O_F, and (forward
/// only) O_H.
GateCircuit build_isometry(const SqHamiltonian& h, WalkDirection dir,
                           const RegisterLayout& layout);

/// Bit-wise swaps s<->cp, e_p<->b_p, e_q<->b_q.
GateCircuit build_swap_s(const RegisterLayout& layout);

/// U_H = T_b^dag S T_f with scale 1/(D_pad Lambda). Circuits and their
/// inverses are compiled once; application is pure.
struct WalkOperator {
    SqHamiltonian h;
    RegisterLayout layout;
    GateCircuit tf, tb, swaps, tf_inv, tb_inv;

    double scale() const { return static_cast<double>(h.d_pad) * h.lambda; }
    SparseState prepare(const FockState& f) const;
    SparseState apply(const SparseState& s, bool dagger = false,
                      RunStats* stats = nullptr) const;
};

WalkOperator make_walk_operator(const SqHamiltonian& h);

/// Reflection around |0>_a: negate every component with nonzero ancilla block.
SparseState apply_reflection_pi(SparseState s);

/// M(g, f) = <G,0| U_H |F,0> over the basis (unscaled block).
Eigen::MatrixXcd block_encode_matrix(const WalkOperator& walk,
                                     const std::vector<FockState>& basis,
                                     RunStats* stats = nullptr);

/// Occupancy-window orbital indices for an ascending operator index list,
/// grouped in pairs from the top; an unpaired lowest operator counts from
/// orbital 0, pairs count strictly between their members.
std::vector<int> occupancy_windows(const std::vector<int>& orbitals);

/// Sign of a valid monomial application from the compiled window rule:
/// parity of P-window occupancy in f plus Q-window occupancy in the flipped
/// pattern. Matches <f'|b+_Q b_P|f> on the valid branch.
int window_sign(const Monomial& m, const FockState& f);

struct CircuitCostRow {
    int n_sp{0};
    std::size_t d{0};
    std::size_t d_pad{0};
    GateCounts of_counts, oh_counts, uh_counts;
};

CircuitCostRow measure_costs(const SqHamiltonian& h);

struct ScalingFit {
    double of_vs_d{0.0};    // slope of log(O_F gates) vs log(D)
    double oh_vs_dn{0.0};   // slope of log(O_H gates) vs log(D * N_sp)
    double uh_vs_nsp{0.0};  // slope of log(U_H gates) vs log(N_sp)
};

/// Least-squares log-log exponents across a Hamiltonian family. Needs at
/// least two rows.
ScalingFit fit_scaling(const std::vector<CircuitCostRow>& rows);

}  // namespace fermiwalk
