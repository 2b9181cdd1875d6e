#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fermiwalk/block_encoding.hpp"
#include "fermiwalk/fock.hpp"

namespace fermiwalk {

struct KrylovConfig {
    int k{2};                 // Krylov dimension
    double xi{1e-12};         // canonical-orthogonalization cutoff
    FockState pivot;
    SymmetrySector sector{};
};

/// mu_k = <psi_0| T_k(H') |psi_0>, k = 0 .. 2K-1, scaled units.
struct ChebyshevMoments {
    std::vector<Complex> values;
};

struct KrylovMatrices {
    Eigen::MatrixXcd hp;       // H'_ij
    Eigen::MatrixXcd upsilon;  // overlap
};

/// Incremental qubitization chain. Step t applies the reflection and then the
/// walk operator (t odd) or its adjoint (t even); mu_t is the overlap with the
/// initial |psi_0, 0>.
class MomentEngine {
  public:
    MomentEngine(const WalkOperator& walk, const FockState& pivot);
    void extend_to(int k_max, RunStats* stats = nullptr);
    const std::vector<Complex>& moments() const { return mu_; }
    Complex moment(int k) const { return mu_.at(k); }

  private:
    const WalkOperator* walk_;
    SparseState ref_;
    SparseState chain_;
    std::vector<Complex> mu_;
};

ChebyshevMoments compute_moments(const WalkOperator& walk, const KrylovConfig& cfg,
                                 RunStats* stats = nullptr);

struct HadamardEstimate {
    double re{0.0}, im{0.0};
    double re_stderr{0.0}, im_stderr{0.0};
};

/// Hadamard-test estimate of mu_k. Exact outcome probabilities, seeded
/// binomial shot sampling; shots = 0 returns the analytic (infinite-shot)
/// values with zero standard error.
HadamardEstimate hadamard_test_estimate(const WalkOperator& walk,
                                        const FockState& pivot, int order,
                                        long shots, std::uint64_t seed);

/// H'_ij and Upsilon_ij from the Chebyshev product identity; both symmetrized.
KrylovMatrices assemble_matrices(const ChebyshevMoments& m, int k);

struct CoSolution {
    std::vector<double> eigenvalues;  // ascending, scaled units
    int retained{0};
};

/// Canonical orthogonalization: keep overlap eigenpairs above xi, transform
/// with W = V v^{-1/2}, solve the standard problem. Throws when nothing is
/// retained.
CoSolution solve_co(const KrylovMatrices& km, double xi);

struct SolveOptions {
    double xi{1e-12};
    int k_start{2};
    int k_max{0};              // 0: cap at the sector dimension
    double tol_scaled{1e-9};   // convergence threshold on the scaled eigenvalue
    int workers{0};            // 0: FERMIWALK_WORKERS or hardware default
};

struct SectorResult {
    SymmetrySector sector{};
    bool solved{false};
    std::string error;
    FockState pivot;
    int k_used{0};
    bool converged{false};
    int retained_dim{0};
    double lowest_mev{0.0};
    std::vector<double> eigenvalues_mev;        // all retained CO eigenvalues
    std::vector<Complex> moments;               // k = 0 .. 2K-1
    std::vector<std::pair<int, double>> trace;  // (K, lowest MeV) as K grows
};

struct SpectralResult {
    std::vector<SectorResult> sectors;
    double ground_mev{0.0};  // minimum over solved sectors
    double scale{0.0};       // D_pad * Lambda
};

/// Per-sector pivot selection, moment evaluation, CO diagonalization, and
/// MeV rescaling. Sector failures are recorded without aborting the rest.
SpectralResult solve_sector_spectrum(const SqHamiltonian& h,
                                     const std::vector<SymmetrySector>& sectors,
                                     const std::vector<int>& orbital_twice_m,
                                     const SolveOptions& opts = {});

/// Eq.-style Krylov dimension diagnostic:
/// (log 1/|gamma0| + log 1/err) * min(1/err, 1/gap).
double krylov_bound_report(double gamma0, double gap, double err);

}  // namespace fermiwalk
