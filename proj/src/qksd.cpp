#include "fermiwalk/qksd.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace fermiwalk {

MomentEngine::MomentEngine(const WalkOperator& walk, const FockState& pivot)
    : walk_(&walk),
      ref_(walk.prepare(pivot)),
      chain_(ref_) {
    mu_.push_back(Complex(1.0, 0.0));  // T_0 = 1
}

void MomentEngine::extend_to(int k_max, RunStats* stats) {
    while (static_cast<int>(mu_.size()) <= k_max) {
        const int t = static_cast<int>(mu_.size());
        chain_ = apply_reflection_pi(std::move(chain_));
        chain_ = walk_->apply(chain_, /*dagger=*/t % 2 == 0, stats);
        mu_.push_back(inner_product(ref_, chain_));
    }
}

ChebyshevMoments compute_moments(const WalkOperator& walk, const KrylovConfig& cfg,
                                 RunStats* stats) {
    if (cfg.k < 1) throw std::invalid_argument("compute_moments: K < 1");
    MomentEngine engine(walk, cfg.pivot);
    engine.extend_to(2 * cfg.k - 1, stats);
    return ChebyshevMoments{engine.moments()};
}

HadamardEstimate hadamard_test_estimate(const WalkOperator& walk,
                                        const FockState& pivot, int order,
                                        long shots, std::uint64_t seed) {
    if (order < 0) throw std::invalid_argument("hadamard_test_estimate: negative order");
    if (shots < 0) throw std::invalid_argument("hadamard_test_estimate: negative shots");
    MomentEngine engine(walk, pivot);
    engine.extend_to(order);
    const Complex mu = engine.moment(order);

    HadamardEstimate est;
    if (shots == 0) {  // analytic limit
        est.re = mu.real();
        est.im = mu.imag();
        return est;
    }
    // Ancilla-outcome probabilities of the controlled-walk interferometer.
    const double p_re = std::clamp((1.0 + mu.real()) / 2.0, 0.0, 1.0);
    const double p_im = std::clamp((1.0 + mu.imag()) / 2.0, 0.0, 1.0);
    std::mt19937_64 rng(seed);
    auto sample = [&](double p, double& value, double& stderr_out) {
        std::binomial_distribution<long> dist(shots, p);
        const double p_hat = static_cast<double>(dist(rng)) / static_cast<double>(shots);
        value = 2.0 * p_hat - 1.0;
        stderr_out = 2.0 * std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(shots));
    };
    sample(p_re, est.re, est.re_stderr);
    sample(p_im, est.im, est.im_stderr);
    return est;
}

KrylovMatrices assemble_matrices(const ChebyshevMoments& m, int k) {
    if (k < 1) throw std::invalid_argument("assemble_matrices: K < 1");
    auto mu = [&](int idx) -> Complex {
        if (idx >= static_cast<int>(m.values.size()))
            throw std::out_of_range("assemble_matrices: moment index beyond 2K-1");
        return m.values[idx];
    };
    KrylovMatrices km;
    km.hp = Eigen::MatrixXcd(k, k);
    km.upsilon = Eigen::MatrixXcd(k, k);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            km.hp(i, j) = 0.25 * (mu(i + j + 1) + mu(std::abs(i + j - 1)) +
                                  mu(std::abs(i - j + 1)) + mu(std::abs(i - j - 1)));
            km.upsilon(i, j) = 0.5 * (mu(i + j) + mu(std::abs(i - j)));
        }
    }
    km.hp = 0.5 * (km.hp + km.hp.adjoint()).eval();
    km.upsilon = 0.5 * (km.upsilon + km.upsilon.adjoint()).eval();
    return km;
}

CoSolution solve_co(const KrylovMatrices& km, double xi) {
    if (xi <= 0.0) throw std::invalid_argument("solve_co: xi must be positive");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> overlap(km.upsilon);
    const auto& evals = overlap.eigenvalues();
    std::vector<int> keep;
    for (int i = 0; i < evals.size(); ++i)
        if (evals(i) > xi) keep.push_back(i);
    if (keep.empty())
        throw std::runtime_error("solve_co: empty retained space (all overlap eigenvalues <= xi)");

    Eigen::MatrixXcd w(km.upsilon.rows(), keep.size());
    for (std::size_t c = 0; c < keep.size(); ++c)
        w.col(c) = overlap.eigenvectors().col(keep[c]) / std::sqrt(evals(keep[c]));
    Eigen::MatrixXcd hpp = w.adjoint() * km.hp * w;
    hpp = 0.5 * (hpp + hpp.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hpp);

    CoSolution sol;
    sol.retained = static_cast<int>(keep.size());
    sol.eigenvalues.assign(es.eigenvalues().data(),
                           es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(sol.eigenvalues.begin(), sol.eigenvalues.end());
    return sol;
}

namespace {

SectorResult solve_one_sector(const SqHamiltonian& h, const WalkOperator& walk,
                              const SymmetrySector& sector,
                              const std::vector<int>& twice_m,
                              const SolveOptions& opts) {
    SectorResult res;
    res.sector = sector;
    try {
        const auto basis = enumerate_sector(h.n_sp, sector, twice_m);
        if (basis.empty()) throw std::runtime_error("empty symmetry sector");

        // Deterministic pivot: lowest diagonal, ties to the smallest bit
        // pattern (enumeration order is ascending).
        std::size_t best = 0;
        double best_diag = diagonal_element(h, basis[0]);
        for (std::size_t i = 1; i < basis.size(); ++i) {
            const double d = diagonal_element(h, basis[i]);
            if (d < best_diag - 1e-15) {
                best = i;
                best_diag = d;
            }
        }
        res.pivot = basis[best];

        const int dim = static_cast<int>(basis.size());
        const int cap = opts.k_max > 0 ? std::min(opts.k_max, dim) : dim;
        const double scale = walk.scale();

        MomentEngine engine(walk, res.pivot);
        int k = std::min(opts.k_start, cap);
        double prev = 0.0;
        bool have_prev = false;
        CoSolution co;
        while (true) {
            engine.extend_to(2 * k - 1);
            ChebyshevMoments m{engine.moments()};
            co = solve_co(assemble_matrices(m, k), opts.xi);
            const double lowest = co.eigenvalues.front();
            res.trace.emplace_back(k, lowest * scale);
            if (have_prev && std::abs(lowest - prev) < opts.tol_scaled) {
                res.converged = true;
                break;
            }
            have_prev = true;
            prev = lowest;
            if (k >= cap) {
                res.converged = k >= dim;
                break;
            }
            k = std::min(2 * k, cap);
        }

        res.k_used = k;
        res.retained_dim = co.retained;
        res.moments.assign(engine.moments().begin(),
                           engine.moments().begin() + 2 * k);
        for (double ev : co.eigenvalues) res.eigenvalues_mev.push_back(ev * scale);
        res.lowest_mev = res.eigenvalues_mev.front();
        res.solved = true;
    } catch (const std::exception& e) {
        res.solved = false;
        res.error = e.what();
    }
    return res;
}

int worker_count(const SolveOptions& opts, std::size_t jobs) {
    int w = opts.workers;
    if (w <= 0) {
        if (const char* env = std::getenv("FERMIWALK_WORKERS")) w = std::atoi(env);
    }
    if (w <= 0) w = static_cast<int>(std::thread::hardware_concurrency());
    if (w <= 0) w = 1;
    return std::min<int>(w, static_cast<int>(jobs));
}

}  // namespace

SpectralResult solve_sector_spectrum(const SqHamiltonian& h,
                                     const std::vector<SymmetrySector>& sectors,
                                     const std::vector<int>& orbital_twice_m,
                                     const SolveOptions& opts) {
    SpectralResult out;
    const WalkOperator walk = make_walk_operator(h);
    out.scale = walk.scale();
    out.sectors.resize(sectors.size());

    const int workers = worker_count(opts, sectors.size());
    std::size_t next = 0;
    while (next < sectors.size()) {
        const std::size_t batch = std::min<std::size_t>(workers, sectors.size() - next);
        std::vector<std::future<SectorResult>> futs;
        for (std::size_t i = 0; i < batch; ++i)
            futs.push_back(std::async(std::launch::async, solve_one_sector, std::cref(h),
                                      std::cref(walk), sectors[next + i],
                                      std::cref(orbital_twice_m), std::cref(opts)));
        for (std::size_t i = 0; i < batch; ++i) out.sectors[next + i] = futs[i].get();
        next += batch;
    }

    bool any = false;
    for (const auto& s : out.sectors) {
        if (!s.solved) continue;
        out.ground_mev = any ? std::min(out.ground_mev, s.lowest_mev) : s.lowest_mev;
        any = true;
    }
    if (!any) {
        std::string all = "all sectors failed:";
        for (const auto& s : out.sectors) all += " [" + s.error + "]";
        throw std::runtime_error(all);
    }
    return out;
}

double krylov_bound_report(double gamma0, double gap, double err) {
    if (gamma0 == 0.0) throw std::invalid_argument("krylov_bound_report: gamma0 = 0");
    if (gap <= 0.0) throw std::invalid_argument("krylov_bound_report: gap <= 0");
    if (err <= 0.0) throw std::invalid_argument("krylov_bound_report: err <= 0");
    return (std::log(1.0 / std::abs(gamma0)) + std::log(1.0 / err)) *
           std::min(1.0 / err, 1.0 / gap);
}

}  // namespace fermiwalk
