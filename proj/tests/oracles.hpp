// Test-only oracles, independent of the implementation paths they check:
// a dense statevector simulator, quadrature versions of the closed-form
// integrals, the classical Chebyshev vector recurrence, and seeded random
// generators for property tests.
#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "fermiwalk/fock.hpp"
#include "fermiwalk/sparse_state.hpp"

namespace oracles {

using fermiwalk::Complex;

// ------------------------- dense simulator -----------------------------

struct DenseState {
    int qubits{0};
    std::vector<Complex> amps;

    static DenseState basis(int qubits, std::uint64_t key) {
        DenseState s;
        s.qubits = qubits;
        s.amps.assign(1ULL << qubits, Complex(0.0, 0.0));
        s.amps[key] = 1.0;
        return s;
    }
};

inline void dense_apply(DenseState& s, const fermiwalk::Gate& g) {
    using fermiwalk::GateKind;
    const std::uint64_t dim = s.amps.size();
    const std::uint64_t bit = 1ULL << g.target;
    std::vector<Complex> next(dim, Complex(0.0, 0.0));
    for (std::uint64_t k = 0; k < dim; ++k) {
        const Complex a = s.amps[k];
        if (a == Complex(0.0, 0.0)) continue;
        if ((k & g.ctrl_mask) != g.ctrl_val) {
            next[k] += a;
            continue;
        }
        switch (g.kind) {
            case GateKind::X:
                next[k ^ bit] += a;
                break;
            case GateKind::Z:
                next[k] += (k & bit) ? -a : a;
                break;
            case GateKind::PhaseOnZero:
                next[k] += (k & bit) ? a : a * std::polar(1.0, g.angle);
                break;
            case GateKind::Swap: {
                const std::uint64_t b2 = 1ULL << g.target2;
                std::uint64_t k2 = k;
                const bool v1 = k & bit, v2 = k & b2;
                if (v1 != v2) k2 ^= bit | b2;
                next[k2] += a;
                break;
            }
            case GateKind::H: {
                const double r = 1.0 / std::sqrt(2.0);
                if (k & bit) {
                    next[k ^ bit] += a * r;
                    next[k] -= a * r;
                } else {
                    next[k] += a * r;
                    next[k | bit] += a * r;
                }
                break;
            }
            case GateKind::RotY: {
                const double c = std::cos(g.angle / 2.0), sn = std::sin(g.angle / 2.0);
                if (k & bit) {
                    next[k ^ bit] -= a * sn;
                    next[k] += a * c;
                } else {
                    next[k] += a * c;
                    next[k | bit] += a * sn;
                }
                break;
            }
        }
    }
    s.amps = std::move(next);
}

inline DenseState dense_run(DenseState s, const fermiwalk::GateCircuit& c) {
    for (const auto& g : c.gates) dense_apply(s, g);
    return s;
}

// ---------------------- quadrature oracles ------------------------------

// Gauss-Legendre nodes/weights on [a, b].
inline void gauss_legendre(int n, double a, double b, std::vector<double>& x,
                           std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1);
            }
            pp = n * (t * p0 - p1) / (t * t - 1.0);
            const double dt = p0 / pp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        x[i] = 0.5 * (b - a) * t + 0.5 * (b + a);
        w[i] = (b - a) / ((1.0 - t * t) * pp * pp);
    }
}

// Generalized Laguerre L_n^alpha by recurrence (alpha need not be integral).
inline double laguerre(int n, double alpha, double x) {
    if (n == 0) return 1.0;
    double lm1 = 1.0, l0 = 1.0 + alpha - x;
    for (int k = 2; k <= n; ++k) {
        const double lk = ((2 * k - 1 + alpha - x) * l0 - (k - 1 + alpha) * lm1) / k;
        lm1 = l0;
        l0 = lk;
    }
    return l0;
}

// Oscillator radial wavefunction in r0 = 1 units.
inline double radial_wf(int n, int l, double x) {
    const double norm =
        std::sqrt(2.0 * std::tgamma(n + 1.0) / std::tgamma(n + l + 1.5));
    return norm * std::pow(x, l) * std::exp(-0.5 * x * x) * laguerre(n, l + 0.5, x * x);
}

// integral R_{np lp} r^2 R_{nq lq} r^2 dr by quadrature, r0^2 units.
inline double radial_r2_quadrature(int n_p, int l_p, int n_q, int l_q) {
    std::vector<double> x, w;
    gauss_legendre(400, 0.0, 15.0, x, w);
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        acc += w[i] * radial_wf(n_p, l_p, x[i]) * radial_wf(n_q, l_q, x[i]) *
               std::pow(x[i], 4);
    return acc;
}

// Y_lm(theta, 0), Condon-Shortley, any sign of m.
inline double real_sph(int l, int m, double theta) {
    if (m >= 0) return std::sph_legendre(l, m, theta);
    const double v = std::sph_legendre(l, -m, theta);
    return (m % 2 == 0) ? v : -v;
}

// ---------------------- Chebyshev recurrence -----------------------------

// mu_k = <pivot| T_k(M) |pivot> on a scaled matrix via the three-term
// recurrence on vectors.
inline std::vector<Complex> reference_moments(const Eigen::MatrixXcd& m_scaled,
                                              int pivot_index, int k_max) {
    const Eigen::Index n = m_scaled.rows();
    Eigen::VectorXcd v0 = Eigen::VectorXcd::Zero(n);
    v0(pivot_index) = 1.0;
    std::vector<Complex> mu{Complex(1.0, 0.0)};
    Eigen::VectorXcd vkm1 = v0;
    Eigen::VectorXcd vk = m_scaled * v0;
    for (int k = 1; k <= k_max; ++k) {
        mu.push_back(v0.dot(vk));
        Eigen::VectorXcd next = 2.0 * (m_scaled * vk) - vkm1;
        vkm1 = vk;
        vk = next;
    }
    return mu;
}

// T_i(M)|pivot> for the direct Krylov-matrix construction.
inline std::vector<Eigen::VectorXcd> chebyshev_vectors(const Eigen::MatrixXcd& m_scaled,
                                                       int pivot_index, int count) {
    const Eigen::Index n = m_scaled.rows();
    std::vector<Eigen::VectorXcd> vs;
    Eigen::VectorXcd v0 = Eigen::VectorXcd::Zero(n);
    v0(pivot_index) = 1.0;
    vs.push_back(v0);
    if (count > 1) vs.push_back(m_scaled * v0);
    for (int k = 2; k < count; ++k)
        vs.push_back(2.0 * (m_scaled * vs[k - 1]) - vs[k - 2]);
    return vs;
}

// ---------------------- random generators --------------------------------

inline std::vector<int> random_orbital_subset(std::mt19937_64& rng, int n_sp,
                                              int count) {
    std::vector<int> all(n_sp);
    for (int i = 0; i < n_sp; ++i) all[i] = i;
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<int> out(all.begin(), all.begin() + count);
    std::sort(out.begin(), out.end());
    return out;
}

inline fermiwalk::Monomial random_monomial(std::mt19937_64& rng, int n_sp,
                                           int max_rank = 3) {
    std::uniform_int_distribution<int> rank(0, max_rank);
    fermiwalk::Monomial m;
    m.annihilations = random_orbital_subset(rng, n_sp, rank(rng));
    m.creations = random_orbital_subset(rng, n_sp, rank(rng));
    m.coeff = Complex(1.0, 0.0);
    return m;
}

inline fermiwalk::FockState random_fock(std::mt19937_64& rng, int n_sp) {
    std::uniform_int_distribution<std::uint64_t> bits(0, (1ULL << n_sp) - 1);
    return fermiwalk::FockState(bits(rng), n_sp);
}

// Random Hermitian 2-body Hamiltonian (upper-half form), particle conserving.
inline fermiwalk::SqHamiltonian random_two_body_hamiltonian(std::mt19937_64& rng,
                                                            int n_sp,
                                                            bool complex_coeffs) {
    std::uniform_int_distribution<int> n_terms(2, 6);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::vector<fermiwalk::HamiltonianTerm> terms;
    auto key_of = [](const fermiwalk::HamiltonianTerm& t) {
        return std::make_pair(t.creations, t.annihilations);
    };
    const int want = n_terms(rng);
    int guard = 0;
    while (static_cast<int>(terms.size()) < want && guard++ < 200) {
        fermiwalk::HamiltonianTerm t;
        t.creations = random_orbital_subset(rng, n_sp, 2);
        t.annihilations = random_orbital_subset(rng, n_sp, 2);
        const bool diag = t.creations == t.annihilations;
        t.coeff = diag || !complex_coeffs ? Complex(coeff(rng), 0.0)
                                          : Complex(coeff(rng), coeff(rng));
        bool dup = false;
        for (const auto& other : terms) {
            if (key_of(other) == key_of(t)) dup = true;
            if (std::make_pair(other.annihilations, other.creations) == key_of(t))
                dup = true;
        }
        if (!dup) terms.push_back(std::move(t));
    }
    return fermiwalk::hermitize(terms, n_sp);
}

}  // namespace oracles
