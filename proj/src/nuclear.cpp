#include "fermiwalk/nuclear.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fermiwalk {

namespace {

long double log_factorial(int n) {
    static std::vector<long double> table{0.0L};  // log(0!) = 0
    if (n < 0) throw std::invalid_argument("log_factorial: negative argument");
    while (static_cast<int>(table.size()) <= n)
        table.push_back(table.back() + std::log(static_cast<long double>(table.size())));
    return table[n];
}

bool triangle_ok(int tj1, int tj2, int tj3) {
    return tj3 >= std::abs(tj1 - tj2) && tj3 <= tj1 + tj2 && (tj1 + tj2 + tj3) % 2 == 0;
}

}  // namespace

double wigner_3j(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3) {
    if ((tj1 + tm1) % 2 || (tj2 + tm2) % 2 || (tj3 + tm3) % 2)
        throw std::invalid_argument("wigner_3j: (j,m) parity mismatch");
    if (tj1 < 0 || tj2 < 0 || tj3 < 0)
        throw std::invalid_argument("wigner_3j: negative j");
    if (tm1 + tm2 + tm3 != 0) return 0.0;
    if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tm3) > tj3) return 0.0;
    if (!triangle_ok(tj1, tj2, tj3)) return 0.0;

    // Racah sum with log-factorial accumulation in long double.
    const int a = (tj1 + tj2 - tj3) / 2;
    const int b = (tj1 - tj2 + tj3) / 2;
    const int c = (-tj1 + tj2 + tj3) / 2;
    const int j1m1 = (tj1 - tm1) / 2, j1p1 = (tj1 + tm1) / 2;
    const int j2m2 = (tj2 - tm2) / 2, j2p2 = (tj2 + tm2) / 2;
    const int j3m3 = (tj3 - tm3) / 2, j3p3 = (tj3 + tm3) / 2;

    const long double log_pref =
        0.5L * (log_factorial(a) + log_factorial(b) + log_factorial(c) -
                log_factorial((tj1 + tj2 + tj3) / 2 + 1) +
                log_factorial(j1p1) + log_factorial(j1m1) +
                log_factorial(j2p2) + log_factorial(j2m2) +
                log_factorial(j3p3) + log_factorial(j3m3));

    const int s_min = std::max({0, (tj2 - tj3 - tm1) / 2, (tj1 - tj3 + tm2) / 2});
    const int s_max = std::min({a, j1m1, j2p2});
    long double sum = 0.0L;
    for (int s = s_min; s <= s_max; ++s) {
        const long double log_term =
            log_factorial(s) + log_factorial(a - s) + log_factorial(j1m1 - s) +
            log_factorial(j2p2 - s) + log_factorial((tj3 - tj2 + tm1) / 2 + s) +
            log_factorial((tj3 - tj1 - tm2) / 2 + s);
        const long double term = std::exp(log_pref - log_term);
        sum += (s % 2) ? -term : term;
    }
    const int phase = ((tj1 - tj2 - tm3) / 2) % 2;
    return static_cast<double>(phase ? -sum : sum);
}

double clebsch_gordan(int tl, int tml, int ts, int tms, int tj, int tmj) {
    if (tml + tms != tmj) return 0.0;
    if (!triangle_ok(tl, ts, tj)) return 0.0;
    const double w = wigner_3j(tl, ts, tj, tml, tms, -tmj);
    const int phase_exp = (tl - ts + tmj) / 2;
    const double phase = (phase_exp % 2 == 0) ? 1.0 : -1.0;
    return phase * std::sqrt(static_cast<double>(tj + 1)) * w;
}

double radial_integral_r2(int n_p, int l_p, int n_q, int l_q) {
    if (n_p < 0 || l_p < 0 || n_q < 0 || l_q < 0)
        throw std::invalid_argument("radial_integral_r2: negative quantum number");
    double v = 0.0;
    if (l_p == l_q) {
        if (n_p == n_q) v += 2 * n_p + l_p + 1.5;
        if (n_p == n_q - 1) v -= std::sqrt((n_p + l_p + 1.5) * (n_p + 1));
        if (n_p == n_q + 1) v -= std::sqrt((n_q + l_q + 1.5) * (n_q + 1));
    }
    if (l_q == l_p + 2) {
        if (n_p == n_q) v += std::sqrt((n_q + l_p + 1.5) * (n_q + l_p + 2.5));
        if (n_p == n_q + 1) v -= 2.0 * std::sqrt((n_q + 1) * (n_q + l_p + 2.5));
        if (n_p == n_q + 2) v += std::sqrt((n_q + 1) * (n_q + 2.0));
    }
    if (l_p == l_q + 2) {
        if (n_p == n_q) v += std::sqrt((n_p + l_q + 1.5) * (n_p + l_q + 2.5));
        if (n_q == n_p + 1) v -= 2.0 * std::sqrt((n_p + 1) * (n_p + l_q + 2.5));
        if (n_q == n_p + 2) v += std::sqrt((n_p + 1) * (n_p + 2.0));
    }
    return v;
}

double quadrupole_me(const SpOrbital& p, const SpOrbital& q, int sigma) {
    if (std::abs(sigma) > 2) throw std::invalid_argument("quadrupole_me: |sigma| > 2");
    if (p.twice_tau != q.twice_tau) return 0.0;
    if (p.twice_m != q.twice_m + 2 * sigma) return 0.0;
    const double radial = radial_integral_r2(p.n, p.l, q.n, q.l);
    if (radial == 0.0) return 0.0;

    const double w000 = wigner_3j(2 * p.l, 4, 2 * q.l, 0, 0, 0);
    if (w000 == 0.0) return 0.0;
    const double gaunt_pref =
        std::sqrt((2 * p.l + 1) * 5.0 * (2 * q.l + 1) / (4.0 * M_PI)) * w000;

    double angular = 0.0;
    for (int tml_q = -2 * q.l; tml_q <= 2 * q.l; tml_q += 2) {
        for (int tms : {-1, 1}) {
            if (tml_q + tms != q.twice_m) continue;
            const int tml_p = tml_q + 2 * sigma;
            if (std::abs(tml_p) > 2 * p.l) continue;
            if (tml_p + tms != p.twice_m) continue;
            const double cg_p = clebsch_gordan(2 * p.l, tml_p, 1, tms, p.twice_j, p.twice_m);
            const double cg_q = clebsch_gordan(2 * q.l, tml_q, 1, tms, q.twice_j, q.twice_m);
            const double sign = ((tml_p / 2) % 2 == 0) ? 1.0 : -1.0;
            angular += cg_p * cg_q * sign *
                       wigner_3j(2 * p.l, 4, 2 * q.l, -tml_p, 2 * sigma, tml_q);
        }
    }
    return radial * gaunt_pref * angular;
}

namespace {

// <a| Q*_{2 mu} |b> = (-1)^mu <a| Q_{2,-mu} |b> for real elements.
double quadrupole_me_conj(const SpOrbital& a, const SpOrbital& b, int mu) {
    const double v = quadrupole_me(a, b, -mu);
    return (mu % 2 == 0) ? v : -v;
}

bool same_shell(const SpOrbital& a, const SpOrbital& b) {
    return a.n == b.n && a.l == b.l && a.twice_j == b.twice_j && a.twice_tau == b.twice_tau;
}

// xi_x = (-1)^{j_x - m_x} for the positive-m member of a time-reversed pair;
// returns 0 when {a,b} is not such a pair, else xi with the reorder sign for
// the order the pair was passed in.
double pairing_phase(const SpOrbital& a, const SpOrbital& b) {
    if (!same_shell(a, b) || a.twice_m != -b.twice_m || a.twice_m == 0) return 0.0;
    const SpOrbital& pos = a.twice_m > 0 ? a : b;
    const double xi = (((pos.twice_j - pos.twice_m) / 2) % 2 == 0) ? 1.0 : -1.0;
    return a.twice_m > 0 ? xi : -xi;  // a+_x a+_xbar with x the m>0 member
}

}  // namespace

double two_body_me(const SpOrbital& p, const SpOrbital& q, const SpOrbital& u,
                   const SpOrbital& v, const ModelParams& params) {
    double val = 0.0;

    const double bra = pairing_phase(p, q);
    const double ket = pairing_phase(u, v);
    if (bra != 0.0 && ket != 0.0) val += -params.g * bra * ket;

    double qq = 0.0;
    for (int mu = -2; mu <= 2; ++mu) {
        qq += quadrupole_me(p, u, mu) * quadrupole_me_conj(q, v, mu);
        qq -= quadrupole_me(p, v, mu) * quadrupole_me_conj(q, u, mu);
    }
    // Factor 2: the interaction acts on both particle assignments,
    // V(1,2) + V(2,1), and Q.Q is symmetric under the exchange.
    const double r0sq = params.r0_squared();
    val += 2.0 * params.g * params.chi * r0sq * r0sq * qq;
    return val;
}

std::vector<TwoBodyRow> two_body_table(const std::vector<SpOrbital>& orbitals,
                                       const ModelParams& params) {
    const int n = static_cast<int>(orbitals.size());
    std::vector<TwoBodyRow> rows;
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q)
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v) {
                    const double val =
                        two_body_me(orbitals[p], orbitals[q], orbitals[u], orbitals[v], params);
                    if (std::abs(val) > 1e-12) rows.push_back({p, q, u, v, val});
                }
    return rows;
}

SqHamiltonian build_valence_hamiltonian(const std::vector<SpOrbital>& orbitals,
                                        const ModelParams& params) {
    std::vector<HamiltonianTerm> upper;
    for (const auto& row : two_body_table(orbitals, params)) {
        if (std::make_pair(row.p, row.q) > std::make_pair(row.u, row.v)) continue;
        HamiltonianTerm t;
        t.creations = {row.p, row.q};
        t.annihilations = {row.u, row.v};
        t.coeff = Complex(row.value, 0.0);
        upper.push_back(std::move(t));
    }
    return hermitize(upper, static_cast<int>(orbitals.size()));
}

std::vector<SpOrbital> default_0f72_space() { return single_j_shell(7); }

std::vector<SpOrbital> single_j_shell(int twice_j) {
    if (twice_j < 1 || twice_j % 2 == 0)
        throw std::invalid_argument("single_j_shell: twice_j must be a positive odd integer");
    const int l = (twice_j - 1) / 2;
    std::vector<SpOrbital> orbs;
    for (int tm = twice_j; tm >= 1; tm -= 2) {
        orbs.push_back({0, l, twice_j, tm, -1});
        orbs.push_back({0, l, twice_j, -tm, -1});
    }
    return orbs;
}

std::vector<int> orbital_twice_m(const std::vector<SpOrbital>& orbitals) {
    std::vector<int> tm;
    tm.reserve(orbitals.size());
    for (const auto& o : orbitals) tm.push_back(o.twice_m);
    return tm;
}

}  // namespace fermiwalk
