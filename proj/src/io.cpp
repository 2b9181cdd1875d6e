#include "fermiwalk/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <json.hpp>

namespace fermiwalk {

namespace {

using nlohmann::ordered_json;

ordered_json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    ordered_json j;
    in >> j;
    return j;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

std::string fmt9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace

HamiltonianFile load_hamiltonian_json(const std::string& path) {
    const auto j = parse_file(path);
    HamiltonianFile f;
    f.n_sp = j.at("n_sp").get<int>();
    for (const auto& t : j.at("terms")) {
        HamiltonianTerm term;
        term.creations = t.at("q").get<std::vector<int>>();
        term.annihilations = t.at("p").get<std::vector<int>>();
        term.coeff = Complex(t.at("re").get<double>(),
                             t.value("im", 0.0));
        f.terms.push_back(std::move(term));
    }
    return f;
}

void save_hamiltonian_json(const std::string& path, const HamiltonianFile& file) {
    ordered_json j;
    j["n_sp"] = file.n_sp;
    j["terms"] = ordered_json::array();
    for (const auto& t : file.terms) {
        ordered_json term;
        term["q"] = t.creations;
        term["p"] = t.annihilations;
        term["re"] = t.coeff.real();
        term["im"] = t.coeff.imag();
        j["terms"].push_back(term);
    }
    write_file(path, j.dump(2) + "\n");
}

std::vector<SpOrbital> load_orbitals_json(const std::string& path) {
    const auto j = parse_file(path);
    std::vector<SpOrbital> orbs;
    for (const auto& o : j) {
        orbs.push_back(SpOrbital{o.at("n").get<int>(), o.at("l").get<int>(),
                                 o.at("twice_j").get<int>(), o.at("twice_m").get<int>(),
                                 o.at("twice_tau").get<int>()});
    }
    return orbs;
}

ModelParams load_params_json(const std::string& path) {
    const auto j = parse_file(path);
    ModelParams p;
    p.g = j.value("g", p.g);
    p.chi = j.value("chi", p.chi);
    p.hbar_omega = j.value("hbar_omega", p.hbar_omega);
    p.m_n = j.value("m_n", p.m_n);
    return p;
}

std::vector<TwoBodyRow> read_two_body_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<TwoBodyRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (fields.size() != 6) throw std::runtime_error("bad CSV row in " + path);
        if (!std::isdigit(static_cast<unsigned char>(fields[0][0]))) continue;  // header
        rows.push_back(TwoBodyRow{std::stoi(fields[1]), std::stoi(fields[2]),
                                  std::stoi(fields[3]), std::stoi(fields[4]),
                                  std::stod(fields[5])});
    }
    return rows;
}

void write_two_body_csv(const std::string& path, const std::vector<TwoBodyRow>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "i,p,q,u,v,value\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        out << i << ',' << r.p << ',' << r.q << ',' << r.u << ',' << r.v << ','
            << fmt9(r.value) << '\n';
    }
}

std::vector<HamiltonianTerm> upper_terms_from_table(const std::vector<TwoBodyRow>& rows,
                                                    double tol) {
    std::map<std::tuple<int, int, int, int>, double> table;
    for (const auto& r : rows) {
        if (r.p >= r.q || r.u >= r.v)
            throw std::runtime_error("upper_terms_from_table: pair indices not ascending");
        if (!table.emplace(std::make_tuple(r.p, r.q, r.u, r.v), r.value).second)
            throw std::runtime_error("upper_terms_from_table: duplicate row");
    }
    std::vector<HamiltonianTerm> terms;
    for (const auto& [key, value] : table) {
        const auto [p, q, u, v] = key;
        if (std::make_pair(p, q) > std::make_pair(u, v)) {
            // lower-order row: must mirror an upper one
            auto it = table.find(std::make_tuple(u, v, p, q));
            if (it == table.end())
                throw std::runtime_error("upper_terms_from_table: unpaired lower row");
            continue;
        }
        if (std::make_pair(p, q) < std::make_pair(u, v)) {
            auto it = table.find(std::make_tuple(u, v, p, q));
            if (it != table.end() && std::abs(it->second - value) > tol)
                throw std::runtime_error(
                    "upper_terms_from_table: conjugate rows disagree (non-Hermitian table)");
        }
        HamiltonianTerm t;
        t.creations = {p, q};
        t.annihilations = {u, v};
        t.coeff = Complex(value, 0.0);
        terms.push_back(std::move(t));
    }
    return terms;
}

RunManifest load_manifest_json(const std::string& path) {
    const auto j = parse_file(path);
    RunManifest m;
    m.hamiltonian_path = j.at("hamiltonian").get<std::string>();
    for (const auto& s : j.at("sectors"))
        m.sectors.push_back(SymmetrySector{s.at("particle_number").get<int>(),
                                           s.at("twice_mj").get<int>()});
    m.orbital_twice_m = j.at("orbital_twice_m").get<std::vector<int>>();
    m.xi = j.value("xi", m.xi);
    m.k_start = j.value("k_start", m.k_start);
    m.k_max = j.value("k_max", m.k_max);
    m.shots = j.value("shots", m.shots);
    m.seed = j.value("seed", m.seed);
    return m;
}

std::string result_to_json(const SpectralResult& result) {
    ordered_json j;
    j["scale_mev"] = result.scale;
    j["ground_mev"] = result.ground_mev;
    j["sectors"] = ordered_json::array();
    for (const auto& s : result.sectors) {
        ordered_json sec;
        sec["particle_number"] = s.sector.particle_number;
        sec["twice_mj"] = s.sector.twice_mj;
        sec["solved"] = s.solved;
        if (!s.solved) {
            sec["error"] = s.error;
            j["sectors"].push_back(sec);
            continue;
        }
        sec["pivot"] = s.pivot.to_string();
        sec["k_used"] = s.k_used;
        sec["converged"] = s.converged;
        sec["retained_dim"] = s.retained_dim;
        sec["lowest_mev"] = s.lowest_mev;
        sec["excitation_mev"] = s.lowest_mev - result.ground_mev;
        sec["eigenvalues_mev"] = s.eigenvalues_mev;
        ordered_json mre = ordered_json::array(), mim = ordered_json::array();
        for (const auto& m : s.moments) {
            mre.push_back(m.real());
            mim.push_back(m.imag());
        }
        sec["moments_re"] = mre;
        sec["moments_im"] = mim;
        ordered_json tr = ordered_json::array();
        for (const auto& [k, e] : s.trace) tr.push_back({{"k", k}, {"lowest_mev", e}});
        sec["trace"] = tr;
        j["sectors"].push_back(sec);
    }
    return j.dump(2) + "\n";
}

void write_result_json(const std::string& path, const SpectralResult& result) {
    write_file(path, result_to_json(result));
}

void write_spectrum_csv(const std::string& path, const SpectralResult& result) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "J,E_MeV,Eex_MeV\n";
    for (const auto& s : result.sectors) {
        if (!s.solved) continue;
        std::string jlabel = s.sector.twice_mj % 2 == 0
                                 ? std::to_string(s.sector.twice_mj / 2)
                                 : std::to_string(s.sector.twice_mj) + "/2";
        out << jlabel << ',' << fmt9(s.lowest_mev) << ','
            << fmt9(s.lowest_mev - result.ground_mev) << '\n';
    }
}

}  // namespace fermiwalk
