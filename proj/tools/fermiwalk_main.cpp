// Batch front-end: generate valence Hamiltonians, verify the block encoding
// against FCI, run the Krylov spectral pipeline, and report gate-cost scaling.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fermiwalk/block_encoding.hpp"
#include "fermiwalk/fock.hpp"
#include "fermiwalk/io.hpp"
#include "fermiwalk/nuclear.hpp"
#include "fermiwalk/qksd.hpp"

using namespace fermiwalk;
using nlohmann::ordered_json;

namespace {

std::string data_path(const std::string& name) {
    return std::string(FERMIWALK_DATA_DIR) + "/" + name;
}

void require_file(const std::string& path) {
    if (!std::filesystem::exists(path))
        throw std::runtime_error("input file not found: " + path);
}

int cmd_gen_hamiltonian(const std::string& space_path, const std::string& params_path,
                        const std::string& out_json, const std::string& out_csv,
                        bool as_json) {
    require_file(space_path);
    require_file(params_path);
    const auto orbitals = load_orbitals_json(space_path);
    const auto params = load_params_json(params_path);

    const auto rows = two_body_table(orbitals, params);
    if (!out_csv.empty()) write_two_body_csv(out_csv, rows);

    HamiltonianFile file;
    file.n_sp = static_cast<int>(orbitals.size());
    for (const auto& r : rows) {
        if (std::make_pair(r.p, r.q) > std::make_pair(r.u, r.v)) continue;
        file.terms.push_back(HamiltonianTerm{{r.p, r.q}, {r.u, r.v},
                                             Complex(r.value, 0.0)});
    }
    if (!out_json.empty()) save_hamiltonian_json(out_json, file);

    const auto h = hermitize(file.terms, file.n_sp);
    if (as_json) {
        ordered_json j;
        j["n_sp"] = file.n_sp;
        j["table_rows"] = rows.size();
        j["d"] = h.d();
        j["d_pad"] = h.d_pad;
        j["lambda_mev"] = h.lambda;
        std::cout << j.dump(2) << "\n";
    } else {
        std::printf("terms: %zu table rows, D = %zu, D_pad = %zu, Lambda = %.9g MeV\n",
                    rows.size(), h.d(), h.d_pad, h.lambda);
    }
    return 0;
}

int cmd_verify_encoding(const std::string& ham_path, int particles, int twice_mj,
                        bool have_mj, const std::string& space_path, double tol,
                        bool as_json) {
    require_file(ham_path);
    const auto file = load_hamiltonian_json(ham_path);
    const auto h = hermitize(file.terms, file.n_sp);

    std::vector<FockState> basis;
    if (have_mj) {
        require_file(space_path);
        const auto orbitals = load_orbitals_json(space_path);
        basis = enumerate_sector(file.n_sp, SymmetrySector{particles, twice_mj},
                                 orbital_twice_m(orbitals));
    } else {
        basis = enumerate_particle_sector(file.n_sp, particles);
    }
    if (basis.empty()) throw std::runtime_error("requested sector is empty");

    const auto walk = make_walk_operator(h);
    RunStats stats;
    const Eigen::MatrixXcd block = block_encode_matrix(walk, basis, &stats);
    const Eigen::MatrixXcd fci = build_fci_matrix(h, basis);
    const Eigen::MatrixXcd dev = block * walk.scale() - fci;

    double max_dev = 0.0;
    std::size_t worst_g = 0, worst_f = 0;
    for (int g = 0; g < dev.rows(); ++g)
        for (int f = 0; f < dev.cols(); ++f)
            if (std::abs(dev(g, f)) > max_dev) {
                max_dev = std::abs(dev(g, f));
                worst_g = g;
                worst_f = f;
            }

    const bool pass = max_dev <= tol;
    const auto row = measure_costs(h);
    const RegisterLayout lay = walk.layout;
    if (as_json) {
        ordered_json j;
        j["pass"] = pass;
        j["max_deviation_mev"] = max_dev;
        j["d"] = h.d();
        j["d_pad"] = h.d_pad;
        j["lambda_mev"] = h.lambda;
        j["qubits"] = lay.width();
        j["basis_states"] = basis.size();
        j["gates_uh"] = row.uh_counts.total;
        j["support_high_water"] = stats.support_high_water;
        std::cout << j.dump(2) << "\n";
    } else {
        std::printf("D = %zu, D_pad = %zu, Lambda = %.9g MeV\n", h.d(), h.d_pad, h.lambda);
        std::printf("qubits: %d (id %d, s %d, cp %d, flags 6)\n", lay.width(),
                    lay.id_bits, lay.n_sp, lay.n_sp);
        std::printf("gates: O_F %zu, O_H %zu, U_H %zu (toffoli-equiv %zu)\n",
                    row.of_counts.total, row.oh_counts.total, row.uh_counts.total,
                    row.uh_counts.toffoli_equiv);
        std::printf("sparse support high water: %zu\n", stats.support_high_water);
        std::printf("max |<G,0|U_H|F,0> * D_pad*Lambda - FCI| = %.3e MeV over %zu^2 pairs\n",
                    max_dev, basis.size());
        if (pass) {
            std::printf("PASS (tol %.1e)\n", tol);
        } else {
            std::printf("FAIL (tol %.1e) at G=%s F=%s\n", tol,
                        basis[worst_g].to_string().c_str(),
                        basis[worst_f].to_string().c_str());
        }
    }
    return pass ? 0 : 1;
}

int cmd_solve(const std::string& manifest_path, const std::string& out_json,
              const std::string& out_csv, bool as_json) {
    require_file(manifest_path);
    const auto manifest = load_manifest_json(manifest_path);
    require_file(manifest.hamiltonian_path);
    const auto file = load_hamiltonian_json(manifest.hamiltonian_path);
    const auto h = hermitize(file.terms, file.n_sp);

    SolveOptions opts;
    opts.xi = manifest.xi;
    opts.k_start = manifest.k_start;
    opts.k_max = manifest.k_max;
    const auto result =
        solve_sector_spectrum(h, manifest.sectors, manifest.orbital_twice_m, opts);

    if (!out_json.empty()) write_result_json(out_json, result);
    if (!out_csv.empty()) write_spectrum_csv(out_csv, result);
    if (as_json) {
        std::cout << result_to_json(result);
    } else {
        std::printf("scale D_pad*Lambda = %.9g MeV\n", result.scale);
        std::printf("%-6s %-14s %-14s %s\n", "2MJ", "E_MeV", "Eex_MeV", "status");
        for (const auto& s : result.sectors) {
            if (!s.solved) {
                std::printf("%-6d %-14s %-14s error: %s\n", s.sector.twice_mj, "-", "-",
                            s.error.c_str());
                continue;
            }
            std::printf("%-6d %-14.9g %-14.9g K=%d%s\n", s.sector.twice_mj, s.lowest_mev,
                        s.lowest_mev - result.ground_mev, s.k_used,
                        s.converged ? "" : " (unconverged)");
        }
    }
    bool any = false;
    for (const auto& s : result.sectors) any = any || s.solved;
    return any ? 0 : 1;
}

int cmd_gate_report(const std::vector<int>& nsp_list, const std::string& out_csv,
                    bool as_json) {
    if (nsp_list.empty()) throw std::runtime_error("empty Hamiltonian family");
    std::vector<CircuitCostRow> rows;
    for (int n : nsp_list) {
        if (n < 2 || n % 2) throw std::runtime_error("pairing family needs even n_sp >= 2");
        ModelParams params;
        params.g = 1.0;
        params.chi = 0.0;
        rows.push_back(measure_costs(build_valence_hamiltonian(single_j_shell(n - 1), params)));
    }
    ordered_json j;
    j["family"] = "pairing";
    j["rows"] = ordered_json::array();
    for (const auto& r : rows) {
        j["rows"].push_back({{"n_sp", r.n_sp},
                             {"d", r.d},
                             {"d_pad", r.d_pad},
                             {"of_gates", r.of_counts.total},
                             {"oh_gates", r.oh_counts.total},
                             {"uh_gates", r.uh_counts.total},
                             {"uh_toffoli_equiv", r.uh_counts.toffoli_equiv}});
    }
    if (rows.size() >= 2) {
        const auto fit = fit_scaling(rows);
        j["fit"] = {{"of_vs_d", fit.of_vs_d},
                    {"oh_vs_d_nsp", fit.oh_vs_dn},
                    {"uh_vs_nsp", fit.uh_vs_nsp}};
    }
    if (!out_csv.empty()) {
        std::ofstream out(out_csv);
        if (!out) throw std::runtime_error("cannot write " + out_csv);
        out << "n_sp,d,d_pad,of_gates,oh_gates,uh_gates,uh_toffoli_equiv\n";
        for (const auto& r : rows)
            out << r.n_sp << ',' << r.d << ',' << r.d_pad << ',' << r.of_counts.total
                << ',' << r.oh_counts.total << ',' << r.uh_counts.total << ','
                << r.uh_counts.toffoli_equiv << '\n';
    }
    if (as_json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::printf("%-6s %-6s %-8s %-9s %-9s %-9s\n", "n_sp", "D", "D_pad", "O_F", "O_H",
                    "U_H");
        for (const auto& r : rows)
            std::printf("%-6d %-6zu %-8zu %-9zu %-9zu %-9zu\n", r.n_sp, r.d, r.d_pad,
                        r.of_counts.total, r.oh_counts.total, r.uh_counts.total);
        if (rows.size() >= 2) {
            const auto fit = fit_scaling(rows);
            std::printf("fit: O_F ~ D^%.3f, O_H ~ (D*N_sp)^%.3f, U_H ~ N_sp^%.3f\n",
                        fit.of_vs_d, fit.oh_vs_dn, fit.uh_vs_nsp);
        }
    }
    return 0;
}

int cmd_moments(const std::string& ham_path, int particles, int twice_mj,
                const std::string& space_path, int k_max, bool as_json) {
    require_file(ham_path);
    require_file(space_path);
    const auto file = load_hamiltonian_json(ham_path);
    const auto h = hermitize(file.terms, file.n_sp);
    const auto orbitals = load_orbitals_json(space_path);
    const auto basis = enumerate_sector(file.n_sp, SymmetrySector{particles, twice_mj},
                                        orbital_twice_m(orbitals));
    if (basis.empty()) throw std::runtime_error("requested sector is empty");

    std::size_t best = 0;
    for (std::size_t i = 1; i < basis.size(); ++i)
        if (diagonal_element(h, basis[i]) < diagonal_element(h, basis[best]) - 1e-15)
            best = i;

    const auto walk = make_walk_operator(h);
    MomentEngine engine(walk, basis[best]);
    engine.extend_to(k_max);
    if (as_json) {
        ordered_json j;
        j["pivot"] = basis[best].to_string();
        j["scale_mev"] = walk.scale();
        ordered_json re = ordered_json::array(), im = ordered_json::array();
        for (const auto& m : engine.moments()) {
            re.push_back(m.real());
            im.push_back(m.imag());
        }
        j["moments_re"] = re;
        j["moments_im"] = im;
        std::cout << j.dump(2) << "\n";
    } else {
        std::printf("pivot %s, scale %.9g MeV\n", basis[best].to_string().c_str(),
                    walk.scale());
        for (int k = 0; k <= k_max; ++k)
            std::printf("mu_%-3d = %.12g %+.3e i\n", k, engine.moment(k).real(),
                        engine.moment(k).imag());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Walk-state block encoding and symmetry-adapted Krylov spectra "
                 "for second-quantized fermion Hamiltonians"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable JSON output");

    auto* gen = app.add_subcommand("gen-hamiltonian",
                                   "generate the valence-space Hamiltonian");
    std::string space = data_path("sp_basis_0f7_2.json");
    std::string params = data_path("params_default.json");
    std::string out_json, out_csv;
    gen->add_option("--space", space, "valence-space orbital file (JSON)");
    gen->add_option("--params", params, "model parameter file (JSON)");
    gen->add_option("--out-json", out_json, "Hamiltonian interchange output path");
    gen->add_option("--out-csv", out_csv, "two-body table CSV output path");

    auto* verify = app.add_subcommand("verify-encoding",
                                      "check U_H against the FCI matrix");
    std::string ham;
    int particles = 2, twice_mj = 0;
    double tol = 1e-10;
    verify->add_option("--hamiltonian", ham, "Hamiltonian interchange file")->required();
    verify->add_option("--particles", particles, "particle number");
    auto* mj_opt = verify->add_option("--twice-mj", twice_mj, "restrict to a 2MJ sector");
    std::string verify_space = data_path("sp_basis_0f7_2.json");
    verify->add_option("--space", verify_space, "orbital file (for --twice-mj)");
    verify->add_option("--tol", tol, "deviation tolerance in MeV");

    auto* solve = app.add_subcommand("solve", "run the Krylov spectral pipeline");
    std::string manifest, solve_json, solve_csv;
    solve->add_option("--manifest", manifest, "run manifest (JSON)")->required();
    solve->add_option("--out-json", solve_json, "result JSON path");
    solve->add_option("--out-csv", solve_csv, "spectrum CSV path");

    auto* report = app.add_subcommand("gate-report", "gate-cost scaling over a family");
    std::vector<int> nsp_list;
    std::string report_csv;
    report->add_option("--nsp", nsp_list, "pairing-family sizes, e.g. --nsp 4 6 8")
        ->expected(-1);
    report->add_option("--out-csv", report_csv, "scaling CSV path");

    auto* moments = app.add_subcommand("moments", "dump raw Chebyshev moments");
    std::string mom_ham, mom_space = data_path("sp_basis_0f7_2.json");
    int mom_particles = 2, mom_twice_mj = 0, k_max = 16;
    moments->add_option("--hamiltonian", mom_ham, "Hamiltonian interchange file")
        ->required();
    moments->add_option("--space", mom_space, "orbital file");
    moments->add_option("--particles", mom_particles, "particle number");
    moments->add_option("--twice-mj", mom_twice_mj, "pivot sector 2MJ");
    moments->add_option("--kmax", k_max, "highest Chebyshev order");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed())
            return cmd_gen_hamiltonian(space, params, out_json, out_csv, as_json);
        if (verify->parsed())
            return cmd_verify_encoding(ham, particles, twice_mj, mj_opt->count() > 0,
                                       verify_space, tol, as_json);
        if (solve->parsed()) return cmd_solve(manifest, solve_json, solve_csv, as_json);
        if (report->parsed()) return cmd_gate_report(nsp_list, report_csv, as_json);
        if (moments->parsed())
            return cmd_moments(mom_ham, mom_particles, mom_twice_mj, mom_space, k_max,
                               as_json);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
