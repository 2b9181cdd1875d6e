#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fermiwalk/fock.hpp"
#include "fermiwalk/nuclear.hpp"
#include "fermiwalk/qksd.hpp"

namespace fermiwalk {

struct HamiltonianFile {
    int n_sp{0};
    std::vector<HamiltonianTerm> terms;  // upper half
};

/// { "n_sp": int, "terms": [ { "q": [...], "p": [...], "re": x, "im": y } ] }
HamiltonianFile load_hamiltonian_json(const std::string& path);
void save_hamiltonian_json(const std::string& path, const HamiltonianFile& file);

/// Valence-space file: [ { "n", "l", "twice_j", "twice_m", "twice_tau" } ]
std::vector<SpOrbital> load_orbitals_json(const std::string& path);

/// { "g", "chi", "hbar_omega", "m_n" }; missing keys keep defaults.
ModelParams load_params_json(const std::string& path);

/// CSV rows `i,p,q,u,v,value`; a header line is tolerated.
std::vector<TwoBodyRow> read_two_body_csv(const std::string& path);
void write_two_body_csv(const std::string& path, const std::vector<TwoBodyRow>& rows);

/// Upper-half terms from a full both-orders table. Mirror rows must agree
/// within tol or the table is rejected as non-Hermitian.
std::vector<HamiltonianTerm> upper_terms_from_table(const std::vector<TwoBodyRow>& rows,
                                                    double tol = 5e-6);

struct RunManifest {
    std::string hamiltonian_path;
    std::vector<SymmetrySector> sectors;
    std::vector<int> orbital_twice_m;
    double xi{1e-12};
    int k_start{2};
    int k_max{0};
    long shots{0};
    std::uint64_t seed{0};
};

RunManifest load_manifest_json(const std::string& path);

/// Deterministic result document (no timing; identical runs are byte-identical).
std::string result_to_json(const SpectralResult& result);
void write_result_json(const std::string& path, const SpectralResult& result);

/// CSV `J,E_MeV,Eex_MeV`, one row per solved sector, excitations relative to
/// the global minimum.
void write_spectrum_csv(const std::string& path, const SpectralResult& result);

}  // namespace fermiwalk
