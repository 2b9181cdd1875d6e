#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "fermiwalk/fock.hpp"

namespace fermiwalk {

inline constexpr double kPruneThreshold = 1e-14;

/// Named register spans over a flat qubit index space. Packing, lowest bits
/// first: id, s, cp, e_p, e_q, zeta, me, b_p, b_q. Qubit 0 is the least
/// significant bit of a basis key.
struct RegisterLayout {
    int id_bits{0};
    int n_sp{0};

    int id0() const { return 0; }
    int s0() const { return id_bits; }
    int cp0() const { return id_bits + n_sp; }
    int ep() const { return id_bits + 2 * n_sp; }
    int eq() const { return ep() + 1; }
    int zeta() const { return ep() + 2; }
    int me() const { return ep() + 3; }
    int bp() const { return ep() + 4; }
    int bq() const { return ep() + 5; }
    int width() const { return id_bits + 2 * n_sp + 6; }

    std::uint64_t s_mask() const { return ((1ULL << n_sp) - 1ULL) << s0(); }
    std::uint64_t id_mask() const { return (1ULL << id_bits) - 1ULL; }
    std::uint64_t ancilla_mask() const {
        return (width() == 64 ? ~0ULL : (1ULL << width()) - 1ULL) & ~s_mask();
    }
    /// |F>_s |0>_a
    std::uint64_t key_for(const FockState& f) const { return f.bits << s0(); }
    FockState system_part(std::uint64_t key) const {
        return FockState((key >> s0()) & ((1ULL << n_sp) - 1ULL), n_sp);
    }

    static RegisterLayout for_hamiltonian(const SqHamiltonian& h);
    bool operator==(const RegisterLayout& o) const = default;
};

struct KeyHash {
    std::size_t operator()(std::uint64_t x) const noexcept {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return static_cast<std::size_t>(x ^ (x >> 31));
    }
};

using AmpMap = std::unordered_map<std::uint64_t, Complex, KeyHash>;

struct SparseState {
    RegisterLayout layout;
    AmpMap amps;

    static SparseState basis_state(const RegisterLayout& lay, std::uint64_t key);
    double norm() const;
    void prune(double eps = kPruneThreshold);
    std::size_t support() const { return amps.size(); }
    Complex amplitude(std::uint64_t key) const;
    /// Diagnostic dump: `bitstring re im` (qubit 0 first), sorted, |amp| >= 1e-12.
    std::string dump() const;
};

/// Layout mismatch is a programming fault.
Complex inner_product(const SparseState& a, const SparseState& b);

enum class GateKind { X, Z, PhaseOnZero, RotY, H, Swap };

/// One gate with an arbitrary open/closed control pattern. ctrl_mask selects
/// the control qubits; ctrl_val holds the required bit values within the mask.
struct Gate {
    GateKind kind{GateKind::X};
    int target{-1};
    int target2{-1};  // Swap only
    double angle{0.0};
    std::uint64_t ctrl_mask{0};
    std::uint64_t ctrl_val{0};

    static Gate x(int t);
    static Gate z(int t);
    static Gate phase_on_zero(int t, double theta);  // |0> -> e^{i theta}|0>
    static Gate rot_y(int t, double theta);
    static Gate h(int t);
    static Gate swap(int a, int b);

    Gate& control(int qubit, bool closed = true);
    Gate inverse() const;
    int control_count() const;
    /// Local gates map one key to one key (permutation or phase); H and any
    /// nontrivial RotY split keys.
    bool is_local() const;
    std::string name() const;
};

struct GateCounts {
    std::array<std::size_t, 6> per_kind{};
    std::size_t total{0};
    std::size_t controls_total{0};
    std::size_t multi_controlled{0};  // gates with >= 2 controls
    std::size_t toffoli_equiv{0};     // sum of max(0, 2c - 3) over gates
    void add(const Gate& g);
    bool operator==(const GateCounts&) const = default;
};

struct GateCircuit {
    int width{0};
    std::vector<Gate> gates;
    GateCounts counts;

    explicit GateCircuit(int w = 0) : width(w) {}
    void append(const Gate& g);
    void append(const GateCircuit& other);
    GateCircuit inverse() const;
    std::size_t size() const { return gates.size(); }
    /// Line-per-gate text export: NAME target[,target2] controls param.
    std::string export_text() const;
};

struct RunStats {
    std::size_t support_high_water{0};
    bool local_pass_grew_support{false};
    std::size_t passes{0};
    double final_norm{0.0};
};

/// Sequential exact application. Consecutive local gates are executed in one
/// pass over the amplitude map; splitting gates edit only the matching keys.
SparseState run_circuit(const SparseState& in, const GateCircuit& c,
                        RunStats* stats = nullptr);

SparseState apply_gate(const SparseState& in, const Gate& g);

}  // namespace fermiwalk
