#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <stdexcept>

#include "fermiwalk/sparse_state.hpp"
#include "oracles.hpp"

using namespace fermiwalk;

namespace {

RegisterLayout tiny_layout(int qubits) {
    // Register names are irrelevant here; fabricate a layout of the
    // requested total width (>= 6, the flag block) with raw qubit indices.
    RegisterLayout lay;
    lay.id_bits = qubits - 6;
    lay.n_sp = 0;
    if (qubits < 6) throw std::invalid_argument("tiny_layout: width < 6");
    return lay;
}

GateCircuit random_circuit(std::mt19937_64& rng, int qubits, int n_gates) {
    GateCircuit c(qubits);
    std::uniform_int_distribution<int> kind(0, 5);
    std::uniform_int_distribution<int> qubit(0, qubits - 1);
    std::uniform_real_distribution<double> angle(-M_PI, M_PI);
    std::uniform_int_distribution<int> n_ctrl(0, 2);
    for (int i = 0; i < n_gates; ++i) {
        const int t = qubit(rng);
        Gate g = Gate::x(t);
        switch (kind(rng)) {
            case 0: g = Gate::x(t); break;
            case 1: g = Gate::z(t); break;
            case 2: g = Gate::phase_on_zero(t, angle(rng)); break;
            case 3: g = Gate::rot_y(t, angle(rng)); break;
            case 4: g = Gate::h(t); break;
            case 5: {
                int t2 = qubit(rng);
                while (t2 == t) t2 = qubit(rng);
                g = Gate::swap(t, t2);
                break;
            }
        }
        for (int k = n_ctrl(rng); k > 0; --k) {
            const int q = qubit(rng);
            if (q == t || q == g.target2 || (g.ctrl_mask >> q & 1)) continue;
            g.control(q, rng() & 1);
        }
        c.append(g);
    }
    return c;
}

SparseState random_state(std::mt19937_64& rng, const RegisterLayout& lay, int n_keys) {
    SparseState s;
    s.layout = lay;
    std::uniform_int_distribution<std::uint64_t> keys(0, (1ULL << lay.width()) - 1);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    while (static_cast<int>(s.amps.size()) < n_keys)
        s.amps[keys(rng)] = Complex(amp(rng), amp(rng));
    double n = s.norm();
    for (auto& [k, a] : s.amps) a /= n;
    return s;
}

}  // namespace

TEST_CASE("single-qubit gate actions") {
    const auto lay = tiny_layout(6);
    auto s = SparseState::basis_state(lay, 0);

    auto x = apply_gate(s, Gate::x(0));
    CHECK(x.amplitude(1) == Complex(1.0, 0.0));

    auto h = apply_gate(s, Gate::h(0));
    CHECK(h.amplitude(0).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(h.amplitude(1).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(h.norm() == doctest::Approx(1.0).epsilon(1e-15));

    auto z = apply_gate(x, Gate::z(0));
    CHECK(z.amplitude(1) == Complex(-1.0, 0.0));

    auto p = apply_gate(s, Gate::phase_on_zero(0, M_PI / 2.0));
    CHECK(p.amplitude(0).imag() == doctest::Approx(1.0));
}

TEST_CASE("multi-controlled X with open controls matches the dense oracle") {
    const auto lay = tiny_layout(6);
    Gate mcx = Gate::x(2).control(0, false).control(1, false);
    // |00,1> -> |00,0>
    auto s = SparseState::basis_state(lay, 0b100);
    auto r = apply_gate(s, mcx);
    CHECK(r.amplitude(0b000) == Complex(1.0, 0.0));

    std::mt19937_64 rng(0x5eed1001ULL);
    for (int it = 0; it < 50; ++it) {
        auto in = random_state(rng, lay, 5);
        auto out = apply_gate(in, mcx);
        oracles::DenseState d = oracles::DenseState::basis(6, 0);
        d.amps.assign(64, Complex(0, 0));
        for (const auto& [k, a] : in.amps) d.amps[k] = a;
        oracles::dense_apply(d, mcx);
        for (std::uint64_t k = 0; k < 64; ++k)
            CHECK(std::abs(out.amplitude(k) - d.amps[k]) < 1e-14);
    }
}

TEST_CASE("empty circuit is the identity") {
    const auto lay = tiny_layout(6);
    auto s = SparseState::basis_state(lay, 0b1010);
    auto r = run_circuit(s, GateCircuit(lay.width()));
    CHECK(r.amplitude(0b1010) == Complex(1.0, 0.0));
    CHECK(r.support() == 1);
}

TEST_CASE("circuit followed by its inverse restores the state") {
    std::mt19937_64 rng(0x5eed1002ULL);
    const auto lay = tiny_layout(6);
    for (int it = 0; it < 20; ++it) {
        const auto c = random_circuit(rng, lay.width(), 40);
        const auto s = random_state(rng, lay, 8);
        auto r = run_circuit(run_circuit(s, c), c.inverse());
        for (const auto& [k, a] : s.amps) CHECK(std::abs(r.amplitude(k) - a) < 1e-12);
        CHECK(r.norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("sparse agrees with dense on random circuits up to 12 qubits") {
    std::mt19937_64 rng(0x5eed1003ULL);
    for (int qubits : {6, 8, 12}) {
        const auto lay = tiny_layout(qubits);
        REQUIRE(lay.width() == qubits);
        for (int it = 0; it < 6; ++it) {
            const auto c = random_circuit(rng, qubits, 60);
            const std::uint64_t k0 = rng() & ((1ULL << qubits) - 1);
            auto sparse = run_circuit(SparseState::basis_state(lay, k0), c);
            auto dense = oracles::dense_run(oracles::DenseState::basis(qubits, k0), c);
            for (std::uint64_t k = 0; k < dense.amps.size(); ++k)
                CHECK(std::abs(sparse.amplitude(k) - dense.amps[k]) < 1e-12);
        }
    }
}

TEST_CASE("norm conservation and support accounting") {
    std::mt19937_64 rng(0x5eed1004ULL);
    const auto lay = tiny_layout(10);
    for (int it = 0; it < 10; ++it) {
        const auto c = random_circuit(rng, lay.width(), 120);
        RunStats stats;
        auto r = run_circuit(random_state(rng, lay, 16), c, &stats);
        CHECK(std::abs(stats.final_norm - 1.0) < 1e-12);
        CHECK(!stats.local_pass_grew_support);
        CHECK(stats.support_high_water >= r.support());
        for (const auto& [k, a] : r.amps) CHECK(std::abs(a) >= kPruneThreshold);
    }
}

TEST_CASE("permutation-only circuits preserve support size") {
    std::mt19937_64 rng(0x5eed1005ULL);
    const auto lay = tiny_layout(8);
    GateCircuit c(lay.width());
    std::uniform_int_distribution<int> qubit(0, 7);
    for (int i = 0; i < 50; ++i) {
        const int t = qubit(rng);
        Gate g = (i % 3 == 0) ? Gate::swap(t, (t + 1) % 8) : Gate::x(t);
        const int ctrl = qubit(rng);
        if (ctrl != g.target && ctrl != g.target2) g.control(ctrl, rng() & 1);
        c.append(g);
    }
    const auto in = random_state(rng, lay, 20);
    RunStats stats;
    const auto out = run_circuit(in, c, &stats);
    CHECK(out.support() <= in.support());
    CHECK(!stats.local_pass_grew_support);
}

TEST_CASE("inner products") {
    const auto lay = tiny_layout(6);
    std::mt19937_64 rng(0x5eed1006ULL);
    const auto psi = random_state(rng, lay, 8);
    CHECK(inner_product(psi, psi).real() == doctest::Approx(1.0).epsilon(1e-14));

    const auto a = SparseState::basis_state(lay, 3);
    const auto b = SparseState::basis_state(lay, 5);
    CHECK(std::abs(inner_product(a, b)) == 0.0);

    // dense cross-check on a random pair
    const auto phi = random_state(rng, lay, 8);
    Complex dense{0.0, 0.0};
    for (std::uint64_t k = 0; k < 64; ++k)
        dense += std::conj(psi.amplitude(k)) * phi.amplitude(k);
    CHECK(std::abs(inner_product(psi, phi) - dense) < 1e-14);

    SparseState other;
    other.layout = tiny_layout(7);
    other.amps[0] = 1.0;
    CHECK_THROWS(inner_product(psi, other));
}

TEST_CASE("gate counters equal replayed tallies") {
    std::mt19937_64 rng(0x5eed1007ULL);
    const auto c = random_circuit(rng, 8, 200);
    GateCounts replay;
    for (const auto& g : c.gates) replay.add(g);
    CHECK(c.counts == replay);
    CHECK(c.counts.total == 200);
}

TEST_CASE("circuit export is stable line-per-gate text") {
    GateCircuit c(4);
    c.append(Gate::x(2).control(0, true).control(1, false));
    c.append(Gate::rot_y(3, 0.5));
    c.append(Gate::swap(0, 1));
    const std::string text = c.export_text();
    CHECK(text == "X 2 0+,1-\nRY 3 - 0.5\nSWAP 0,1 -\n");
}

TEST_CASE("gate validation") {
    GateCircuit c(3);
    CHECK_THROWS(c.append(Gate::x(3)));
    CHECK_THROWS(c.append(Gate::x(1).control(1, true)));
    Gate g = Gate::x(0);
    g.control(1, true);
    CHECK_THROWS(g.control(1, false));
}

TEST_CASE("state dump is sorted and thresholded") {
    const auto lay = tiny_layout(6);
    SparseState s;
    s.layout = lay;
    s.amps[0b10] = Complex(0.6, 0.0);
    s.amps[0b01] = Complex(0.8, 0.0);
    s.amps[0b11] = Complex(1e-13, 0.0);
    const auto text = s.dump();
    CHECK(text == "100000 0.80000000000000004 0\n010000 0.59999999999999998 0\n");
}
