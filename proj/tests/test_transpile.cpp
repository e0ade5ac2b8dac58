#include "doctest.h"

#include "dqc/backend.hpp"
#include "dqc/decompose.hpp"
#include "dqc/errors.hpp"
#include "dqc/transpile.hpp"

#include "oracles.hpp"

#include <numbers>
#include <random>

using namespace dqc;

namespace {

constexpr double kPi = std::numbers::pi;

const BackendSpec& athens() {
    static const BackendSpec spec = BackendRegistry::with_builtins().get("FakeAthensV2");
    return spec;
}
const BackendSpec& vigo() {
    static const BackendSpec spec = BackendRegistry::with_builtins().get("FakeVigoV2");
    return spec;
}

/// Checks compiled == permutation . (original ⊗ identity) up to global phase.
/// The compiled circuit may be wider than the original (routing scratch).
void check_routed_equivalence(const Circuit& original, const Circuit& compiled,
                              const QubitMap& final_map, double tol) {
    const uint32_t wide = compiled.num_qubits();
    Circuit padded(wide, original.num_clbits());
    for (const Instruction& instr : original.instructions()) padded.append(instr);
    // Undo the final permutation with SWAP gates appended to the compiled circuit.
    Circuit undone(wide, compiled.num_clbits());
    for (const Instruction& instr : compiled.instructions()) undone.append(instr);
    QubitMap map = final_map;
    for (uint32_t logical = 0; logical < map.size(); ++logical) {
        const uint32_t phys = map.physical(logical);
        if (phys != logical) {
            undone.swap(logical, phys);
            map.swap_physical(logical, phys);
        }
    }
    CHECK(test::unitary_distance_up_to_phase(test::circuit_unitary(padded),
                                             test::circuit_unitary(undone)) < tol);
}

}  // namespace

TEST_CASE("routing leaves coupled gates alone") {
    Circuit c(5, 0);
    c.cx(0, 1);
    const RouteResult routed = route(c, athens(), QubitMap());
    CHECK(routed.circuit.instructions().size() == 1);
    CHECK(routed.final_map == QubitMap::identity(5));
}

TEST_CASE("routing inserts one swap for distance two") {
    Circuit c(5, 0);
    c.cx(0, 2);
    const RouteResult routed = route(c, athens(), QubitMap());
    REQUIRE(routed.circuit.instructions().size() == 2);
    CHECK(routed.circuit.instructions()[0].kind == GateKind::Swap);
    CHECK(routed.circuit.instructions()[0].qubits == std::vector<uint32_t>{0, 1});
    const auto& cx = routed.circuit.instructions()[1];
    CHECK(cx.kind == GateKind::CX);
    CHECK(athens().has_edge(cx.qubits[0], cx.qubits[1]));
    check_routed_equivalence(c, routed.circuit, routed.final_map, 1e-12);
}

TEST_CASE("single-qubit circuits route untouched") {
    Circuit c(5, 0);
    c.h(0);
    c.rz(3, 0.5);
    const RouteResult routed = route(c, vigo(), QubitMap());
    CHECK(routed.circuit.instructions().size() == 2);
    CHECK(routed.final_map == QubitMap::identity(5));
}

TEST_CASE("routing preserves semantics on random circuits") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 15; ++trial) {
        test::RandomCircuitOptions opt;
        opt.num_qubits = 4 + trial % 2;
        opt.num_instructions = 18;
        const Circuit c = test::random_circuit(rng, opt);
        const BackendSpec& spec = trial % 2 ? vigo() : athens();
        const RouteResult routed = route(c, spec, QubitMap());
        for (const Instruction& instr : routed.circuit.instructions()) {
            if (instr.qubits.size() == 2 && instr.kind != GateKind::Barrier) {
                CHECK(spec.has_edge(instr.qubits[0], instr.qubits[1]));
            }
        }
        check_routed_equivalence(c, routed.circuit, routed.final_map, 1e-9);
    }
}

TEST_CASE("comm wires are exempt from routing") {
    // Wires 2 and 3 are communication wires on a 5-qubit device: a gate on
    // them must pass through untouched even though (2, 4) is not an edge.
    Circuit c(5, 0);
    c.cx(0, 1);  // data-data, coupled
    c.h(2);      // comm wire
    RouteOptions opt;
    opt.num_data = 2;
    opt.num_comm = 2;
    const RouteResult routed = route(c, vigo(), QubitMap(), opt);
    CHECK(routed.circuit.instructions()[1].qubits == std::vector<uint32_t>{2});
}

TEST_CASE("basis translation rules match the matrices") {
    const std::set<GateKind> zsx = {GateKind::RZ, GateKind::SX, GateKind::X, GateKind::CX};
    const std::set<GateKind> zrx = {GateKind::RZ, GateKind::RX, GateKind::CX};

    SUBCASE("h expands to rz sx rz") {
        Circuit c(1, 0);
        c.h(0);
        const Circuit t = translate_basis(c, zsx);
        REQUIRE(t.size() == 3);
        CHECK(t.instructions()[0].kind == GateKind::RZ);
        CHECK(t.instructions()[0].angle == doctest::Approx(kPi / 2));
        CHECK(t.instructions()[1].kind == GateKind::SX);
        CHECK(t.instructions()[2].kind == GateKind::RZ);
        CHECK(test::unitary_distance_up_to_phase(test::circuit_unitary(c),
                                                 test::circuit_unitary(t)) < 1e-12);
    }
    SUBCASE("native gates pass through") {
        Circuit c(1, 0);
        c.rz(0, 0.7);
        CHECK(translate_basis(c, zsx) == c);
    }
    SUBCASE("cz must be pre-lowered") {
        Circuit c(2, 0);
        c.cz(0, 1);
        CHECK_THROWS_AS(translate_basis(c, zsx), TranslationError);
        Circuit t(3, 0);
        t.ccx(0, 1, 2);
        CHECK_THROWS_AS(translate_basis(t, zsx), TranslationError);
    }
    SUBCASE("every single-qubit rule is exact up to phase, both flavors") {
        std::vector<Instruction> gates;
        for (GateKind kind : {GateKind::H, GateKind::X, GateKind::Y, GateKind::Z, GateKind::S,
                              GateKind::Sdg, GateKind::T, GateKind::Tdg, GateKind::SX}) {
            Instruction g;
            g.kind = kind;
            g.qubits = {0};
            gates.push_back(g);
        }
        for (GateKind kind : {GateKind::RX, GateKind::RY, GateKind::RZ}) {
            for (double angle : {0.3, -1.1, kPi, 2.7}) {
                Instruction g;
                g.kind = kind;
                g.qubits = {0};
                g.angle = angle;
                gates.push_back(g);
            }
        }
        for (const auto& basis : {zsx, zrx}) {
            for (const Instruction& g : gates) {
                Circuit c(1, 0);
                c.append(g);
                const Circuit t = translate_basis(c, basis);
                for (const Instruction& instr : t.instructions()) {
                    CHECK(basis.count(instr.kind) == 1);
                }
                CHECK(test::unitary_distance_up_to_phase(test::circuit_unitary(c),
                                                         test::circuit_unitary(t)) < 1e-12);
            }
        }
    }
    SUBCASE("swap lowers to three cx") {
        Circuit c(2, 0);
        c.swap(0, 1);
        const Circuit t = translate_basis(c, zsx);
        CHECK(t.size() == 3);
        CHECK(test::unitary_distance_up_to_phase(test::circuit_unitary(c),
                                                 test::circuit_unitary(t)) < 1e-12);
    }
    SUBCASE("two-qubit circuits survive translation") {
        std::mt19937_64 rng(77);
        for (int trial = 0; trial < 10; ++trial) {
            test::RandomCircuitOptions opt;
            opt.num_qubits = 2;
            opt.num_instructions = 10;
            const Circuit c = test::random_circuit(rng, opt);
            const Circuit lowered = decompose_multiqubit(c);
            for (const auto& basis : {zsx, zrx}) {
                const Circuit t = translate_basis(lowered, basis);
                CHECK(test::unitary_distance_up_to_phase(test::circuit_unitary(c),
                                                         test::circuit_unitary(t)) < 1e-10);
            }
        }
    }
}

TEST_CASE("optimize_1q") {
    SUBCASE("adjacent rz merge") {
        Circuit c(1, 0);
        c.rz(0, kPi / 4);
        c.rz(0, kPi / 4);
        const Circuit o = optimize_1q(c);
        REQUIRE(o.size() == 1);
        CHECK(o.instructions()[0].angle == doctest::Approx(kPi / 2));
    }
    SUBCASE("inverse pairs cancel") {
        Circuit c(1, 0);
        c.x(0);
        c.x(0);
        CHECK(optimize_1q(c).empty());

        Circuit d(1, 0);
        d.rz(0, 0.4);
        d.rz(0, -0.4);
        CHECK(optimize_1q(d).empty());
    }
    SUBCASE("cancellation cascades through removed pairs") {
        Circuit c(1, 0);
        c.rz(0, 0.25);
        c.x(0);
        c.x(0);
        c.rz(0, -0.25);
        CHECK(optimize_1q(c).empty());
    }
    SUBCASE("placeholders are opaque") {
        Circuit c(1, 0);
        c.rz(0, kPi);
        Instruction ph;
        ph.kind = GateKind::RemotePlaceholder;
        ph.qubits = {0};
        ph.remote_id = 0;
        c.append(ph);
        c.rz(0, -kPi);
        CHECK(optimize_1q(c) == c);
    }
    SUBCASE("measurements, resets and barriers are walls") {
        Circuit c(1, 1);
        c.x(0);
        c.measure(0, 0);
        c.x(0);
        CHECK(optimize_1q(c).size() == 3);

        Circuit d(2, 0);
        d.rz(0, 0.5);
        d.cx(0, 1);
        d.rz(0, 0.5);
        CHECK(optimize_1q(d).size() == 3);  // cx blocks the merge
    }
    SUBCASE("disjoint gates in between do not block") {
        Circuit c(2, 0);
        c.rz(0, 0.5);
        c.h(1);
        c.rz(0, 0.5);
        const Circuit o = optimize_1q(c);
        CHECK(o.size() == 2);
    }
    SUBCASE("semantics preserved on random circuits") {
        std::mt19937_64 rng(4242);
        for (int trial = 0; trial < 20; ++trial) {
            test::RandomCircuitOptions opt;
            opt.num_qubits = 3;
            opt.num_instructions = 25;
            const Circuit c = test::random_circuit(rng, opt);
            CHECK(test::unitary_distance_up_to_phase(test::circuit_unitary(c),
                                                     test::circuit_unitary(optimize_1q(c))) <
                  1e-10);
        }
    }
}

TEST_CASE("compile_subcircuit") {
    SUBCASE("empty circuit compiles to an empty circuit") {
        const Circuit c(3, 0);
        const CompiledSubcircuit compiled = compile_subcircuit(c, vigo());
        CHECK(compiled.circuit.empty());
        CHECK_NOTHROW(check_conformance(compiled, vigo()));
    }
    SUBCASE("unfrozen placeholders are rejected") {
        Circuit c(2, 0);
        Instruction ph;
        ph.kind = GateKind::RemotePlaceholder;
        ph.qubits = {0};
        ph.remote_id = 3;
        c.append(ph);
        CHECK_THROWS_AS(compile_subcircuit(c, vigo()), CompileError);
        Circuit frozen(2, 0);
        ph.anchored = true;
        frozen.append(ph);
        const CompiledSubcircuit compiled = compile_subcircuit(frozen, vigo());
        REQUIRE(compiled.placeholder_positions.count(3) == 1);
        CHECK(compiled.placeholder_positions.at(3).second == 0);
    }
    SUBCASE("compiled output is conformant and equivalent") {
        std::mt19937_64 rng(9000);
        for (int trial = 0; trial < 10; ++trial) {
            test::RandomCircuitOptions opt;
            opt.num_qubits = 4;
            opt.num_instructions = 15;
            const Circuit c = test::random_circuit(rng, opt);
            const BackendSpec& spec = trial % 2 ? vigo() : athens();
            // Multi-qubit lowering runs before backend compilation.
            const CompiledSubcircuit compiled = compile_subcircuit(decompose_multiqubit(c), spec);
            CHECK_NOTHROW(check_conformance(compiled, spec));
            check_routed_equivalence(c, compiled.circuit, compiled.final_map, 1e-9);
        }
    }
    SUBCASE("deterministic output") {
        std::mt19937_64 rng(11);
        test::RandomCircuitOptions opt;
        opt.num_qubits = 5;
        opt.num_instructions = 30;
        const Circuit c = decompose_multiqubit(test::random_circuit(rng, opt));
        const CompiledSubcircuit a = compile_subcircuit(c, vigo());
        const CompiledSubcircuit b = compile_subcircuit(c, vigo());
        CHECK(a.circuit == b.circuit);
    }
}
