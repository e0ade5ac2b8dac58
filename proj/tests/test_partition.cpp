#include "doctest.h"

#include "dqc/bench.hpp"
#include "dqc/decompose.hpp"
#include "dqc/errors.hpp"
#include "dqc/partition.hpp"

#include "oracles.hpp"

#include <map>
#include <random>

using namespace dqc;

namespace {

std::map<std::string, std::string> default_backends() {
    return {{"Q0", "FakeVigoV2"}, {"Q1", "FakeAthensV2"}, {"Q2", "FakeLagosV2"}};
}

/// Per-qubit instruction order must survive the projection into groups:
/// for every qubit, the gates touching it in the lowered circuit appear in
/// the same order in its group's local circuit (placeholders included).
void check_projection_consistency(const Circuit& lowered, const PartitionPlan& plan,
                                  const std::vector<LogicalGroup>& groups) {
    for (uint32_t q = 0; q < lowered.num_qubits(); ++q) {
        const int g = plan.group_of(q);
        REQUIRE(g >= 0);
        const LogicalGroup& group = groups[static_cast<size_t>(g)];
        const uint32_t local = group.local_of(q);

        std::vector<GateKind> global_seq;
        for (const Instruction& instr : lowered.instructions()) {
            for (uint32_t iq : instr.qubits) {
                if (iq == q) global_seq.push_back(instr.kind);
            }
        }
        std::vector<GateKind> local_seq;
        for (const Instruction& instr : group.local_circuit.instructions()) {
            for (uint32_t iq : instr.qubits) {
                if (iq == local) local_seq.push_back(instr.kind);
            }
        }
        CHECK(global_seq == local_seq);
    }
}

}  // namespace

TEST_CASE("parse_qubit_range") {
    CHECK(parse_qubit_range("q3") == std::vector<uint32_t>{3});
    CHECK(parse_qubit_range("q0-q2") == std::vector<uint32_t>{0, 1, 2});
    CHECK_THROWS_AS(parse_qubit_range("3"), ConfigError);
    CHECK_THROWS_AS(parse_qubit_range("q2-q0"), ConfigError);
}

TEST_CASE("plan validation") {
    auto plan = make_plan("q0-q1|q2-q3|q4-q5", {"Q0", "Q1", "Q2"}, default_backends());
    CHECK_NOTHROW(plan.validate(6));
    CHECK_THROWS_AS(plan.validate(7), ConfigError);   // q6 uncovered
    CHECK_THROWS_AS(plan.validate(5), ConfigError);   // q5 out of range

    auto overlap = make_plan("q0-q2|q2-q5", {"Q0", "Q1"}, default_backends());
    CHECK_THROWS_AS(overlap.validate(6), ConfigError);

    auto missing_backend = make_plan("q0-q2|q3-q5", {"Q0", "QX"}, default_backends());
    CHECK_THROWS_AS(missing_backend.validate(6), ConfigError);
}

TEST_CASE("partition file parsing") {
    const PartitionPlan plan = parse_partition(R"({
        "partitions": [["q0-q1"], ["q2-q3"], ["q4-q5"]],
        "assignment": ["Q0", "Q1", "Q2"],
        "backends": {"Q0": "FakeVigoV2", "Q1": "FakeAthensV2", "Q2": "FakeLagosV2"}
    })");
    CHECK(plan.groups.size() == 3);
    CHECK(plan.groups[1] == std::vector<uint32_t>{2, 3});
    CHECK(plan.backend_name(2) == "FakeLagosV2");
    CHECK(plan.describe_partitions() == "q0-q1|q2-q3|q4-q5");
    CHECK_THROWS_AS(parse_partition("{"), ConfigError);
    CHECK_THROWS_AS(parse_partition("{}"), ConfigError);
}

TEST_CASE("lower_to_remote on the ghz chain") {
    const Circuit ghz = gen_ghz(6);
    const auto plan = make_plan("q0-q1|q2-q3|q4-q5", {"Q0", "Q1", "Q2"}, default_backends());
    const auto [lowered, remotes] = lower_to_remote(ghz, plan);

    REQUIRE(remotes.size() == 2);
    CHECK(remotes[0].control == 1);
    CHECK(remotes[0].target == 2);
    CHECK(remotes[0].control_group == 0);
    CHECK(remotes[0].target_group == 1);
    CHECK(remotes[1].control == 3);
    CHECK(remotes[1].target == 4);
    CHECK(remotes[1].control_group == 1);
    CHECK(remotes[1].target_group == 2);
    CHECK(count_comm_qubits(remotes) == 4);

    size_t placeholders = 0;
    for (const Instruction& instr : lowered.instructions()) {
        if (instr.kind == GateKind::RemotePlaceholder) ++placeholders;
    }
    CHECK(placeholders == 2);
}

TEST_CASE("single group produces no remote gates") {
    const Circuit ghz = gen_ghz(4);
    const auto plan = make_plan("q0-q3", {"Q2"}, default_backends());
    const auto [lowered, remotes] = lower_to_remote(ghz, plan);
    CHECK(remotes.empty());
    CHECK(count_comm_qubits(remotes) == 0);
    CHECK(lowered == decompose_multiqubit(ghz));
}

TEST_CASE("cross-partition cz lowers to h-conjugated remote cx") {
    Circuit c(3, 0);
    c.cz(0, 2);
    const auto plan = make_plan("q0|q1-q2", {"Q0", "Q1"}, default_backends());
    const auto [lowered, remotes] = lower_to_remote(c, plan);
    REQUIRE(lowered.size() == 3);
    CHECK(lowered.instructions()[0].kind == GateKind::H);
    CHECK(lowered.instructions()[0].qubits == std::vector<uint32_t>{2});
    CHECK(lowered.instructions()[1].kind == GateKind::RemotePlaceholder);
    CHECK(lowered.instructions()[2].kind == GateKind::H);
    REQUIRE(remotes.size() == 1);
    CHECK(remotes[0].control == 0);
    CHECK(remotes[0].target == 2);
}

TEST_CASE("build_groups projects the lowered circuit") {
    const Circuit ghz = gen_ghz(6);
    const auto plan = make_plan("q0-q1|q2-q3|q4-q5", {"Q0", "Q1", "Q2"}, default_backends());
    const auto [lowered, remotes] = lower_to_remote(ghz, plan);
    const auto groups = build_groups(lowered, plan);
    REQUIRE(groups.size() == 3);

    // Group 0: H(0), CX(0,1), control-side marker, two measurements.
    const auto& g0 = groups[0].local_circuit.instructions();
    REQUIRE(g0.size() == 5);
    CHECK(g0[0].kind == GateKind::H);
    CHECK(g0[1].kind == GateKind::CX);
    CHECK(g0[2].kind == GateKind::RemotePlaceholder);
    CHECK(g0[2].side == RemoteSide::Control);
    CHECK(g0[2].qubits == std::vector<uint32_t>{1});
    CHECK(g0[3].kind == GateKind::Measure);
    CHECK(g0[4].kind == GateKind::Measure);
    CHECK(groups[0].remote_refs == std::vector<int64_t>{0});

    // Group 1 receives remote 0 and controls remote 1.
    CHECK(groups[1].remote_refs == std::vector<int64_t>{0, 1});
    CHECK(groups[2].remote_refs == std::vector<int64_t>{1});

    check_projection_consistency(lowered, plan, groups);

    // Data-qubit bookkeeping: the groups partition the register exactly.
    size_t total = 0;
    for (const auto& g : groups) total += g.data_qubits.size();
    CHECK(total == 6);
}

TEST_CASE("build_groups keeps an idle partition") {
    Circuit c(3, 0);
    c.h(0);
    const auto plan = make_plan("q0|q1-q2", {"Q0", "Q1"}, default_backends());
    const auto [lowered, remotes] = lower_to_remote(c, plan);
    const auto groups = build_groups(lowered, plan);
    CHECK(remotes.empty());
    CHECK(groups[1].local_circuit.empty());
    CHECK(groups[1].local_circuit.num_qubits() == 2);
}

TEST_CASE("projection consistency on random circuits") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        test::RandomCircuitOptions opt;
        opt.num_qubits = 6;
        opt.num_clbits = 4;
        opt.num_instructions = 40;
        opt.unitary_only = false;
        const Circuit c = test::random_circuit(rng, opt);
        const auto plan = make_plan(trial % 2 ? "q0-q1|q2-q3|q4-q5" : "q0-q2|q3-q5",
                                    trial % 2 ? std::vector<std::string>{"Q0", "Q1", "Q2"}
                                              : std::vector<std::string>{"Q0", "Q1"},
                                    default_backends());
        const auto [lowered, remotes] = lower_to_remote(c, plan);
        const auto groups = build_groups(lowered, plan);
        check_projection_consistency(lowered, plan, groups);
    }
}
