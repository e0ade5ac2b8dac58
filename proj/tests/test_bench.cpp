#include "doctest.h"

#include "dqc/bench.hpp"
#include "dqc/errors.hpp"
#include "dqc/partition.hpp"
#include "dqc/pipeline.hpp"
#include "dqc/sim.hpp"

using namespace dqc;

TEST_CASE("ghz generator") {
    const Circuit bell = gen_ghz(2);
    CHECK(bell.size() == 4);  // h, cx, 2 measures
    const Distribution ideal = ideal_distribution(bell);
    CHECK(ideal.at("00") == doctest::Approx(0.5));
    CHECK(ideal.at("11") == doctest::Approx(0.5));

    const Circuit big = gen_ghz(12);
    CHECK(big.num_qubits() == 12);
    CHECK(big.size() == 1 + 11 + 12);
}

TEST_CASE("bitcode generator") {
    SUBCASE("published configuration is deterministic") {
        const Circuit c = gen_bitcode(3, 2, {0, 1, 0});
        CHECK(c.num_qubits() == 5);
        SimOptions opt;
        opt.key_bits = {0, 1, 2, 3, 4};
        const Distribution ideal = ideal_distribution(c, opt);
        REQUIRE(ideal.size() == 1);
        CHECK(ideal.at("00100") == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("zero rounds emit no syndrome gates") {
        const Circuit c = gen_bitcode(3, 0, {0, 0, 0});
        for (const Instruction& instr : c.instructions()) {
            CHECK(instr.kind != GateKind::CX);
            CHECK(instr.kind != GateKind::Reset);
        }
        SimOptions opt;
        opt.key_bits = {0, 1, 2, 3, 4};
        CHECK(ideal_distribution(c, opt).at("00000") == doctest::Approx(1.0));
    }
}

TEST_CASE("tfim generator") {
    SUBCASE("vanishing couplings leave |111>") {
        const Circuit c = gen_tfim(3, 3, 0.0, 0.0, 0.2);
        const Distribution ideal = ideal_distribution(c);
        REQUIRE(ideal.count("111") == 1);
        CHECK(ideal.at("111") == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("structure: x layer, zz blocks, rx layer") {
        const Circuit c = gen_tfim(3, 3);
        size_t cx = 0, rz = 0, rx = 0, x = 0;
        for (const Instruction& instr : c.instructions()) {
            if (instr.kind == GateKind::CX) ++cx;
            if (instr.kind == GateKind::RZ) ++rz;
            if (instr.kind == GateKind::RX) ++rx;
            if (instr.kind == GateKind::X) ++x;
        }
        CHECK(x == 3);
        CHECK(cx == 3 * 2 * 2);  // steps * pairs * 2
        CHECK(rz == 3 * 2);
        CHECK(rx == 3 * 3);
    }
}

TEST_CASE("qaoa generator") {
    SUBCASE("zero angles give the uniform distribution") {
        const Circuit c = gen_qaoa(4, 0.0, 0.0);
        const Distribution ideal = ideal_distribution(c);
        CHECK(ideal.size() == 16);
        for (const auto& [state, prob] : ideal) {
            (void)state;
            CHECK(prob == doctest::Approx(1.0 / 16).epsilon(1e-9));
        }
    }
    SUBCASE("complete-graph pair count") {
        const Circuit c = gen_qaoa(10);
        size_t cx = 0;
        for (const Instruction& instr : c.instructions()) {
            if (instr.kind == GateKind::CX) ++cx;
        }
        CHECK(cx == 2 * 45);
    }
}

TEST_CASE("parse_benchmark") {
    CHECK(parse_benchmark("ghz:6").family == "ghz");
    CHECK(parse_benchmark("ghz:6").size == 6);
    CHECK(parse_benchmark("bitcode:3").initial_bits == std::vector<uint8_t>{0, 1, 0});
    CHECK(parse_benchmark("qaoa:10").display_name() == "Qaoa-10");
    CHECK_THROWS_AS(parse_benchmark("ghz"), ConfigError);
    CHECK_THROWS_AS(parse_benchmark("foo:3"), ConfigError);
    CHECK_THROWS_AS(parse_benchmark("ghz:x"), ConfigError);
}

TEST_CASE("remote-gate arithmetic matches the reference communication counts") {
    // 2 x remote gates == #QComm for every published configuration.
    for (const ReferenceRow& row : reference_rows()) {
        CAPTURE(row.bench.display_name());
        CAPTURE(row.partition);
        const Circuit circuit = generate(row.bench);
        const PartitionPlan plan = row.plan();
        const auto [lowered, remotes] = lower_to_remote(circuit, plan);
        CHECK(count_comm_qubits(remotes) == row.ref_comm);
    }
}

TEST_CASE("pipeline end-to-end on ghz-6") {
    RunConfig config;
    config.bench = parse_benchmark("ghz:6");
    config.plan = reference_rows()[0].plan();
    config.shots = 20000;
    config.seed = 99;
    const PipelineResult result = run_pipeline(config);
    CHECK(result.metrics.simulated);
    CHECK(result.metrics.top_state == "000000");
    CHECK(result.metrics.iprob == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(result.metrics.eprob == doctest::Approx(0.5).epsilon(0.05));
    CHECK(result.metrics.error_rate < 5e-3);
    CHECK(result.metrics.subcirc_depth_min <= result.metrics.subcirc_depth_max);
    CHECK(result.metrics.subcirc_depth_avg >=
          static_cast<double>(result.metrics.subcirc_depth_min));
    CHECK(result.metrics.subcirc_depth_avg <=
          static_cast<double>(result.metrics.subcirc_depth_max));
}

TEST_CASE("pipeline refuses nothing but marks oversized layouts unsimulated") {
    RunConfig config;
    config.bench = parse_benchmark("qaoa:6");
    config.plan = reference_rows()[9].plan();
    const PipelineResult result = run_pipeline(config);
    CHECK(!result.metrics.simulated);
    CHECK(result.metrics.sim_note.find("not simulated") != std::string::npos);
    CHECK(result.metrics.n_total == 54);
}

TEST_CASE("pipeline errors carry stage attribution") {
    RunConfig config;
    config.bench = parse_benchmark("ghz:6");
    config.plan = make_plan("q0-q2|q2-q5", {"Q0", "Q1"},
                            {{"Q0", "FakeVigoV2"}, {"Q1", "FakeAthensV2"}});
    try {
        run_pipeline(config);
        FAIL("expected a config error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("stage-1") != std::string::npos);
    }
}

TEST_CASE("strict mode rejects what expanded mode accepts") {
    RunConfig config;
    config.bench = parse_benchmark("qaoa:6");
    config.plan = reference_rows()[9].plan();
    config.mode = ScheduleMode::Strict;
    CHECK_THROWS_AS(run_pipeline(config), CapacityError);
    config.mode = ScheduleMode::Expanded;
    CHECK_NOTHROW(run_pipeline(config));

    // Strict still accepts layouts that physically fit.
    RunConfig small;
    small.bench = parse_benchmark("ghz:6");
    small.plan = reference_rows()[0].plan();
    small.mode = ScheduleMode::Strict;
    small.shots = 100;
    CHECK_NOTHROW(run_pipeline(small));
}

TEST_CASE("oversized single group is a capacity error in both modes") {
    RunConfig config;
    config.bench = parse_benchmark("ghz:6");
    config.plan = make_plan("q0-q5", {"Q0"}, {{"Q0", "FakeVigoV2"}});
    for (ScheduleMode mode : {ScheduleMode::Strict, ScheduleMode::Expanded}) {
        config.mode = mode;
        CHECK_THROWS_AS(run_pipeline(config), CapacityError);
    }
}

TEST_CASE("deterministic pipeline output") {
    RunConfig config;
    config.bench = parse_benchmark("tfim:3");
    config.plan = reference_rows()[6].plan();
    config.shots = 5000;
    config.seed = 123;
    const PipelineResult a = run_pipeline(config);
    const PipelineResult b = run_pipeline(config);
    CHECK(emit_layout(a.layout, a.metrics) == emit_layout(b.layout, b.metrics));
    CHECK(a.metrics.eprob == b.metrics.eprob);
}

TEST_CASE("emit_report shapes") {
    CHECK(emit_report({}).find("Benchmark") != std::string::npos);
    RunConfig config;
    config.bench = parse_benchmark("ghz:6");
    config.plan = reference_rows()[0].plan();
    config.shots = 1000;
    const PipelineResult result = run_pipeline(config);
    const std::string table = emit_report({result.metrics});
    CHECK(table.find("GHZ-6") != std::string::npos);
    CHECK(table.find("q0-q1|q2-q3|q4-q5") != std::string::npos);
    CHECK(table.find("|000000>") != std::string::npos);
}

TEST_CASE("metrics json round-trip") {
    RunConfig config;
    config.bench = parse_benchmark("ghz:6");
    config.plan = reference_rows()[0].plan();
    config.shots = 1000;
    const PipelineResult result = run_pipeline(config);
    const MetricsReport back = metrics_from_json(metrics_to_json(result.metrics));
    CHECK(back.n_total == result.metrics.n_total);
    CHECK(back.layout_depth == result.metrics.layout_depth);
    CHECK(back.top_state == result.metrics.top_state);
    CHECK(back.error_rate == doctest::Approx(result.metrics.error_rate));
}
