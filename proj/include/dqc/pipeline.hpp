#pragma once

#include "dqc/backend.hpp"
#include "dqc/bench.hpp"
#include "dqc/layout.hpp"
#include "dqc/partition.hpp"
#include "dqc/schedule.hpp"
#include "dqc/sim.hpp"
#include "dqc/transpile.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dqc {

struct RunConfig {
    // Exactly one circuit source.
    std::string circuit_file;
    std::optional<BenchmarkSpec> bench;

    // Partition: a loaded plan wins over the file path.
    std::string partition_file;
    std::optional<PartitionPlan> plan;

    std::string backends_file;  // empty = built-ins only
    ScheduleMode mode = ScheduleMode::Expanded;
    bool optimize = true;
    uint64_t shots = 100000;
    uint64_t seed = 2025;
    uint32_t qubit_cap = 24;
    std::string out_dir;  // empty = no files written
};

struct PipelineResult {
    Circuit monolithic;
    std::vector<RemoteGate> remotes;
    Schedule schedule;
    std::vector<CompiledSubcircuit> compiled;
    DistributedLayout layout;
    MetricsReport metrics;
};

/// Runs the four stages end to end, simulates the layout against the
/// monolithic ideal when both fit the qubit cap, and writes the layout
/// document, the flat QASM interchange file and the metrics/report files
/// into out_dir when set. Errors carry the failing stage in their message.
PipelineResult run_pipeline(const RunConfig& config);

/// Fixed-width evaluation table, one row per report.
std::string emit_report(const std::vector<MetricsReport>& reports);

}  // namespace dqc
