#include "dqc/pipeline.hpp"

#include "dqc/dag.hpp"
#include "dqc/errors.hpp"
#include "dqc/qasm.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

namespace dqc {

namespace {

template <typename F>
auto with_stage(const std::string& stage, F&& f) {
    try {
        return f();
    } catch (const QasmError&) {
        throw;
    } catch (const ConfigError& e) {
        throw ConfigError(stage + ": " + e.what());
    } catch (const CapacityError& e) {
        throw CapacityError(stage + ": " + e.what());
    } catch (const RoutingError& e) {
        throw RoutingError(stage + ": " + e.what());
    } catch (const TranslationError& e) {
        throw TranslationError(stage + ": " + e.what());
    } catch (const AssemblyError& e) {
        throw AssemblyError(stage + ": " + e.what());
    } catch (const CompileError& e) {
        throw CompileError(stage + ": " + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError(stage + ": " + e.what());
    } catch (const SimulationError&) {
        throw;
    }
}

Circuit load_circuit(const RunConfig& config) {
    const bool has_file = !config.circuit_file.empty();
    const bool has_bench = config.bench.has_value();
    if (has_file == has_bench) {
        throw ConfigError("exactly one circuit source is required (--circuit or --bench)");
    }
    if (has_bench) return generate(*config.bench);
    std::ifstream in(config.circuit_file);
    if (!in) throw ConfigError("cannot open circuit file '" + config.circuit_file + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_qasm(ss.str());
}

std::string format_double(double value, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", precision, value);
    return buf;
}

}  // namespace

PipelineResult run_pipeline(const RunConfig& config) {
    PipelineResult result;
    result.monolithic = with_stage("input", [&] { return load_circuit(config); });

    const BackendRegistry registry =
        with_stage("input", [&] { return load_registry(config.backends_file); });
    PartitionPlan plan = with_stage("input", [&] {
        if (config.plan) return *config.plan;
        if (config.partition_file.empty()) throw ConfigError("a partition is required");
        return load_partition(config.partition_file);
    });

    // Stage 1: partition and remote-gate lowering.
    std::vector<LogicalGroup> groups;
    with_stage("stage-1 (partitioning)", [&] {
        auto [lowered, remotes] = lower_to_remote(result.monolithic, plan);
        result.remotes = std::move(remotes);
        groups = build_groups(lowered, plan);
        return 0;
    });

    // Stage 2: scheduling, allocation, placeholder freezing.
    with_stage("stage-2 (scheduling)", [&] {
        Schedule schedule = assign_and_allocate(groups, plan, registry, config.mode);
        schedule = schedule_remote(result.remotes, std::move(schedule));
        result.schedule = freeze_placeholders(std::move(schedule));
        return 0;
    });

    // Stage 3: per-backend compilation (subcircuits are independent values).
    with_stage("stage-3 (backend compilation)", [&] {
        for (const QpuAllocation& alloc : result.schedule.qpus) {
            CompileOptions options;
            options.num_data = static_cast<uint32_t>(alloc.data_qubits.size());
            options.num_comm = alloc.num_comm;
            options.optimize = config.optimize;
            const BackendSpec& spec = registry.get(alloc.backend);
            result.compiled.push_back(compile_subcircuit(alloc.subcircuit, spec, options));
        }
        return 0;
    });

    // Stage 4: assembly and metrics.
    with_stage("stage-4 (assembly)", [&] {
        result.layout = assemble(result.schedule, result.compiled, plan);
        result.metrics = compute_metrics(result.layout, result.compiled);
        return 0;
    });
    if (config.bench) result.metrics.benchmark = config.bench->display_name();

    // Simulation against the monolithic ideal, when desk-scale.
    const uint32_t layout_width = result.layout.global_circuit.num_qubits();
    if (layout_width > config.qubit_cap || result.monolithic.num_qubits() > config.qubit_cap) {
        result.metrics.simulated = false;
        result.metrics.sim_note = "not simulated (" + std::to_string(layout_width) +
                                  " qubits exceeds cap " + std::to_string(config.qubit_cap) + ")";
    } else {
        // Readout keys: the final data measurements. Generated benchmarks bind
        // qubit i's final measurement to classical bit i; file circuits key
        // over every classical bit.
        std::vector<uint32_t> key_bits;
        if (config.bench) {
            key_bits.resize(result.monolithic.num_qubits());
        } else {
            key_bits.resize(result.monolithic.num_clbits());
        }
        std::iota(key_bits.begin(), key_bits.end(), 0u);

        SimOptions sim_options;
        sim_options.qubit_cap = config.qubit_cap;
        sim_options.key_bits = key_bits;
        const Distribution ideal = ideal_distribution(result.monolithic, sim_options);
        const Distribution sampled =
            run_shots(result.layout.global_circuit, config.shots, config.seed, sim_options);

        std::string top_state;
        double top_prob = -1.0;
        for (const auto& [state, prob] : ideal) {
            if (prob > top_prob) {
                top_prob = prob;
                top_state = state;
            }
        }
        result.metrics.simulated = true;
        result.metrics.top_state = top_state;
        result.metrics.iprob = top_prob;
        auto it = sampled.find(top_state);
        result.metrics.eprob = it == sampled.end() ? 0.0 : it->second;
        result.metrics.fidelity = hellinger_fidelity(sampled, ideal);
        result.metrics.error_rate = 1.0 - result.metrics.fidelity;

        std::vector<std::pair<std::string, double>> outcomes(sampled.begin(), sampled.end());
        std::sort(outcomes.begin(), outcomes.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return a.first < b.first;
        });
        if (outcomes.size() > 4) outcomes.resize(4);
        result.metrics.top_outcomes = std::move(outcomes);
    }

    if (!config.out_dir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(config.out_dir);
        const fs::path dir(config.out_dir);
        std::ofstream(dir / "layout.json") << emit_layout(result.layout, result.metrics);
        std::ofstream(dir / "layout.qasm") << emit_qasm(result.layout.global_circuit);
        std::ofstream(dir / "metrics.json") << metrics_to_json(result.metrics);
        std::ofstream(dir / "report.txt") << emit_report({result.metrics});
    }
    return result;
}

std::string emit_report(const std::vector<MetricsReport>& reports) {
    std::string out;
    char line[512];
    std::snprintf(line, sizeof(line),
                  "%-12s %-22s %-10s %6s %6s %7s %8s %8s %8s %7s %7s  %-12s %9s %9s %10s\n",
                  "Benchmark", "Partition", "Assign", "#QData", "#QComm", "#QTotal", "SubD-Min",
                  "SubD-Max", "SubD-Avg", "LayoutD", "Gates", "State", "IProb", "EProb",
                  "ErrorRate");
    out += line;
    out += std::string(168, '-') + "\n";
    for (const MetricsReport& m : reports) {
        std::string state = "-", iprob = "-", eprob = "-", err = "-";
        if (m.simulated) {
            state = "|" + m.top_state + ">";
            iprob = format_double(m.iprob, 6);
            eprob = format_double(m.eprob, 6);
            char err_buf[32];
            std::snprintf(err_buf, sizeof(err_buf), "%.2e", m.error_rate);
            err = err_buf;
        }
        std::snprintf(line, sizeof(line),
                      "%-12s %-22s %-10s %6u %6u %7u %8zu %8zu %8.2f %7zu %7zu  %-12s %9s %9s %10s\n",
                      m.benchmark.empty() ? "-" : m.benchmark.c_str(), m.partition_desc.c_str(),
                      m.assignment_desc.c_str(), m.n_data, m.n_comm, m.n_total,
                      m.subcirc_depth_min, m.subcirc_depth_max, m.subcirc_depth_avg,
                      m.layout_depth, m.gate_count, state.c_str(), iprob.c_str(), eprob.c_str(),
                      err.c_str());
        out += line;
        if (!m.sim_note.empty()) {
            out += "  note: " + m.sim_note + "\n";
        }
    }
    return out;
}

}  // namespace dqc
