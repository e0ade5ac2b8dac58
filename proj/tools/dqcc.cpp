// Command-line front end: compile a circuit (or a named benchmark) into a
// distributed layout, sample a circuit, or merge run reports.

#include "dqc/errors.hpp"
#include "dqc/pipeline.hpp"
#include "dqc/qasm.hpp"
#include "dqc/sim.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitCompile = 3;
constexpr int kExitSimRefused = 4;

uint32_t default_qubit_cap() {
    if (const char* env = std::getenv("DQCC_QUBIT_CAP")) {
        try {
            return static_cast<uint32_t>(std::stoul(env));
        } catch (const std::exception&) {
            throw dqc::ConfigError("DQCC_QUBIT_CAP must be an integer, got '" + std::string(env) +
                                   "'");
        }
    }
    return 24;
}

int run_compile(const std::string& circuit_file, const std::string& bench_spec,
                const std::string& partition_file, const std::string& backends_file,
                const std::string& mode, uint64_t shots, uint64_t seed, uint32_t qubit_cap,
                bool no_optimize, const std::string& out_dir) {
    dqc::RunConfig config;
    config.circuit_file = circuit_file;
    if (!bench_spec.empty()) config.bench = dqc::parse_benchmark(bench_spec);
    config.partition_file = partition_file;
    config.backends_file = backends_file;
    config.mode = dqc::parse_mode(mode);
    config.shots = shots;
    config.seed = seed;
    config.qubit_cap = qubit_cap;
    config.optimize = !no_optimize;
    config.out_dir = out_dir;

    const dqc::PipelineResult result = dqc::run_pipeline(config);
    std::cout << dqc::emit_report({result.metrics});
    if (!out_dir.empty()) {
        std::cout << "layout document: " << out_dir << "/layout.json\n"
                  << "global circuit:  " << out_dir << "/layout.qasm\n"
                  << "metrics:         " << out_dir << "/metrics.json\n";
    }
    return kExitOk;
}

// "0-5" or "0,2,7" style classical-bit selections.
std::vector<uint32_t> parse_key_bits(const std::string& text) {
    std::vector<uint32_t> bits;
    std::string item;
    std::istringstream ss(text);
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const size_t dash = item.find('-');
        try {
            if (dash == std::string::npos) {
                bits.push_back(static_cast<uint32_t>(std::stoul(item)));
            } else {
                const uint32_t lo = static_cast<uint32_t>(std::stoul(item.substr(0, dash)));
                const uint32_t hi = static_cast<uint32_t>(std::stoul(item.substr(dash + 1)));
                if (hi < lo) throw dqc::ConfigError("--key-bits range '" + item + "' is reversed");
                for (uint32_t b = lo; b <= hi; ++b) bits.push_back(b);
            }
        } catch (const std::invalid_argument&) {
            throw dqc::ConfigError("invalid --key-bits entry '" + item + "'");
        } catch (const std::out_of_range&) {
            throw dqc::ConfigError("invalid --key-bits entry '" + item + "'");
        }
    }
    return bits;
}

int run_sim(const std::string& circuit_file, uint64_t shots, uint64_t seed, uint32_t qubit_cap,
            const std::string& key_bits) {
    std::ifstream in(circuit_file);
    if (!in) throw dqc::ConfigError("cannot open circuit file '" + circuit_file + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    const dqc::Circuit circuit = dqc::parse_qasm(ss.str());

    dqc::SimOptions options;
    options.qubit_cap = qubit_cap;
    if (!key_bits.empty()) options.key_bits = parse_key_bits(key_bits);
    const dqc::Distribution dist = dqc::run_shots(circuit, shots, seed, options);

    std::vector<std::pair<std::string, double>> sorted(dist.begin(), dist.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    nlohmann::ordered_json doc;
    for (const auto& [state, prob] : sorted) doc[state] = prob;
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
}

int run_report(const std::vector<std::string>& dirs) {
    std::vector<dqc::MetricsReport> reports;
    for (const std::string& dir : dirs) {
        const std::filesystem::path path = std::filesystem::path(dir) / "metrics.json";
        std::ifstream in(path);
        if (!in) throw dqc::ConfigError("cannot open '" + path.string() + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        reports.push_back(dqc::metrics_from_json(ss.str()));
    }
    std::cout << dqc::emit_report(reports);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"distributed quantum circuit layout compiler"};
    app.require_subcommand(1);

    std::string circuit_file, bench_spec, partition_file, backends_file, out_dir;
    std::string mode = "expanded";
    uint64_t shots = 100000;
    uint64_t seed = 2025;
    uint32_t qubit_cap = 0;
    bool no_optimize = false;

    CLI::App* compile = app.add_subcommand("compile", "compile a circuit into a distributed layout");
    auto* circ_opt = compile->add_option("--circuit", circuit_file, "input circuit file");
    auto* bench_opt = compile->add_option("--bench", bench_spec, "benchmark spec, e.g. ghz:6");
    circ_opt->excludes(bench_opt);
    compile->add_option("--partition", partition_file, "partition plan file")->required();
    compile->add_option("--backends", backends_file, "backend registry file");
    compile->add_option("--mode", mode, "capacity mode: strict|expanded (default expanded)");
    compile->add_option("--shots", shots, "simulation shots (default 100000)");
    compile->add_option("--seed", seed, "simulation seed (default 2025)");
    compile->add_option("--qubit-cap", qubit_cap, "statevector qubit cap (default 24)");
    compile->add_flag("--no-optimize", no_optimize, "skip the peephole pass");
    compile->add_option("--out", out_dir, "output directory for layout/metrics files");

    std::string key_bits;
    CLI::App* sim = app.add_subcommand("sim", "sample a circuit and print its distribution");
    sim->add_option("--circuit", circuit_file, "input circuit file")->required();
    sim->add_option("--shots", shots, "shots (default 100000)");
    sim->add_option("--seed", seed, "seed (default 2025)");
    sim->add_option("--qubit-cap", qubit_cap, "statevector qubit cap (default 24)");
    sim->add_option("--key-bits", key_bits,
                    "classical bits forming the readout key, e.g. 0-5 (default: all)");

    std::vector<std::string> report_dirs;
    CLI::App* report = app.add_subcommand("report", "merge run directories into one table");
    report->add_option("--in", report_dirs, "run directories containing metrics.json")
        ->required()
        ->expected(-1);

    CLI11_PARSE(app, argc, argv);

    try {
        if (qubit_cap == 0) qubit_cap = default_qubit_cap();
        if (compile->parsed()) {
            if (circuit_file.empty() && bench_spec.empty()) {
                throw dqc::ConfigError("one of --circuit or --bench is required");
            }
            return run_compile(circuit_file, bench_spec, partition_file, backends_file, mode,
                               shots, seed, qubit_cap, no_optimize, out_dir);
        }
        if (sim->parsed()) return run_sim(circuit_file, shots, seed, qubit_cap, key_bits);
        if (report->parsed()) return run_report(report_dirs);
        return kExitConfig;
    } catch (const dqc::SimRefusedError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSimRefused;
    } catch (const dqc::QasmError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const dqc::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const dqc::CapacityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCompile;
    } catch (const dqc::CompileError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCompile;
    } catch (const dqc::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const dqc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
