#include "dqc/bench.hpp"

#include "dqc/errors.hpp"

#include <map>

namespace dqc {

Circuit gen_ghz(uint32_t n) {
    if (n < 2) throw ConfigError("ghz needs at least 2 qubits");
    Circuit c(n, n);
    c.h(0);
    for (uint32_t i = 0; i + 1 < n; ++i) c.cx(i, i + 1);
    for (uint32_t i = 0; i < n; ++i) c.measure(i, i);
    return c;
}

Circuit gen_bitcode(uint32_t n_data, uint32_t rounds, const std::vector<uint8_t>& initial_bits) {
    if (n_data < 2) throw ConfigError("bitcode needs at least 2 data qubits");
    if (initial_bits.size() != n_data) {
        throw ConfigError("bitcode expects " + std::to_string(n_data) + " initial bits, got " +
                          std::to_string(initial_bits.size()));
    }
    const uint32_t n_anc = n_data - 1;
    const uint32_t n = 2 * n_data - 1;
    // Interleaved layout: data qubit i at wire 2i, ancilla i at wire 2i+1.
    const auto data_wire = [](uint32_t i) { return 2 * i; };
    const auto anc_wire = [](uint32_t i) { return 2 * i + 1; };

    Circuit c(n, n + rounds * n_anc);
    for (uint32_t i = 0; i < n_data; ++i) {
        if (initial_bits[i]) c.x(data_wire(i));
    }
    uint32_t syndrome_bit = n;
    for (uint32_t round = 0; round < rounds; ++round) {
        for (uint32_t a = 0; a < n_anc; ++a) {
            c.cx(data_wire(a), anc_wire(a));
            c.cx(data_wire(a + 1), anc_wire(a));
            c.measure(anc_wire(a), syndrome_bit++);
            c.reset(anc_wire(a));
        }
    }
    for (uint32_t q = 0; q < n; ++q) c.measure(q, q);
    return c;
}

Circuit gen_tfim(uint32_t n, uint32_t steps, double j, double h, double dt) {
    if (n < 2) throw ConfigError("tfim needs at least 2 qubits");
    Circuit c(n, n);
    for (uint32_t q = 0; q < n; ++q) c.x(q);
    for (uint32_t step = 0; step < steps; ++step) {
        for (uint32_t q = 0; q + 1 < n; ++q) {
            c.cx(q, q + 1);
            c.rz(q + 1, 2.0 * j * dt);
            c.cx(q, q + 1);
        }
        for (uint32_t q = 0; q < n; ++q) c.rx(q, 2.0 * h * dt);
    }
    for (uint32_t q = 0; q < n; ++q) c.measure(q, q);
    return c;
}

Circuit gen_qaoa(uint32_t n, double gamma, double beta) {
    if (n < 2) throw ConfigError("qaoa needs at least 2 qubits");
    Circuit c(n, n);
    for (uint32_t q = 0; q < n; ++q) c.h(q);
    for (uint32_t i = 0; i < n; ++i) {
        for (uint32_t k = i + 1; k < n; ++k) {
            c.cx(i, k);
            c.rz(k, 2.0 * gamma);
            c.cx(i, k);
        }
    }
    for (uint32_t q = 0; q < n; ++q) c.rx(q, 2.0 * beta);
    for (uint32_t q = 0; q < n; ++q) c.measure(q, q);
    return c;
}

std::string BenchmarkSpec::display_name() const {
    std::string name;
    if (family == "ghz") name = "GHZ";
    else if (family == "bitcode") name = "BitCode";
    else if (family == "tfim") name = "TFIM";
    else if (family == "qaoa") name = "Qaoa";
    else name = family;
    return name + "-" + std::to_string(size);
}

BenchmarkSpec parse_benchmark(const std::string& text) {
    const size_t colon = text.find(':');
    if (colon == std::string::npos) {
        throw ConfigError("benchmark spec '" + text + "' must look like family:size (e.g. ghz:6)");
    }
    BenchmarkSpec spec;
    spec.family = text.substr(0, colon);
    const std::string size_text = text.substr(colon + 1);
    try {
        spec.size = static_cast<uint32_t>(std::stoul(size_text));
    } catch (const std::exception&) {
        throw ConfigError("benchmark spec '" + text + "': invalid size '" + size_text + "'");
    }
    if (spec.family != "ghz" && spec.family != "bitcode" && spec.family != "tfim" &&
        spec.family != "qaoa") {
        throw ConfigError("unknown benchmark family '" + spec.family + "'");
    }
    if (spec.family == "bitcode") {
        // Middle data qubit flipped, matching the published configuration.
        spec.initial_bits.assign(spec.size, 0);
        spec.initial_bits[spec.size / 2] = 1;
    }
    return spec;
}

Circuit generate(const BenchmarkSpec& spec) {
    if (spec.family == "ghz") return gen_ghz(spec.size);
    if (spec.family == "bitcode") {
        std::vector<uint8_t> bits = spec.initial_bits;
        if (bits.empty()) {
            bits.assign(spec.size, 0);
            bits[spec.size / 2] = 1;
        }
        return gen_bitcode(spec.size, spec.rounds, bits);
    }
    if (spec.family == "tfim") return gen_tfim(spec.size, spec.steps, spec.j, spec.h, spec.dt);
    if (spec.family == "qaoa") return gen_qaoa(spec.size, spec.gamma, spec.beta);
    throw ConfigError("unknown benchmark family '" + spec.family + "'");
}

PartitionPlan ReferenceRow::plan() const {
    std::map<std::string, std::string> backends = {{"Q0", "FakeVigoV2"},
                                                   {"Q1", "FakeAthensV2"},
                                                   {"Q2", "FakeLagosV2"}};
    return make_plan(partition, assignment, std::move(backends));
}

const std::vector<ReferenceRow>& reference_rows() {
    static const std::vector<ReferenceRow> rows = [] {
        std::vector<ReferenceRow> r;
        auto bench = [](const std::string& text) { return parse_benchmark(text); };
        r.push_back({bench("ghz:6"), "q0-q1|q2-q3|q4-q5", {"Q0", "Q1", "Q2"}, 6, 4, 14, 12, 30, true});
        r.push_back({bench("ghz:6"), "q0-q1|q2-q3|q4-q5", {"Q0", "Q2", "Q1"}, 6, 4, 14, 12, 30, true});
        r.push_back({bench("ghz:6"), "q0|q1-q2|q3-q5", {"Q0", "Q2", "Q1"}, 6, 4, 14, 13, 30, true});
        r.push_back({bench("ghz:12"), "q0-q3|q4-q7|q8-q11", {"Q0", "Q1", "Q2"}, 12, 4, 16, 17, 42, true});
        r.push_back({bench("bitcode:3"), "q0-q2|q3-q4", {"Q0", "Q1"}, 5, 4, 9, 14, 40, true});
        r.push_back({bench("bitcode:3"), "q0|q1-q4", {"Q0", "Q1"}, 5, 4, 9, 16, 40, true});
        r.push_back({bench("tfim:3"), "q0|q1-q2", {"Q0", "Q1"}, 3, 12, 15, 43, 102, true});
        r.push_back({bench("tfim:3"), "q0-q1|q2", {"Q0", "Q1"}, 3, 12, 15, 43, 102, true});
        r.push_back({bench("qaoa:4"), "q0-q1|q2-q3", {"Q0", "Q1"}, 4, 16, 20, 45, 102, true});
        r.push_back({bench("qaoa:6"), "q0-q1|q2-q3|q4-q5", {"Q0", "Q1", "Q2"}, 6, 48, 54, 122, 279, false});
        r.push_back({bench("qaoa:8"), "q0-q2|q3-q5|q6-q7", {"Q0", "Q1", "Q2"}, 6, 84, 90, 205, 486, false});
        r.push_back({bench("qaoa:10"), "q0-q3|q4-q6|q7-q9", {"Q0", "Q1", "Q2"}, 10, 132, 142, 319, 759, false});
        return r;
    }();
    return rows;
}

}  // namespace dqc
