#include "doctest.h"

#include "dqc/qasm.hpp"

#include "oracles.hpp"

#include <numbers>
#include <random>

using namespace dqc;

TEST_CASE("parse minimal programs") {
    SUBCASE("two-qubit program") {
        const Circuit c = parse_qasm("qreg q[2]; h q[0]; cx q[0],q[1];");
        CHECK(c.num_qubits() == 2);
        CHECK(c.num_clbits() == 0);
        REQUIRE(c.size() == 2);
        CHECK(c.instructions()[0].kind == GateKind::H);
        CHECK(c.instructions()[1].kind == GateKind::CX);
        CHECK(c.instructions()[1].qubits == std::vector<uint32_t>{0, 1});
    }
    SUBCASE("header and include are accepted") {
        const Circuit c = parse_qasm("OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[1];\nx q[0];\n");
        CHECK(c.size() == 1);
    }
    SUBCASE("pi expressions") {
        CHECK(parse_qasm("qreg q[1]; rz(pi/2) q[0];").instructions()[0].angle ==
              doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
        CHECK(parse_qasm("qreg q[1]; rz(3*pi/4) q[0];").instructions()[0].angle ==
              doctest::Approx(3 * std::numbers::pi / 4).epsilon(1e-15));
        CHECK(parse_qasm("qreg q[1]; rz(-pi) q[0];").instructions()[0].angle ==
              doctest::Approx(-std::numbers::pi).epsilon(1e-15));
        CHECK(parse_qasm("qreg q[1]; rz(0.25) q[0];").instructions()[0].angle ==
              doctest::Approx(0.25));
    }
    SUBCASE("multiple qregs flatten in declaration order") {
        const Circuit c = parse_qasm("qreg a[2]; qreg b[3]; x b[1]; x a[1];");
        CHECK(c.num_qubits() == 5);
        CHECK(c.instructions()[0].qubits == std::vector<uint32_t>{3});
        CHECK(c.instructions()[1].qubits == std::vector<uint32_t>{1});
    }
    SUBCASE("measure, reset, barrier, condition") {
        const Circuit c = parse_qasm(
            "qreg q[2]; creg m[1]; measure q[0] -> m[0]; reset q[0]; barrier q; "
            "if (m==1) x q[1];");
        REQUIRE(c.size() == 4);
        CHECK(c.instructions()[0].kind == GateKind::Measure);
        CHECK(c.instructions()[1].kind == GateKind::Reset);
        CHECK(c.instructions()[2].kind == GateKind::Barrier);
        CHECK(c.instructions()[2].qubits.size() == 2);
        REQUIRE(c.instructions()[3].condition.has_value());
        CHECK(c.instructions()[3].condition->bit == 0);
        CHECK(c.instructions()[3].condition->value == 1);
    }
}

TEST_CASE("parse errors are structured and carry spans") {
    auto expect_error = [](std::string_view src, QasmErrorKind kind) {
        try {
            parse_qasm(src);
            FAIL("expected parse error for: ", src);
        } catch (const QasmError& e) {
            CHECK(e.kind() == kind);
            CHECK(e.span().line >= 1);
            CHECK(e.span().column >= 1);
            CHECK(!e.message().empty());
        }
    };
    expect_error("qreg q[1]; foo q[0];", QasmErrorKind::Semantic);        // unknown gate
    expect_error("qreg q[1]; cx q[0];", QasmErrorKind::Syntax);           // arity
    expect_error("qreg q[1]; h q[5];", QasmErrorKind::Semantic);          // out of range
    expect_error("qreg q[1]; qreg q[2];", QasmErrorKind::Semantic);       // duplicate name
    expect_error("qreg q[1]; h q[0]", QasmErrorKind::Syntax);             // missing ';'
    expect_error("qreg q[1]; rz q[0];", QasmErrorKind::Syntax);           // missing angle
    expect_error("qreg q[1]; h(0.5) q[0];", QasmErrorKind::Semantic);     // unexpected param
    expect_error("qreg q[1]; cx q[0],q[0];", QasmErrorKind::Semantic);    // duplicate operand
    expect_error("qreg q[2]; creg c[2]; if (c==1) x q[0];", QasmErrorKind::Semantic);  // wide creg
    expect_error("qreg q[1]; creg c[1]; if (c==1) measure q[0] -> c[0];",
                 QasmErrorKind::Semantic);                                 // conditioned measure
    expect_error("gate g a { h a; }", QasmErrorKind::Semantic);            // custom gate
    expect_error("qreg q[1]; @ q[0];", QasmErrorKind::Lex);                // stray character
    expect_error("qreg q[1]; rz(pi/0) q[0];", QasmErrorKind::Semantic);    // division by zero

    // The reported location points at the offending token.
    try {
        parse_qasm("qreg q[2];\nh q[0];\nfoo q[1];\n");
        FAIL("expected error");
    } catch (const QasmError& e) {
        CHECK(e.span().line == 3);
        CHECK(e.span().column == 1);
    }
}

TEST_CASE("emit_qasm round-trips exactly") {
    std::mt19937_64 rng(424242);
    for (int trial = 0; trial < 200; ++trial) {
        test::RandomCircuitOptions opt;
        opt.num_qubits = 1 + trial % 5;
        opt.num_clbits = 1 + trial % 3;
        opt.num_instructions = 1 + (trial * 13) % 40;
        opt.unitary_only = false;
        opt.with_conditions = true;
        const Circuit c = test::random_circuit(rng, opt);
        const Circuit back = parse_qasm(emit_qasm(c));
        CHECK(back == c);
    }
}

TEST_CASE("emit_qasm output shape") {
    Circuit c(1, 0);
    c.h(0);
    const std::string text = emit_qasm(c);
    CHECK(text.find("h q[0];") != std::string::npos);

    Instruction ph;
    ph.kind = GateKind::RemotePlaceholder;
    ph.qubits = {0};
    ph.remote_id = 1;
    Circuit with_ph(1, 0);
    with_ph.append(ph);
    CHECK_THROWS_AS(emit_qasm(with_ph), ValidationError);
}

TEST_CASE("parser totality under fuzzing") {
    // No input may crash or hang; rejections must be structured QasmErrors.
    std::mt19937_64 rng(0xf522);
    const std::string vocab =
        "qreg creg measure reset barrier if include gate h x y z s sdg t tdg sx rx ry rz cx cz "
        "swap ccx pi OPENQASM q c m [ ] ( ) ; , -> == 0 1 2 3 17 0.5 -1 * / + - \" \n \t";
    std::vector<std::string> words;
    {
        size_t start = 0;
        while (start < vocab.size()) {
            size_t end = vocab.find(' ', start);
            if (end == std::string::npos) end = vocab.size();
            if (end > start) words.push_back(vocab.substr(start, end - start));
            start = end + 1;
        }
    }
    size_t parsed_ok = 0;
    for (int trial = 0; trial < 100000; ++trial) {
        std::string input;
        if (trial % 3 == 0) {
            // Raw byte soup.
            const size_t len = rng() % 48;
            for (size_t i = 0; i < len; ++i) input.push_back(static_cast<char>(rng() % 256));
        } else {
            // Token soup from the grammar vocabulary.
            const size_t len = rng() % 24;
            for (size_t i = 0; i < len; ++i) {
                input += words[rng() % words.size()];
                input += (rng() % 4 == 0) ? "" : " ";
            }
        }
        try {
            parse_qasm(input);
            ++parsed_ok;
        } catch (const QasmError&) {
            // structured rejection: fine
        }
    }
    CHECK(parsed_ok < 100000);  // the fuzzer does hit rejections
}
