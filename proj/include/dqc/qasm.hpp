#pragma once

#include "dqc/circuit.hpp"
#include "dqc/errors.hpp"

#include <cstdint>
#include <string>
#include <string_view>

namespace dqc {

/// 1-based position inside the source text.
struct SourceSpan {
    uint32_t line = 1;
    uint32_t column = 1;
};

enum class QasmErrorKind { Lex, Syntax, Semantic };

/// Structured parse failure; every rejection carries the offending position.
class QasmError : public Error {
public:
    QasmError(QasmErrorKind kind, SourceSpan span, const std::string& message);

    QasmErrorKind kind() const { return kind_; }
    SourceSpan span() const { return span_; }
    const std::string& message() const { return message_; }

private:
    QasmErrorKind kind_;
    SourceSpan span_;
    std::string message_;
};

/// Parses the supported OPENQASM 2.0 subset: optional header and includes,
/// qreg/creg declarations (flattened in declaration order), the fixed gate
/// alphabet, measure/reset/barrier, and `if (c==k)` conditions on single-bit
/// classical registers. Angles accept decimal literals and pi expressions.
Circuit parse_qasm(std::string_view text);

/// Serializes a circuit so that parse_qasm(emit_qasm(c)) == c. Each classical
/// bit becomes its own single-bit register so conditions can be expressed.
/// Rejects circuits containing remote placeholders.
std::string emit_qasm(const Circuit& circuit);

}  // namespace dqc
