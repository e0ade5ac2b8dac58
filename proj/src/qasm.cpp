#include "dqc/qasm.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <optional>
#include <vector>

namespace dqc {

namespace {

std::string kind_label(QasmErrorKind kind) {
    switch (kind) {
        case QasmErrorKind::Lex: return "lex";
        case QasmErrorKind::Syntax: return "syntax";
        case QasmErrorKind::Semantic: return "semantic";
    }
    return "?";
}

enum class Tok {
    Ident,
    Number,
    String,
    Semicolon,
    Comma,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Arrow,   // ->
    EqEq,    // ==
    Plus,
    Minus,
    Star,
    Slash,
    End,
};

struct Token {
    Tok type = Tok::End;
    std::string text;
    SourceSpan span;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_space_and_comments();
        Token tok;
        tok.span = {line_, col_};
        if (pos_ >= src_.size()) {
            tok.type = Tok::End;
            return tok;
        }
        const char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                advance();
            }
            tok.type = Tok::Ident;
            tok.text = std::string(src_.substr(start, pos_ - start));
            return tok;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            size_t start = pos_;
            bool seen_digit = false;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                advance();
                seen_digit = true;
            }
            if (pos_ < src_.size() && src_[pos_] == '.') {
                advance();
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                    advance();
                    seen_digit = true;
                }
            }
            if (!seen_digit) {
                throw QasmError(QasmErrorKind::Lex, tok.span, "stray '.'");
            }
            if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
                advance();
                if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) advance();
                if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                    throw QasmError(QasmErrorKind::Lex, tok.span, "malformed exponent");
                }
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                    advance();
                }
            }
            tok.type = Tok::Number;
            tok.text = std::string(src_.substr(start, pos_ - start));
            return tok;
        }
        if (c == '"') {
            advance();
            size_t start = pos_;
            while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') advance();
            if (pos_ >= src_.size() || src_[pos_] != '"') {
                throw QasmError(QasmErrorKind::Lex, tok.span, "unterminated string literal");
            }
            tok.type = Tok::String;
            tok.text = std::string(src_.substr(start, pos_ - start));
            advance();  // closing quote
            return tok;
        }
        advance();
        switch (c) {
            case ';': tok.type = Tok::Semicolon; return tok;
            case ',': tok.type = Tok::Comma; return tok;
            case '(': tok.type = Tok::LParen; return tok;
            case ')': tok.type = Tok::RParen; return tok;
            case '[': tok.type = Tok::LBracket; return tok;
            case ']': tok.type = Tok::RBracket; return tok;
            case '+': tok.type = Tok::Plus; return tok;
            case '*': tok.type = Tok::Star; return tok;
            case '/': tok.type = Tok::Slash; return tok;
            case '-':
                if (pos_ < src_.size() && src_[pos_] == '>') {
                    advance();
                    tok.type = Tok::Arrow;
                } else {
                    tok.type = Tok::Minus;
                }
                return tok;
            case '=':
                if (pos_ < src_.size() && src_[pos_] == '=') {
                    advance();
                    tok.type = Tok::EqEq;
                    return tok;
                }
                throw QasmError(QasmErrorKind::Lex, tok.span, "expected '==' after '='");
            default:
                throw QasmError(QasmErrorKind::Lex, tok.span,
                                std::string("unexpected character '") + c + "'");
        }
    }

private:
    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_space_and_comments() {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    size_t pos_ = 0;
    uint32_t line_ = 1;
    uint32_t col_ = 1;
};

struct Register {
    std::string name;
    uint32_t size = 0;
    uint32_t offset = 0;  // flat base index
};

const std::map<std::string, GateKind>& gate_table() {
    static const std::map<std::string, GateKind> table = {
        {"h", GateKind::H},     {"x", GateKind::X},       {"y", GateKind::Y},
        {"z", GateKind::Z},     {"s", GateKind::S},       {"sdg", GateKind::Sdg},
        {"t", GateKind::T},     {"tdg", GateKind::Tdg},   {"sx", GateKind::SX},
        {"rx", GateKind::RX},   {"ry", GateKind::RY},     {"rz", GateKind::RZ},
        {"cx", GateKind::CX},   {"cz", GateKind::CZ},     {"swap", GateKind::Swap},
        {"ccx", GateKind::CCX},
    };
    return table;
}

class Parser {
public:
    explicit Parser(std::string_view src) : lexer_(src) { bump(); }

    Circuit parse() {
        if (cur_.type == Tok::Ident && cur_.text == "OPENQASM") {
            bump();
            expect(Tok::Number, "version number");
            expect(Tok::Semicolon, "';'");
        }
        std::vector<Instruction> pending;
        while (cur_.type != Tok::End) {
            parse_statement(pending);
        }
        Circuit circuit(total_qubits(), total_clbits());
        for (Instruction& instr : pending) circuit.append(std::move(instr));
        return circuit;
    }

private:
    void bump() { cur_ = lexer_.next(); }

    void expect(Tok type, const std::string& what) {
        if (cur_.type != type) {
            throw QasmError(QasmErrorKind::Syntax, cur_.span,
                            "expected " + what + describe_current());
        }
        bump();
    }

    std::string describe_current() const {
        if (cur_.type == Tok::End) return ", got end of input";
        if (!cur_.text.empty()) return ", got '" + cur_.text + "'";
        return "";
    }

    uint32_t total_qubits() const {
        uint32_t n = 0;
        for (const auto& r : qregs_) n += r.size;
        return n;
    }
    uint32_t total_clbits() const {
        uint32_t n = 0;
        for (const auto& r : cregs_) n += r.size;
        return n;
    }

    void parse_statement(std::vector<Instruction>& out) {
        if (cur_.type != Tok::Ident) {
            throw QasmError(QasmErrorKind::Syntax, cur_.span, "expected a statement" + describe_current());
        }
        const Token head = cur_;
        if (head.text == "include") {
            bump();
            expect(Tok::String, "file name string");
            expect(Tok::Semicolon, "';'");
            return;
        }
        if (head.text == "qreg" || head.text == "creg") {
            parse_register(head.text == "qreg");
            return;
        }
        if (head.text == "gate" || head.text == "opaque") {
            throw QasmError(QasmErrorKind::Semantic, head.span,
                            "custom gate definitions ('" + head.text + "') are not supported");
        }
        out.push_back(parse_operation());
    }

    void parse_register(bool quantum) {
        const Token kw = cur_;
        bump();
        if (cur_.type != Tok::Ident) {
            throw QasmError(QasmErrorKind::Syntax, cur_.span, "expected register name" + describe_current());
        }
        const Token name = cur_;
        bump();
        expect(Tok::LBracket, "'['");
        if (cur_.type != Tok::Number) {
            throw QasmError(QasmErrorKind::Syntax, cur_.span, "expected register size" + describe_current());
        }
        const uint64_t size = std::strtoull(cur_.text.c_str(), nullptr, 10);
        if (size == 0 || size > 4096 || cur_.text.find('.') != std::string::npos) {
            throw QasmError(QasmErrorKind::Semantic, cur_.span,
                            "invalid register size '" + cur_.text + "'");
        }
        bump();
        expect(Tok::RBracket, "']'");
        expect(Tok::Semicolon, "';'");
        if (find_reg(qregs_, name.text) || find_reg(cregs_, name.text)) {
            throw QasmError(QasmErrorKind::Semantic, name.span,
                            "duplicate register name '" + name.text + "'");
        }
        auto& list = quantum ? qregs_ : cregs_;
        const uint32_t offset = quantum ? total_qubits() : total_clbits();
        list.push_back({name.text, static_cast<uint32_t>(size), offset});
        (void)kw;
    }

    static const Register* find_reg(const std::vector<Register>& regs, const std::string& name) {
        for (const auto& r : regs) {
            if (r.name == name) return &r;
        }
        return nullptr;
    }

    Instruction parse_operation() {
        if (cur_.text == "if") {
            return parse_conditioned();
        }
        return parse_plain_operation(std::nullopt);
    }

    Instruction parse_conditioned() {
        const Token if_tok = cur_;
        bump();
        expect(Tok::LParen, "'('");
        if (cur_.type != Tok::Ident) {
            throw QasmError(QasmErrorKind::Syntax, cur_.span, "expected register name" + describe_current());
        }
        const Token reg_tok = cur_;
        const Register* reg = find_reg(cregs_, reg_tok.text);
        if (!reg) {
            throw QasmError(QasmErrorKind::Semantic, reg_tok.span,
                            "unknown classical register '" + reg_tok.text + "'");
        }
        if (reg->size != 1) {
            throw QasmError(QasmErrorKind::Semantic, reg_tok.span,
                            "condition register '" + reg_tok.text + "' must have exactly 1 bit");
        }
        bump();
        expect(Tok::EqEq, "'=='");
        if (cur_.type != Tok::Number) {
            throw QasmError(QasmErrorKind::Syntax, cur_.span, "expected condition value" + describe_current());
        }
        if (cur_.text != "0" && cur_.text != "1") {
            throw QasmError(QasmErrorKind::Semantic, cur_.span,
                            "condition value must be 0 or 1, got '" + cur_.text + "'");
        }
        const uint8_t value = cur_.text == "1" ? 1 : 0;
        bump();
        expect(Tok::RParen, "')'");
        if (cur_.type == Tok::Ident &&
            (cur_.text == "measure" || cur_.text == "reset" || cur_.text == "barrier" ||
             cur_.text == "if")) {
            throw QasmError(QasmErrorKind::Semantic, cur_.span,
                            "'" + cur_.text + "' cannot be conditioned");
        }
        (void)if_tok;
        return parse_plain_operation(Condition{reg->offset, value});
    }

    Instruction parse_plain_operation(std::optional<Condition> condition) {
        const Token head = cur_;
        if (head.type != Tok::Ident) {
            throw QasmError(QasmErrorKind::Syntax, head.span, "expected an operation" + describe_current());
        }
        bump();
        if (head.text == "measure") return parse_measure(head);
        if (head.text == "reset") return parse_reset(head);
        if (head.text == "barrier") return parse_barrier(head);

        auto it = gate_table().find(head.text);
        if (it == gate_table().end()) {
            throw QasmError(QasmErrorKind::Semantic, head.span,
                            "unknown gate '" + head.text + "'");
        }
        const GateKind kind = it->second;

        Instruction instr;
        instr.kind = kind;
        instr.condition = condition;
        if (cur_.type == Tok::LParen) {
            if (!is_rotation(kind)) {
                throw QasmError(QasmErrorKind::Semantic, head.span,
                                "gate '" + head.text + "' takes no parameter");
            }
            bump();
            instr.angle = parse_angle_expr();
            expect(Tok::RParen, "')'");
        } else if (is_rotation(kind)) {
            throw QasmError(QasmErrorKind::Syntax, cur_.span,
                            "gate '" + head.text + "' requires an angle parameter");
        }
        const int arity = gate_arity(kind);
        for (int i = 0; i < arity; ++i) {
            if (i > 0) expect(Tok::Comma, "','");
            instr.qubits.push_back(parse_qubit_argument());
        }
        expect(Tok::Semicolon, "';'");
        validate_distinct(instr, head);
        return instr;
    }

    void validate_distinct(const Instruction& instr, const Token& head) {
        for (size_t i = 0; i < instr.qubits.size(); ++i) {
            for (size_t j = i + 1; j < instr.qubits.size(); ++j) {
                if (instr.qubits[i] == instr.qubits[j]) {
                    throw QasmError(QasmErrorKind::Semantic, head.span,
                                    "duplicate qubit operand in '" + head.text + "'");
                }
            }
        }
    }

    Instruction parse_measure(const Token& head) {
        Instruction instr;
        instr.kind = GateKind::Measure;
        instr.qubits.push_back(parse_qubit_argument());
        expect(Tok::Arrow, "'->'");
        instr.clbits.push_back(parse_clbit_argument());
        expect(Tok::Semicolon, "';'");
        (void)head;
        return instr;
    }

    Instruction parse_reset(const Token& head) {
        Instruction instr;
        instr.kind = GateKind::Reset;
        instr.qubits.push_back(parse_qubit_argument());
        expect(Tok::Semicolon, "';'");
        (void)head;
        return instr;
    }

    Instruction parse_barrier(const Token& head) {
        Instruction instr;
        instr.kind = GateKind::Barrier;
        if (cur_.type != Tok::Semicolon) {
            while (true) {
                if (cur_.type != Tok::Ident) {
                    throw QasmError(QasmErrorKind::Syntax, cur_.span,
                                    "expected qubit argument" + describe_current());
                }
                const Token name = cur_;
                const Register* reg = find_reg(qregs_, name.text);
                if (!reg) {
                    throw QasmError(QasmErrorKind::Semantic, name.span,
                                    "unknown quantum register '" + name.text + "'");
                }
                bump();
                if (cur_.type == Tok::LBracket) {
                    bump();
                    instr.qubits.push_back(parse_index_into(*reg, name));
                    expect(Tok::RBracket, "']'");
                } else {
                    for (uint32_t i = 0; i < reg->size; ++i) instr.qubits.push_back(reg->offset + i);
                }
                if (cur_.type != Tok::Comma) break;
                bump();
            }
        } else {
            // Bare `barrier;` spans every declared qubit.
            for (const auto& reg : qregs_) {
                for (uint32_t i = 0; i < reg.size; ++i) instr.qubits.push_back(reg.offset + i);
            }
        }
        expect(Tok::Semicolon, "';'");
        validate_distinct(instr, head);
        return instr;
    }

    uint32_t parse_index_into(const Register& reg, const Token& name) {
        if (cur_.type != Tok::Number || cur_.text.find('.') != std::string::npos) {
            throw QasmError(QasmErrorKind::Syntax, cur_.span, "expected index" + describe_current());
        }
        const uint64_t idx = std::strtoull(cur_.text.c_str(), nullptr, 10);
        if (idx >= reg.size) {
            throw QasmError(QasmErrorKind::Semantic, cur_.span,
                            "index " + cur_.text + " out of range for register '" + name.text +
                                "[" + std::to_string(reg.size) + "]'");
        }
        bump();
        return reg.offset + static_cast<uint32_t>(idx);
    }

    uint32_t parse_argument(const std::vector<Register>& regs, const char* what) {
        if (cur_.type != Tok::Ident) {
            throw QasmError(QasmErrorKind::Syntax, cur_.span,
                            std::string("expected ") + what + describe_current());
        }
        const Token name = cur_;
        const Register* reg = find_reg(regs, name.text);
        if (!reg) {
            throw QasmError(QasmErrorKind::Semantic, name.span,
                            std::string("unknown register '") + name.text + "'");
        }
        bump();
        expect(Tok::LBracket, "'['");
        const uint32_t flat = parse_index_into(*reg, name);
        expect(Tok::RBracket, "']'");
        return flat;
    }

    uint32_t parse_qubit_argument() { return parse_argument(qregs_, "qubit argument"); }
    uint32_t parse_clbit_argument() { return parse_argument(cregs_, "classical argument"); }

    // expr := term (('+'|'-') term)*, term := factor (('*'|'/') factor)*,
    // factor := '-' factor | '(' expr ')' | number | pi
    double parse_angle_expr(int depth = 0) {
        if (depth > 32) {
            throw QasmError(QasmErrorKind::Syntax, cur_.span, "angle expression too deep");
        }
        double value = parse_angle_term(depth);
        while (cur_.type == Tok::Plus || cur_.type == Tok::Minus) {
            const bool plus = cur_.type == Tok::Plus;
            bump();
            const double rhs = parse_angle_term(depth);
            value = plus ? value + rhs : value - rhs;
        }
        return value;
    }

    double parse_angle_term(int depth) {
        double value = parse_angle_factor(depth);
        while (cur_.type == Tok::Star || cur_.type == Tok::Slash) {
            const bool mul = cur_.type == Tok::Star;
            const Token op = cur_;
            bump();
            const double rhs = parse_angle_factor(depth);
            if (!mul && rhs == 0.0) {
                throw QasmError(QasmErrorKind::Semantic, op.span, "division by zero in angle");
            }
            value = mul ? value * rhs : value / rhs;
        }
        return value;
    }

    double parse_angle_factor(int depth) {
        if (cur_.type == Tok::Minus) {
            bump();
            return -parse_angle_factor(depth + 1);
        }
        if (cur_.type == Tok::LParen) {
            bump();
            const double value = parse_angle_expr(depth + 1);
            expect(Tok::RParen, "')'");
            return value;
        }
        if (cur_.type == Tok::Number) {
            const double value = std::strtod(cur_.text.c_str(), nullptr);
            bump();
            return value;
        }
        if (cur_.type == Tok::Ident && cur_.text == "pi") {
            bump();
            return std::numbers::pi;
        }
        throw QasmError(QasmErrorKind::Syntax, cur_.span,
                        "expected number, 'pi', or parenthesized expression" + describe_current());
    }

    Lexer lexer_;
    Token cur_;
    std::vector<Register> qregs_;
    std::vector<Register> cregs_;
};

std::string format_angle(double angle) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", angle);
    return buf;
}

}  // namespace

QasmError::QasmError(QasmErrorKind kind, SourceSpan span, const std::string& message)
    : Error(std::to_string(span.line) + ":" + std::to_string(span.column) + ": " +
            kind_label(kind) + " error: " + message),
      kind_(kind),
      span_(span),
      message_(message) {}

Circuit parse_qasm(std::string_view text) {
    return Parser(text).parse();
}

std::string emit_qasm(const Circuit& circuit) {
    std::string out = "OPENQASM 2.0;\n";
    if (circuit.num_qubits() > 0) {
        out += "qreg q[" + std::to_string(circuit.num_qubits()) + "];\n";
    }
    for (uint32_t b = 0; b < circuit.num_clbits(); ++b) {
        out += "creg c" + std::to_string(b) + "[1];\n";
    }
    for (const Instruction& instr : circuit.instructions()) {
        if (instr.kind == GateKind::RemotePlaceholder) {
            throw ValidationError("cannot serialize a circuit containing remote placeholders");
        }
        if (instr.condition) {
            out += "if (c" + std::to_string(instr.condition->bit) +
                   "==" + std::to_string(instr.condition->value) + ") ";
        }
        if (instr.kind == GateKind::Measure) {
            out += "measure q[" + std::to_string(instr.qubits[0]) + "] -> c" +
                   std::to_string(instr.clbits[0]) + "[0];\n";
            continue;
        }
        out += gate_name(instr.kind);
        if (is_rotation(instr.kind)) {
            out += "(" + format_angle(instr.angle) + ")";
        }
        out += " ";
        for (size_t i = 0; i < instr.qubits.size(); ++i) {
            if (i > 0) out += ",";
            out += "q[" + std::to_string(instr.qubits[i]) + "]";
        }
        out += ";\n";
    }
    return out;
}

}  // namespace dqc
