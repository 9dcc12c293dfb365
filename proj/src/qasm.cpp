// Copyright 2026 The dqcmap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dqcmap/qasm.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "dqcmap/errors.hpp"

namespace dqcmap {

namespace {

struct GateShape {
    int qubits;
    int params;
};

const std::unordered_map<std::string, GateShape> &known_gates() {
    static const std::unordered_map<std::string, GateShape> table = {
        {"id", {1, 0}},   {"x", {1, 0}},    {"y", {1, 0}},    {"z", {1, 0}},     {"h", {1, 0}},
        {"s", {1, 0}},    {"sdg", {1, 0}},  {"t", {1, 0}},    {"tdg", {1, 0}},   {"sx", {1, 0}},
        {"sxdg", {1, 0}}, {"rx", {1, 1}},   {"ry", {1, 1}},   {"rz", {1, 1}},    {"u1", {1, 1}},
        {"p", {1, 1}},    {"u2", {1, 2}},   {"u3", {1, 3}},   {"u", {1, 3}},     {"U", {1, 3}},
        {"cx", {2, 0}},   {"CX", {2, 0}},   {"cy", {2, 0}},   {"cz", {2, 0}},    {"ch", {2, 0}},
        {"swap", {2, 0}}, {"crx", {2, 1}},  {"cry", {2, 1}},  {"crz", {2, 1}},   {"cu1", {2, 1}},
        {"cp", {2, 1}},   {"rzz", {2, 1}},  {"rxx", {2, 1}},  {"cu3", {2, 3}},
    };
    return table;
}

bool is_multi_qubit_gate(const std::string &name) {
    return name == "ccx" || name == "cswap" || name == "c3x" || name == "c4x" || name == "rccx" ||
           name == "rc3x" || name == "c3sqrtx" || name == "ccz";
}

struct Statement {
    std::string text;
    int line;
};

std::vector<Statement> split_statements(std::string_view src) {
    std::vector<Statement> out;
    std::string cur;
    int line = 1;
    int start_line = 0;
    for (std::size_t i = 0; i < src.size(); ++i) {
        char c = src[i];
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
            while (i < src.size() && src[i] != '\n') {
                ++i;
            }
            if (i < src.size()) {
                ++line;
                cur.push_back(' ');
            }
            continue;
        }
        if (c == '{' || c == '}') {
            throw UnsupportedError("line " + std::to_string(start_line ? start_line : line) +
                                   ": gate definitions and blocks are not supported");
        }
        if (c == ';') {
            if (start_line == 0) {
                throw ParseError(line, "empty statement");
            }
            out.push_back({cur, start_line});
            cur.clear();
            start_line = 0;
            continue;
        }
        if (c == '\n') {
            ++line;
        }
        if (start_line == 0 && !std::isspace(static_cast<unsigned char>(c))) {
            start_line = line;
        }
        cur.push_back(c);
    }
    if (start_line != 0) {
        throw ParseError(start_line, "missing ';' at end of statement");
    }
    return out;
}

class Cursor {
public:
    Cursor(const std::string &s, int line) : s_(s), line_(line) {
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
    }
    bool at_end() {
        skip_ws();
        return pos_ >= s_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    bool accept(std::string_view token) {
        skip_ws();
        if (s_.compare(pos_, token.size(), token) == 0) {
            pos_ += token.size();
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) {
            fail(std::string("expected '") + c + "'");
        }
    }
    std::string identifier() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
            ++pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
                ++pos_;
            }
        }
        if (start == pos_) {
            fail("expected identifier");
        }
        return s_.substr(start, pos_ - start);
    }
    long integer() {
        skip_ws();
        long v = 0;
        auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
        if (ec != std::errc() || ptr == s_.data() + pos_) {
            fail("expected integer");
        }
        pos_ = static_cast<std::size_t>(ptr - s_.data());
        return v;
    }
    double number() {
        skip_ws();
        double v = 0;
        auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
        if (ec != std::errc() || ptr == s_.data() + pos_) {
            fail("expected number");
        }
        pos_ = static_cast<std::size_t>(ptr - s_.data());
        return v;
    }
    std::string rest() {
        skip_ws();
        return s_.substr(pos_);
    }
    [[noreturn]] void fail(const std::string &what) const {
        throw ParseError(line_, what + " in '" + s_ + "'");
    }
    int line() const {
        return line_;
    }

    // Angle expressions: + - * / ^, unary minus, parentheses, pi, and the
    // OpenQASM 2.0 unary functions.
    double expr() {
        double v = term();
        for (;;) {
            if (accept('+')) {
                v += term();
            } else if (peek() == '-') {
                ++pos_;
                v -= term();
            } else {
                return v;
            }
        }
    }

private:
    double term() {
        double v = unary();
        for (;;) {
            if (accept('*')) {
                v *= unary();
            } else if (accept('/')) {
                v /= unary();
            } else {
                return v;
            }
        }
    }
    double unary() {
        if (accept('-')) {
            return -unary();
        }
        if (accept('+')) {
            return unary();
        }
        double base = primary();
        if (accept('^')) {
            return std::pow(base, unary());
        }
        return base;
    }
    double primary() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            double v = expr();
            expect(')');
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return number();
        }
        std::string id = identifier();
        if (id == "pi") {
            return std::numbers::pi;
        }
        expect('(');
        double arg = expr();
        expect(')');
        if (id == "sin") return std::sin(arg);
        if (id == "cos") return std::cos(arg);
        if (id == "tan") return std::tan(arg);
        if (id == "exp") return std::exp(arg);
        if (id == "ln") return std::log(arg);
        if (id == "sqrt") return std::sqrt(arg);
        fail("unknown function '" + id + "'");
    }

    const std::string &s_;
    std::size_t pos_ = 0;
    int line_;
};

// A register reference: either a single element or the whole register.
struct Operand {
    std::string reg;
    std::optional<long> index;
};

Operand operand(Cursor &cur) {
    Operand op{cur.identifier(), std::nullopt};
    if (cur.accept('[')) {
        op.index = cur.integer();
        cur.expect(']');
    }
    return op;
}

std::vector<Operand> operand_list(Cursor &cur) {
    std::vector<Operand> ops{operand(cur)};
    while (cur.accept(',')) {
        ops.push_back(operand(cur));
    }
    if (!cur.at_end()) {
        cur.fail("unexpected trailing text '" + cur.rest() + "'");
    }
    return ops;
}

class Builder {
public:
    explicit Builder(std::string name) : name_(std::move(name)) {
    }

    void statement(const Statement &st) {
        Cursor cur(st.text, st.line);
        std::string head = cur.identifier();
        if (head == "OPENQASM") {
            double version = cur.number();
            if (version < 2.0 || version >= 3.0) {
                throw UnsupportedError("line " + std::to_string(st.line) + ": only OpenQASM 2.x is supported");
            }
            return;
        }
        if (head == "include") {
            if (cur.peek() != '"') {
                cur.fail("expected quoted file name");
            }
            return;
        }
        if (head == "qreg" || head == "creg") {
            std::string reg = cur.identifier();
            cur.expect('[');
            long size = cur.integer();
            cur.expect(']');
            if (!cur.at_end()) {
                cur.fail("unexpected trailing text");
            }
            if (size < 1) {
                cur.fail("register size must be positive");
            }
            if (head == "qreg") {
                if (circuit_) {
                    throw UnsupportedError("line " + std::to_string(st.line) +
                                           ": multiple quantum registers are not supported");
                }
                circuit_.emplace(static_cast<int>(size), name_, reg);
                for (auto &[n, s] : pending_cregs_) {
                    circuit_->add_creg(n, s);
                }
                pending_cregs_.clear();
            } else if (circuit_) {
                circuit_->add_creg(reg, static_cast<int>(size));
            } else {
                pending_cregs_.emplace_back(reg, static_cast<int>(size));
            }
            return;
        }
        if (head == "if" || head == "gate" || head == "opaque") {
            throw UnsupportedError("line " + std::to_string(st.line) + ": '" + head + "' is not supported");
        }
        if (!circuit_) {
            cur.fail("operation before qreg declaration");
        }
        if (head == "measure") {
            Operand q = operand(cur);
            if (!cur.accept("->")) {
                cur.fail("expected '->'");
            }
            Operand c = operand(cur);
            if (!cur.at_end()) {
                cur.fail("unexpected trailing text");
            }
            measure(cur, q, c);
            return;
        }

        std::vector<double> params;
        if (cur.accept('(')) {
            if (!cur.accept(')')) {
                params.push_back(cur.expr());
                while (cur.accept(',')) {
                    params.push_back(cur.expr());
                }
                cur.expect(')');
            }
        }
        std::vector<Operand> args = operand_list(cur);

        if (head == "barrier") {
            std::vector<Qubit> qs;
            for (const auto &a : args) {
                for (Qubit q : expand(cur, a)) {
                    qs.push_back(q);
                }
            }
            append(cur, GateOp{"barrier", dedupe(qs), {}});
            return;
        }
        if (head == "reset") {
            if (args.size() != 1) {
                cur.fail("reset takes one operand");
            }
            for (Qubit q : expand(cur, args[0])) {
                append(cur, GateOp{"reset", {q}, {}});
            }
            return;
        }
        if (args.size() >= 3 || is_multi_qubit_gate(head)) {
            throw UnsupportedError("line " + std::to_string(st.line) + ": gate '" + head +
                                   "' acts on three or more qubits; decompose first");
        }
        auto it = known_gates().find(head);
        if (it == known_gates().end()) {
            throw UnsupportedError("line " + std::to_string(st.line) + ": unknown gate '" + head + "'");
        }
        const GateShape shape = it->second;
        if (static_cast<int>(args.size()) != shape.qubits) {
            cur.fail("gate '" + head + "' takes " + std::to_string(shape.qubits) + " operand(s)");
        }
        if (static_cast<int>(params.size()) != shape.params) {
            cur.fail("gate '" + head + "' takes " + std::to_string(shape.params) + " parameter(s)");
        }
        std::string name = head == "CX" ? "cx" : head == "U" ? "u" : head;
        if (shape.qubits == 1) {
            for (Qubit q : expand(cur, args[0])) {
                append(cur, GateOp{name, {q}, params});
            }
        } else {
            if (!args[0].index || !args[1].index) {
                cur.fail("two-qubit gates need indexed operands");
            }
            append(cur, GateOp{name, {qubit(cur, args[0]), qubit(cur, args[1])}, params});
        }
    }

    Circuit finish() {
        if (!circuit_) {
            throw ParseError(1, "no qreg declaration");
        }
        return std::move(*circuit_);
    }

private:
    Qubit qubit(Cursor &cur, const Operand &a) {
        if (a.reg != circuit_->qreg_name()) {
            cur.fail("unknown quantum register '" + a.reg + "'");
        }
        if (*a.index < 0 || *a.index >= circuit_->n_qubits()) {
            cur.fail("qubit index " + std::to_string(*a.index) + " out of range");
        }
        return static_cast<Qubit>(*a.index);
    }

    std::vector<Qubit> expand(Cursor &cur, const Operand &a) {
        if (a.index) {
            return {qubit(cur, a)};
        }
        if (a.reg != circuit_->qreg_name()) {
            cur.fail("unknown quantum register '" + a.reg + "'");
        }
        std::vector<Qubit> all(circuit_->n_qubits());
        for (int q = 0; q < circuit_->n_qubits(); ++q) {
            all[q] = q;
        }
        return all;
    }

    static std::vector<Qubit> dedupe(const std::vector<Qubit> &qs) {
        std::vector<Qubit> out;
        for (Qubit q : qs) {
            if (std::find(out.begin(), out.end(), q) == out.end()) {
                out.push_back(q);
            }
        }
        return out;
    }

    void measure(Cursor &cur, const Operand &q, const Operand &c) {
        int offset = 0;
        const ClassicalRegister *reg = nullptr;
        for (const auto &r : circuit_->cregs()) {
            if (r.name == c.reg) {
                reg = &r;
                break;
            }
            offset += r.size;
        }
        if (!reg) {
            cur.fail("unknown classical register '" + c.reg + "'");
        }
        if (q.index.has_value() != c.index.has_value()) {
            cur.fail("measure operands must both be indexed or both be registers");
        }
        if (c.index) {
            if (*c.index < 0 || *c.index >= reg->size) {
                cur.fail("classical bit index out of range");
            }
            GateOp op{"measure", {qubit(cur, q)}, {}};
            op.clbit = offset + static_cast<int>(*c.index);
            append(cur, std::move(op));
            return;
        }
        std::vector<Qubit> qs = expand(cur, q);
        if (static_cast<int>(qs.size()) != reg->size) {
            cur.fail("register sizes differ in measure");
        }
        for (std::size_t i = 0; i < qs.size(); ++i) {
            GateOp op{"measure", {qs[i]}, {}};
            op.clbit = offset + static_cast<int>(i);
            append(cur, std::move(op));
        }
    }

    void append(Cursor &cur, GateOp op) {
        try {
            circuit_->append(std::move(op));
        } catch (const ValidationError &e) {
            cur.fail(e.what());
        }
    }

    std::string name_;
    std::optional<Circuit> circuit_;
    std::vector<std::pair<std::string, int>> pending_cregs_;
};

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace

Circuit parse_qasm(std::string_view text, std::string name) {
    Builder builder(std::move(name));
    for (const auto &st : split_statements(text)) {
        builder.statement(st);
    }
    return builder.finish();
}

std::string to_qasm(const Circuit &circuit) {
    std::ostringstream out;
    const std::string &q = circuit.qreg_name();
    out << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
    out << "qreg " << q << "[" << circuit.n_qubits() << "];\n";
    for (const auto &r : circuit.cregs()) {
        out << "creg " << r.name << "[" << r.size << "];\n";
    }
    for (const auto &op : circuit.ops()) {
        out << op.name;
        if (!op.params.empty()) {
            out << "(";
            for (std::size_t i = 0; i < op.params.size(); ++i) {
                out << (i ? "," : "") << format_double(op.params[i]);
            }
            out << ")";
        }
        for (std::size_t i = 0; i < op.qubits.size(); ++i) {
            out << (i ? "," : " ") << q << "[" << op.qubits[i] << "]";
        }
        if (op.kind() == OpKind::Measure) {
            int bit = op.clbit;
            for (const auto &r : circuit.cregs()) {
                if (bit < r.size) {
                    out << " -> " << r.name << "[" << bit << "]";
                    break;
                }
                bit -= r.size;
            }
        }
        out << ";\n";
    }
    return out.str();
}

}  // namespace dqcmap
