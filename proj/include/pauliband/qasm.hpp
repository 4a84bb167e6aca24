// Copyright 2026 The pauliband Authors
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

#pragma once

/// @file qasm.hpp
/// OpenQASM 2 emission of diagonalized exponentials, and a small
/// interpreter for reading the emitted text back.
///
/// exp(-i theta P) with R P R^dagger = sign Z^z is written as the gates of R,
/// then a CNOT ladder over the qubits of z around rz(2 sign theta), then R^dagger.
/// q[0] is the most significant qubit. Global phases (identity terms) are
/// dropped.

#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pauliband/clifford.hpp"
#include "pauliband/errors.hpp"
#include "pauliband/evolution.hpp"
#include "pauliband/pauli.hpp"

namespace pauliband {

namespace detail {

inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string qasm_header(int num_qubits) {
    return "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" + std::to_string(num_qubits) + "];\n";
}

inline void write_gate(std::ostringstream &os, const Gate &g) {
    os << gate_name(g.kind) << " q[" << g.a << "]";
    if (g.two_qubit()) os << ",q[" << g.b << "]";
    os << ";\n";
}

/// Qubits of a Z string in ascending index order.
inline std::vector<int> z_support(std::uint32_t z, int n) {
    std::vector<int> out;
    for (int q = 0; q < n; ++q) {
        if (z & (std::uint32_t{1} << (n - 1 - q))) out.push_back(q);
    }
    return out;
}

/// exp(-i lambda/2 Z^z) as a CNOT ladder; lambda is already a QASM expression.
inline void write_rotation(std::ostringstream &os, std::uint32_t z, int n, const std::string &lambda) {
    const auto qs = z_support(z, n);
    if (qs.empty()) return;
    for (std::size_t i = 0; i + 1 < qs.size(); ++i) os << "cx q[" << qs[i] << "],q[" << qs[i + 1] << "];\n";
    os << "rz(" << lambda << ") q[" << qs.back() << "];\n";
    for (std::size_t i = qs.size() - 1; i-- > 0;) os << "cx q[" << qs[i] << "],q[" << qs[i + 1] << "];\n";
}

/// One exponential exp(-i coeff dt sum_j w_j P_j).
inline void write_exponential(std::ostringstream &os, const DiagonalizedSet &d, std::size_t set_index,
                              double coeff, double dt, bool symbolic) {
    const int n = d.r.num_qubits;
    for (const auto &g : d.r.gates) write_gate(os, g);
    for (std::size_t j = 0; j < d.size(); ++j) {
        std::string lambda;
        if (symbolic) {
            lambda = format_double(2.0 * coeff) + "*theta_" + std::to_string(set_index) + "_" + std::to_string(j);
        } else {
            const double w = d.weights.empty() ? 1.0 : d.weights[j];
            lambda = format_double(2.0 * coeff * dt * w * d.signs[j]);
        }
        write_rotation(os, d.z_rows[j].bits(), n, lambda);
    }
    for (const auto &g : d.r.inverse().gates) write_gate(os, g);
}

inline std::size_t rotation_gates(std::uint32_t z) {
    const int m = std::popcount(z);
    return m == 0 ? 0 : static_cast<std::size_t>(2 * m - 1);
}

}  // namespace detail

/// exp(-i dt sum_j w_j P_j) for one diagonalized set. Symbolic mode writes
/// rz(2*theta_<set>_<row>) with theta = dt w_j sign_j left unbound.
inline std::string emit_qasm2(const DiagonalizedSet &d, bool symbolic, double dt = 1.0, std::size_t set_index = 0) {
    std::ostringstream os;
    os << detail::qasm_header(d.r.num_qubits);
    if (d.size() == 0) return os.str();
    detail::write_exponential(os, d, set_index, 1.0, dt, symbolic);
    return os.str();
}

/// Each group of H diagonalized once, in group order.
inline std::vector<DiagonalizedSet> diagonalize_groups(const GroupedHamiltonian &h) {
    std::vector<DiagonalizedSet> out;
    out.reserve(h.size());
    for (const auto &g : h.groups) out.push_back(diagonalize(g.terms(h.num_qubits)));
    return out;
}

/// Values of the symbolic tokens theta_<group>_<row> for step size dt.
inline std::map<std::string, double> qasm_parameters(const std::vector<DiagonalizedSet> &sets, double dt) {
    std::map<std::string, double> out;
    for (std::size_t s = 0; s < sets.size(); ++s) {
        const auto th = sets[s].angles(dt);
        for (std::size_t j = 0; j < th.size(); ++j) {
            out["theta_" + std::to_string(s) + "_" + std::to_string(j)] = th[j];
        }
    }
    return out;
}

/// One step S_p(dt) following trotter_schedule. Symbolic tokens are shared
/// between repeated exponentials of the same group and scaled by the
/// schedule coefficient.
inline std::string emit_trotter_step_qasm2(const GroupedHamiltonian &h, const std::vector<DiagonalizedSet> &sets,
                                           int p, double dt, bool symbolic) {
    if (sets.size() != h.size()) throw std::invalid_argument("emit_trotter_step_qasm2: one set per group expected");
    std::ostringstream os;
    os << detail::qasm_header(h.num_qubits);
    for (const auto &e : trotter_schedule(h.size(), p)) {
        detail::write_exponential(os, sets[e.group], e.group, e.coeff, dt, symbolic);
    }
    return os.str();
}

inline std::string emit_trotter_step_qasm2(const GroupedHamiltonian &h, int p, double dt, bool symbolic) {
    return emit_trotter_step_qasm2(h, diagonalize_groups(h), p, dt, symbolic);
}

/// Gates of one exponential: |R| twice plus the ladder and rz of each row.
inline std::size_t exponential_gate_count(const DiagonalizedSet &d) {
    std::size_t c = 2 * d.r.size();
    for (const auto &z : d.z_rows) c += detail::rotation_gates(z.bits());
    return c;
}

// ---------------------------------------------------------------------------
// Interpreter

struct QasmOp {
    std::string name;
    std::vector<int> qubits;
    double param = 0.0;
};

struct QasmProgram {
    int num_qubits = 0;
    std::vector<QasmOp> ops;

    std::size_t gate_count() const { return ops.size(); }
};

namespace detail {

class ExprParser {
   public:
    ExprParser(const std::string &s, const std::map<std::string, double> &vars) : s_(s), vars_(vars) {}

    double parse() {
        const double v = sum();
        skip();
        if (i_ != s_.size()) fail("trailing characters");
        return v;
    }

   private:
    const std::string &s_;
    const std::map<std::string, double> &vars_;
    std::size_t i_ = 0;

    [[noreturn]] void fail(const std::string &why) const {
        throw std::invalid_argument("qasm expression '" + s_ + "': " + why);
    }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    double sum() {
        double v = product();
        while (true) {
            if (eat('+')) {
                v += product();
            } else if (eat('-')) {
                v -= product();
            } else {
                return v;
            }
        }
    }
    double product() {
        double v = unary();
        while (true) {
            if (eat('*')) {
                v *= unary();
            } else if (eat('/')) {
                v /= unary();
            } else {
                return v;
            }
        }
    }
    double unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return atom();
    }
    double atom() {
        skip();
        if (eat('(')) {
            const double v = sum();
            if (!eat(')')) fail("missing ')'");
            return v;
        }
        if (i_ >= s_.size()) fail("unexpected end");
        const char c = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t used = 0;
            const double v = std::stod(s_.substr(i_), &used);
            i_ += used;
            return v;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = i_;
            while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
            const std::string name = s_.substr(start, i_ - start);
            if (name == "pi") return std::numbers::pi;
            auto it = vars_.find(name);
            if (it == vars_.end()) fail("unbound parameter " + name);
            return it->second;
        }
        fail(std::string("unexpected '") + c + "'");
    }
};

inline std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline int parse_qubit(const std::string &arg, int nq, int line) {
    const std::string a = trim(arg);
    if (a.size() < 4 || a.rfind("q[", 0) != 0 || a.back() != ']') {
        throw std::invalid_argument("qasm line " + std::to_string(line) + ": bad qubit argument '" + a + "'");
    }
    const int q = std::stoi(a.substr(2, a.size() - 3));
    if (q < 0 || q >= nq) {
        throw std::invalid_argument("qasm line " + std::to_string(line) + ": qubit " + std::to_string(q) +
                                    " outside register");
    }
    return q;
}

}  // namespace detail

/// Parses the subset of OpenQASM 2 written by the emitters: one register q,
/// gates h, x, z, s, sdg, cx, cz and rz(expr) with expressions over numbers,
/// pi and the given parameters.
inline QasmProgram parse_qasm2(const std::string &text, const std::map<std::string, double> &params = {}) {
    QasmProgram prog;
    bool have_reg = false;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (auto c = raw.find("//"); c != std::string::npos) raw.resize(c);
        std::istringstream stmts(raw);
        std::string stmt;
        while (std::getline(stmts, stmt, ';')) {
            stmt = detail::trim(stmt);
            if (stmt.empty()) continue;
            auto bad = [&](const std::string &why) {
                return std::invalid_argument("qasm line " + std::to_string(line) + ": " + why);
            };
            if (stmt.rfind("OPENQASM", 0) == 0) {
                if (detail::trim(stmt.substr(8)) != "2.0") throw bad("unsupported version");
                continue;
            }
            if (stmt.rfind("include", 0) == 0) continue;
            if (stmt.rfind("qreg", 0) == 0) {
                if (have_reg) throw bad("only one register is supported");
                const auto lb = stmt.find('['), rb = stmt.find(']');
                if (lb == std::string::npos || rb == std::string::npos || detail::trim(stmt.substr(4, lb - 4)) != "q") {
                    throw bad("expected qreg q[n]");
                }
                prog.num_qubits = std::stoi(stmt.substr(lb + 1, rb - lb - 1));
                have_reg = true;
                continue;
            }
            if (!have_reg) throw bad("gate before qreg");
            std::string name, args;
            double param = 0.0;
            const auto lp = stmt.find('(');
            const auto sp = stmt.find_first_of(" \t");
            if (lp != std::string::npos && (sp == std::string::npos || lp < sp)) {
                std::size_t rp = std::string::npos;
                for (std::size_t i = lp, depth = 0; i < stmt.size(); ++i) {
                    if (stmt[i] == '(') ++depth;
                    if (stmt[i] == ')' && --depth == 0) {
                        rp = i;
                        break;
                    }
                }
                if (rp == std::string::npos) throw bad("missing ')'");
                name = stmt.substr(0, lp);
                param = detail::ExprParser(stmt.substr(lp + 1, rp - lp - 1), params).parse();
                args = stmt.substr(rp + 1);
            } else {
                if (sp == std::string::npos) throw bad("gate without operands");
                name = stmt.substr(0, sp);
                args = stmt.substr(sp);
            }
            QasmOp op{name, {}, param};
            std::istringstream as(args);
            std::string a;
            while (std::getline(as, a, ',')) op.qubits.push_back(detail::parse_qubit(a, prog.num_qubits, line));
            const bool one = name == "h" || name == "x" || name == "z" || name == "s" || name == "sdg" || name == "rz";
            const bool two = name == "cx" || name == "cz";
            if (!one && !two) throw bad("unsupported gate '" + name + "'");
            if (op.qubits.size() != (two ? 2u : 1u)) throw bad("wrong operand count for " + name);
            if (two && op.qubits[0] == op.qubits[1]) throw bad("repeated operand for " + name);
            prog.ops.push_back(std::move(op));
        }
    }
    if (!have_reg) throw std::invalid_argument("qasm: no qreg declaration");
    return prog;
}

/// Applies the program to a state vector, q[0] most significant.
template <typename Vec>
void simulate(const QasmProgram &prog, Vec &psi) {
    const int n = prog.num_qubits;
    for (const auto &op : prog.ops) {
        const int a = op.qubits[0];
        const std::size_t ma = std::size_t{1} << (n - 1 - a);
        if (op.name == "h") {
            apply_gate(Gate{GateKind::H, a}, psi, n);
        } else if (op.name == "s") {
            apply_gate(Gate{GateKind::S, a}, psi, n);
        } else if (op.name == "sdg") {
            apply_gate(Gate{GateKind::Sdg, a}, psi, n);
        } else if (op.name == "cx") {
            apply_gate(Gate{GateKind::CX, a, op.qubits[1]}, psi, n);
        } else if (op.name == "cz") {
            apply_gate(Gate{GateKind::CZ, a, op.qubits[1]}, psi, n);
        } else if (op.name == "x") {
            for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) {
                if (!(i & ma)) std::swap(psi[i], psi[i | ma]);
            }
        } else if (op.name == "z") {
            for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) {
                if (i & ma) psi[i] = -psi[i];
            }
        } else if (op.name == "rz") {
            const Complex lo = std::exp(Complex(0, -op.param / 2));
            const Complex hi = std::exp(Complex(0, op.param / 2));
            for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) psi[i] *= (i & ma) ? hi : lo;
        }
    }
}

/// Dense unitary of the program.
inline Eigen::MatrixXcd program_unitary(const QasmProgram &prog) {
    if (prog.num_qubits > kMaxDenseQubits) throw ResourceLimitError("program_unitary: too many qubits");
    const Eigen::Index dim = Eigen::Index{1} << prog.num_qubits;
    Eigen::MatrixXcd u(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
        Eigen::VectorXcd col = Eigen::VectorXcd::Unit(dim, c);
        simulate(prog, col);
        u.col(c) = col;
    }
    return u;
}

inline Eigen::MatrixXcd qasm_unitary(const std::string &text, const std::map<std::string, double> &params = {}) {
    return program_unitary(parse_qasm2(text, params));
}

}  // namespace pauliband
