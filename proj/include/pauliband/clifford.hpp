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

/// @file clifford.hpp
/// Simultaneous diagonalization of commuting Pauli sets by Clifford circuits.
///
/// Tableau rows are stored as i^e X^x Z^z (qubit 0 in the MSB), so a Walsh
/// operator W(x, z) enters with e = x.z. Gates act by conjugation P -> U P U^dagger.

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pauliband/errors.hpp"
#include "pauliband/pauli.hpp"

namespace pauliband {

enum class GateKind { H, S, Sdg, CX, CZ };

struct Gate {
    GateKind kind;
    int a;       ///< target, or control for CX
    int b = -1;  ///< second qubit of CX / CZ

    bool two_qubit() const { return kind == GateKind::CX || kind == GateKind::CZ; }

    Gate inverse() const {
        if (kind == GateKind::S) return {GateKind::Sdg, a, b};
        if (kind == GateKind::Sdg) return {GateKind::S, a, b};
        return *this;
    }

    friend bool operator==(const Gate &, const Gate &) = default;
};

inline const char *gate_name(GateKind k) {
    switch (k) {
        case GateKind::H: return "h";
        case GateKind::S: return "s";
        case GateKind::Sdg: return "sdg";
        case GateKind::CX: return "cx";
        case GateKind::CZ: return "cz";
    }
    return "?";
}

/// Gates in time order: gates[0] acts first.
struct CliffordSequence {
    int num_qubits = 0;
    std::vector<Gate> gates;

    std::size_t size() const { return gates.size(); }

    CliffordSequence inverse() const {
        CliffordSequence out{num_qubits, {}};
        for (auto it = gates.rbegin(); it != gates.rend(); ++it) out.gates.push_back(it->inverse());
        return out;
    }
};

/// Applies one gate to a state vector over n qubits.
template <typename Vec>
void apply_gate(const Gate &g, Vec &psi, int n) {
    const std::size_t dim = std::size_t{1} << n;
    auto mask = [n](int q) { return std::size_t{1} << (n - 1 - q); };
    const std::size_t ma = mask(g.a);
    switch (g.kind) {
        case GateKind::H: {
            const double r = 1.0 / std::sqrt(2.0);
            for (std::size_t i = 0; i < dim; ++i) {
                if (i & ma) continue;
                const Complex u = psi[i];
                const Complex v = psi[i | ma];
                psi[i] = (u + v) * r;
                psi[i | ma] = (u - v) * r;
            }
            break;
        }
        case GateKind::S:
        case GateKind::Sdg: {
            const Complex ph = g.kind == GateKind::S ? Complex(0, 1) : Complex(0, -1);
            for (std::size_t i = 0; i < dim; ++i) {
                if (i & ma) psi[i] *= ph;
            }
            break;
        }
        case GateKind::CX: {
            const std::size_t mb = mask(g.b);
            for (std::size_t i = 0; i < dim; ++i) {
                if ((i & ma) && !(i & mb)) std::swap(psi[i], psi[i | mb]);
            }
            break;
        }
        case GateKind::CZ: {
            const std::size_t mb = mask(g.b);
            for (std::size_t i = 0; i < dim; ++i) {
                if ((i & ma) && (i & mb)) psi[i] = -psi[i];
            }
            break;
        }
    }
}

/// Dense unitary of a single gate.
inline Eigen::MatrixXcd gate_matrix(const Gate &g, int n) {
    if (n > kMaxOracleQubits) throw ResourceLimitError("gate_matrix: too many qubits for a dense oracle");
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
        Eigen::VectorXcd col = u.col(c);
        apply_gate(g, col, n);
        u.col(c) = col;
    }
    return u;
}

/// Dense unitary G_m ... G_1 of a sequence.
inline Eigen::MatrixXcd sequence_matrix(const CliffordSequence &seq) {
    const int n = seq.num_qubits;
    if (n > kMaxOracleQubits) throw ResourceLimitError("sequence_matrix: too many qubits for a dense oracle");
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
        Eigen::VectorXcd col = u.col(c);
        for (const auto &g : seq.gates) apply_gate(g, col, n);
        u.col(c) = col;
    }
    return u;
}

/// Rows i^{phase} X^x Z^z, all with the same qubit count.
struct Tableau {
    int num_qubits = 0;
    std::vector<std::uint32_t> xs;
    std::vector<std::uint32_t> zs;
    std::vector<int> phases;  ///< exponent of i, mod 4

    std::size_t size() const { return xs.size(); }

    void add_row(std::uint32_t x, std::uint32_t z, int phase) {
        xs.push_back(x);
        zs.push_back(z);
        phases.push_back(((phase % 4) + 4) % 4);
    }

    /// Conjugates every row by g.
    void apply(const Gate &g) {
        const int n = num_qubits;
        auto bit = [n](std::uint32_t v, int q) { return static_cast<int>((v >> (n - 1 - q)) & 1U); };
        const std::uint32_t ma = std::uint32_t{1} << (n - 1 - g.a);
        for (std::size_t r = 0; r < size(); ++r) {
            std::uint32_t &x = xs[r];
            std::uint32_t &z = zs[r];
            int &e = phases[r];
            switch (g.kind) {
                case GateKind::H: {
                    const int xa = bit(x, g.a);
                    const int za = bit(z, g.a);
                    e += 2 * xa * za;
                    if (xa != za) {
                        x ^= ma;
                        z ^= ma;
                    }
                    break;
                }
                case GateKind::S:
                case GateKind::Sdg: {
                    const int xa = bit(x, g.a);
                    e += g.kind == GateKind::S ? xa : 3 * xa;
                    if (xa) z ^= ma;
                    break;
                }
                case GateKind::CX: {
                    const std::uint32_t mb = std::uint32_t{1} << (n - 1 - g.b);
                    if (x & ma) x ^= mb;
                    if (z & mb) z ^= ma;
                    break;
                }
                case GateKind::CZ: {
                    const std::uint32_t mb = std::uint32_t{1} << (n - 1 - g.b);
                    const int xa = bit(x, g.a);
                    const int xb = bit(x, g.b);
                    e += 2 * xa * xb;
                    if (xa) z ^= mb;
                    if (xb) z ^= ma;
                    break;
                }
            }
            e &= 3;
        }
    }
};

/// One row per term, holding W(x, z) = i^{x.z} X^x Z^z. Weights are not stored.
inline Tableau tableau_from_set(const std::vector<PauliTerm> &terms) {
    Tableau t;
    if (terms.empty()) return t;
    t.num_qubits = terms.front().num_qubits();
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i].num_qubits() != t.num_qubits) {
            throw std::invalid_argument("tableau_from_set: terms have different qubit counts");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (!commutes(terms[i], terms[j])) {
                throw std::invalid_argument("tableau_from_set: " + pauli_string(terms[i].x, terms[i].z) +
                                            " and " + pauli_string(terms[j].x, terms[j].z) + " anticommute");
            }
        }
        t.add_row(terms[i].x.bits(), terms[i].z.bits(), dot(terms[i].x, terms[i].z));
    }
    return t;
}

/// A commuting set rewritten as R^dagger (sum_j w_j sign_j Z^{z_j}) R.
struct DiagonalizedSet {
    CliffordSequence r;
    std::vector<BitString> z_rows;
    std::vector<int> signs;       ///< R P_j R^dagger = signs[j] Z^{z_rows[j]}
    std::vector<double> weights;  ///< w_j, empty when built from a bare tableau

    std::size_t size() const { return z_rows.size(); }

    /// theta_j = dt * w_j * sign_j, so exp(-i dt w_j P_j) = R^dagger exp(-i theta_j Z^{z_j}) R.
    std::vector<double> angles(double dt) const {
        std::vector<double> out;
        for (std::size_t j = 0; j < weights.size(); ++j) out.push_back(dt * weights[j] * signs[j]);
        return out;
    }
};

/// Clears the x-block of a commuting tableau column by column.
///
/// Each round takes a remaining generator with nonzero x, picks a qubit q on
/// it, turns the generator into X_q with CX / CZ / S, maps it to Z_q with H,
/// and strips qubit q from the other generators. Gates never touch q again.
inline DiagonalizedSet diagonalize(const Tableau &tab) {
    const int n = tab.num_qubits;
    DiagonalizedSet out;
    out.r.num_qubits = n;
    if (tab.size() == 0) return out;

    for (std::size_t i = 0; i < tab.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            const int s = std::popcount(tab.xs[i] & tab.zs[j]) + std::popcount(tab.xs[j] & tab.zs[i]);
            if (s & 1) throw std::invalid_argument("diagonalize: tableau rows do not commute");
        }
    }

    Tableau members = tab;
    Tableau gens;
    gens.num_qubits = n;
    for (std::size_t i = 0; i < tab.size(); ++i) gens.add_row(tab.xs[i], tab.zs[i], 0);

    auto emit = [&](Gate g) {
        out.r.gates.push_back(g);
        members.apply(g);
        gens.apply(g);
    };
    auto mask = [n](int q) { return std::uint32_t{1} << (n - 1 - q); };

    while (true) {
        std::size_t piv = gens.size();
        for (std::size_t i = 0; i < gens.size(); ++i) {
            if (gens.xs[i] != 0) {
                piv = i;
                break;
            }
        }
        if (piv == gens.size()) break;

        const int q = n - 1 - (std::bit_width(gens.xs[piv]) - 1);
        for (int j = 0; j < n; ++j) {
            if (j != q && (gens.xs[piv] & mask(j))) emit({GateKind::CX, q, j});
        }
        for (int j = 0; j < n; ++j) {
            if (j != q && (gens.zs[piv] & mask(j))) emit({GateKind::CZ, q, j});
        }
        if (gens.zs[piv] & mask(q)) emit({GateKind::S, q});
        emit({GateKind::H, q});
        if (gens.xs[piv] != 0 || gens.zs[piv] != mask(q)) {
            throw InternalError("diagonalize: pivot did not reduce to a single Z");
        }
        for (std::size_t i = 0; i < gens.size(); ++i) {
            if (i == piv) continue;
            if (gens.xs[i] & mask(q)) throw InternalError("diagonalize: generator anticommutes with pivot");
            if (gens.zs[i] & mask(q)) gens.zs[i] ^= mask(q);
        }
        gens.xs.erase(gens.xs.begin() + static_cast<std::ptrdiff_t>(piv));
        gens.zs.erase(gens.zs.begin() + static_cast<std::ptrdiff_t>(piv));
        gens.phases.erase(gens.phases.begin() + static_cast<std::ptrdiff_t>(piv));
    }

    for (std::size_t i = 0; i < members.size(); ++i) {
        if (members.xs[i] != 0 || (members.phases[i] & 1)) {
            throw InternalError("diagonalize: member row was not reduced to a signed Z string");
        }
        out.z_rows.emplace_back(members.zs[i], n);
        out.signs.push_back(members.phases[i] == 0 ? 1 : -1);
    }
    return out;
}

/// Diagonalizes a commuting set of terms and keeps their (real) weights.
inline DiagonalizedSet diagonalize(const std::vector<PauliTerm> &terms) {
    DiagonalizedSet out = diagonalize(tableau_from_set(terms));
    for (const auto &t : terms) {
        if (std::abs(t.weight.imag()) > 1e-9 * std::max(1.0, std::abs(t.weight))) {
            throw std::invalid_argument("diagonalize: weight of " + pauli_string(t.x, t.z) +
                                        " is not real");
        }
        out.weights.push_back(t.weight.real());
    }
    return out;
}

/// R P R^dagger by dense algebra, re-identified as a weighted Walsh operator.
inline PauliTerm conjugate_oracle(const CliffordSequence &r, const PauliTerm &p) {
    const int n = p.num_qubits();
    if (n > kMaxOracleQubits) {
        throw ResourceLimitError("conjugate_oracle: limited to " + std::to_string(kMaxOracleQubits) + " qubits");
    }
    if (r.num_qubits != n && !r.gates.empty()) {
        throw std::invalid_argument("conjugate_oracle: sequence and term sizes differ");
    }
    CliffordSequence seq = r;
    seq.num_qubits = n;
    const Eigen::MatrixXcd u = sequence_matrix(seq);
    const Eigen::MatrixXcd m = u * dense_matrix(p) * u.adjoint();
    const std::uint32_t dim = std::uint32_t{1} << n;

    std::uint32_t x = 0;
    double best = -1;
    for (std::uint32_t c = 0; c < dim; ++c) {
        if (std::abs(m(0, c)) > best) {
            best = std::abs(m(0, c));
            x = c;
        }
    }
    const double scale = std::max(1.0, std::abs(p.weight));
    for (std::uint32_t z = 0; z < dim; ++z) {
        PauliTerm cand(BitString(x, n), BitString(z, n));
        const Eigen::MatrixXcd w = dense_matrix(cand);
        const Complex coef = (w.adjoint() * m).trace() / static_cast<double>(dim);
        if (((m - coef * w).cwiseAbs().maxCoeff()) < 1e-10 * scale && std::abs(coef) > 1e-12 * scale) {
            cand.weight = coef;
            return cand;
        }
    }
    throw InternalError("conjugate_oracle: conjugated operator is not a signed Pauli string");
}

}  // namespace pauliband
