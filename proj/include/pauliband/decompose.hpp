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

/// @file decompose.hpp
/// Pauli decomposition of banded matrices.
///
/// A d-band matrix only has nonzero Walsh coefficients on a small family of
/// x labels, one per (offset, run length) pair plus the diagonal label 0.
/// Each label contributes a set of up to 2^n terms sharing that x, and every
/// set splits into two commuting halves by the parity of its Y count.

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pauliband/band_matrix.hpp"
#include "pauliband/errors.hpp"
#include "pauliband/pauli.hpp"

namespace pauliband {

inline constexpr double kDefaultPruneTolerance = 1e-12;

namespace detail {

inline void check_band_args(int n, int d, const char *who) {
    if (n < 1 || n > kMaxQubits) {
        throw std::invalid_argument(std::string(who) + ": qubit count " + std::to_string(n) +
                                    " outside [1, 16]");
    }
    const std::int64_t half = std::int64_t{1} << (n - 1);
    if (d < 0 || d > half) {
        throw std::invalid_argument(std::string(who) + ": bandwidth " + std::to_string(d) +
                                    " outside [0, " + std::to_string(half) + "]");
    }
}

inline int ceil_log2(int k) { return k <= 1 ? 0 : std::bit_width(static_cast<unsigned>(k - 1)); }

/// Raw label bits in enumeration order, x0 = 0 first.
inline std::vector<std::uint32_t> label_bits(int n, int d) {
    std::vector<std::uint32_t> out{0};
    for (int k = 1; k <= d; ++k) {
        const int s = ceil_log2(k);
        const std::uint32_t tail = (std::uint32_t{1} << s) - static_cast<std::uint32_t>(k);
        for (int j = 1; j <= n - s; ++j) {
            out.push_back((((std::uint32_t{1} << j) - 1) << s) | tail);
        }
    }
    return out;
}

}  // namespace detail

/// Number of x labels carrying weight for an n-qubit d-band matrix:
/// 2^{bit_width(d)} + (n - bit_width(d)) * d. A diagonal matrix has one.
inline std::int64_t count_sets(int n, int d) {
    detail::check_band_args(n, d, "count_sets");
    if (d == 0) return 1;
    const int l = std::bit_width(static_cast<unsigned>(d));
    return (std::int64_t{1} << l) + static_cast<std::int64_t>(n - l) * d;
}

/// Labels x0 = 0 and, for offsets k = 1..d with s = ceil(log2 k) and run
/// lengths j = 1..n-s, the label (2^j - 1) followed by the s-bit tail 2^s - k.
inline std::vector<BitString> enumerate_labels(int n, int d) {
    detail::check_band_args(n, d, "enumerate_labels");
    std::vector<BitString> out;
    for (auto b : detail::label_bits(n, d)) out.emplace_back(b, n);
    return out;
}

/// Labels of the off-diagonal block of [[0, B], [B^T, 0]]: each n-qubit label
/// with a leading 1 prepended.
inline std::vector<BitString> enumerate_labels_symmetrized(int n, int d) {
    detail::check_band_args(n, d, "enumerate_labels_symmetrized");
    if (n + 1 > kMaxQubits) {
        throw std::invalid_argument("enumerate_labels_symmetrized: n + 1 exceeds 16 qubits");
    }
    std::vector<BitString> out;
    const std::uint32_t lead = std::uint32_t{1} << n;
    for (auto b : detail::label_bits(n, d)) out.emplace_back(lead | b, n + 1);
    return out;
}

/// Element accessor of the symmetrized matrix [[0, B], [B^T, 0]] indexed by
/// (n+1)-bit row and column, with the block bit as qubit 0.
struct SymmetrizedView {
    const BandMatrix *b;

    int qubits() const { return b->qubits() + 1; }

    double operator()(std::uint32_t row, std::uint32_t col) const {
        const int n = b->qubits();
        const std::uint32_t ra = row >> n;
        const std::uint32_t ca = col >> n;
        const std::uint32_t mask = (std::uint32_t{1} << n) - 1;
        if (ra == 0 && ca == 1) return (*b)(row & mask, col & mask);
        if (ra == 1 && ca == 0) return (*b)(col & mask, row & mask);
        return 0.0;
    }
};

/// Coefficient of W(x, z) in B: i^{x.z} / 2^n * sum_p (-1)^{z.p} B[p, p ^ x],
/// skipping rows whose partner column falls outside the band. O(2^n).
inline Complex weight(const BandMatrix &b, const BitString &x, const BitString &z) {
    if (x.length() != b.qubits() || z.length() != b.qubits()) {
        throw std::invalid_argument("weight: label length does not match the matrix");
    }
    const std::int64_t n_rows = b.size();
    const std::int64_t d = b.bandwidth();
    double acc = 0.0;
    for (std::int64_t p = 0; p < n_rows; ++p) {
        const std::int64_t q = p ^ static_cast<std::int64_t>(x.bits());
        if (std::abs(q - p) > d) continue;
        const double v = b(p, q);
        acc += parity(z.bits() & static_cast<std::uint32_t>(p)) ? -v : v;
    }
    return i_pow(dot(x, z)) * (acc / static_cast<double>(n_rows));
}

/// Same coefficient for the symmetrized matrix, read straight from B.
inline Complex weight(const SymmetrizedView &h, const BitString &x, const BitString &z) {
    const int nq = h.qubits();
    if (x.length() != nq || z.length() != nq) {
        throw std::invalid_argument("weight: label length does not match the symmetrized matrix");
    }
    const std::uint32_t rows = std::uint32_t{1} << nq;
    double acc = 0.0;
    for (std::uint32_t p = 0; p < rows; ++p) {
        const double v = h(p, p ^ x.bits());
        if (v == 0.0) continue;
        acc += parity(z.bits() & p) ? -v : v;
    }
    return i_pow(dot(x, z)) * (acc / static_cast<double>(rows));
}

/// In-place unnormalized Walsh-Hadamard transform: out[z] = sum_p (-1)^{z.p} in[p].
template <typename T>
void fwht(std::vector<T> &v) {
    const std::size_t n = v.size();
    if (!std::has_single_bit(n)) throw std::invalid_argument("fwht: size must be a power of two");
    for (std::size_t len = 1; len < n; len <<= 1) {
        for (std::size_t i = 0; i < n; i += len << 1) {
            for (std::size_t j = i; j < i + len; ++j) {
                const T a = v[j];
                const T c = v[j + len];
                v[j] = a + c;
                v[j + len] = a - c;
            }
        }
    }
}

struct DecompositionSet {
    BitString x;
    std::vector<PauliTerm> terms;      ///< ascending z
    std::vector<std::uint32_t> even_z;  ///< z with an even number of Y letters
    std::vector<std::uint32_t> odd_z;

    /// Terms of one parity half (0 = even, 1 = odd), in ascending z.
    std::vector<PauliTerm> subset(int y_par) const {
        std::vector<PauliTerm> out;
        for (const auto &t : terms) {
            if (y_parity(t.x, t.z) == y_par) out.push_back(t);
        }
        return out;
    }
};

struct Decomposition {
    int source_qubits = 0;  ///< n of the input matrix
    int num_qubits = 0;     ///< n, or n + 1 when symmetrized
    int bandwidth = 0;
    bool symmetrized = false;
    double prune_tolerance = kDefaultPruneTolerance;
    std::vector<DecompositionSet> sets;

    std::size_t num_terms() const {
        std::size_t c = 0;
        for (const auto &s : sets) c += s.terms.size();
        return c;
    }

    /// Nonempty parity halves across all sets.
    std::size_t num_subsets() const {
        std::size_t c = 0;
        for (const auto &s : sets) c += !s.even_z.empty() + !s.odd_z.empty();
        return c;
    }
};

namespace detail {

template <typename Accessor>
DecompositionSet decompose_label(const Accessor &at, int nq, std::uint32_t x, double tol) {
    const std::uint32_t rows = std::uint32_t{1} << nq;
    std::vector<double> v(rows);
    for (std::uint32_t p = 0; p < rows; ++p) v[p] = at(p, p ^ x);
    fwht(v);
    DecompositionSet set;
    set.x = BitString(x, nq);
    const double scale = 1.0 / static_cast<double>(rows);
    for (std::uint32_t z = 0; z < rows; ++z) {
        const int e = std::popcount(x & z);
        const Complex w = i_pow(e) * (v[z] * scale);
        if (!(std::abs(w) > tol)) continue;
        set.terms.emplace_back(set.x, BitString(z, nq), w);
        (e & 1 ? set.odd_z : set.even_z).push_back(z);
    }
    return set;
}

}  // namespace detail

/// Decomposes B (or [[0, B], [B^T, 0]] when symmetrized) into weighted Walsh
/// operators grouped by x label. Terms with |weight| <= prune_tolerance are
/// dropped, and so are sets left empty.
inline Decomposition decompose(const BandMatrix &b, bool symmetrized = false,
                               double prune_tolerance = kDefaultPruneTolerance) {
    if (std::isnan(prune_tolerance) || prune_tolerance < 0) {
        throw std::invalid_argument("decompose: prune tolerance must be nonnegative");
    }
    Decomposition dec;
    dec.source_qubits = b.qubits();
    dec.bandwidth = b.bandwidth();
    dec.symmetrized = symmetrized;
    dec.prune_tolerance = prune_tolerance;
    if (symmetrized) {
        const SymmetrizedView view{&b};
        dec.num_qubits = view.qubits();
        for (const auto &x : enumerate_labels_symmetrized(b.qubits(), b.bandwidth())) {
            auto s = detail::decompose_label(view, dec.num_qubits, x.bits(), prune_tolerance);
            if (!s.terms.empty()) dec.sets.push_back(std::move(s));
        }
    } else {
        dec.num_qubits = b.qubits();
        auto at = [&b](std::uint32_t r, std::uint32_t c) { return b(r, c); };
        for (const auto &x : enumerate_labels(b.qubits(), b.bandwidth())) {
            auto s = detail::decompose_label(at, dec.num_qubits, x.bits(), prune_tolerance);
            if (!s.terms.empty()) dec.sets.push_back(std::move(s));
        }
    }
    return dec;
}

/// Dense sum of weighted Walsh operators. Each term is a signed permutation,
/// so it is filled one row at a time.
inline Eigen::MatrixXcd reconstruct(const std::vector<PauliTerm> &terms, int num_qubits) {
    if (num_qubits > kMaxOracleQubits) {
        throw ResourceLimitError("reconstruct: " + std::to_string(num_qubits) +
                                 " qubits exceeds oracle limit " + std::to_string(kMaxOracleQubits));
    }
    const std::uint32_t rows = std::uint32_t{1} << num_qubits;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(rows, rows);
    for (const auto &t : terms) {
        if (t.num_qubits() != num_qubits) throw std::invalid_argument("reconstruct: term length mismatch");
        for (std::uint32_t p = 0; p < rows; ++p) {
            m(p, p ^ t.x.bits()) += t.weight * walsh_entry(t.x.bits(), t.z.bits(), p);
        }
    }
    return m;
}

inline Eigen::MatrixXcd reconstruct(const Decomposition &dec) {
    std::vector<PauliTerm> all;
    for (const auto &s : dec.sets) all.insert(all.end(), s.terms.begin(), s.terms.end());
    return reconstruct(all, dec.num_qubits);
}

}  // namespace pauliband
