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

/// @file pauli.hpp
/// Integer-encoded Pauli strings.
///
/// A Pauli string on n qubits is labelled by a pair of n-bit integers (x, z)
/// and denotes the Walsh operator W(x, z) = i^{x.z} X^x Z^z. Bit strings use
/// MSB order: qubit 0 is the leftmost character of a rendered string and the
/// most significant bit of the integer. The same convention indexes the
/// computational basis, so basis state |p> has qubit 0 in bit n-1 of p.

#include <bit>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include <Eigen/Dense>

#include "pauliband/errors.hpp"

namespace pauliband {

inline constexpr int kMaxQubits = 16;
inline constexpr int kMaxOracleQubits = 6;

using Complex = std::complex<double>;

/// i^e for an exponent taken mod 4.
inline Complex i_pow(int e) {
    switch (((e % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

inline int parity(std::uint32_t v) { return std::popcount(v) & 1; }

/// An n-bit label, 1 <= n <= kMaxQubits.
class BitString {
   public:
    BitString() = default;

    BitString(std::uint32_t bits, int length) : bits_(bits), length_(length) {
        if (length < 1 || length > kMaxQubits) {
            throw std::invalid_argument("BitString: length " + std::to_string(length) +
                                        " outside [1, " + std::to_string(kMaxQubits) + "]");
        }
        if (length < 32 && (bits >> length) != 0) {
            throw std::invalid_argument("BitString: value " + std::to_string(bits) +
                                        " does not fit in " + std::to_string(length) + " bits");
        }
    }

    /// Parses an MSB-form string such as "0110".
    static BitString from_string(std::string_view s) {
        if (s.empty()) throw std::invalid_argument("BitString: empty string");
        std::uint32_t v = 0;
        for (char c : s) {
            if (c != '0' && c != '1') {
                throw std::invalid_argument("BitString: unexpected character '" + std::string(1, c) +
                                            "'");
            }
            v = (v << 1) | static_cast<std::uint32_t>(c - '0');
        }
        return BitString(v, static_cast<int>(s.size()));
    }

    std::uint32_t bits() const { return bits_; }
    int length() const { return length_; }

    /// Bit belonging to qubit q, where q = 0 is the leftmost character.
    int qubit(int q) const { return static_cast<int>((bits_ >> (length_ - 1 - q)) & 1U); }

    /// Most significant bit first.
    std::string to_string() const {
        std::string s(static_cast<std::size_t>(length_), '0');
        for (int q = 0; q < length_; ++q) s[static_cast<std::size_t>(q)] = qubit(q) ? '1' : '0';
        return s;
    }

    /// Bit-reversed label. Maps the MSB reading of a string to its LSB reading
    /// and back; applying it twice is the identity.
    BitString reversed() const {
        std::uint32_t r = 0;
        for (int i = 0; i < length_; ++i) r |= ((bits_ >> i) & 1U) << (length_ - 1 - i);
        return BitString(r, length_);
    }

    friend bool operator==(const BitString &, const BitString &) = default;

   private:
    std::uint32_t bits_ = 0;
    int length_ = 1;
};

/// Inner product x.z over the integers.
inline int dot(const BitString &a, const BitString &b) {
    if (a.length() != b.length()) throw std::invalid_argument("dot: length mismatch");
    return std::popcount(a.bits() & b.bits());
}

/// Concatenation a * b with a on the left.
inline BitString concat(const BitString &a, const BitString &b) {
    return BitString((a.bits() << b.length()) | b.bits(), a.length() + b.length());
}

/// A weighted Walsh operator weight * W(x, z).
///
/// The weight is complex so that decompositions of non-Hermitian matrices
/// round-trip exactly; for Hermitian sources it is real up to round-off.
struct PauliTerm {
    BitString x;
    BitString z;
    Complex weight{1.0, 0.0};

    PauliTerm() = default;
    PauliTerm(BitString x_, BitString z_, Complex w = {1.0, 0.0}) : x(x_), z(z_), weight(w) {
        if (x.length() != z.length()) throw std::invalid_argument("PauliTerm: x/z length mismatch");
    }

    int num_qubits() const { return x.length(); }
};

struct WalshLabel {
    int phase_exponent = 0;  ///< exponent of i, in [0, 4)
    std::string letters;

    friend bool operator==(const WalshLabel &, const WalshLabel &) = default;
};

inline char pauli_letter(int x_bit, int z_bit) {
    static constexpr char kLetters[4] = {'I', 'Z', 'X', 'Y'};
    return kLetters[(x_bit << 1) | z_bit];
}

/// Letters of W(x, z) and the exponent of its i^{x.z} prefactor.
inline WalshLabel walsh_render(const BitString &x, const BitString &z) {
    if (x.length() != z.length()) throw std::invalid_argument("walsh_render: length mismatch");
    WalshLabel out;
    out.phase_exponent = dot(x, z) & 3;
    out.letters.resize(static_cast<std::size_t>(x.length()));
    for (int q = 0; q < x.length(); ++q) {
        out.letters[static_cast<std::size_t>(q)] = pauli_letter(x.qubit(q), z.qubit(q));
    }
    return out;
}

inline std::string pauli_string(const BitString &x, const BitString &z) {
    return walsh_render(x, z).letters;
}

/// Inverse of the letter rendering. Accepts I, X, Y, Z.
inline std::pair<BitString, BitString> parse_pauli(std::string_view letters) {
    if (letters.empty() || letters.size() > static_cast<std::size_t>(kMaxQubits)) {
        throw std::invalid_argument("parse_pauli: length must be in [1, 16]");
    }
    std::uint32_t x = 0;
    std::uint32_t z = 0;
    for (char c : letters) {
        x <<= 1;
        z <<= 1;
        switch (c) {
            case 'I': break;
            case 'X': x |= 1; break;
            case 'Z': z |= 1; break;
            case 'Y': x |= 1; z |= 1; break;
            default:
                throw std::invalid_argument("parse_pauli: unexpected character '" + std::string(1, c) +
                                            "'");
        }
    }
    const int n = static_cast<int>(letters.size());
    return {BitString(x, n), BitString(z, n)};
}

/// Symplectic commutation test.
inline bool commutes(const BitString &ax, const BitString &az, const BitString &bx,
                     const BitString &bz) {
    if (ax.length() != bx.length() || az.length() != bz.length() || ax.length() != az.length()) {
        throw std::invalid_argument("commutes: length mismatch");
    }
    return ((std::popcount(ax.bits() & bz.bits()) + std::popcount(bx.bits() & az.bits())) & 1) == 0;
}

inline bool commutes(const PauliTerm &a, const PauliTerm &b) { return commutes(a.x, a.z, b.x, b.z); }

/// Parity of the number of Y letters, (x.z) mod 2.
inline int y_parity(const BitString &x, const BitString &z) { return dot(x, z) & 1; }

/// Row p of W(x, z) has its single nonzero in column p ^ x; this is its value.
inline Complex walsh_entry(std::uint32_t x, std::uint32_t z, std::uint32_t row) {
    const std::uint32_t col = row ^ x;
    const int e = std::popcount(x & z) + 2 * parity(z & col);
    return i_pow(e);
}

/// weight * i^{x.z} * (X^{x_1} Z^{z_1} (x) ... (x) X^{x_n} Z^{z_n}) built by
/// Kronecker products. Test oracle only.
inline Eigen::MatrixXcd dense_matrix(const PauliTerm &term) {
    const int n = term.num_qubits();
    if (n > kMaxOracleQubits) {
        throw ResourceLimitError("dense_matrix: " + std::to_string(n) + " qubits exceeds oracle limit " +
                                 std::to_string(kMaxOracleQubits));
    }
    Eigen::Matrix2cd X;
    X << 0, 1, 1, 0;
    Eigen::Matrix2cd Z;
    Z << 1, 0, 0, -1;
    const Eigen::Matrix2cd I = Eigen::Matrix2cd::Identity();

    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(1, 1);
    for (int q = 0; q < n; ++q) {
        Eigen::Matrix2cd f = (term.x.qubit(q) ? X : I) * (term.z.qubit(q) ? Z : I);
        Eigen::MatrixXcd next(acc.rows() * 2, acc.cols() * 2);
        for (Eigen::Index r = 0; r < acc.rows(); ++r) {
            for (Eigen::Index c = 0; c < acc.cols(); ++c) {
                next.block<2, 2>(2 * r, 2 * c) = acc(r, c) * f;
            }
        }
        acc = std::move(next);
    }
    return term.weight * i_pow(dot(term.x, term.z)) * acc;
}

}  // namespace pauliband
