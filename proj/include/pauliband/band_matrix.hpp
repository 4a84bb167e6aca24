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

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pauliband/pauli.hpp"

namespace pauliband {

/// Square 2^n x 2^n matrix stored by diagonals, with lower and upper bandwidth d.
///
/// Diagonal k (-d <= k <= d) holds N - |k| entries; entry (i, j) with
/// j - i = k lives at position min(i, j) of that diagonal.
template <typename Scalar>
class BasicBandMatrix {
   public:
    using value_type = Scalar;

    BasicBandMatrix() = default;

    BasicBandMatrix(int n, int d) : n_(n), d_(d) {
        if (n < 1 || n > kMaxQubits) {
            throw std::invalid_argument("BandMatrix: qubit count " + std::to_string(n) +
                                        " outside [1, 16]");
        }
        const std::int64_t half = std::int64_t{1} << (n - 1);
        if (d < 0 || d > half) {
            throw std::invalid_argument("BandMatrix: bandwidth " + std::to_string(d) + " outside [0, " +
                                        std::to_string(half) + "]");
        }
        diags_.resize(static_cast<std::size_t>(2 * d + 1));
        for (int k = -d; k <= d; ++k) {
            diags_[index(k)].assign(static_cast<std::size_t>(size() - std::abs(k)), Scalar{});
        }
    }

    int qubits() const { return n_; }
    int bandwidth() const { return d_; }
    std::int64_t size() const { return std::int64_t{1} << n_; }

    bool in_band(std::int64_t i, std::int64_t j) const {
        return i >= 0 && j >= 0 && i < size() && j < size() && std::abs(j - i) <= d_;
    }

    /// Element (i, j); zero outside the band.
    Scalar operator()(std::int64_t i, std::int64_t j) const {
        if (!in_band(i, j)) return Scalar{};
        return diags_[index(static_cast<int>(j - i))][static_cast<std::size_t>(std::min(i, j))];
    }

    void set(std::int64_t i, std::int64_t j, Scalar v) {
        if (!in_band(i, j)) {
            throw std::out_of_range("BandMatrix: (" + std::to_string(i) + ", " + std::to_string(j) +
                                    ") is outside the band");
        }
        diags_[index(static_cast<int>(j - i))][static_cast<std::size_t>(std::min(i, j))] = v;
    }

    const std::vector<Scalar> &diagonal(int k) const { return diags_.at(index(k)); }

    void set_diagonal(int k, std::vector<Scalar> values) {
        if (std::abs(k) > d_) throw std::out_of_range("BandMatrix: offset outside the band");
        if (static_cast<std::int64_t>(values.size()) != size() - std::abs(k)) {
            throw std::invalid_argument("BandMatrix: diagonal " + std::to_string(k) + " needs " +
                                        std::to_string(size() - std::abs(k)) + " entries, got " +
                                        std::to_string(values.size()));
        }
        diags_[index(k)] = std::move(values);
    }

    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> to_dense() const {
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m =
            Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(size(), size());
        for (int k = -d_; k <= d_; ++k) {
            const auto &v = diags_[index(k)];
            for (std::size_t p = 0; p < v.size(); ++p) {
                const auto i = static_cast<Eigen::Index>(k >= 0 ? p : p - k);
                m(i, i + k) = v[p];
            }
        }
        return m;
    }

    /// Copies the band of a dense matrix. Entries outside the band must be zero.
    template <typename Derived>
    static BasicBandMatrix from_dense(const Eigen::MatrixBase<Derived> &m, int d, double tol = 0.0) {
        const auto rows = m.rows();
        if (rows != m.cols() || rows < 2 || !std::has_single_bit(static_cast<std::uint64_t>(rows))) {
            throw std::invalid_argument("BandMatrix::from_dense: matrix must be square of size 2^n");
        }
        const int n = std::countr_zero(static_cast<std::uint64_t>(rows));
        BasicBandMatrix b(n, d);
        for (Eigen::Index i = 0; i < rows; ++i) {
            for (Eigen::Index j = 0; j < rows; ++j) {
                if (b.in_band(i, j)) {
                    b.set(i, j, m(i, j));
                } else if (std::abs(m(i, j)) > tol) {
                    throw std::invalid_argument("BandMatrix::from_dense: nonzero entry (" +
                                                std::to_string(i) + ", " + std::to_string(j) +
                                                ") outside bandwidth " + std::to_string(d));
                }
            }
        }
        return b;
    }

    bool is_symmetric(double tol = 0.0) const {
        for (int k = 1; k <= d_; ++k) {
            const auto &up = diags_[index(k)];
            const auto &lo = diags_[index(-k)];
            for (std::size_t p = 0; p < up.size(); ++p) {
                if (std::abs(up[p] - lo[p]) > tol) return false;
            }
        }
        return true;
    }

    BasicBandMatrix transposed() const {
        BasicBandMatrix t(n_, d_);
        for (int k = -d_; k <= d_; ++k) t.diags_[t.index(-k)] = diags_[index(k)];
        return t;
    }

   private:
    std::size_t index(int k) const { return static_cast<std::size_t>(k + d_); }

    int n_ = 1;
    int d_ = 0;
    std::vector<std::vector<Scalar>> diags_{std::vector<Scalar>(2)};
};

using BandMatrix = BasicBandMatrix<double>;

/// Band matrix with entries drawn uniformly from [-1, 1].
template <typename Rng>
BandMatrix random_band_matrix(int n, int d, Rng &rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    BandMatrix b(n, d);
    for (int k = -d; k <= d; ++k) {
        std::vector<double> v(static_cast<std::size_t>(b.size() - std::abs(k)));
        for (auto &e : v) e = dist(rng);
        b.set_diagonal(k, std::move(v));
    }
    return b;
}

}  // namespace pauliband
