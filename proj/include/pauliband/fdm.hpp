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

/// @file fdm.hpp
/// Central finite differences and the 1D wave-equation Hamiltonian.
///
/// The grid is x_j = j h, j = 0..N-1, h = l / (N - 1), N = 2^n, with
/// u(0) = u(l) = 0. The wave equation u_tt = c^2 u_xx is discretized as
/// u_tt = -(1/h^2) B B^T u with B = F^T diag(c), where F is the first-derivative
/// stencil folded at both walls by odd reflection, with its wall columns
/// zeroed and its wall rows rescaled by 1/sqrt(2). The Hamiltonian is
/// H = (1/h) [[0, B], [B^T, 0]].

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "pauliband/band_matrix.hpp"
#include "pauliband/errors.hpp"
#include "pauliband/pauli.hpp"

namespace pauliband {

using Rational = boost::multiprecision::cpp_rational;

inline constexpr int kMaxSchemeHalfWidth = 8;

/// First-derivative central weights b_1..b_k, with b_{-j} = -b_j and b_0 = 0.
struct SchemeCoefficients {
    int k = 0;
    std::vector<Rational> exact;  ///< b_1..b_k
    std::vector<double> b;        ///< b_1..b_k as doubles

    int order() const { return 2 * k; }

    /// Signed stencil weight at offset j in [-k, k].
    double at(int j) const {
        if (j == 0) return 0.0;
        if (j < -k || j > k) return 0.0;
        return j > 0 ? b[static_cast<std::size_t>(j - 1)] : -b[static_cast<std::size_t>(-j - 1)];
    }
};

/// Weights of the standard finite-difference recurrence on the symmetric
/// stencil -k..k, in exact rational arithmetic.
inline SchemeCoefficients fornberg_coefficients(int k) {
    if (k < 1 || k > kMaxSchemeHalfWidth) {
        throw std::invalid_argument("fornberg_coefficients: half-width " + std::to_string(k) +
                                    " outside [1, " + std::to_string(kMaxSchemeHalfWidth) + "]");
    }
    constexpr int kDeriv = 1;
    const int num = 2 * k + 1;
    std::vector<Rational> x(static_cast<std::size_t>(num));
    for (int i = 0; i < num; ++i) x[static_cast<std::size_t>(i)] = Rational(i - k);

    // c[node][m] holds the weight of node for derivative order m.
    std::vector<std::vector<Rational>> c(static_cast<std::size_t>(num),
                                         std::vector<Rational>(kDeriv + 1, Rational(0)));
    c[0][0] = 1;
    Rational c1 = 1;
    Rational c4 = x[0];
    for (int i = 1; i < num; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        const int mn = std::min(i, kDeriv);
        Rational c2 = 1;
        const Rational c5 = c4;
        c4 = x[ui];
        for (int j = 0; j < i; ++j) {
            const auto uj = static_cast<std::size_t>(j);
            const Rational c3 = x[ui] - x[uj];
            c2 *= c3;
            if (j == i - 1) {
                for (int m = mn; m >= 1; --m) {
                    c[ui][static_cast<std::size_t>(m)] =
                        c1 * (Rational(m) * c[ui - 1][static_cast<std::size_t>(m - 1)] -
                              c5 * c[ui - 1][static_cast<std::size_t>(m)]) /
                        c2;
                }
                c[ui][0] = -c1 * c5 * c[ui - 1][0] / c2;
            }
            for (int m = mn; m >= 1; --m) {
                c[uj][static_cast<std::size_t>(m)] =
                    (c4 * c[uj][static_cast<std::size_t>(m)] - Rational(m) * c[uj][static_cast<std::size_t>(m - 1)]) /
                    c3;
            }
            c[uj][0] = c4 * c[uj][0] / c3;
        }
        c1 = c2;
    }

    SchemeCoefficients out;
    out.k = k;
    for (int j = 1; j <= k; ++j) {
        const Rational &w = c[static_cast<std::size_t>(k + j)][kDeriv];
        out.exact.push_back(w);
        out.b.push_back(w.convert_to<double>());
    }
    return out;
}

namespace detail {

inline void check_stencil_fits(int n, int k, const char *who) {
    if (n < 1 || n > kMaxQubits) {
        throw std::invalid_argument(std::string(who) + ": qubit count " + std::to_string(n) +
                                    " outside [1, 16]");
    }
    if (2 * static_cast<std::int64_t>(k) > (std::int64_t{1} << n)) {
        throw std::invalid_argument(std::string(who) + ": stencil of half-width " + std::to_string(k) +
                                    " does not fit " + std::to_string(std::int64_t{1} << n) +
                                    " grid points");
    }
}

}  // namespace detail

/// The k-band antisymmetric stencil matrix, treating f as zero outside the grid.
inline BandMatrix build_interior_matrix(int n, const SchemeCoefficients &coeffs) {
    detail::check_stencil_fits(n, coeffs.k, "build_interior_matrix");
    BandMatrix m(n, coeffs.k);
    for (int j = 1; j <= coeffs.k; ++j) {
        const double bj = coeffs.b[static_cast<std::size_t>(j - 1)];
        m.set_diagonal(j, std::vector<double>(static_cast<std::size_t>(m.size() - j), bj));
        m.set_diagonal(-j, std::vector<double>(static_cast<std::size_t>(m.size() - j), -bj));
    }
    return m;
}

/// The stencil applied to the odd extension of f past both walls:
/// f(x_{-m}) = -f(x_m) and f(x_{N-1+m}) = -f(x_{N-1-m}). No wall rescaling.
inline Eigen::MatrixXd build_folded_matrix(int n, const SchemeCoefficients &coeffs) {
    detail::check_stencil_fits(n, coeffs.k, "build_folded_matrix");
    const Eigen::Index size = Eigen::Index{1} << n;
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(size, size);
    for (Eigen::Index i = 0; i < size; ++i) {
        for (int j = -coeffs.k; j <= coeffs.k; ++j) {
            if (j == 0) continue;
            Eigen::Index m = i + j;
            double w = coeffs.at(j);
            if (m < 0) {
                m = -m;
                w = -w;
            } else if (m > size - 1) {
                m = 2 * (size - 1) - m;
                w = -w;
            }
            f(i, m) += w;
        }
    }
    return f;
}

/// First-derivative factor F with both walls folded in. Columns 0 and N-1 are
/// zeroed (f vanishes there) and rows 0 and N-1 are divided by sqrt(2), so
/// that -F^T diag(c^2) F is the folded second difference.
inline Eigen::MatrixXd build_boundary_matrix(int n, const SchemeCoefficients &coeffs) {
    Eigen::MatrixXd f = build_folded_matrix(n, coeffs);
    const Eigen::Index last = f.rows() - 1;
    f.col(0).setZero();
    f.col(last).setZero();
    f.row(0) /= std::numbers::sqrt2;
    f.row(last) /= std::numbers::sqrt2;
    return f;
}

/// B_k(c) = F^T diag(c).
inline Eigen::MatrixXd incorporate_speed(const Eigen::MatrixXd &f, const std::vector<double> &speed) {
    if (static_cast<Eigen::Index>(speed.size()) != f.rows()) {
        throw std::invalid_argument("incorporate_speed: expected " + std::to_string(f.rows()) +
                                    " speed samples, got " + std::to_string(speed.size()));
    }
    Eigen::VectorXd c(f.rows());
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        const double v = speed[static_cast<std::size_t>(i)];
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument("incorporate_speed: speed sample " + std::to_string(i) +
                                        " is not positive");
        }
        c(i) = v;
    }
    return f.transpose() * c.asDiagonal();
}

struct WaveProblem {
    double length = 5.0;
    int n = 3;
    int k = 1;
    double time = 1.0;
    std::vector<double> speed{1.0};  ///< one value for constant speed, else 2^n samples
    std::vector<double> u0;          ///< empty means sin(pi x / l)

    std::int64_t points() const { return std::int64_t{1} << n; }
    double spacing() const { return length / static_cast<double>(points() - 1); }
    bool constant_speed() const { return speed.size() == 1; }
    bool sine_initial() const { return u0.empty(); }

    void validate() const {
        if (!(length > 0.0) || !std::isfinite(length)) {
            throw std::invalid_argument("WaveProblem: length must be positive");
        }
        if (n < 1 || n + 1 > kMaxQubits) {
            throw std::invalid_argument("WaveProblem: qubit count " + std::to_string(n) + " outside [1, 15]");
        }
        detail::check_stencil_fits(n, k, "WaveProblem");
        if (k > kMaxSchemeHalfWidth) throw std::invalid_argument("WaveProblem: order too high");
        if (!std::isfinite(time) || time < 0.0) {
            throw std::invalid_argument("WaveProblem: time must be finite and nonnegative");
        }
        if (speed.size() != 1 && static_cast<std::int64_t>(speed.size()) != points()) {
            throw std::invalid_argument("WaveProblem: expected 1 or " + std::to_string(points()) +
                                        " speed samples, got " + std::to_string(speed.size()));
        }
        for (double c : speed) {
            if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("WaveProblem: speed must be positive");
        }
        if (!u0.empty() && static_cast<std::int64_t>(u0.size()) != points()) {
            throw std::invalid_argument("WaveProblem: expected " + std::to_string(points()) +
                                        " initial samples, got " + std::to_string(u0.size()));
        }
        for (double v : u0) {
            if (!std::isfinite(v)) throw std::invalid_argument("WaveProblem: initial condition is not finite");
        }
    }

    std::vector<double> grid() const {
        std::vector<double> x(static_cast<std::size_t>(points()));
        const double h = spacing();
        for (std::size_t j = 0; j < x.size(); ++j) x[j] = static_cast<double>(j) * h;
        x.back() = length;
        return x;
    }

    std::vector<double> speed_samples() const {
        if (constant_speed()) return std::vector<double>(static_cast<std::size_t>(points()), speed[0]);
        return speed;
    }

    double max_speed() const { return *std::max_element(speed.begin(), speed.end()); }

    Eigen::VectorXd initial() const {
        Eigen::VectorXd u(points());
        if (u0.empty()) {
            const auto x = grid();
            for (Eigen::Index j = 0; j < u.size(); ++j) {
                u(j) = std::sin(std::numbers::pi * x[static_cast<std::size_t>(j)] / length);
            }
        } else {
            for (Eigen::Index j = 0; j < u.size(); ++j) u(j) = u0[static_cast<std::size_t>(j)];
        }
        return u;
    }
};

struct WaveHamiltonian {
    int n = 0;
    double h = 0.0;
    SchemeCoefficients coeffs;
    Eigen::MatrixXd f;  ///< boundary factor
    BandMatrix b;       ///< B_k(c), bandwidth k

    int num_qubits() const { return n + 1; }

    /// Dense (1/h) [[0, B], [B^T, 0]].
    Eigen::MatrixXd dense() const {
        if (n + 1 > 10) {
            throw ResourceLimitError("WaveHamiltonian::dense: " + std::to_string(n + 1) +
                                     " qubits exceeds the dense limit of 10");
        }
        const Eigen::Index size = Eigen::Index{1} << n;
        const Eigen::MatrixXd bd = b.to_dense();
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * size, 2 * size);
        m.topRightCorner(size, size) = bd / h;
        m.bottomLeftCorner(size, size) = bd.transpose() / h;
        return m;
    }
};

inline WaveHamiltonian build_hamiltonian(const WaveProblem &problem) {
    problem.validate();
    WaveHamiltonian out;
    out.n = problem.n;
    out.h = problem.spacing();
    out.coeffs = fornberg_coefficients(problem.k);
    out.f = build_boundary_matrix(problem.n, out.coeffs);
    out.b = BandMatrix::from_dense(incorporate_speed(out.f, problem.speed_samples()), problem.k);
    return out;
}

/// sin(pi x / l) cos(pi c t / l) on the grid, divided by the norm of the
/// initial samples.
inline Eigen::VectorXd standing_wave(const WaveProblem &problem, double t) {
    problem.validate();
    if (!problem.constant_speed()) {
        throw UnsupportedError("standing_wave: reference solution needs a constant speed");
    }
    if (!problem.sine_initial()) {
        throw UnsupportedError("standing_wave: reference solution needs the sine initial condition");
    }
    const Eigen::VectorXd u = problem.initial();
    const double c = problem.speed[0];
    return u * (std::cos(std::numbers::pi * c * t / problem.length) / u.norm());
}

/// A test function with its analytic derivative.
struct TestFunction {
    std::function<double(double)> f;
    std::function<double(double)> df;
};

inline TestFunction sine_mode(double length, int mode = 1) {
    const double w = mode * std::numbers::pi / length;
    return {[w](double x) { return std::sin(w * x); }, [w](double x) { return w * std::cos(w * x); }};
}

/// 2-norm of f' - (1/h) B f over rows k..N-1-k, B the interior stencil.
inline double discretization_error(int n, int k, const TestFunction &fn, double length = 5.0) {
    const auto coeffs = fornberg_coefficients(k);
    const BandMatrix m = build_interior_matrix(n, coeffs);
    const std::int64_t size = m.size();
    const double h = length / static_cast<double>(size - 1);
    std::vector<double> samples(static_cast<std::size_t>(size));
    for (std::int64_t j = 0; j < size; ++j) samples[static_cast<std::size_t>(j)] = fn.f(static_cast<double>(j) * h);
    double acc = 0.0;
    for (std::int64_t i = k; i < size - k; ++i) {
        double approx = 0.0;
        for (int j = -k; j <= k; ++j) approx += coeffs.at(j) * samples[static_cast<std::size_t>(i + j)];
        const double e = fn.df(static_cast<double>(i) * h) - approx / h;
        acc += e * e;
    }
    return std::sqrt(acc);
}

/// 2-norm of u' - (1/h) G u over all rows, G the folded stencil and u the
/// normalized sine initial condition. This is the discretization error that
/// enters the total-error bound.
inline double folded_discretization_error(const WaveProblem &problem) {
    problem.validate();
    if (!problem.sine_initial()) {
        throw UnsupportedError("folded_discretization_error: needs the sine initial condition");
    }
    const auto coeffs = fornberg_coefficients(problem.k);
    const Eigen::MatrixXd g = build_folded_matrix(problem.n, coeffs);
    const Eigen::VectorXd u = problem.initial();
    const double norm = u.norm();
    const auto x = problem.grid();
    const auto fn = sine_mode(problem.length);
    Eigen::VectorXd du(u.size());
    for (Eigen::Index j = 0; j < u.size(); ++j) du(j) = fn.df(x[static_cast<std::size_t>(j)]);
    return (du - g * u / problem.spacing()).norm() / norm;
}

}  // namespace pauliband
