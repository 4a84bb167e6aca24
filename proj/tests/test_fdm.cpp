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

#include "pauliband/fdm.hpp"

#include <numbers>

#include <gtest/gtest.h>

using namespace pauliband;

namespace {

std::vector<Rational> scaled(std::initializer_list<int> nums, int den) {
    std::vector<Rational> out;
    for (int v : nums) out.emplace_back(v, den);
    return out;
}

// Least-squares slope of log(y) against log(x).
double log_slope(const std::vector<double> &x, const std::vector<double> &y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

WaveProblem problem(int n, int k) {
    WaveProblem p;
    p.n = n;
    p.k = k;
    return p;
}

}  // namespace

TEST(fornberg, known_rows) {
    // Positive-offset halves of the stencils, written with their common denominators.
    EXPECT_EQ(fornberg_coefficients(1).exact, scaled({1}, 2));
    EXPECT_EQ(fornberg_coefficients(2).exact, scaled({8, -1}, 12));
    EXPECT_EQ(fornberg_coefficients(3).exact, scaled({45, -9, 1}, 60));
    EXPECT_EQ(fornberg_coefficients(4).exact, scaled({672, -168, 32, -3}, 840));
    EXPECT_EQ(fornberg_coefficients(5).exact, scaled({2100, -600, 150, -25, 2}, 2520));
    EXPECT_THROW(fornberg_coefficients(0), std::invalid_argument);
    EXPECT_THROW(fornberg_coefficients(9), std::invalid_argument);
}

TEST(fornberg, order_conditions_exact) {
    // sum_j b_j j^m over -k..k is 1 for m = 1 and 0 for every other m <= 2k.
    for (int k = 1; k <= kMaxSchemeHalfWidth; ++k) {
        auto c = fornberg_coefficients(k);
        EXPECT_EQ(c.order(), 2 * k);
        for (int m = 0; m <= 2 * k; ++m) {
            Rational acc = 0;
            for (int j = 1; j <= k; ++j) {
                Rational jm = 1;
                for (int e = 0; e < m; ++e) jm *= j;
                Rational neg = (m % 2 == 0) ? jm : Rational(-jm);
                acc += c.exact[static_cast<std::size_t>(j - 1)] * (jm - neg);
            }
            EXPECT_EQ(acc, Rational(m == 1 ? 1 : 0)) << "k=" << k << " m=" << m;
        }
        // The next odd power is not annihilated.
        Rational acc = 0;
        for (int j = 1; j <= k; ++j) {
            Rational jm = 1;
            for (int e = 0; e < 2 * k + 1; ++e) jm *= j;
            acc += 2 * c.exact[static_cast<std::size_t>(j - 1)] * jm;
        }
        EXPECT_NE(acc, Rational(0));
    }
}

TEST(interior_matrix, structure) {
    auto b = build_interior_matrix(2, fornberg_coefficients(1));
    Eigen::Matrix4d expect;
    expect << 0, 0.5, 0, 0, -0.5, 0, 0.5, 0, 0, -0.5, 0, 0.5, 0, 0, -0.5, 0;
    EXPECT_EQ(b.to_dense(), expect);
    for (int n = 2; n <= 5; ++n) {
        for (int k = 1; k <= 3 && 2 * k < (1 << n); ++k) {
            auto d = build_interior_matrix(n, fornberg_coefficients(k)).to_dense();
            EXPECT_EQ(Eigen::MatrixXd(d.transpose()), Eigen::MatrixXd(-d));
        }
    }
    EXPECT_NO_THROW(build_interior_matrix(2, fornberg_coefficients(2)));
    EXPECT_THROW(build_interior_matrix(2, fornberg_coefficients(3)), std::invalid_argument);
}

TEST(boundary_matrix, corner_display) {
    auto c = fornberg_coefficients(3);
    const double b1 = c.b[0], b2 = c.b[1], b3 = c.b[2], r2 = std::numbers::sqrt2;
    auto f = build_boundary_matrix(4, c);
    Eigen::Matrix4d right;
    right << 0, r2 * b1, r2 * b2, r2 * b3,  //
        0, b2, b1 + b3, b2,                 //
        0, -b1 + b3, 0, b1,                 //
        0, -b2, -b1, 0;
    Eigen::Matrix4d left;
    left << 0, 0, 0, 0,                  //
        -r2 * b1, -b2, b1 - b3, b2,      //
        -r2 * b2, -b1 - b3, 0, b1,       //
        -r2 * b3, -b2, -b1, 0;
    EXPECT_LT((f.topLeftCorner(4, 4) - right).cwiseAbs().maxCoeff(), 1e-15);
    Eigen::MatrixXd lf = -f.transpose();
    EXPECT_LT((lf.topLeftCorner(4, 4) - left).cwiseAbs().maxCoeff(), 1e-15);
    // Far corner is the point reflection of the near corner with flipped sign.
    const Eigen::Index n = f.rows();
    for (Eigen::Index i = 0; i < 4; ++i) {
        for (Eigen::Index j = 0; j < 4; ++j) EXPECT_DOUBLE_EQ(f(n - 1 - i, n - 1 - j), -f(i, j));
    }
}

TEST(boundary_matrix, product_is_folded_second_difference) {
    // -F^T F is the even fold of the stencil (acting on f') composed with the odd
    // fold (acting on f), with the wall rows dropped.
    for (int k = 1; k <= 3; ++k) {
        auto c = fornberg_coefficients(k);
        auto f = build_boundary_matrix(4, c);
        auto g = build_folded_matrix(4, c);
        const Eigen::Index n = g.rows();
        Eigen::MatrixXd first = g;
        first.col(0).setZero();
        first.col(n - 1).setZero();
        // Derivative is even across the wall, so its fold flips sign.
        Eigen::MatrixXd second = 2 * build_interior_matrix(4, c).to_dense() - g;
        Eigen::MatrixXd expect = second * first;
        expect.row(0).setZero();
        expect.row(n - 1).setZero();
        Eigen::MatrixXd got = -f.transpose() * f;
        got.row(0).setZero();
        got.row(n - 1).setZero();
        EXPECT_LT((got - expect).cwiseAbs().maxCoeff(), 1e-13) << "k=" << k;
    }
}

TEST(boundary_matrix, fold_matches_extended_stencil) {
    for (int k = 1; k <= 3; ++k) {
        auto c = fornberg_coefficients(k);
        const int n = 4;
        const int size = 1 << n;
        auto f = build_boundary_matrix(n, c);
        auto g = build_folded_matrix(n, c);
        Eigen::VectorXd u(size);
        for (int j = 0; j < size; ++j) u(j) = std::sin(0.37 * j) * (j != 0) * (j != size - 1) + 0.01 * j * j * (j != 0) * (j != size - 1);
        // Odd extension on an array with k ghost points past each wall.
        std::vector<double> ext(static_cast<std::size_t>(size + 2 * k));
        for (int j = 0; j < size; ++j) ext[static_cast<std::size_t>(j + k)] = u(j);
        for (int m = 1; m <= k; ++m) {
            ext[static_cast<std::size_t>(k - m)] = -u(m);
            ext[static_cast<std::size_t>(size - 1 + k + m)] = -u(size - 1 - m);
        }
        Eigen::VectorXd fu = f * u;
        Eigen::VectorXd gu = g * u;
        for (int i = 0; i < size; ++i) {
            double acc = 0;
            for (int j = -k; j <= k; ++j) acc += c.at(j) * ext[static_cast<std::size_t>(i + j + k)];
            EXPECT_NEAR(gu(i), acc, 1e-12);
            if (i >= 1 && i <= k) EXPECT_NEAR(fu(i), acc, 1e-12);
        }
        EXPECT_NEAR(fu(0), gu(0) / std::numbers::sqrt2, 1e-12);
    }
}

TEST(boundary_matrix, sine_eigenfunction) {
    const double l = 5.0;
    for (int k = 1; k <= 3; ++k) {
        std::vector<double> hs, errs;
        for (int n = 3; n <= 7; ++n) {
            auto p = problem(n, k);
            auto f = build_boundary_matrix(n, fornberg_coefficients(k));
            const double h = p.spacing();
            Eigen::VectorXd u = p.initial();
            Eigen::VectorXd lu = -(f.transpose() * f * u) / (h * h);
            const double lambda = -std::pow(std::numbers::pi / l, 2);
            Eigen::VectorXd r = lu - lambda * u;
            // The sampled sine is an exact eigenvector; only its eigenvalue is approximate.
            const double ray = u.dot(lu) / u.dot(u);
            EXPECT_LT((lu - ray * u).norm(), 1e-9 * lu.norm());
            hs.push_back(h);
            errs.push_back(r.norm() / u.norm());
        }
        EXPECT_NEAR(log_slope(hs, errs), 2.0 * k, 0.3) << "k=" << k;
    }
}

TEST(boundary_matrix, higher_modes_converge) {
    const double l = 5.0;
    for (int mode = 2; mode <= 3; ++mode) {
        double prev = 1e300;
        for (int n = 4; n <= 7; ++n) {
            auto p = problem(n, 2);
            auto f = build_boundary_matrix(n, fornberg_coefficients(2));
            const double h = p.spacing();
            const auto x = p.grid();
            Eigen::VectorXd u(p.points());
            for (Eigen::Index j = 0; j < u.size(); ++j) u(j) = std::sin(mode * std::numbers::pi * x[j] / l);
            const double ray = -u.dot(f.transpose() * f * u) / (h * h * u.dot(u));
            const double err = std::abs(ray + std::pow(mode * std::numbers::pi / l, 2));
            EXPECT_LT(err, prev);
            prev = err;
        }
    }
}

TEST(incorporate_speed, properties) {
    auto f = build_boundary_matrix(3, fornberg_coefficients(1));
    std::vector<double> ones(8, 1.0);
    EXPECT_EQ(incorporate_speed(f, ones), Eigen::MatrixXd(f.transpose()));

    std::vector<double> c{1.0, 1.2, 0.7, 2.0, 1.5, 0.9, 1.1, 1.3};
    std::vector<double> c2;
    for (double v : c) c2.push_back(2 * v);
    auto b = incorporate_speed(f, c);
    auto b2 = incorporate_speed(f, c2);
    EXPECT_LT((b2 * b2.transpose() - 4 * b * b.transpose()).cwiseAbs().maxCoeff(), 1e-12);

    // B B^T equals the triple product F^T diag(c^2) F.
    Eigen::VectorXd q(8);
    for (int i = 0; i < 8; ++i) q(i) = c[i] * c[i];
    Eigen::MatrixXd triple = f.transpose() * q.asDiagonal() * f;
    EXPECT_LT((b * b.transpose() - triple).cwiseAbs().maxCoeff(), 1e-12);

    c[3] = 0.0;
    EXPECT_THROW(incorporate_speed(f, c), std::invalid_argument);
    EXPECT_THROW(incorporate_speed(f, {1.0}), std::invalid_argument);
}

TEST(build_hamiltonian, symmetric_and_norm_bounded) {
    for (int n = 2; n <= 5; ++n) {
        for (int k = 1; k <= 3 && 2 * k < (1 << n); ++k) {
            auto p = problem(n, k);
            auto h = build_hamiltonian(p);
            auto m = h.dense();
            EXPECT_EQ(Eigen::MatrixXd(m.transpose()), m);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
            const double norm = es.eigenvalues().cwiseAbs().maxCoeff();
            EXPECT_LE(norm, 2.0 * k * p.max_speed() / h.h) << "n=" << n << " k=" << k;
        }
    }
}

TEST(build_hamiltonian, smallest_case) {
    auto p = problem(1, 1);
    auto h = build_hamiltonian(p);
    auto f = build_boundary_matrix(1, fornberg_coefficients(1));
    Eigen::Matrix4d expect = Eigen::Matrix4d::Zero();
    expect.topRightCorner(2, 2) = f.transpose() / h.h;
    expect.bottomLeftCorner(2, 2) = f / h.h;
    EXPECT_EQ(h.dense(), expect);
}

TEST(build_hamiltonian, varying_speed_is_banded) {
    auto p = problem(4, 2);
    p.speed.clear();
    for (int j = 0; j < 16; ++j) p.speed.push_back(1.0 + 0.1 * j);
    auto h = build_hamiltonian(p);
    EXPECT_EQ(h.b.bandwidth(), 2);
    Eigen::MatrixXd expect = incorporate_speed(h.f, p.speed);
    EXPECT_EQ(h.b.to_dense(), expect);
}

TEST(wave_problem, validation) {
    auto p = problem(3, 1);
    EXPECT_NO_THROW(p.validate());
    EXPECT_DOUBLE_EQ(p.spacing(), 5.0 / 7.0);
    p.speed = {1.0, 2.0};
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p.speed = {-1.0};
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p = problem(2, 3);
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p = problem(3, 1);
    p.length = 0;
    EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(standing_wave, closed_forms) {
    auto p = problem(4, 2);
    Eigen::VectorXd u = p.initial();
    Eigen::VectorXd un = u / u.norm();
    EXPECT_LT((standing_wave(p, 0.0) - un).norm(), 1e-15);
    EXPECT_LT((standing_wave(p, p.length) + un).norm(), 1e-15);
    EXPECT_LT((standing_wave(p, 1.0) - std::cos(std::numbers::pi / 5) * un).norm(), 1e-15);
    EXPECT_NEAR(u(0), 0.0, 1e-15);
    EXPECT_NEAR(u(15), 0.0, 1e-15);
    p.speed = std::vector<double>(16, 1.0);
    EXPECT_THROW(standing_wave(p, 1.0), UnsupportedError);
}

TEST(discretization_error, linear_is_exact) {
    TestFunction lin{[](double x) { return 3 * x - 1; }, [](double) { return 3.0; }};
    TestFunction cubic{[](double x) { return x * x * x; }, [](double x) { return 3 * x * x; }};
    for (int k = 1; k <= 3; ++k) EXPECT_LT(discretization_error(5, k, lin), 1e-12);
    for (int k = 2; k <= 3; ++k) EXPECT_LT(discretization_error(5, k, cubic), 1e-10);
}

TEST(discretization_error, convergence_rate) {
    for (int k = 1; k <= 3; ++k) {
        std::vector<double> hs, errs;
        for (int n = 4; n <= 8; ++n) {
            hs.push_back(5.0 / ((1 << n) - 1));
            errs.push_back(discretization_error(n, k, sine_mode(5.0)));
        }
        EXPECT_NEAR(log_slope(hs, errs), 2.0 * k - 0.5, 0.6) << "k=" << k;
    }
}

TEST(discretization_error, higher_order_is_better) {
    for (int n = 4; n <= 8; ++n) {
        EXPECT_LT(discretization_error(n, 2, sine_mode(5.0)), discretization_error(n, 1, sine_mode(5.0)));
        EXPECT_LT(discretization_error(n, 4, sine_mode(5.0)), discretization_error(n, 2, sine_mode(5.0)));
    }
}

TEST(discretization_error, folded_version_shrinks) {
    double prev = 1e300;
    for (int n = 3; n <= 8; ++n) {
        auto p = problem(n, 2);
        const double e = folded_discretization_error(p);
        EXPECT_LT(e, prev);
        prev = e;
    }
}
