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

/// @file gate_count.hpp
/// Gate counts of Trotterized wave-equation circuits.

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "pauliband/decompose.hpp"
#include "pauliband/evolution.hpp"
#include "pauliband/fdm.hpp"
#include "pauliband/qasm.hpp"

namespace pauliband {

struct GateCount {
    std::int64_t sets = 0;               ///< count_sets(n, k)
    std::int64_t groups = 0;             ///< nonempty commuting groups
    std::int64_t exponentials = 0;       ///< group exponentials per step
    std::int64_t per_step = 0;           ///< gates in one emitted step
    std::int64_t total = 0;              ///< r * per_step
    double c_r = 0;                      ///< mean |R| per exponential over (n+1)^2
    double c_d = 0;                      ///< mean diagonal gates per exponential over 2^n
    double model_per_step = 0;           ///< sets * (2 c_r (n+1)^2 + c_d 2^n)
    double model_total = 0;
    double asymptotic = 0;               ///< t 4^n k^3 n^2 5^{p/2} (2/5 t 2^n k^2 n / eps_tr)^{1/p}
};

/// Asymptotic total gate count, constants dropped.
inline double asymptotic_gate_count(int n, int k, int p, double t, double eps_tr) {
    if (!(eps_tr > 0)) throw std::invalid_argument("asymptotic_gate_count: eps_tr must be positive");
    const double nn = n, kk = k, N = std::ldexp(1.0, n);
    return t * N * N * kk * kk * kk * nn * nn * std::pow(5.0, p / 2) *
           std::pow(0.4 * t * N * kk * kk * nn / eps_tr, 1.0 / p);
}

inline GateCount gate_count(const WaveProblem &problem, std::int64_t r, int p, double eps_tr = 1e-3) {
    if (r < 1) throw std::invalid_argument("gate_count: steps must be positive");
    problem.validate();
    const auto h = group_hamiltonian(build_hamiltonian(problem));
    const auto sets = diagonalize_groups(h);
    const auto sched = trotter_schedule(h.size(), p);

    GateCount gc;
    gc.sets = count_sets(problem.n, problem.k);
    gc.groups = static_cast<std::int64_t>(h.size());
    gc.exponentials = static_cast<std::int64_t>(sched.size());
    std::int64_t r_gates = 0, d_gates = 0;
    for (const auto &e : sched) {
        const auto &d = sets[e.group];
        r_gates += static_cast<std::int64_t>(d.r.size());
        d_gates += static_cast<std::int64_t>(exponential_gate_count(d) - 2 * d.r.size());
    }
    gc.per_step = 2 * r_gates + d_gates;
    gc.total = r * gc.per_step;

    const double nq = problem.n + 1;
    const double dim = std::ldexp(1.0, problem.n);
    if (gc.exponentials > 0) {
        gc.c_r = static_cast<double>(r_gates) / static_cast<double>(gc.exponentials) / (nq * nq);
        gc.c_d = static_cast<double>(d_gates) / static_cast<double>(gc.exponentials) / dim;
    }
    gc.model_per_step = static_cast<double>(gc.sets) * (2 * gc.c_r * nq * nq + gc.c_d * dim);
    gc.model_total = static_cast<double>(r) * gc.model_per_step;
    gc.asymptotic = asymptotic_gate_count(problem.n, problem.k, p, problem.time, eps_tr);
    return gc;
}

/// Defaults l = 5, t = 1, c = 1.
inline GateCount gate_count(int n, int k, std::int64_t r, int p, double eps_tr = 1e-3) {
    WaveProblem problem;
    problem.n = n;
    problem.k = k;
    return gate_count(problem, r, p, eps_tr);
}

}  // namespace pauliband
