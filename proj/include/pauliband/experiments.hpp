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

/// @file experiments.hpp
/// Wave-equation solves and the parameter sweeps built on them.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "pauliband/errors.hpp"
#include "pauliband/evolution.hpp"
#include "pauliband/fdm.hpp"
#include "pauliband/gate_count.hpp"
#include "pauliband/io.hpp"

namespace pauliband {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

enum class SolveMethod { Exact, Trotter };

struct SolveOptions {
    SolveMethod method = SolveMethod::Exact;
    std::int64_t r = 1;
    int p = 2;
};

/// One solve. Fields that do not apply are NaN (or 0 for the integer
/// fields r and p under the exact method).
struct SolveReport {
    int n = 0;
    int kappa = 0;
    int p = 0;
    std::int64_t r = 0;
    bool found = true;
    double target = kNaN;  ///< search budget, sweeps only
    double eps_ds = kNaN;
    double eps_tr = kNaN;
    double eps_ns = kNaN;
    double bound_exact = kNaN;
    double bound_linear = kNaN;
    double gates_total = kNaN;
    double seconds = 0.0;
    Eigen::VectorXd phi_v;  ///< real part of the velocity block at time t
};

inline Eigen::VectorXcd initial_state(const WaveProblem &problem) {
    const Eigen::VectorXd u = problem.initial();
    const double norm = u.norm();
    if (!(norm > 0)) throw std::invalid_argument("initial_state: initial condition is zero");
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(2 * problem.points());
    psi.head(problem.points()) = (u / norm).cast<Complex>();
    return psi;
}

/// ||phi_V(t) - u_sw(t) / ||u0|| ||.
inline double solution_error(const WaveProblem &problem, const Eigen::VectorXcd &psi) {
    const Eigen::VectorXd ref = standing_wave(problem, problem.time);
    return (psi.head(problem.points()) - ref.cast<Complex>()).norm();
}

inline bool has_reference(const WaveProblem &problem) { return problem.constant_speed() && problem.sine_initial(); }

namespace detail {

inline void fill_bound(const WaveProblem &problem, SolveReport &rep) {
    if (std::isnan(rep.eps_ds) || std::isnan(rep.eps_tr)) return;
    const auto b = error_bound(problem.time, problem.max_speed(), rep.eps_ds, rep.eps_tr);
    rep.bound_exact = b.exact;
    rep.bound_linear = b.linear;
}

inline SolveReport base_report(const WaveProblem &problem) {
    SolveReport rep;
    rep.n = problem.n;
    rep.kappa = 2 * problem.k;
    if (problem.sine_initial()) rep.eps_ds = folded_discretization_error(problem);
    return rep;
}

}  // namespace detail

/// Evolves psi(0) = (u0 / ||u0||, 0) to time t and measures the errors that
/// are available for the problem.
inline SolveReport solve(const WaveProblem &problem, const SolveOptions &opt = {}) {
    const auto start = std::chrono::steady_clock::now();
    problem.validate();
    const auto h = group_hamiltonian(build_hamiltonian(problem));
    SolveReport rep = detail::base_report(problem);
    const Eigen::VectorXcd psi0 = initial_state(problem);
    Eigen::VectorXcd psi;
    if (opt.method == SolveMethod::Exact) {
        psi = exact_propagator(h, problem.time) * psi0;
        rep.eps_tr = 0.0;
    } else {
        const EvolutionConfig cfg{problem.time, opt.r, opt.p};
        cfg.validate();
        rep.p = opt.p;
        rep.r = opt.r;
        psi = trotter_evolve(h, cfg, psi0);
        if (h.num_qubits <= kMaxDenseQubits) rep.eps_tr = trotter_error(h, cfg);
        rep.gates_total = static_cast<double>(gate_count(problem, opt.r, opt.p).total);
    }
    rep.phi_v = psi.head(problem.points()).real();
    if (has_reference(problem)) rep.eps_ns = solution_error(problem, psi);
    detail::fill_bound(problem, rep);
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

enum class StepMetric { TrotterError, SolutionError };

/// Smallest r meeting the budget on the chosen metric, reported as a solve
/// at that r. An unreachable budget gives found = false and NaN metrics.
inline SolveReport min_steps_report(const WaveProblem &problem, StepMetric metric, double budget, int p,
                                    std::int64_t r_max = kDefaultMaxSteps) {
    const auto start = std::chrono::steady_clock::now();
    problem.validate();
    if (metric == StepMetric::SolutionError && !has_reference(problem)) {
        throw UnsupportedError("min_steps: the solution error needs constant speed and the sine initial condition");
    }
    const auto h = group_hamiltonian(build_hamiltonian(problem));
    const Eigen::MatrixXcd exact = exact_propagator(h, problem.time);
    const Eigen::VectorXcd psi0 = initial_state(problem);
    auto eval = [&](std::int64_t r) {
        const EvolutionConfig cfg{problem.time, r, p};
        if (metric == StepMetric::TrotterError) return trotter_error(h, cfg, &exact);
        return solution_error(problem, trotter_evolve(h, cfg, psi0));
    };
    SolveReport rep;
    try {
        const auto res = min_trotter_steps(eval, budget, r_max);
        rep = solve(problem, {SolveMethod::Trotter, res.r, p});
    } catch (const NotFoundError &) {
        rep = detail::base_report(problem);
        rep.p = p;
        rep.found = false;
    }
    rep.target = budget;
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

// ---------------------------------------------------------------------------
// Sweeps

struct ExperimentGrid {
    int n_min = 3;
    int n_max = 8;
    std::vector<int> kappas{2, 4, 6, 8, 10};
    std::vector<double> targets{1e-3, 1e-5, 1e-7};
    double length = 5.0;
    double time = 1.0;
    double speed = 1.0;
    int p = 2;

    void validate() const {
        if (n_min < 1 || n_max < n_min) throw std::invalid_argument("ExperimentGrid: empty qubit range");
        if (kappas.empty()) throw std::invalid_argument("ExperimentGrid: no orders");
        for (int k : kappas) {
            if (k < 2 || k % 2 != 0) throw std::invalid_argument("ExperimentGrid: order " + std::to_string(k) + " is not even");
        }
        if (targets.empty()) throw std::invalid_argument("ExperimentGrid: no targets");
        for (double t : targets) {
            if (!(t > 0)) throw std::invalid_argument("ExperimentGrid: targets must be positive");
        }
        if (!supported_order(p)) throw std::invalid_argument("ExperimentGrid: unsupported Trotter order");
    }

    WaveProblem problem(int n, int kappa) const {
        WaveProblem w;
        w.n = n;
        w.k = kappa / 2;
        w.length = length;
        w.time = time;
        w.speed = {speed};
        return w;
    }

    /// (n, kappa) pairs whose stencil fits on the grid, n-major.
    std::vector<std::pair<int, int>> points() const {
        std::vector<std::pair<int, int>> out;
        for (int n = n_min; n <= n_max; ++n) {
            for (int kappa : kappas) {
                if (kappa <= (1 << n)) out.emplace_back(n, kappa);
            }
        }
        return out;
    }
};

/// Runs fn(i) for i in [0, count) on up to `threads` workers; results keep
/// index order. The first exception thrown by a task is rethrown.
template <typename T>
std::vector<T> parallel_map(std::size_t count, int threads, const std::function<T(std::size_t)> &fn) {
    std::vector<T> out(count);
    const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, threads)));
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto work = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                out[i] = fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!err) err = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto &t : pool) t.join();
    }
    if (err) std::rethrow_exception(err);
    return out;
}

/// Exact-propagator solve per (n, kappa).
inline std::vector<SolveReport> sweep_discretization(const ExperimentGrid &grid, int threads = 1) {
    grid.validate();
    const auto pts = grid.points();
    return parallel_map<SolveReport>(pts.size(), threads, [&](std::size_t i) {
        return solve(grid.problem(pts[i].first, pts[i].second));
    });
}

/// Per (n, kappa, target): the smallest r with Trotter error under the
/// target, solved at that r.
inline std::vector<SolveReport> sweep_trotter_targets(const ExperimentGrid &grid, int threads = 1) {
    grid.validate();
    const auto pts = grid.points();
    const std::size_t nt = grid.targets.size();
    return parallel_map<SolveReport>(pts.size() * nt, threads, [&](std::size_t i) {
        const auto [n, kappa] = pts[i / nt];
        return min_steps_report(grid.problem(n, kappa), StepMetric::TrotterError, grid.targets[i % nt], grid.p);
    });
}

/// Per (n, kappa): the smallest r with solution error under the budget.
inline std::vector<SolveReport> sweep_solution_steps(const ExperimentGrid &grid, double budget, int threads = 1) {
    grid.validate();
    const auto pts = grid.points();
    return parallel_map<SolveReport>(pts.size(), threads, [&](std::size_t i) {
        return min_steps_report(grid.problem(pts[i].first, pts[i].second), StepMetric::SolutionError, budget, grid.p);
    });
}

// ---------------------------------------------------------------------------
// Reporting

inline constexpr const char *kReportCsvHeader =
    "n,kappa,p,r,eps_ds,eps_tr,eps_ns,bound_exact,bound_linear,gates_total,seconds";

inline std::string report_csv_row(const SolveReport &r) {
    auto count = [](double v) {
        if (std::isnan(v)) return std::string("NA");
        return std::to_string(static_cast<std::int64_t>(v));
    };
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.6f", r.seconds);
    std::ostringstream os;
    os << r.n << ',' << r.kappa << ',' << (r.p > 0 ? std::to_string(r.p) : "NA") << ','
       << (r.found && r.r > 0 ? std::to_string(r.r) : "NA") << ',' << detail::csv_double(r.eps_ds) << ','
       << detail::csv_double(r.eps_tr) << ',' << detail::csv_double(r.eps_ns) << ','
       << detail::csv_double(r.bound_exact) << ',' << detail::csv_double(r.bound_linear) << ','
       << count(r.gates_total) << ',' << secs;
    return os.str();
}

inline std::string reports_to_csv(const std::vector<SolveReport> &reports) {
    std::string out = std::string(kReportCsvHeader) + "\n";
    for (const auto &r : reports) out += report_csv_row(r) + "\n";
    return out;
}

inline Json report_to_json(const SolveReport &r, bool with_state = false) {
    auto num = [](double v) { return std::isnan(v) ? Json(nullptr) : Json(v); };
    Json j;
    j["n"] = r.n;
    j["kappa"] = r.kappa;
    j["p"] = r.p > 0 ? Json(r.p) : Json(nullptr);
    j["r"] = r.found && r.r > 0 ? Json(r.r) : Json(nullptr);
    j["found"] = r.found;
    j["target"] = num(r.target);
    j["eps_ds"] = num(r.eps_ds);
    j["eps_tr"] = num(r.eps_tr);
    j["eps_ns"] = num(r.eps_ns);
    j["bound_exact"] = num(r.bound_exact);
    j["bound_linear"] = num(r.bound_linear);
    j["gates_total"] = num(r.gates_total);
    j["seconds"] = r.seconds;
    if (with_state) j["phi_v"] = std::vector<double>(r.phi_v.data(), r.phi_v.data() + r.phi_v.size());
    return j;
}

inline Json reports_to_json(const std::vector<SolveReport> &reports) {
    Json a = Json::array();
    for (const auto &r : reports) a.push_back(report_to_json(r));
    return a;
}

}  // namespace pauliband
