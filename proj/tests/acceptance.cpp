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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "pauliband/clifford.hpp"
#include "pauliband/decompose.hpp"
#include "pauliband/evolution.hpp"
#include "pauliband/experiments.hpp"
#include "pauliband/fdm.hpp"
#include "pauliband/gate_count.hpp"
#include "pauliband/qasm.hpp"

using namespace pauliband;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void run(int id, const char *name, double limit_seconds, const std::function<Outcome()> &check) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = check();
    } catch (const std::exception &e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string timing;
    char buf[96];
    if (limit_seconds > 0) {
        std::snprintf(buf, sizeof buf, " [%.2f s, limit %.0f s]", secs, limit_seconds);
        if (secs >= limit_seconds) o.pass = false;
    } else {
        std::snprintf(buf, sizeof buf, " [%.2f s]", secs);
    }
    timing = buf;
    std::printf("%s %2d %s: %s%s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), timing.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

WaveProblem problem(int n, int kappa) {
    WaveProblem p;
    p.n = n;
    p.k = kappa / 2;
    return p;
}

int threads() { return std::max(1u, std::thread::hardware_concurrency()); }

double log_slope(const std::vector<double> &x, const std::vector<double> &y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Outcome decomposition_round_trip() {
    std::mt19937_64 rng(2026);
    double worst = 0;
    int cases = 0;
    for (int n = 1; n <= 5; ++n) {
        for (int d = 1; d <= (1 << (n - 1)); ++d) {
            for (int rep = 0; rep < 200; ++rep) {
                const auto b = random_band_matrix(n, d, rng);
                const double err = (reconstruct(decompose(b)) - b.to_dense().cast<Complex>()).cwiseAbs().maxCoeff();
                worst = std::max(worst, err);
                ++cases;
            }
        }
    }
    return {worst < 1e-12, std::to_string(cases) + " matrices, max error " + sci(worst) + " < 1e-12"};
}

Outcome set_counting() {
    int pairs = 0;
    for (int n = 1; n <= 8; ++n) {
        for (int d = 0; d <= (1 << (n - 1)); ++d) {
            const auto labels = enumerate_labels(n, d);
            std::set<std::uint32_t> distinct;
            for (const auto &x : labels) distinct.insert(x.bits());
            if (static_cast<std::int64_t>(labels.size()) != count_sets(n, d) || distinct.size() != labels.size()) {
                return {false, "mismatch at n=" + std::to_string(n) + " d=" + std::to_string(d)};
            }
            ++pairs;
        }
    }
    std::vector<std::string> got;
    for (const auto &x : enumerate_labels(3, 3)) got.push_back(x.to_string());
    const std::vector<std::string> table{"000", "001", "011", "111", "010", "110", "101"};
    if (got != table) return {false, "n=3 d=3 labels differ from the published seven"};
    return {true, std::to_string(pairs) + " (n, d) pairs match the closed form; n=3 d=3 labels match"};
}

Outcome commutation() {
    // Published parity halves (z sets) of the 3-band 8x8 example.
    const std::map<std::string, std::pair<std::set<std::string>, std::set<std::string>>> table{
        {"000", {{"000", "001", "010", "011", "100", "101", "110", "111"}, {}}},
        {"001", {{"000", "010", "100", "110"}, {"001", "011", "101", "111"}}},
        {"011", {{"000", "100", "011", "111"}, {"001", "010", "101", "110"}}},
        {"111", {{"000", "011", "101", "110"}, {"001", "010", "100", "111"}}},
        {"010", {{"000", "001", "100", "101"}, {"010", "011", "110", "111"}}},
        {"110", {{"000", "001", "110", "111"}, {"100", "101", "010", "011"}}},
        {"101", {{"000", "010", "101", "111"}, {"001", "100", "011", "110"}}},
    };
    std::mt19937_64 rng(3);
    const auto b = random_band_matrix(3, 3, rng);
    const auto dec = decompose(b);
    if (dec.sets.size() != 7) return {false, "expected 7 sets, got " + std::to_string(dec.sets.size())};
    int pairs = 0;
    for (const auto &s : dec.sets) {
        std::set<std::string> even, odd;
        for (auto z : s.even_z) even.insert(BitString(z, 3).to_string());
        for (auto z : s.odd_z) odd.insert(BitString(z, 3).to_string());
        const auto &want = table.at(s.x.to_string());
        if (even != want.first || odd != want.second) return {false, "parity split differs for x=" + s.x.to_string()};
        for (int par = 0; par < 2; ++par) {
            const auto sub = s.subset(par);
            for (std::size_t i = 0; i < sub.size(); ++i) {
                const Eigen::MatrixXcd a = dense_matrix(sub[i]);
                for (std::size_t j = i + 1; j < sub.size(); ++j) {
                    const Eigen::MatrixXcd c = dense_matrix(sub[j]);
                    if ((a * c - c * a).cwiseAbs().maxCoeff() > 1e-12) {
                        return {false, "non-commuting pair in set " + s.x.to_string()};
                    }
                    ++pairs;
                }
            }
        }
    }
    Eigen::MatrixXd dense = b.to_dense();
    Eigen::MatrixXd sym = dense + dense.transpose();
    std::size_t odd_terms = 0;
    for (const auto &s : decompose(BandMatrix::from_dense(sym, 3)).sets) odd_terms += s.odd_z.size();
    if (odd_terms != 0) return {false, std::to_string(odd_terms) + " odd-parity terms for a symmetric input"};
    return {true, std::to_string(pairs) + " pairs commute; parity halves match; symmetric input has no odd terms"};
}

Outcome scheme_coefficients() {
    using R = Rational;
    const std::vector<std::vector<R>> table{
        {R(1, 2)},
        {R(8, 12), R(-1, 12)},
        {R(45, 60), R(-9, 60), R(1, 60)},
        {R(672, 840), R(-168, 840), R(32, 840), R(-3, 840)},
        {R(2100, 2520), R(-600, 2520), R(150, 2520), R(-25, 2520), R(2, 2520)},
    };
    for (int k = 1; k <= 5; ++k) {
        if (fornberg_coefficients(k).exact != table[static_cast<std::size_t>(k - 1)]) {
            return {false, "k=" + std::to_string(k) + " differs"};
        }
    }
    return {true, "k = 1..5 equal as rationals"};
}

Outcome discretization_accuracy() {
    ExperimentGrid g;
    g.n_min = 3;
    g.n_max = 8;
    const auto rows = sweep_discretization(g, threads());
    std::map<std::pair<int, int>, double> eps;
    for (const auto &r : rows) eps[{r.n, r.kappa}] = r.eps_ns;
    const double e56 = eps.at({5, 6});
    std::string why;
    if (!(e56 > 1e-9 && e56 < 1e-7)) why = "n=5 kappa=6 eps_ns " + sci(e56) + " not within one order of 1e-8";
    const double floor = 1e-12;
    for (const auto &[key, v] : eps) {
        const auto [n, kappa] = key;
        if (auto it = eps.find({n + 1, kappa}); it != eps.end() && v > floor && !(it->second < v)) {
            why = "no improvement n=" + std::to_string(n) + "->" + std::to_string(n + 1) + " at kappa=" +
                  std::to_string(kappa);
        }
        if (auto it = eps.find({n, kappa + 2}); it != eps.end() && v > floor && !(it->second < v)) {
            why = "no improvement kappa=" + std::to_string(kappa) + "->" + std::to_string(kappa + 2) + " at n=" +
                  std::to_string(n);
        }
    }
    if (!why.empty()) return {false, why};
    return {true, "n=5 kappa=6 eps_ns " + sci(e56) + "; strictly decreasing in n and kappa above " + sci(floor) +
                      " over " + std::to_string(rows.size()) + " points"};
}

Outcome trotter_order() {
    const auto h = group_hamiltonian(build_hamiltonian(problem(3, 2)));
    const Eigen::MatrixXcd exact = exact_propagator(h, 1.0);
    std::string detail;
    bool ok = true;
    for (int p : {1, 2}) {
        std::vector<double> rs, errs;
        for (std::int64_t r : {8, 16, 32, 64, 128}) {
            rs.push_back(static_cast<double>(r));
            errs.push_back(trotter_error(h, {1.0, r, p}, &exact));
        }
        const double s = log_slope(rs, errs);
        ok = ok && std::abs(s + p) <= 0.2;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%sp=%d slope %.3f (want %d +/- 0.2)", detail.empty() ? "" : "; ", p, s, -p);
        detail += buf;
    }
    return {ok, detail};
}

struct PlateauSweep {
    std::vector<SolveReport> rows;
    std::map<std::pair<int, int>, double> floor;
};

const PlateauSweep &plateau_sweep() {
    static const PlateauSweep sweep = [] {
        ExperimentGrid g;
        g.n_min = 4;
        g.n_max = 5;
        PlateauSweep s;
        s.rows = sweep_trotter_targets(g, threads());
        for (const auto &r : sweep_discretization(g, threads())) s.floor[{r.n, r.kappa}] = r.eps_ns;
        return s;
    }();
    return sweep;
}

Outcome plateau() {
    const auto &s = plateau_sweep();
    int checked = 0, failed = 0;
    double worst = std::numeric_limits<double>::infinity();
    std::string worst_at;
    for (const auto &r : s.rows) {
        if (!(s.floor.at({r.n, r.kappa}) < r.target)) continue;
        ++checked;
        if (!r.found) {
            ++failed;
            continue;
        }
        const double ratio = r.eps_ns / r.target;
        if (ratio < 0.3) ++failed;
        if (ratio < worst) {
            worst = ratio;
            worst_at = "n=" + std::to_string(r.n) + " kappa=" + std::to_string(r.kappa) + " target=" + sci(r.target);
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "min eps_ns/target %.3f at ", worst);
    return {failed == 0, std::to_string(checked - failed) + "/" + std::to_string(checked) +
                             " points with eps_ns >= 0.3 x target; " + buf + worst_at};
}

Outcome error_bound_holds() {
    const auto &s = plateau_sweep();
    int checked = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
    for (const auto &r : s.rows) {
        if (!r.found) continue;
        ++checked;
        if (!(r.eps_ns <= r.bound_exact + 1e-12)) {
            return {false, "eps_ns " + sci(r.eps_ns) + " exceeds bound " + sci(r.bound_exact) + " at n=" +
                               std::to_string(r.n) + " kappa=" + std::to_string(r.kappa)};
        }
        worst_margin = std::min(worst_margin, r.bound_exact / r.eps_ns);
    }
    char buf[48];
    std::snprintf(buf, sizeof buf, "; smallest bound/eps_ns %.2f", worst_margin);
    return {checked > 0, std::to_string(checked) + " points within the bound" + buf};
}

Outcome infeasibility_edge() {
    const auto n4 = min_steps_report(problem(4, 4), StepMetric::SolutionError, 1e-5, 2);
    const auto n5 = min_steps_report(problem(5, 4), StepMetric::SolutionError, 1e-5, 2);
    const bool ok = !n4.found && n5.found && n5.eps_ns <= 1e-5;
    return {ok, std::string("n=4 ") + (n4.found ? "found r=" + std::to_string(n4.r) : "not found") + "; n=5 " +
                    (n5.found ? "r=" + std::to_string(n5.r) + " eps_ns " + sci(n5.eps_ns) : "not found")};
}

Outcome diagonalization_soundness() {
    int terms = 0;
    for (int n = 1; n <= 4; ++n) {
        for (int kappa = 2; kappa <= 10 && kappa <= (1 << n); kappa += 2) {
            const auto h = group_hamiltonian(build_hamiltonian(problem(n, kappa)));
            for (const auto &g : h.groups) {
                const auto set = g.terms(h.num_qubits);
                const auto d = diagonalize(set);
                for (std::size_t j = 0; j < set.size(); ++j) {
                    const auto img = conjugate_oracle(d.r, PauliTerm(set[j].x, set[j].z));
                    if (img.x.bits() != 0 || img.z != d.z_rows[j] ||
                        std::abs(img.weight - Complex(d.signs[j])) > 1e-12) {
                        return {false, "term " + pauli_string(set[j].x, set[j].z) + " not mapped to a signed Z string"};
                    }
                    ++terms;
                }
            }
        }
    }
    const auto h = group_hamiltonian(build_hamiltonian(problem(2, 2)));
    double worst = 0;
    for (int p : {1, 2}) {
        const auto text = emit_trotter_step_qasm2(h, p, 0.1, false);
        worst = std::max(worst, (qasm_unitary(text) - trotter_step(h, 0.1, p)).cwiseAbs().maxCoeff());
    }
    return {worst < 1e-10, std::to_string(terms) + " terms reduce to signed Z strings; n=2 step QASM vs simulator " +
                               sci(worst) + " < 1e-10"};
}

Outcome gate_count_consistency() {
    const auto gc = gate_count(3, 1, 1, 2);
    const auto h = group_hamiltonian(build_hamiltonian(problem(3, 2)));
    const auto text = emit_trotter_step_qasm2(h, 2, 0.1, false);
    std::istringstream in(text);
    std::string line;
    std::int64_t gates = 0;
    while (std::getline(in, line)) {
        if (line.rfind("OPENQASM", 0) == 0 || line.rfind("include", 0) == 0 || line.rfind("qreg", 0) == 0) continue;
        if (!line.empty()) ++gates;
    }
    return {gc.per_step == gates, "gate_count per_step " + std::to_string(gc.per_step) + ", emitted " +
                                      std::to_string(gates)};
}

}  // namespace

int main() {
    run(1, "decomposition round-trip", 30, decomposition_round_trip);
    run(2, "set counting", 1, set_counting);
    run(3, "commutation", 10, commutation);
    run(4, "scheme coefficients", 0, scheme_coefficients);
    run(5, "discretization accuracy", 120, discretization_accuracy);
    run(6, "trotter order", 60, trotter_order);
    run(7, "plateau reproduction", 600, plateau);
    run(8, "error bound", 0, error_bound_holds);
    run(9, "infeasibility edge", 0, infeasibility_edge);
    run(10, "diagonalization soundness", 0, diagonalization_soundness);
    run(11, "gate-count consistency", 0, gate_count_consistency);
    std::printf("%d of 11 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
