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

// pauliband command-line tool.
//
// Exit codes: 0 success, 2 invalid arguments, 3 infeasible target,
// 4 resource limit.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pauliband/decompose.hpp"
#include "pauliband/errors.hpp"
#include "pauliband/experiments.hpp"
#include "pauliband/gate_count.hpp"
#include "pauliband/io.hpp"
#include "pauliband/qasm.hpp"

using namespace pauliband;

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitResource = 4;

class Infeasible : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::string output;
    std::string format = "json";
    int threads = 1;
    std::uint64_t seed = 1;
};

struct ProblemFlags {
    int qubits = 3;
    int order = 2;
    double length = 5.0;
    double time = 1.0;
    double speed = 1.0;
    std::string speed_file;
    std::string initial_file;

    void add(CLI::App *app) {
        app->add_option("-n,--qubits", qubits, "Qubits n; the grid has 2^n points")->check(CLI::Range(1, 15));
        app->add_option("-k,--order", order, "Accuracy order kappa (even)")->check(CLI::Range(2, 16));
        app->add_option("--length", length, "Domain length l");
        app->add_option("--time", time, "Final time t");
        app->add_option("--speed", speed, "Constant wave speed c");
        app->add_option("--speed-file", speed_file, "JSON array of 2^n speed samples");
        app->add_option("--initial-file", initial_file, "JSON array of 2^n initial samples");
    }

    WaveProblem problem() const {
        if (order % 2 != 0) throw std::invalid_argument("--order must be even");
        WaveProblem p;
        p.n = qubits;
        p.k = order / 2;
        p.length = length;
        p.time = time;
        p.speed = {speed};
        if (!speed_file.empty()) p.speed = read_array(speed_file);
        if (!initial_file.empty()) p.u0 = read_array(initial_file);
        p.validate();
        return p;
    }

    static std::vector<double> read_array(const std::string &path) {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot open " + path);
        std::stringstream ss;
        ss << in.rdbuf();
        try {
            return Json::parse(ss.str()).get<std::vector<double>>();
        } catch (const nlohmann::json::exception &e) {
            throw ParseError(path + ": " + e.what());
        }
    }
};

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const Globals &g, const std::string &text) {
    if (g.output.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(g.output);
    if (!out) throw std::invalid_argument("cannot write " + g.output);
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
}

std::string render_reports(const Globals &g, const std::vector<SolveReport> &reports) {
    if (g.format == "csv") return reports_to_csv(reports);
    return reports_to_json(reports).dump(2);
}

std::vector<int> parse_orders(const std::vector<int> &orders) {
    for (int k : orders) {
        if (k < 2 || k % 2 != 0) throw std::invalid_argument("orders must be even and at least 2");
    }
    return orders;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Pauli decomposition of banded matrices and Trotterized wave-equation simulation"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("-o,--output", g.output, "Write the result to this path instead of stdout");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--threads", g.threads, "Worker threads for sweeps")->check(CLI::PositiveNumber);
    app.add_option("--seed", g.seed, "Seed for generated random matrices");

    // decompose
    auto *dec_cmd = app.add_subcommand("decompose", "Decompose a band matrix into grouped Pauli terms");
    std::string dec_input;
    int dec_n = 3, dec_d = 1;
    bool dec_sym = false, dec_verify = false, dec_wave = false;
    int dec_order = 2;
    double dec_tol = kDefaultPruneTolerance;
    dec_cmd->add_option("-i,--input", dec_input, "Band matrix JSON file");
    dec_cmd->add_option("-n,--qubits", dec_n, "Qubits of a generated matrix")->check(CLI::Range(1, 15));
    dec_cmd->add_option("-d,--bandwidth", dec_d, "Bandwidth of a generated random matrix");
    dec_cmd->add_flag("--wave", dec_wave, "Decompose the wave-equation factor B instead of a random matrix");
    dec_cmd->add_option("-k,--order", dec_order, "Accuracy order for --wave");
    dec_cmd->add_flag("--symmetrize", dec_sym, "Decompose [[0, B], [B^T, 0]]");
    dec_cmd->add_option("--tolerance", dec_tol, "Drop terms with |weight| at or below this");
    dec_cmd->add_flag("--verify", dec_verify, "Check the reconstruction against the dense matrix");

    // qasm
    auto *qasm_cmd = app.add_subcommand("qasm", "Emit one Trotter step of the wave Hamiltonian as OpenQASM 2");
    ProblemFlags qasm_pf;
    qasm_pf.add(qasm_cmd);
    int qasm_p = 2;
    double bind_time = -1.0;
    std::int64_t bind_steps = 0;
    qasm_cmd->add_option("-p,--trotter-order", qasm_p, "Trotter order (1 or even)");
    auto *bt = qasm_cmd->add_option("--bind-time", bind_time, "Bind angles for total time t");
    auto *bs = qasm_cmd->add_option("--bind-steps", bind_steps, "Bind angles for r steps (dt = t / r)");
    bt->needs(bs);
    bs->needs(bt);

    // solve
    auto *solve_cmd = app.add_subcommand("solve", "Evolve the wave equation and report errors");
    ProblemFlags solve_pf;
    solve_pf.add(solve_cmd);
    std::string method = "exact";
    std::int64_t solve_r = 100;
    int solve_p = 2;
    bool solve_state = false;
    solve_cmd->add_option("--method", method, "exact or trotter")->check(CLI::IsMember({"exact", "trotter"}));
    solve_cmd->add_option("-r,--steps", solve_r, "Trotter steps")->check(CLI::PositiveNumber);
    solve_cmd->add_option("-p,--trotter-order", solve_p, "Trotter order (1 or even)");
    solve_cmd->add_flag("--state", solve_state, "Include phi_V(t) in JSON output");

    // sweeps
    auto add_grid = [](CLI::App *cmd, ExperimentGrid &grid) {
        cmd->add_option("--qubits-min", grid.n_min, "Smallest n")->check(CLI::Range(1, 15));
        cmd->add_option("--qubits-max", grid.n_max, "Largest n")->check(CLI::Range(1, 15));
        cmd->add_option("--orders", grid.kappas, "Accuracy orders kappa");
        cmd->add_option("--length", grid.length, "Domain length l");
        cmd->add_option("--time", grid.time, "Final time t");
        cmd->add_option("--speed", grid.speed, "Constant wave speed c");
        cmd->add_option("-p,--trotter-order", grid.p, "Trotter order");
    };
    auto *sds_cmd = app.add_subcommand("sweep-ds", "Exact-propagator error per (n, kappa)");
    ExperimentGrid sds_grid;
    add_grid(sds_cmd, sds_grid);

    auto *str_cmd = app.add_subcommand("sweep-trotter", "Trotter step sweeps per (n, kappa)");
    ExperimentGrid str_grid;
    str_grid.n_min = 4;
    str_grid.n_max = 5;
    add_grid(str_cmd, str_grid);
    std::string str_mode = "targets";
    double str_budget = 1e-5;
    str_cmd->add_option("--mode", str_mode, "targets: r for each Trotter-error target; solution: r for a solution-error budget")
        ->check(CLI::IsMember({"targets", "solution"}));
    str_cmd->add_option("--targets", str_grid.targets, "Trotter-error targets");
    str_cmd->add_option("--budget", str_budget, "Solution-error budget for --mode solution");

    // min-steps
    auto *ms_cmd = app.add_subcommand("min-steps", "Smallest Trotter step count meeting an error budget");
    ProblemFlags ms_pf;
    ms_pf.add(ms_cmd);
    std::string ms_metric = "eps_tr";
    double ms_budget = 1e-3;
    int ms_p = 2;
    std::int64_t ms_max = kDefaultMaxSteps;
    ms_cmd->add_option("--metric", ms_metric, "eps_tr or eps_ns")->check(CLI::IsMember({"eps_tr", "eps_ns"}));
    ms_cmd->add_option("--budget", ms_budget, "Error budget")->check(CLI::PositiveNumber);
    ms_cmd->add_option("-p,--trotter-order", ms_p, "Trotter order");
    ms_cmd->add_option("--max-steps", ms_max, "Search cap")->check(CLI::PositiveNumber);

    // gate-count
    auto *gc_cmd = app.add_subcommand("gate-count", "Measured and asymptotic gate counts");
    ProblemFlags gc_pf;
    gc_pf.add(gc_cmd);
    std::int64_t gc_r = 1;
    int gc_p = 2;
    double gc_eps = 1e-3;
    gc_cmd->add_option("-r,--steps", gc_r, "Trotter steps")->check(CLI::PositiveNumber);
    gc_cmd->add_option("-p,--trotter-order", gc_p, "Trotter order");
    gc_cmd->add_option("--eps-tr", gc_eps, "Trotter error for the asymptotic estimate")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalid;
    }

    try {
        if (*dec_cmd) {
            BandMatrix b;
            if (!dec_input.empty()) {
                b = parse_band_matrix(read_file(dec_input));
            } else if (dec_wave) {
                ProblemFlags pf;
                pf.qubits = dec_n;
                pf.order = dec_order;
                b = build_hamiltonian(pf.problem()).b;
            } else {
                std::mt19937_64 rng(g.seed);
                b = random_band_matrix(dec_n, dec_d, rng);
            }
            const auto dec = decompose(b, dec_sym, dec_tol);
            Json verify;
            if (dec_verify) {
                if (dec.num_qubits > kMaxOracleQubits) {
                    throw ResourceLimitError("--verify: " + std::to_string(dec.num_qubits) +
                                             " qubits exceeds the dense limit of " + std::to_string(kMaxOracleQubits));
                }
                Eigen::MatrixXd dense = b.to_dense();
                if (dec_sym) {
                    const Eigen::Index n = dense.rows();
                    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(2 * n, 2 * n);
                    s.topRightCorner(n, n) = dense;
                    s.bottomLeftCorner(n, n) = dense.transpose();
                    dense = s;
                }
                const double err = (reconstruct(dec) - dense.cast<Complex>()).cwiseAbs().maxCoeff();
                verify = Json{{"max_error", err}, {"ok", err < 1e-12}};
                std::fprintf(stderr, "max reconstruction error %.3e %s 1e-12\n", err, err < 1e-12 ? "<" : ">=");
            }
            if (g.format == "csv") {
                write_output(g, decomposition_to_csv(dec));
            } else {
                Json j = decomposition_to_json(dec);
                if (dec_verify) j["verify"] = verify;
                write_output(g, j.dump(2));
            }
            if (dec_verify && !verify["ok"].get<bool>()) return 1;
        } else if (*qasm_cmd) {
            const auto h = group_hamiltonian(build_hamiltonian(qasm_pf.problem()));
            const bool bound = bind_steps > 0 || bind_time >= 0;
            if (bound && (bind_steps < 1 || bind_time < 0)) throw std::invalid_argument("--bind-steps must be positive and --bind-time nonnegative");
            const double dt = bound ? bind_time / static_cast<double>(bind_steps) : 1.0;
            write_output(g, emit_trotter_step_qasm2(h, qasm_p, dt, !bound));
        } else if (*solve_cmd) {
            const auto p = solve_pf.problem();
            SolveOptions opt;
            opt.method = method == "exact" ? SolveMethod::Exact : SolveMethod::Trotter;
            opt.r = solve_r;
            opt.p = solve_p;
            const auto rep = solve(p, opt);
            if (g.format == "csv") {
                write_output(g, reports_to_csv({rep}));
            } else {
                write_output(g, report_to_json(rep, solve_state).dump(2));
            }
        } else if (*sds_cmd) {
            sds_grid.kappas = parse_orders(sds_grid.kappas);
            write_output(g, render_reports(g, sweep_discretization(sds_grid, g.threads)));
        } else if (*str_cmd) {
            str_grid.kappas = parse_orders(str_grid.kappas);
            const auto rows = str_mode == "targets" ? sweep_trotter_targets(str_grid, g.threads)
                                                    : sweep_solution_steps(str_grid, str_budget, g.threads);
            if (g.format == "csv") {
                write_output(g, reports_to_csv(rows));
            } else {
                write_output(g, reports_to_json(rows).dump(2));
            }
        } else if (*ms_cmd) {
            const auto metric = ms_metric == "eps_tr" ? StepMetric::TrotterError : StepMetric::SolutionError;
            const auto rep = min_steps_report(ms_pf.problem(), metric, ms_budget, ms_p, ms_max);
            write_output(g, g.format == "csv" ? reports_to_csv({rep}) : report_to_json(rep).dump(2));
            if (!rep.found) throw Infeasible("min-steps: budget not reached within " + std::to_string(ms_max) + " steps");
        } else if (*gc_cmd) {
            const auto gc = gate_count(gc_pf.problem(), gc_r, gc_p, gc_eps);
            Json j{{"sets", gc.sets},
                   {"groups", gc.groups},
                   {"exponentials_per_step", gc.exponentials},
                   {"per_step", gc.per_step},
                   {"total", gc.total},
                   {"c_r", gc.c_r},
                   {"c_d", gc.c_d},
                   {"model_per_step", gc.model_per_step},
                   {"model_total", gc.model_total},
                   {"asymptotic", gc.asymptotic}};
            if (g.format == "csv") {
                std::ostringstream os;
                os << "sets,groups,exponentials_per_step,per_step,total,c_r,c_d,model_per_step,model_total,asymptotic\n"
                   << gc.sets << ',' << gc.groups << ',' << gc.exponentials << ',' << gc.per_step << ',' << gc.total
                   << ',' << gc.c_r << ',' << gc.c_d << ',' << gc.model_per_step << ',' << gc.model_total << ','
                   << gc.asymptotic << '\n';
                write_output(g, os.str());
            } else {
                write_output(g, j.dump(2));
            }
        }
    } catch (const Infeasible &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const NotFoundError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const ResourceLimitError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitResource;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const UnsupportedError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::out_of_range &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
    return 0;
}
