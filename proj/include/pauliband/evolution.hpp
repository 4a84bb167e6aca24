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

/// @file evolution.hpp
/// Exact and product-formula time evolution of grouped Pauli Hamiltonians.
///
/// Every group holds terms sharing one x label, so its matrix only couples
/// basis pairs {p, p ^ x}. Its exponential is therefore a direct sum of 2x2
/// blocks and is evaluated in closed form.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pauliband/decompose.hpp"
#include "pauliband/errors.hpp"
#include "pauliband/fdm.hpp"
#include "pauliband/pauli.hpp"

namespace pauliband {

inline constexpr int kMaxDenseQubits = 10;
inline constexpr std::int64_t kDefaultMaxSteps = std::int64_t{1} << 24;

namespace detail {

inline void check_dense(int nq, const char *who) {
    if (nq > kMaxDenseQubits) {
        throw ResourceLimitError(std::string(who) + ": " + std::to_string(nq) +
                                 " qubits exceeds the dense limit of " + std::to_string(kMaxDenseQubits));
    }
}

}  // namespace detail

/// One commuting group: terms sharing label x and Y parity, real weights.
struct TermGroup {
    std::uint32_t x = 0;
    int parity = 0;
    std::vector<std::uint32_t> zs;
    std::vector<double> weights;

    std::vector<PauliTerm> terms(int nq) const {
        std::vector<PauliTerm> out;
        for (std::size_t j = 0; j < zs.size(); ++j) out.emplace_back(BitString(x, nq), BitString(zs[j], nq), weights[j]);
        return out;
    }
};

/// H = sum_gamma H_gamma, one group per nonempty parity half of each set.
struct GroupedHamiltonian {
    int num_qubits = 0;
    std::vector<TermGroup> groups;

    std::size_t size() const { return groups.size(); }
    std::uint32_t dim() const { return std::uint32_t{1} << num_qubits; }

    /// Groups in set order, even half before odd. Weights are multiplied by
    /// scale and must be real.
    static GroupedHamiltonian from_decomposition(const Decomposition &dec, double scale = 1.0) {
        GroupedHamiltonian h;
        h.num_qubits = dec.num_qubits;
        for (const auto &s : dec.sets) {
            for (int par = 0; par < 2; ++par) {
                TermGroup g;
                g.x = s.x.bits();
                g.parity = par;
                for (const auto &t : s.terms) {
                    if (y_parity(t.x, t.z) != par) continue;
                    if (std::abs(t.weight.imag()) > 1e-9 * std::max(1.0, std::abs(t.weight))) {
                        throw std::invalid_argument("GroupedHamiltonian: term " + pauli_string(t.x, t.z) +
                                                    " has a complex weight; the generator is not Hermitian");
                    }
                    g.zs.push_back(t.z.bits());
                    g.weights.push_back(t.weight.real() * scale);
                }
                if (!g.zs.empty()) h.groups.push_back(std::move(g));
            }
        }
        return h;
    }

    Eigen::MatrixXcd group_dense(std::size_t gamma) const {
        detail::check_dense(num_qubits, "GroupedHamiltonian::group_dense");
        const auto &g = groups.at(gamma);
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim(), dim());
        for (std::size_t j = 0; j < g.zs.size(); ++j) {
            for (std::uint32_t p = 0; p < dim(); ++p) m(p, p ^ g.x) += g.weights[j] * walsh_entry(g.x, g.zs[j], p);
        }
        return m;
    }

    Eigen::MatrixXcd dense() const {
        detail::check_dense(num_qubits, "GroupedHamiltonian::dense");
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim(), dim());
        for (std::size_t g = 0; g < groups.size(); ++g) m += group_dense(g);
        return m;
    }

    /// Spectral norm of the full H.
    double norm() const {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense(), Eigen::EigenvaluesOnly);
        return es.eigenvalues().cwiseAbs().maxCoeff();
    }
};

/// Groups of the symmetrized wave Hamiltonian, weights scaled by 1/h.
inline GroupedHamiltonian group_hamiltonian(const WaveHamiltonian &wh,
                                            double prune_tolerance = kDefaultPruneTolerance) {
    return GroupedHamiltonian::from_decomposition(decompose(wh.b, true, prune_tolerance), 1.0 / wh.h);
}

/// exp(-i tau H_gamma) stored as U[p][p] = diag[p], U[p][p ^ x] = off[p].
struct GroupPropagator {
    std::uint32_t x = 0;
    std::vector<Complex> diag;
    std::vector<Complex> off;

    GroupPropagator(const TermGroup &g, int nq, double tau) : x(g.x) {
        const std::uint32_t dim = std::uint32_t{1} << nq;
        // a'[q] = sum_z w_z i^{x.z} (-1)^{z.q} is the entry of H_gamma at (q ^ x, q).
        std::vector<Complex> a(dim, Complex(0));
        for (std::size_t j = 0; j < g.zs.size(); ++j) a[g.zs[j]] += g.weights[j] * i_pow(std::popcount(g.x & g.zs[j]));
        fwht(a);
        diag.resize(dim);
        off.assign(dim, Complex(0));
        if (x == 0) {
            for (std::uint32_t p = 0; p < dim; ++p) diag[p] = std::exp(Complex(0, -tau * a[p].real()));
            return;
        }
        for (std::uint32_t p = 0; p < dim; ++p) {
            const Complex ap = a[p ^ x];
            const double mag = std::abs(ap);
            diag[p] = std::cos(mag * tau);
            off[p] = mag > 0 ? Complex(0, -std::sin(mag * tau) / mag) * ap : Complex(0);
        }
    }

    template <typename Vec>
    void apply(Vec &psi) const {
        if (x == 0) {
            for (std::size_t p = 0; p < diag.size(); ++p) psi[p] *= diag[p];
            return;
        }
        for (std::uint32_t p = 0; p < diag.size(); ++p) {
            const std::uint32_t q = p ^ x;
            if (q < p) continue;
            const Complex u = psi[p];
            const Complex v = psi[q];
            psi[p] = diag[p] * u + off[p] * v;
            psi[q] = off[q] * u + diag[q] * v;
        }
    }

    /// Left-multiplies a dense matrix.
    void apply_rows(Eigen::MatrixXcd &m) const {
        if (x == 0) {
            for (std::size_t p = 0; p < diag.size(); ++p) m.row(static_cast<Eigen::Index>(p)) *= diag[p];
            return;
        }
        for (std::uint32_t p = 0; p < diag.size(); ++p) {
            const std::uint32_t q = p ^ x;
            if (q < p) continue;
            const Eigen::RowVectorXcd u = m.row(p);
            const Eigen::RowVectorXcd v = m.row(q);
            m.row(p) = diag[p] * u + off[p] * v;
            m.row(q) = off[q] * u + diag[q] * v;
        }
    }

    Eigen::MatrixXcd dense() const {
        const auto dim = static_cast<Eigen::Index>(diag.size());
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim, dim);
        apply_rows(m);
        return m;
    }
};

/// exp(-i tau H_gamma) by dense eigendecomposition. Test oracle for GroupPropagator.
inline Eigen::MatrixXcd group_exponential_dense(const GroupedHamiltonian &h, std::size_t gamma, double tau) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.group_dense(gamma));
    Eigen::VectorXcd ph = (es.eigenvalues().cast<Complex>() * Complex(0, -tau)).array().exp();
    return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

/// e^{-iHt} by eigendecomposition of the dense H.
inline Eigen::MatrixXcd exact_propagator(const GroupedHamiltonian &h, double t) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.dense());
    Eigen::VectorXcd ph = (es.eigenvalues().cast<Complex>() * Complex(0, -t)).array().exp();
    return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

inline bool supported_order(int p) { return p == 1 || (p >= 2 && p <= 10 && p % 2 == 0); }

struct ScheduleEntry {
    std::size_t group;
    double coeff;  ///< fraction of dt
};

/// Time-ordered exponentials of one step S_p(dt): entry 0 acts first.
/// S_1 applies H_1 first; S_2 is the palindrome of half steps; higher even
/// orders use the Suzuki recursion S_{2k}(dt) = S_{2k-2}(s dt)^2
/// S_{2k-2}((1 - 4s) dt) S_{2k-2}(s dt)^2 with s = 1 / (4 - 4^{1/(2k-1)}).
/// Adjacent entries of the same group are merged.
inline std::vector<ScheduleEntry> trotter_schedule(std::size_t num_groups, int p) {
    if (!supported_order(p)) {
        throw std::invalid_argument("trotter_schedule: order " + std::to_string(p) +
                                    " is not 1 or an even number in [2, 10]");
    }
    std::vector<ScheduleEntry> raw;
    if (p == 1) {
        for (std::size_t g = 0; g < num_groups; ++g) raw.push_back({g, 1.0});
    } else {
        for (std::size_t g = 0; g < num_groups; ++g) raw.push_back({g, 0.5});
        for (std::size_t g = num_groups; g-- > 0;) raw.push_back({g, 0.5});
        for (int k = 2; 2 * k <= p; ++k) {
            const double s = 1.0 / (4.0 - std::pow(4.0, 1.0 / (2.0 * k - 1.0)));
            std::vector<ScheduleEntry> next;
            for (double c : {s, s, 1.0 - 4.0 * s, s, s}) {
                for (const auto &e : raw) next.push_back({e.group, e.coeff * c});
            }
            raw = std::move(next);
        }
    }
    std::vector<ScheduleEntry> out;
    for (const auto &e : raw) {
        if (!out.empty() && out.back().group == e.group) {
            out.back().coeff += e.coeff;
        } else {
            out.push_back(e);
        }
    }
    return out;
}

/// Propagators for one step, reused across repeated application.
class TrotterStep {
   public:
    TrotterStep(const GroupedHamiltonian &h, double dt, int p) : num_qubits_(h.num_qubits) {
        std::map<std::pair<std::size_t, double>, std::size_t> cache;
        for (const auto &e : trotter_schedule(h.size(), p)) {
            const auto key = std::make_pair(e.group, e.coeff);
            auto it = cache.find(key);
            if (it == cache.end()) {
                it = cache.emplace(key, props_.size()).first;
                props_.emplace_back(h.groups[e.group], h.num_qubits, e.coeff * dt);
            }
            order_.push_back(it->second);
        }
    }

    template <typename Vec>
    void apply(Vec &psi) const {
        for (auto i : order_) props_[i].apply(psi);
    }

    Eigen::MatrixXcd dense() const {
        detail::check_dense(num_qubits_, "TrotterStep::dense");
        const Eigen::Index dim = Eigen::Index{1} << num_qubits_;
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim, dim);
        for (auto i : order_) props_[i].apply_rows(m);
        return m;
    }

    std::size_t length() const { return order_.size(); }

   private:
    int num_qubits_;
    std::vector<GroupPropagator> props_;
    std::vector<std::size_t> order_;
};

/// S_p(dt) as a dense unitary.
inline Eigen::MatrixXcd trotter_step(const GroupedHamiltonian &h, double dt, int p) {
    return TrotterStep(h, dt, p).dense();
}

/// U^r by repeated squaring.
inline Eigen::MatrixXcd matrix_power(const Eigen::MatrixXcd &u, std::int64_t r) {
    if (r < 0) throw std::invalid_argument("matrix_power: negative exponent");
    Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(u.rows(), u.cols());
    Eigen::MatrixXcd base = u;
    bool first = true;
    while (r > 0) {
        if (r & 1) {
            if (first) {
                result = base;
                first = false;
            } else {
                result = base * result;
            }
        }
        r >>= 1;
        if (r) base = base * base;
    }
    return result;
}

struct EvolutionConfig {
    double t = 1.0;
    std::int64_t r = 1;
    int p = 2;

    void validate() const {
        if (r < 1) throw std::invalid_argument("EvolutionConfig: step count must be at least 1");
        if (!supported_order(p)) throw std::invalid_argument("EvolutionConfig: unsupported order " + std::to_string(p));
        if (!std::isfinite(t)) throw std::invalid_argument("EvolutionConfig: time must be finite");
    }
};

/// S_p(t/r)^r as a dense unitary.
inline Eigen::MatrixXcd trotter_unitary(const GroupedHamiltonian &h, const EvolutionConfig &cfg) {
    cfg.validate();
    return matrix_power(trotter_step(h, cfg.t / static_cast<double>(cfg.r), cfg.p), cfg.r);
}

/// Applies S_p(t/r) r times to psi0. Large r on small systems goes through
/// the dense power instead, which keeps round-off growth logarithmic.
inline Eigen::VectorXcd trotter_evolve(const GroupedHamiltonian &h, const EvolutionConfig &cfg,
                                       const Eigen::VectorXcd &psi0) {
    cfg.validate();
    if (psi0.size() != static_cast<Eigen::Index>(h.dim())) {
        throw std::invalid_argument("trotter_evolve: state has the wrong dimension");
    }
    const TrotterStep step(h, cfg.t / static_cast<double>(cfg.r), cfg.p);
    if (cfg.r > 4096 && h.num_qubits <= kMaxDenseQubits) {
        return matrix_power(step.dense(), cfg.r) * psi0;
    }
    Eigen::VectorXcd psi = psi0;
    for (std::int64_t i = 0; i < cfg.r; ++i) step.apply(psi);
    return psi;
}

/// Largest singular value.
inline double spectral_norm(const Eigen::MatrixXcd &m) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

/// ||e^{-iHt} - S_p(t/r)^r||_2. Pass a precomputed exact propagator to skip
/// the eigendecomposition.
inline double trotter_error(const GroupedHamiltonian &h, const EvolutionConfig &cfg,
                            const Eigen::MatrixXcd *exact = nullptr) {
    detail::check_dense(h.num_qubits, "trotter_error");
    if (exact) return spectral_norm(*exact - trotter_unitary(h, cfg));
    return spectral_norm(exact_propagator(h, cfg.t) - trotter_unitary(h, cfg));
}

struct StepSearch {
    std::int64_t r = 0;
    double error = 0.0;
    int evaluations = 0;
};

/// Smallest r with metric(r) <= budget and metric(min(2r, r_max)) <= budget,
/// by doubling then bisection. Throws NotFoundError past r_max.
inline StepSearch min_trotter_steps(const std::function<double(std::int64_t)> &metric, double budget,
                                    std::int64_t r_max = kDefaultMaxSteps) {
    if (!(budget > 0.0)) throw std::invalid_argument("min_trotter_steps: budget must be positive");
    if (r_max < 1) throw std::invalid_argument("min_trotter_steps: r_max must be at least 1");
    std::map<std::int64_t, double> seen;
    auto m = [&](std::int64_t r) {
        auto it = seen.find(r);
        if (it != seen.end()) return it->second;
        const double v = metric(r);
        seen.emplace(r, v);
        return v;
    };
    auto ok = [&](std::int64_t r) { return m(r) <= budget && m(std::min(2 * r, r_max)) <= budget; };
    auto result = [&](std::int64_t r) { return StepSearch{r, m(r), static_cast<int>(seen.size())}; };

    if (ok(1)) return result(1);
    std::int64_t lo = 1;
    std::int64_t hi = 2;
    while (true) {
        if (hi >= r_max) {
            hi = r_max;
            if (ok(hi)) break;
            auto best = std::min_element(seen.begin(), seen.end(),
                                         [](const auto &a, const auto &b) { return a.second < b.second; });
            throw NotFoundError("min_trotter_steps: budget " + std::to_string(budget) + " not reached below r = " +
                                    std::to_string(r_max),
                                best->first, best->second);
        }
        if (ok(hi)) break;
        lo = hi;
        hi *= 2;
    }
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (ok(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return result(hi);
}

/// Total-error bounds: exact = eps_tr + exp(t eps_ds sqrt(c^2 + 1)) - 1,
/// linear = eps_tr + t c eps_ds.
struct ErrorBound {
    double exact = 0.0;
    double linear = 0.0;
};

inline ErrorBound error_bound(double t, double c_max, double eps_ds, double eps_tr) {
    if (t < 0 || c_max < 0 || eps_ds < 0 || eps_tr < 0) {
        throw std::invalid_argument("error_bound: inputs must be nonnegative");
    }
    return {eps_tr + std::expm1(t * eps_ds * std::sqrt(c_max * c_max + 1.0)), eps_tr + t * c_max * eps_ds};
}

}  // namespace pauliband
