#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "robustbeliefs/bregman.hpp"
#include "robustbeliefs/common.hpp"
#include "robustbeliefs/roots.hpp"

namespace robustbeliefs {

/// Symmetric binary experiment: Pr(signal matches state) = pi.
struct BinaryExperiment {
    double pi = 0.5;

    explicit BinaryExperiment(double p) : pi(p) {
        if (!(p >= 0.5 && p <= 1.0)) throw DomainError("precision must lie in [1/2, 1]");
    }
};

struct NatureMixtureFinite {
    std::vector<BinaryExperiment> support;
    std::vector<double> weights;

    void validate() const {
        if (support.size() != weights.size() || support.empty())
            throw DomainError("mixture: support/weights size mismatch");
        double sum = 0.0;
        for (double w : weights) {
            if (w < 0.0) throw DomainError("mixture: negative weight");
            sum += w;
        }
        if (std::abs(sum - 1.0) > 1e-12) throw DomainError("mixture: weights must sum to 1");
        for (std::size_t i = 0; i < support.size(); ++i)
            for (std::size_t j = i + 1; j < support.size(); ++j)
                if (support[i].pi == support[j].pi)
                    throw DomainError("mixture: support entries must be distinct");
    }
};

/// DM strategy for the n-sample game: posterior a_k per high-signal count k.
struct BeliefVector {
    int n = 0;
    std::vector<double> a;               // size n+1
    std::vector<int> zero_mass_counts;   // counts assigned 1/2 by convention

    BeliefVector() = default;
    BeliefVector(int n_, std::vector<double> a_) : n(n_), a(std::move(a_)) {
        if (static_cast<int>(a.size()) != n + 1)
            throw RangeError("belief vector needs n+1 entries");
    }
};

struct EquilibriumResiduals {
    double foc_max_abs = 0.0;
    double indifference_abs = 0.0;
    double local_opt_abs = 0.0;
    double duality_gap = 0.0;
};

struct FiniteEquilibrium {
    NatureMixtureFinite mixture;
    BeliefVector beliefs;
    double value = 0.0;
    EquilibriumResiduals residuals;
    std::string method;
};

struct IterationLimitError : Error {
    IterationLimitError(std::string msg, FiniteEquilibrium best)
        : Error(std::move(msg)), best_so_far(std::move(best)) {}
    FiniteEquilibrium best_so_far;
};

namespace detail {

/// log pi^k (1-pi)^(n-k) with the 0^0 = 1 convention at the endpoints.
inline double log_count_kernel(int n, double pi, int k) {
    double s = 0.0;
    if (k > 0) s += (pi > 0.0) ? k * std::log(pi) : -kInf;
    if (k < n) s += (pi < 1.0) ? (n - k) * std::log1p(-pi) : -kInf;
    return s;
}

inline double log_choose(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace detail

/// Pr(k | pi) = (1/2) C(n,k) [pi^k(1-pi)^{n-k} + (1-pi)^k pi^{n-k}].
inline double marginal_count_prob(int n, double pi, int k) {
    if (k < 0 || k > n) throw RangeError("marginal_count_prob: k out of [0,n]");
    const double l1 = detail::log_count_kernel(n, pi, k);
    const double l2 = detail::log_count_kernel(n, pi, n - k);
    const double lse = log_sum_exp({l1, l2});
    if (lse == -kInf) return 0.0;
    return 0.5 * std::exp(detail::log_choose(n, k) + lse);
}

/// Oracle posterior Pr(theta=1 | pi, k). Zero-probability counts under pi = 1
/// return 1/2 by convention (they are never weighted).
inline double oracle_posterior_binary(int n, double pi, int k) {
    if (k < 0 || k > n) throw RangeError("oracle_posterior_binary: k out of [0,n]");
    if (pi >= 1.0) {
        if (k == n) return 1.0;
        if (k == 0) return 0.0;
        return 0.5;
    }
    if (pi <= 0.5) return 0.5;
    return logistic((2.0 * k - n) * (std::log(pi) - std::log1p(-pi)));
}

/// Ex-ante regret R(a, pi) = sum_k Pr(k|pi) B_G(q(k;pi) || a_k).
inline double exante_regret(const BeliefVector& beliefs, double pi, const BregmanGenerator& G) {
    const int n = beliefs.n;
    KahanSum sum;
    for (int k = 0; k <= n; ++k) {
        const double m = marginal_count_prob(n, pi, k);
        if (m == 0.0) continue;
        const double d = divergence(G, oracle_posterior_binary(n, pi, k), beliefs.a[k]);
        if (std::isinf(d))
            throw DomainError("exante_regret: infinite divergence with positive count mass");
        sum.add(m * d);
    }
    return sum.value();
}

/// Mixture-Bayes posterior per count; identical for every Bregman generator
/// (the conditional mean minimizes any Bregman divergence).
inline BeliefVector dm_best_response(const NatureMixtureFinite& mix, int n,
                                     const BregmanGenerator& /*G*/) {
    mix.validate();
    BeliefVector out;
    out.n = n;
    out.a.resize(n + 1);
    std::vector<double> lw(mix.support.size());
    for (std::size_t i = 0; i < mix.support.size(); ++i)
        lw[i] = (mix.weights[i] > 0.0) ? std::log(mix.weights[i]) : -kInf;
    std::vector<double> num_terms, den_terms;
    for (int k = 0; k <= n; ++k) {
        num_terms.clear();
        den_terms.clear();
        for (std::size_t i = 0; i < mix.support.size(); ++i) {
            if (lw[i] == -kInf) continue;
            const double pi = mix.support[i].pi;
            // m_i(k) q_i(k) reduces to (1/2)C(n,k) pi^k(1-pi)^{n-k}; the
            // combinatorial factor cancels in the ratio.
            num_terms.push_back(lw[i] + detail::log_count_kernel(n, pi, k));
            den_terms.push_back(lw[i] + detail::log_count_kernel(n, pi, n - k));
        }
        const double lnum = log_sum_exp(num_terms.data(), num_terms.size());
        const double lmirror = log_sum_exp(den_terms.data(), den_terms.size());
        if (lnum == -kInf && lmirror == -kInf) {
            out.a[k] = 0.5;  // ZeroMassCount convention
            out.zero_mass_counts.push_back(k);
            continue;
        }
        const double lden = log_sum_exp({lnum, lmirror});
        out.a[k] = std::exp(lnum - lden);
    }
    return out;
}

/// Nature's best reply: argmax_pi R(a, pi) over [1/2, 1]; grid scan plus
/// golden-section refinement, ties broken toward the smallest pi.
inline std::pair<double, double> nature_best_response(const BeliefVector& beliefs, int n,
                                                      const BregmanGenerator& G,
                                                      int grid_size = 513) {
    if (grid_size < 64) throw DomainError("nature_best_response: grid_size must be >= 64");
    const auto f = [&](double pi) { return exante_regret(beliefs, pi, G); };
    std::vector<double> grid(grid_size), val(grid_size);
    for (int i = 0; i < grid_size; ++i) {
        grid[i] = 0.5 + 0.5 * i / (grid_size - 1);
        val[i] = f(grid[i]);
    }
    std::vector<std::pair<double, double>> candidates;
    for (int i = 0; i < grid_size; ++i) {
        const double left = (i > 0) ? val[i - 1] : -kInf;
        const double right = (i + 1 < grid_size) ? val[i + 1] : -kInf;
        if (val[i] >= left && val[i] >= right) {
            const double lo = grid[std::max(i - 1, 0)];
            const double hi = grid[std::min(i + 1, grid_size - 1)];
            const MaxResult r = golden_section_max(f, lo, hi, 1e-10);
            candidates.push_back({r.x, r.value});
        }
    }
    double best = -kInf;
    for (const auto& c : candidates) best = std::max(best, c.second);
    double arg = 1.0;
    for (const auto& c : candidates)
        if (c.second >= best - 1e-12) arg = std::min(arg, c.first);
    return {arg, f(arg)};
}

namespace detail {

/// Beliefs prescribed by the two-point first-order condition for the
/// mixture {1/2 w.p. 1-w, pi w.p. w}.
inline BeliefVector foc_beliefs(int n, double pi, double w) {
    NatureMixtureFinite mix;
    if (pi == 0.5) {
        mix.support = {BinaryExperiment(0.5)};
        mix.weights = {1.0};
    } else {
        mix.support = {BinaryExperiment(0.5), BinaryExperiment(pi)};
        mix.weights = {1.0 - w, w};
    }
    return dm_best_response(mix, n, BregmanGenerator::mse());
}

/// d/dpi of the MSE regret at fixed beliefs, in product form (stable at the
/// pi = 1 boundary when evaluated one-sided).
inline double dregret_dpi_mse(const BeliefVector& beliefs, double pi) {
    const int n = beliefs.n;
    KahanSum sum;
    for (int k = 0; k <= n; ++k) {
        const double fk = std::exp(log_count_kernel(n, pi, k));
        const double fnk = std::exp(log_count_kernel(n, pi, n - k));
        const double choose = std::exp(log_choose(n, k));
        const double q = (fk + fnk > 0.0) ? fk / (fk + fnk) : 0.5;
        const double ak = beliefs.a[k];
        // d/dpi pi^j (1-pi)^{n-j} without dividing by pi or 1-pi
        const auto fprime = [&](int j) {
            double t1 = 0.0, t2 = 0.0;
            if (j > 0) t1 = j * std::exp(log_count_kernel(n - 1, pi, j - 1));
            if (j < n) t2 = (n - j) * std::exp(log_count_kernel(n - 1, pi, j));
            return t1 - t2;
        };
        const double dpr = 0.5 * choose * (fprime(k) + fprime(n - k));
        sum.add(dpr * (q - ak) * (q - ak));
        // 2 Pr(k|pi) (q - a) q' collapses to C (q-a)(2k-n)(pi(1-pi))^{n-1}/(f_k + f_{n-k})
        if (fk + fnk > 0.0) {
            const double kernel =
                choose * std::exp((n - 1) * (std::log(pi) + std::log1p(-pi)));
            sum.add((q - ak) * (2.0 * k - n) * kernel / (fk + fnk));
        }
    }
    return sum.value();
}

inline double indifference_gap(int n, double pi, double w, const BregmanGenerator& G) {
    const BeliefVector a = foc_beliefs(n, pi, w);
    return exante_regret(a, pi, G) - exante_regret(a, 0.5, G);
}

/// Unique w with R(a, pi) = R(a, 1/2); the gap is strictly decreasing in w.
inline double weight_for_indifference(int n, double pi, const BregmanGenerator& G) {
    return bisect([&](double w) { return indifference_gap(n, pi, w, G); }, 0.0, 1.0, 1e-15, 200);
}

}  // namespace detail

inline FiniteEquilibrium solve_double_oracle(int n, const BregmanGenerator& G, double tol);

/// Two-point structural solver: Nature mixes {1/2, pi*}, beliefs follow the
/// first-order condition, and (pi*, w) solve indifference + local optimality.
/// For n <= 2 the informative atom sits at the boundary pi = 1 and the local
/// condition becomes one-sided. Stated for MSE; other generators are routed to
/// the double-oracle solver.
inline FiniteEquilibrium solve_structural(int n, const BregmanGenerator& G) {
    if (n < 1) throw RangeError("solve_structural: n must be >= 1");
    if (G.kind() != LossKind::mse) return solve_double_oracle(n, G, 1e-9);

    const auto H = [&](double pi) {
        const double w = detail::weight_for_indifference(n, pi, G);
        return detail::dregret_dpi_mse(detail::foc_beliefs(n, pi, w), pi);
    };

    // scan for the + -> - crossing of the local-optimality function
    const double lo_scan = 0.5 + 1e-3, hi_scan = 1.0 - 1e-9;
    const int scan_points = 65;
    double pi_star = 1.0;
    bool boundary = true;
    double prev_x = lo_scan, prev_h = H(lo_scan);
    for (int i = 1; i < scan_points; ++i) {
        const double x = lo_scan + (hi_scan - lo_scan) * i / (scan_points - 1);
        const double hx = H(x);
        if (prev_h > 0.0 && hx < 0.0) {
            pi_star = bisect(H, prev_x, x, 1e-10, 200);
            boundary = false;
            break;
        }
        prev_x = x;
        prev_h = hx;
    }
    if (boundary && prev_h < 0.0)
        throw NoBracket("solve_structural: local-optimality has no usable bracket");

    const double w = detail::weight_for_indifference(n, pi_star, G);
    BeliefVector beliefs = detail::foc_beliefs(n, pi_star, w);

    FiniteEquilibrium eq;
    eq.method = "structural";
    eq.mixture.support = {BinaryExperiment(0.5), BinaryExperiment(pi_star)};
    eq.mixture.weights = {1.0 - w, w};
    eq.beliefs = beliefs;
    eq.value = exante_regret(beliefs, pi_star, G);
    eq.residuals.indifference_abs = std::abs(eq.value - exante_regret(beliefs, 0.5, G));
    if (boundary) {
        // one-sided KKT at pi = 1: dR/dpi must be >= 0 (evaluated just inside)
        const double d = detail::dregret_dpi_mse(beliefs, 1.0 - 1e-9);
        eq.residuals.local_opt_abs = std::max(0.0, -d);
    } else {
        eq.residuals.local_opt_abs = std::abs(detail::dregret_dpi_mse(beliefs, pi_star));
    }
    // FOC residual: compare against the general mixture-Bayes route
    const BeliefVector br = dm_best_response(eq.mixture, n, G);
    double foc = 0.0;
    for (int k = 0; k <= n; ++k) foc = std::max(foc, std::abs(br.a[k] - beliefs.a[k]));
    eq.residuals.foc_max_abs = foc;
    const auto [pi_br, vmax] = nature_best_response(beliefs, n, G);
    (void)pi_br;
    eq.residuals.duality_gap = std::max(0.0, vmax - eq.value);
    return eq;
}

namespace detail {

struct MixtureState {
    std::vector<double> support;
    std::vector<double> weights;
};

inline double mixture_value(const MixtureState& s, int n, const BregmanGenerator& G,
                            BeliefVector* out_beliefs = nullptr) {
    NatureMixtureFinite mix;
    for (double p : s.support) mix.support.push_back(BinaryExperiment(p));
    mix.weights = s.weights;
    BeliefVector a = dm_best_response(mix, n, G);
    KahanSum v;
    for (std::size_t i = 0; i < s.support.size(); ++i)
        if (s.weights[i] > 0.0) v.add(s.weights[i] * exante_regret(a, s.support[i], G));
    if (out_beliefs) *out_beliefs = std::move(a);
    return v.value();
}

/// Maximize V(sigma) over the simplex on a fixed support: multiplicative
/// weights warm start, then pairwise-transfer golden-section sweeps.
inline void maximize_over_support(MixtureState& s, int n, const BregmanGenerator& G,
                                  int mw_iters = 2000) {
    const std::size_t m = s.support.size();
    s.weights.assign(m, 1.0 / static_cast<double>(m));
    if (m == 1) return;

    NatureMixtureFinite mix;
    for (double p : s.support) mix.support.push_back(BinaryExperiment(p));
    std::vector<double> g(m);
    constexpr double grad_bound = 0.25;  // MSE regrets never exceed 1/4
    for (int t = 1; t <= mw_iters; ++t) {
        mix.weights = s.weights;
        const BeliefVector a = dm_best_response(mix, n, G);
        double gmax = grad_bound;
        for (std::size_t i = 0; i < m; ++i) {
            g[i] = exante_regret(a, s.support[i], G);
            gmax = std::max(gmax, g[i]);
        }
        const double eta = 1.0 / (gmax * std::sqrt(static_cast<double>(t)));
        double sum = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            s.weights[i] *= std::exp(eta * g[i]);
            sum += s.weights[i];
        }
        for (double& w : s.weights) w /= sum;
    }

    // drop negligible atoms before polishing
    MixtureState pruned;
    for (std::size_t i = 0; i < m; ++i) {
        if (s.weights[i] > 1e-9) {
            pruned.support.push_back(s.support[i]);
            pruned.weights.push_back(s.weights[i]);
        }
    }
    double norm = 0.0;
    for (double w : pruned.weights) norm += w;
    for (double& w : pruned.weights) w /= norm;
    s = pruned;

    // pairwise mass transfers; each 1-D slice of the concave V is unimodal
    const std::size_t mm = s.support.size();
    for (int sweep = 0; sweep < 200 && mm > 1; ++sweep) {
        double improved = 0.0;
        for (std::size_t i = 0; i < mm; ++i) {
            for (std::size_t j = i + 1; j < mm; ++j) {
                const double base = s.weights[i] + s.weights[j];
                if (base <= 0.0) continue;
                const double v0 = mixture_value(s, n, G);
                MixtureState trial = s;
                const auto slice = [&](double t) {
                    trial.weights[i] = t;
                    trial.weights[j] = base - t;
                    return mixture_value(trial, n, G);
                };
                const MaxResult r = golden_section_max(slice, 0.0, base, 1e-13);
                if (r.value > v0 + 1e-16) {
                    s.weights[i] = r.x;
                    s.weights[j] = base - r.x;
                    improved = std::max(improved, r.value - v0);
                }
            }
        }
        if (improved < 1e-15) break;
    }
}

}  // namespace detail

/// Support-enlargement equilibrium solver. Inner step maximizes the concave
/// mixture value on the current support; outer step adds (or relocates to)
/// Nature's best response until the duality gap closes. A short polish phase
/// then re-centers the informative atoms so reported strategies are sharper
/// than the termination gap alone guarantees.
inline FiniteEquilibrium solve_double_oracle(int n, const BregmanGenerator& G, double tol) {
    if (tol <= 0.0) throw DomainError("solve_double_oracle: tol must be positive");
    detail::MixtureState s;
    s.support = {0.5};
    s.weights = {1.0};

    const auto finish = [&](BeliefVector a, double V) {
        FiniteEquilibrium eq;
        eq.method = "double-oracle";
        // prune and sort the reported mixture
        std::vector<std::pair<double, double>> atoms;
        for (std::size_t i = 0; i < s.support.size(); ++i)
            if (s.weights[i] > 1e-9) atoms.push_back({s.support[i], s.weights[i]});
        std::sort(atoms.begin(), atoms.end());
        double norm = 0.0;
        for (auto& [p, w] : atoms) norm += w;
        for (auto& [p, w] : atoms) {
            eq.mixture.support.push_back(BinaryExperiment(p));
            eq.mixture.weights.push_back(w / norm);
        }
        eq.beliefs = std::move(a);
        eq.value = V;
        const auto [pi_br, vmax] = nature_best_response(eq.beliefs, n, G);
        (void)pi_br;
        eq.residuals.duality_gap = std::max(0.0, vmax - V);
        double indiff = 0.0;
        for (std::size_t i = 0; i < eq.mixture.support.size(); ++i)
            indiff = std::max(indiff,
                              std::abs(exante_regret(eq.beliefs, eq.mixture.support[i].pi, G) - V));
        eq.residuals.indifference_abs = indiff;
        const BeliefVector br = dm_best_response(eq.mixture, n, G);
        double foc = 0.0;
        for (int k = 0; k <= n; ++k) foc = std::max(foc, std::abs(br.a[k] - eq.beliefs.a[k]));
        eq.residuals.foc_max_abs = foc;
        if (G.kind() == LossKind::mse && eq.mixture.support.size() == 2 &&
            eq.mixture.support.back().pi < 1.0 - 1e-9) {
            eq.residuals.local_opt_abs =
                std::abs(detail::dregret_dpi_mse(eq.beliefs, eq.mixture.support.back().pi));
        }
        return eq;
    };

    BeliefVector a;
    double V = 0.0;
    double gap = kInf;
    for (int outer = 0; outer < 100; ++outer) {
        detail::maximize_over_support(s, n, G);
        V = detail::mixture_value(s, n, G, &a);
        const auto [pi_br, vmax] = nature_best_response(a, n, G);
        gap = vmax - V;
        if (gap <= tol) {
            // polish: relocate informative atoms onto the exact best-response
            // peaks and re-equalize weights (quadratic sharpening)
            for (int round = 0; round < 3; ++round) {
                for (std::size_t i = 0; i < s.support.size(); ++i) {
                    if (s.support[i] == 0.5 || s.weights[i] <= 1e-9) continue;
                    const double lo = std::max(0.5, s.support[i] - 1e-3);
                    const double hi = std::min(1.0, s.support[i] + 1e-3);
                    const MaxResult r = golden_section_max(
                        [&](double p) { return exante_regret(a, p, G); }, lo, hi, 1e-12);
                    s.support[i] = r.x;
                }
                detail::maximize_over_support(s, n, G, 200);
                V = detail::mixture_value(s, n, G, &a);
            }
            return finish(std::move(a), V);
        }
        // enlarge the support, or move an existing nearby atom onto the reply
        double nearest = kInf;
        std::size_t jmin = 0;
        for (std::size_t i = 0; i < s.support.size(); ++i) {
            const double d = std::abs(pi_br - s.support[i]);
            if (d < nearest) {
                nearest = d;
                jmin = i;
            }
        }
        if (nearest < 1e-4 && s.support[jmin] != 0.5) {
            s.support[jmin] = pi_br;
        } else {
            s.support.push_back(pi_br);
        }
    }
    FiniteEquilibrium best = finish(std::move(a), V);
    throw IterationLimitError("solve_double_oracle: outer iteration limit", std::move(best));
}

struct OptimalityDiagnostics {
    int local_maxima = 0;
    double grid_max = 0.0;
    double grid_max_minus_value = 0.0;
    double indifference_spread = 0.0;
    std::vector<double> grid_pi;
    std::vector<double> grid_regret;
};

/// Tabulates pi -> R(a*, pi) and summarizes the saddle shape.
inline OptimalityDiagnostics verify_global_optimality(const FiniteEquilibrium& eq, int n,
                                                      int grid_size = 2001) {
    const BregmanGenerator G = BregmanGenerator::mse();
    OptimalityDiagnostics d;
    d.grid_pi.resize(grid_size);
    d.grid_regret.resize(grid_size);
    parallel_for(grid_size, [&](std::size_t i) {
        d.grid_pi[i] = 0.5 + 0.5 * static_cast<double>(i) / (grid_size - 1);
        d.grid_regret[i] = exante_regret(eq.beliefs, d.grid_pi[i], G);
    });
    d.grid_max = -kInf;
    for (int i = 0; i < grid_size; ++i) {
        const double left = (i > 0) ? d.grid_regret[i - 1] : -kInf;
        const double right = (i + 1 < grid_size) ? d.grid_regret[i + 1] : -kInf;
        if (d.grid_regret[i] > left && d.grid_regret[i] > right) ++d.local_maxima;
        d.grid_max = std::max(d.grid_max, d.grid_regret[i]);
    }
    d.grid_max_minus_value = d.grid_max - eq.value;
    for (std::size_t i = 0; i < eq.mixture.support.size(); ++i)
        d.indifference_spread =
            std::max(d.indifference_spread,
                     std::abs(exante_regret(eq.beliefs, eq.mixture.support[i].pi, G) - eq.value));
    return d;
}

/// Closed-form n = 3 equilibrium system. G2 follows the printed form; the
/// first term of G1 carries (pi^2-pi+1)^2, which is what the indifference
/// condition actually reduces to (the solved point is a verified saddle,
/// and the printed first power is not consistent with it).
inline std::pair<double, double> n3_system_residuals(double pi, double w) {
    if (pi < 0.5 || pi > 1.0 || w < 0.0 || w > 1.0)
        throw DomainError("n3_system_residuals: (pi, w) out of domain");
    const double E = pi * pi - pi + 1.0;
    const double D = 3.0 * pi * pi - 3.0 * pi + 1.0;
    const double s = (2.0 * pi - 1.0) * (2.0 * pi - 1.0);
    const double P = 3.0 * w * s + 1.0;
    const double Q = 1.0 - w * s;
    const double g1 = E * E * (4.0 * w * w * D - (1.0 - w) * (1.0 - w)) / (D * P * P) +
                      3.0 * pi * (1.0 - pi) *
                          (4.0 * w * w * pi * (1.0 - pi) - (1.0 - w) * (1.0 - w)) / (Q * Q);
    const double g2 =
        E / (D * D * P) * ((1.0 - w) * s * E / (2.0 * P) + 2.0 * pi * pi * (1.0 - pi) * (1.0 - pi)) -
        (1.0 / Q) * ((1.0 - w) * s / (2.0 * Q) - 2.0 * pi * (1.0 - pi));
    return {g1, g2};
}

/// Coefficients (descending powers) of R'(pi) (3pi^2-3pi+1)^2 for n = 3 at
/// fixed symmetric beliefs (a_2, a_3); a degree-7 polynomial.
inline std::vector<double> n3_local_opt_polynomial(double a2, double a3) {
    return {
        -96.0,
        282.0 + 162.0 * a2 - 54.0 * a3,
        -336.0 - 432.0 * a2 + 108.0 * a3 - 54.0 * a2 * a2 + 54.0 * a3 * a3,
        207.0 + 486.0 * a2 - 90.0 * a3 + 135.0 * a2 * a2 - 135.0 * a3 * a3,
        -66.0 - 288.0 * a2 + 36.0 * a3 - 144.0 * a2 * a2 + 144.0 * a3 * a3,
        9.0 + 90.0 * a2 - 6.0 * a3 + 81.0 * a2 * a2 - 81.0 * a3 * a3,
        -12.0 * a2 - 24.0 * a2 * a2 + 24.0 * a3 * a3,
        3.0 * a2 * a2 - 3.0 * a3 * a3,
    };
}

}  // namespace robustbeliefs
