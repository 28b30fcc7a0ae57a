#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "robustbeliefs/binary_game.hpp"
#include "robustbeliefs/common.hpp"
#include "robustbeliefs/limit_game.hpp"
#include "robustbeliefs/roots.hpp"

namespace robustbeliefs {

/// A fixed, strictly informative data-generating process.
struct TrueDGP {
    double pi_true = 0.75;

    explicit TrueDGP(double p) : pi_true(p) {
        if (!(p > 0.5 && p <= 1.0)) throw DomainError("TrueDGP: pi_true must lie in (1/2, 1]");
    }
};

enum class RateXMode { sqrt_n, linear_n };

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    RateXMode x_mode = RateXMode::sqrt_n;
};

/// The large-n robust rule: the limit-game posterior composed with the count
/// standardization z = (2k - n)/sqrt(n).
inline BeliefVector robust_rule_large_n(int n, const LimitParams& params) {
    params.validate();
    if (n < 1) throw RangeError("robust_rule_large_n: n must be >= 1");
    BeliefVector out;
    out.n = n;
    out.a.resize(n + 1);
    const double rn = std::sqrt(static_cast<double>(n));
    for (int k = 0; k <= n; ++k)
        out.a[k] = limit_posterior((2.0 * k - n) / rn, params.c_star, params.w_star);
    return out;
}

namespace detail {

/// log-scale view of a belief rule: log a_k and log(1 - a_k). The robust rule
/// computes both analytically, so the complements survive far past the point
/// where 1 - a_k rounds to zero in a plain double.
struct RobustRuleLog {
    int n;
    LimitParams params;

    std::pair<double, double> log_parts(int k) const {
        const double z = (2.0 * k - n) / std::sqrt(static_cast<double>(n));
        return limit_posterior_log_parts(z, params.c_star, params.w_star);
    }
    bool center_tie(int k) const { return 2 * k == n; }
};

struct PlainRuleLog {
    const BeliefVector* rule;

    std::pair<double, double> log_parts(int k) const {
        const double a = rule->a[k];
        return {std::log(a), std::log1p(-a)};
    }
    bool center_tie(int k) const { return rule->a[k] == 0.5; }
};

/// log q, log(1-q) of the oracle posterior under the true DGP.
inline std::pair<double, double> oracle_log_parts(int n, double pi_true, int k) {
    const double x = (2.0 * k - n) * (std::log(pi_true) - std::log1p(-pi_true));
    return {-softplus(-x), -softplus(x)};
}

template <class Rule>
double log_dm_loss_impl(int n, const TrueDGP& dgp, const Rule& rule) {
    // conditional on theta = 1 (symmetry makes this the unconditional rate)
    std::vector<double> terms(n + 1);
    for (int k = 0; k <= n; ++k)
        terms[k] = log_binom_pmf(n, dgp.pi_true, k) + 2.0 * rule.log_parts(k).second;
    return log_sum_exp(terms.data(), terms.size());
}

template <class Rule>
double log_misspec_regret_impl(int n, const TrueDGP& dgp, const Rule& rule) {
    // |q - a| via whichever complement pair is far from 1; the two marginal
    // components coincide with Binom(n, pi_true) by rule/oracle symmetry.
    std::vector<double> terms;
    terms.reserve(n + 1);
    for (int k = 0; k <= n; ++k) {
        const auto [la, l1a] = rule.log_parts(k);
        const auto [lq, l1q] = oracle_log_parts(n, dgp.pi_true, k);
        const double ld = (2 * k >= n) ? log_diff_exp(l1a, l1q) : log_diff_exp(la, lq);
        if (ld == -kInf) continue;
        terms.push_back(log_binom_pmf(n, dgp.pi_true, k) + 2.0 * ld);
    }
    if (terms.empty()) return -kInf;
    return log_sum_exp(terms.data(), terms.size());
}

struct InferenceSplit {
    double p_under = 0.0;
    double p_over = 0.0;
    double p_tie = 0.0;
};

template <class Rule>
InferenceSplit inference_impl(int n, const TrueDGP& dgp, const Rule& rule) {
    InferenceSplit s;
    KahanSum under, over, tie, total;
    for (int k = 0; k <= n; ++k) {
        const double w = std::exp(log_binom_pmf(n, dgp.pi_true, k));
        total.add(w);
        if (rule.center_tie(k) && 2 * k == n) {
            tie.add(w);
            continue;
        }
        const auto [la, l1a] = rule.log_parts(k);
        const auto [lq, l1q] = oracle_log_parts(n, dgp.pi_true, k);
        // distance to the nearer boundary; larger means closer to 1/2
        const double sa = std::min(la, l1a);
        const double sq = std::min(lq, l1q);
        if (sa > sq)
            under.add(w);
        else if (sa < sq)
            over.add(w);
        else
            tie.add(w);
    }
    const double t = total.value();
    s.p_under = under.value() / t;
    s.p_over = over.value() / t;
    s.p_tie = tie.value() / t;
    return s;
}

}  // namespace detail

/// DM mean squared loss under a fixed DGP, conditional on theta = 1.
inline double dm_loss(int n, const TrueDGP& dgp, const BeliefVector& rule) {
    if (rule.n != n) throw RangeError("dm_loss: rule dimension mismatch");
    return std::exp(detail::log_dm_loss_impl(n, dgp, detail::PlainRuleLog{&rule}));
}

inline double dm_loss(int n, const TrueDGP& dgp, const LimitParams& params) {
    return std::exp(detail::log_dm_loss_impl(n, dgp, detail::RobustRuleLog{n, params}));
}

inline double log_dm_loss(int n, const TrueDGP& dgp, const LimitParams& params) {
    return detail::log_dm_loss_impl(n, dgp, detail::RobustRuleLog{n, params});
}

/// Oracle mean squared loss conditional on theta = 1.
inline double oracle_loss(int n, const TrueDGP& dgp) {
    std::vector<double> terms(n + 1);
    for (int k = 0; k <= n; ++k)
        terms[k] =
            log_binom_pmf(n, dgp.pi_true, k) + 2.0 * detail::oracle_log_parts(n, dgp.pi_true, k).second;
    return std::exp(log_sum_exp(terms.data(), terms.size()));
}

inline double log_oracle_loss(int n, const TrueDGP& dgp) {
    std::vector<double> terms(n + 1);
    for (int k = 0; k <= n; ++k)
        terms[k] =
            log_binom_pmf(n, dgp.pi_true, k) + 2.0 * detail::oracle_log_parts(n, dgp.pi_true, k).second;
    return log_sum_exp(terms.data(), terms.size());
}

/// Expected regret against the oracle under the misspecified (fixed) DGP.
inline double misspec_regret(int n, const TrueDGP& dgp, const BeliefVector& rule) {
    if (rule.n != n) throw RangeError("misspec_regret: rule dimension mismatch");
    return std::exp(detail::log_misspec_regret_impl(n, dgp, detail::PlainRuleLog{&rule}));
}

inline double misspec_regret(int n, const TrueDGP& dgp, const LimitParams& params) {
    return std::exp(detail::log_misspec_regret_impl(n, dgp, detail::RobustRuleLog{n, params}));
}

struct InferenceRecord {
    double p_under = 0.0;
    double p_over = 0.0;
    double p_tie = 0.0;
};

/// Probabilities (under Binom(n, pi_true)) of |a_k - 1/2| being below, above,
/// or equal to |q_k - 1/2|.
inline InferenceRecord inference_classification(int n, const TrueDGP& dgp,
                                                const BeliefVector& rule) {
    if (rule.n != n) throw RangeError("inference_classification: rule dimension mismatch");
    const auto s = detail::inference_impl(n, dgp, detail::PlainRuleLog{&rule});
    return {s.p_under, s.p_over, s.p_tie};
}

inline InferenceRecord inference_classification(int n, const TrueDGP& dgp,
                                                const LimitParams& params) {
    const auto s = detail::inference_impl(n, dgp, detail::RobustRuleLog{n, params});
    return {s.p_under, s.p_over, s.p_tie};
}

inline RateFit fit_decay_rate_log(const std::vector<int>& ns, const std::vector<double>& log_losses,
                                  RateXMode mode) {
    if (ns.size() < 4 || ns.size() != log_losses.size())
        throw RangeError("fit_decay_rate_log: need >= 4 matched points");
    std::vector<double> x(ns.size());
    for (std::size_t i = 0; i < ns.size(); ++i) {
        if (!std::isfinite(log_losses[i])) throw DegenerateFit("fit_decay_rate_log: -inf loss");
        x[i] = (mode == RateXMode::sqrt_n) ? std::sqrt(static_cast<double>(ns[i]))
                                           : static_cast<double>(ns[i]);
    }
    const LinearFit f = least_squares(x, log_losses);
    RateFit out;
    out.slope = f.slope;
    out.intercept = f.intercept;
    out.r_squared = f.r_squared;
    out.x_mode = mode;
    return out;
}

/// Least-squares fit of log(loss) against sqrt(n) or n.
inline RateFit fit_decay_rate(const std::vector<int>& ns, const std::vector<double>& losses,
                              RateXMode mode) {
    if (ns.size() < 4 || ns.size() != losses.size())
        throw RangeError("fit_decay_rate: need >= 4 matched points");
    std::vector<double> logs(losses.size());
    for (std::size_t i = 0; i < losses.size(); ++i) {
        if (!(losses[i] > 0.0))
            throw DegenerateFit("fit_decay_rate: losses must be positive (use the log overload)");
        logs[i] = std::log(losses[i]);
    }
    return fit_decay_rate_log(ns, logs, mode);
}

struct ConvergenceRow {
    int n = 0;
    double pi_star = 0.0;
    double w = 0.0;
    double value = 0.0;
    double c_n = 0.0;       // sqrt(n) (pi_n* - 1/2)
    double sup_dist = 0.0;  // sup_k |a_k - a*(z_k)| on the quantile grid
};

/// Finite-to-limit convergence diagnostics per n: structural equilibrium,
/// local reparameterization, and sup distance of the embedded beliefs from the
/// limit posterior at the A.3 quantile grid points.
inline std::vector<ConvergenceRow> convergence_table(const std::vector<int>& n_list,
                                                     const LimitParams& params) {
    params.validate();
    std::vector<ConvergenceRow> rows(n_list.size());
    parallel_for(n_list.size(), [&](std::size_t i) {
        const int n = n_list[i];
        const FiniteEquilibrium eq = solve_structural(n, BregmanGenerator::mse());
        ConvergenceRow r;
        r.n = n;
        r.pi_star = eq.mixture.support.back().pi;
        r.w = eq.mixture.weights.back();
        r.value = eq.value;
        r.c_n = std::sqrt(static_cast<double>(n)) * (r.pi_star - 0.5);
        const double rn = std::sqrt(static_cast<double>(n));
        for (int k = 0; k <= n; ++k) {
            const double z = (2.0 * k - n) / rn;
            r.sup_dist = std::max(
                r.sup_dist,
                std::abs(eq.beliefs.a[k] - limit_posterior(z, params.c_star, params.w_star)));
        }
        rows[i] = r;
    });
    return rows;
}

struct AsymptoticsRow {
    int n = 0;
    double L_n = 0.0;
    double log_L_n = 0.0;
    double L_oracle = 0.0;
    double R_mis = 0.0;
    double p_under = 0.0;
    double p_over = 0.0;
};

inline std::vector<AsymptoticsRow> asymptotics_sweep(const TrueDGP& dgp,
                                                     const std::vector<int>& n_list,
                                                     const LimitParams& params) {
    std::vector<AsymptoticsRow> rows(n_list.size());
    parallel_for(n_list.size(), [&](std::size_t i) {
        const int n = n_list[i];
        AsymptoticsRow r;
        r.n = n;
        r.log_L_n = log_dm_loss(n, dgp, params);
        r.L_n = std::exp(r.log_L_n);
        r.L_oracle = oracle_loss(n, dgp);
        r.R_mis = misspec_regret(n, dgp, params);
        const InferenceRecord inf = inference_classification(n, dgp, params);
        r.p_under = inf.p_under;
        r.p_over = inf.p_over;
        rows[i] = r;
    });
    return rows;
}

}  // namespace robustbeliefs
