#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "robustbeliefs/common.hpp"
#include "robustbeliefs/quadrature.hpp"
#include "robustbeliefs/roots.hpp"

namespace robustbeliefs {

/// Nature's two-point strategy in the Gaussian limit game: mass w_star on the
/// informative local precision c_star, the rest on pure noise.
struct LimitParams {
    double c_star = 0.0;
    double w_star = 0.0;

    void validate() const {
        if (!(c_star > 0.0)) throw DomainError("LimitParams: c_star must be positive");
        if (!(w_star > 0.0 && w_star < 1.0)) throw DomainError("LimitParams: w_star in (0,1)");
    }
};

inline double std_normal_pdf(double x) { return std::exp(-0.5 * x * x) * 0.3989422804014327; }

/// Oracle posterior in the limit experiment: Pr(theta=1 | z, c) = 1/(1+e^{-4cz}).
inline double limit_oracle_posterior(double z, double c) { return logistic(4.0 * c * z); }

/// DM posterior against the mixture {0: 1-w, c: w}; overflow-safe via
/// max-exponent factoring. Symmetric: a(z) + a(-z) = 1.
inline double limit_posterior(double z, double c, double w) {
    const double u1 = 2.0 * c * z - 2.0 * c * c;
    const double u2 = -2.0 * c * z - 2.0 * c * c;
    const double m = std::max({0.0, u1, u2});
    const double e0 = std::exp(-m), e1 = std::exp(u1 - m), e2 = std::exp(u2 - m);
    return ((1.0 - w) * e0 + w * e1) / (2.0 * (1.0 - w) * e0 + w * (e1 + e2));
}

/// (log a(z), log(1-a(z))) without underflow; used by the misspecified-DGP
/// asymptotics where 1 - a(z) falls below double resolution of 1.
inline std::pair<double, double> limit_posterior_log_parts(double z, double c, double w) {
    const double u1 = 2.0 * c * z - 2.0 * c * c;
    const double u2 = -2.0 * c * z - 2.0 * c * c;
    const double lw = std::log(w), l1w = std::log1p(-w);
    const double lden = log_sum_exp({std::log(2.0) + l1w, lw + u1, lw + u2});
    return {log_sum_exp({l1w, lw + u1}) - lden, log_sum_exp({l1w, lw + u2}) - lden};
}

namespace detail {

/// Regret integrand (1/2)[phi(z-2b) + phi(z+2b)] (p(z,b) - a(z))^2 evaluated
/// through a generic belief function.
template <class Belief>
double limit_regret_simpson(const Belief& belief, double b, double halfwidth) {
    const double hi = 2.0 * b + halfwidth;
    const auto g = [&](double z) {
        const double d = limit_oracle_posterior(z, b) - belief(z);
        return 0.5 * (std_normal_pdf(z - 2.0 * b) + std_normal_pdf(z + 2.0 * b)) * d * d;
    };
    return adaptive_simpson(g, -hi, hi, 1e-13);
}

template <class Belief>
double limit_regret_gh(const Belief& belief, double b, int nodes) {
    const auto sq = [&](double z) {
        const double d = limit_oracle_posterior(z, b) - belief(z);
        return d * d;
    };
    return 0.5 * gauss_hermite_gaussian(sq, 2.0 * b, nodes) +
           0.5 * gauss_hermite_gaussian(sq, -2.0 * b, nodes);
}

}  // namespace detail

/// Limit regret R~(belief, c) in [0, 1]. With quad.cross_check the two rules
/// are compared; disagreement beyond 1e-6 raises QuadratureDisagreement.
template <class Belief>
double limit_regret(const Belief& belief, double c, const QuadratureSpec& quad) {
    quad.validate();
    if (c < 0.0) throw DomainError("limit_regret: c must be nonnegative");
    const double primary = (quad.rule == QuadratureRule::gauss_hermite)
                               ? detail::limit_regret_gh(belief, c, quad.nodes)
                               : detail::limit_regret_simpson(belief, c, quad.truncation_halfwidth);
    if (quad.cross_check) {
        const double other = (quad.rule == QuadratureRule::gauss_hermite)
                                 ? detail::limit_regret_simpson(belief, c, quad.truncation_halfwidth)
                                 : detail::limit_regret_gh(belief, c, quad.nodes);
        if (std::abs(primary - other) > 1e-6)
            throw QuadratureDisagreement("limit_regret: quadrature rules disagree");
    }
    return primary;
}

/// R~ of the best-response rule generated by (c, w), at Nature's deviation b.
inline double rule_regret(double c, double w, double b, const QuadratureSpec& quad) {
    return limit_regret([c, w](double z) { return limit_posterior(z, c, w); }, b, quad);
}

/// (F1, F2): indifference gap and Nature's first-order condition.
/// F1(c, w) = R~(c) - R~(0); F2(c, w) = dR~(b)/db at b = c.
inline std::pair<double, double> stationarity_residuals(double c, double w,
                                                        const QuadratureSpec& quad) {
    quad.validate();
    if (!(c > 0.0)) throw DomainError("stationarity_residuals: c must be positive");
    if (!(w >= 0.0 && w <= 1.0)) throw DomainError("stationarity_residuals: w must be in [0,1]");
    const double f1 = rule_regret(c, w, c, quad) - rule_regret(c, w, 0.0, quad);

    // F2 integrand: (A-B)[((z-2c)phi(z-2c)-(z+2c)phi(z+2c))(A-B)
    //               - 4 z (phi(z-2c)+phi(z+2c)) B(1-B)]
    const auto part = [&](double z, double sign) {
        const double A = limit_posterior(z, c, w);
        const double B = limit_oracle_posterior(z, c);
        const double diff = A - B;
        return diff * (sign * diff - 4.0 * z * B * (1.0 - B));
    };
    double f2;
    if (quad.rule == QuadratureRule::gauss_hermite) {
        f2 = gauss_hermite_gaussian([&](double z) { return part(z, z - 2.0 * c); }, 2.0 * c,
                                    quad.nodes) +
             gauss_hermite_gaussian([&](double z) { return part(z, -(z + 2.0 * c)); }, -2.0 * c,
                                    quad.nodes);
    } else {
        const double hi = 2.0 * c + quad.truncation_halfwidth;
        f2 = adaptive_simpson(
            [&](double z) {
                const double A = limit_posterior(z, c, w);
                const double B = limit_oracle_posterior(z, c);
                const double diff = A - B;
                const double dphi = (z - 2.0 * c) * std_normal_pdf(z - 2.0 * c) -
                                    (z + 2.0 * c) * std_normal_pdf(z + 2.0 * c);
                const double sphi = std_normal_pdf(z - 2.0 * c) + std_normal_pdf(z + 2.0 * c);
                return diff * (dphi * diff - 4.0 * z * sphi * B * (1.0 - B));
            },
            -hi, hi, 1e-13);
    }
    return {f1, f2};
}

struct LimitEquilibrium {
    LimitParams params;
    double f1_residual = 0.0;
    double f2_residual = 0.0;
    double value = 0.0;
};

/// For each c the indifference gap F1(c, .) is strictly decreasing in w with a
/// sign change on [0, 1]; solve it by bisection, then close Nature's
/// first-order condition J(c) = F2(c, w1(c)) on the outer bracket.
inline double indifferent_weight(double c, const QuadratureSpec& quad) {
    return bisect(
        [&](double w) { return rule_regret(c, w, c, quad) - rule_regret(c, w, 0.0, quad); }, 0.0,
        1.0, 1e-15, 200);
}

inline LimitEquilibrium solve_limit_equilibrium(const QuadratureSpec& quad, double tol = 1e-9) {
    quad.validate();
    if (!(tol > 0.0) || tol > 1e-8)
        throw DomainError("solve_limit_equilibrium: tol must be in (0, 1e-8]");
    const auto J = [&](double c) {
        return stationarity_residuals(c, indifferent_weight(c, quad), quad).second;
    };
    double lo = 0.2, hi = 1.0;
    double jlo = J(lo), jhi = J(hi);
    if ((jlo > 0.0) == (jhi > 0.0)) {
        lo = 0.05;
        hi = 2.0;
        jlo = J(lo);
        jhi = J(hi);
        if ((jlo > 0.0) == (jhi > 0.0))
            throw NoBracket("solve_limit_equilibrium: J has no sign change; check quadrature");
    }
    const double c_star = bisect(J, lo, hi, 1e-12, 200);
    const double w_star = indifferent_weight(c_star, quad);

    LimitEquilibrium out;
    out.params = {c_star, w_star};
    const auto [f1, f2] = stationarity_residuals(c_star, w_star, quad);
    out.f1_residual = std::abs(f1);
    out.f2_residual = std::abs(f2);
    if (out.f1_residual > tol || out.f2_residual > tol)
        throw NoBracket("solve_limit_equilibrium: residuals exceed tolerance");
    out.value = w_star * rule_regret(c_star, w_star, c_star, quad) +
                (1.0 - w_star) * rule_regret(c_star, w_star, 0.0, quad);
    return out;
}

/// Equilibrium game value w* R~(c*) + (1-w*) R~(0).
inline double equilibrium_value(const LimitParams& params, const QuadratureSpec& quad) {
    params.validate();
    return params.w_star * rule_regret(params.c_star, params.w_star, params.c_star, quad) +
           (1.0 - params.w_star) * rule_regret(params.c_star, params.w_star, 0.0, quad);
}

struct RegretProfile {
    std::vector<double> b;
    std::vector<double> regret;
    double slope_near_zero = 0.0;     // central difference at b = 0.005
    int peak_count = 0;               // grid local maxima, endpoints included
    std::vector<double> peak_b;
    double peak_gap = 0.0;            // |R~(0) - R~(c*)|
    double global_max = 0.0;
};

/// Fixes the equilibrium rule and tabulates Nature's deviation payoff
/// b -> R~(b). The equilibrium shape is down-up-down with equal peaks at
/// {0, c*}; any other peak count raises ShapeViolation.
inline RegretProfile regret_profile(const LimitParams& params, const std::vector<double>& c_grid,
                                    const QuadratureSpec& quad) {
    params.validate();
    if (c_grid.size() < 2) throw RangeError("regret_profile: need at least 2 grid points");
    RegretProfile out;
    out.b = c_grid;
    out.regret.resize(c_grid.size());
    parallel_for(c_grid.size(), [&](std::size_t i) {
        out.regret[i] = rule_regret(params.c_star, params.w_star, c_grid[i], quad);
    });
    const double h = 1e-4;
    out.slope_near_zero = (rule_regret(params.c_star, params.w_star, 0.005 + h, quad) -
                           rule_regret(params.c_star, params.w_star, 0.005 - h, quad)) /
                          (2.0 * h);
    out.global_max = -kInf;
    for (std::size_t i = 0; i < out.regret.size(); ++i) {
        const double left = (i > 0) ? out.regret[i - 1] : -kInf;
        const double right = (i + 1 < out.regret.size()) ? out.regret[i + 1] : -kInf;
        if (out.regret[i] > left && out.regret[i] > right) {
            ++out.peak_count;
            out.peak_b.push_back(out.b[i]);
        }
        out.global_max = std::max(out.global_max, out.regret[i]);
    }
    out.peak_gap = std::abs(rule_regret(params.c_star, params.w_star, 0.0, quad) -
                            rule_regret(params.c_star, params.w_star, params.c_star, quad));
    if (out.peak_count != 2)
        throw ShapeViolation("regret_profile: expected exactly two local maxima");
    return out;
}

}  // namespace robustbeliefs
