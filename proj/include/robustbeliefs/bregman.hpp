#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "robustbeliefs/common.hpp"

namespace robustbeliefs {

enum class LossKind { mse, log_loss, custom };

/// Strictly convex generator G of a proper scoring rule. MSE and LOG carry
/// closed forms; CUSTOM must supply all three derivatives (no internal
/// numerical differentiation).
class BregmanGenerator {
  public:
    using Fn = std::function<double(double)>;

    static BregmanGenerator mse() {
        BregmanGenerator b;
        b.kind_ = LossKind::mse;
        return b;
    }

    static BregmanGenerator log_loss() {
        BregmanGenerator b;
        b.kind_ = LossKind::log_loss;
        return b;
    }

    static BregmanGenerator custom(Fn g, Fn g_prime, Fn g_double_prime) {
        if (!g || !g_prime || !g_double_prime)
            throw DomainError("custom generator requires g, g', g''");
        BregmanGenerator b;
        b.kind_ = LossKind::custom;
        b.g_ = std::move(g);
        b.gp_ = std::move(g_prime);
        b.gpp_ = std::move(g_double_prime);
        return b;
    }

    LossKind kind() const { return kind_; }

    double g(double p) const {
        switch (kind_) {
            case LossKind::mse:
                return p * p;
            case LossKind::log_loss: {
                const double a = (p > 0.0) ? p * std::log(p) : 0.0;
                const double b = (p < 1.0) ? (1.0 - p) * std::log1p(-p) : 0.0;
                return a + b;
            }
            case LossKind::custom:
                return g_(p);
        }
        return 0.0;
    }

    double g_prime(double p) const {
        switch (kind_) {
            case LossKind::mse:
                return 2.0 * p;
            case LossKind::log_loss:
                if (p <= 0.0) return -kInf;
                if (p >= 1.0) return kInf;
                return std::log(p) - std::log1p(-p);
            case LossKind::custom:
                return gp_(p);
        }
        return 0.0;
    }

    double g_double_prime(double p) const {
        switch (kind_) {
            case LossKind::mse:
                return 2.0;
            case LossKind::log_loss:
                return 1.0 / (p * (1.0 - p));
            case LossKind::custom:
                return gpp_(p);
        }
        return 0.0;
    }

  private:
    LossKind kind_ = LossKind::mse;
    Fn g_, gp_, gpp_;
};

/// Bregman divergence B_G(p||a) = G(p) - G(a) - (p-a)G'(a).
/// LOG with a on the boundary and p != a is infinite; the +inf return value is
/// the sentinel (callers test with std::isinf).
inline double divergence(const BregmanGenerator& G, double p, double a) {
    if (p < 0.0 || p > 1.0 || a < 0.0 || a > 1.0)
        throw DomainError("divergence: arguments must lie in [0,1]");
    if (p == a) return 0.0;
    switch (G.kind()) {
        case LossKind::mse:
            return (p - a) * (p - a);
        case LossKind::log_loss: {
            if (a <= 0.0 || a >= 1.0) return kInf;
            const double t1 = (p > 0.0) ? p * (std::log(p) - std::log(a)) : 0.0;
            const double t2 = (p < 1.0) ? (1.0 - p) * (std::log1p(-p) - std::log1p(-a)) : 0.0;
            return t1 + t2;
        }
        case LossKind::custom:
            return G.g(p) - G.g(a) - (p - a) * G.g_prime(a);
    }
    return 0.0;
}

/// Savage form of the expected score: E_p[S(a, theta)] = G(a) + (p-a) G'(a).
/// Strictly proper: maximized over a at a = p.
inline double expected_score(const BregmanGenerator& G, double a, double p) {
    if (p < 0.0 || p > 1.0 || a < 0.0 || a > 1.0)
        throw DomainError("expected_score: arguments must lie in [0,1]");
    if (G.kind() == LossKind::log_loss && (a <= 0.0 || a >= 1.0) && p != a) return -kInf;
    return G.g(a) + (p - a) * G.g_prime(a);
}

/// Density of decision thresholds over (0,1); the Schervish task weighting.
struct TaskDensity {
    std::function<double(double)> lambda;
};

namespace detail {

/// Tabulated G on a uniform grid with cumulative quadrature; queries use cubic
/// Hermite interpolation (derivatives are known exactly at the nodes).
class TabulatedGenerator {
  public:
    TabulatedGenerator(const std::function<double(double)>& lam, double eps, int panels)
        : lo_(eps), hi_(1.0 - eps), m_(2 * panels) {
        h_ = (hi_ - lo_) / m_;
        lam_.resize(m_ + 1);
        gp_.resize(m_ + 1);
        g_.resize(m_ + 1);
        double lam_max = 0.0;
        for (int i = 0; i <= m_; ++i) {
            lam_[i] = lam(x(i));
            if (lam_[i] < 0.0) throw DomainError("task density must be nonnegative");
            if (!std::isfinite(lam_[i])) throw DomainError("task density must be finite on the grid");
            lam_max = std::max(lam_max, lam_[i]);
        }
        if (lam_max == 0.0) throw DegenerateDensity("task density vanishes on the grid");

        // G'(x) = int_{1/2}^{x} lambda; per-interval Simpson, accumulated outward
        // from the center node so the anchor G'(1/2)=0 is exact.
        const int c = m_ / 2;
        gp_[c] = 0.0;
        for (int i = c; i < m_; ++i)
            gp_[i + 1] = gp_[i] + simpson_cell(lam, x(i), x(i + 1));
        for (int i = c; i > 0; --i)
            gp_[i - 1] = gp_[i] - simpson_cell(lam, x(i - 1), x(i));

        // G(x) = int_{1/2}^{x} G'; trapezoid with endpoint-derivative correction
        // (G'' = lambda is known at the nodes).
        g_[c] = 0.0;
        for (int i = c; i < m_; ++i) g_[i + 1] = g_[i] + cell_int(i);
        for (int i = c; i > 0; --i) g_[i - 1] = g_[i] - cell_int(i - 1);
    }

    double g(double p) const { return hermite(p, g_, gp_); }
    double g_prime(double p) const { return hermite(p, gp_, lam_); }
    double g_double_prime(double p) const {
        const auto [i, t] = locate(p);
        return lam_[i] * (1.0 - t) + lam_[i + 1] * t;  // lambda itself, linearized
    }

  private:
    double x(int i) const { return lo_ + h_ * i; }

    static double simpson_cell(const std::function<double(double)>& f, double a, double b) {
        return (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
    }

    double cell_int(int i) const {
        return 0.5 * h_ * (gp_[i] + gp_[i + 1]) - h_ * h_ / 12.0 * (lam_[i + 1] - lam_[i]);
    }

    std::pair<int, double> locate(double p) const {
        const double clamped = std::min(std::max(p, lo_), hi_);
        int i = static_cast<int>((clamped - lo_) / h_);
        i = std::min(std::max(i, 0), m_ - 1);
        return {i, (clamped - x(i)) / h_};
    }

    double hermite(double p, const std::vector<double>& v, const std::vector<double>& d) const {
        const auto [i, t] = locate(p);
        const double t2 = t * t, t3 = t2 * t;
        const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
        const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
        return h00 * v[i] + h10 * h_ * d[i] + h01 * v[i + 1] + h11 * h_ * d[i + 1];
    }

    double lo_, hi_, h_;
    int m_;
    std::vector<double> lam_, gp_, g_;
};

}  // namespace detail

/// Builds G with curvature G'' = lambda by double cumulative quadrature on
/// [eps, 1-eps]. The two free integration constants are anchored at p = 1/2;
/// they cancel in every divergence.
inline BregmanGenerator generator_from_task_density(const TaskDensity& lam, double eps = 1e-6,
                                                    int panels = 10000) {
    if (!lam.lambda) throw DomainError("task density missing callable");
    auto tab = std::make_shared<detail::TabulatedGenerator>(lam.lambda, eps, panels);
    return BregmanGenerator::custom(
        [tab](double p) { return tab->g(p); },
        [tab](double p) { return tab->g_prime(p); },
        [tab](double p) { return tab->g_double_prime(p); });
}

}  // namespace robustbeliefs
