#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "robustbeliefs/common.hpp"

namespace robustbeliefs {

enum class QuadratureRule { gauss_hermite, adaptive_simpson };

struct QuadratureSpec {
    QuadratureRule rule = QuadratureRule::gauss_hermite;
    int nodes = 200;                     // Gauss-Hermite node count
    double truncation_halfwidth = 10.0;  // Simpson window, in std deviations
    bool cross_check = false;            // evaluate both rules and compare

    void validate() const {
        if (nodes < 64) throw DomainError("QuadratureSpec: nodes must be >= 64");
        if (truncation_halfwidth < 8.0)
            throw DomainError("QuadratureSpec: truncation_halfwidth must be >= 8");
    }
};

struct GaussHermiteTable {
    std::vector<double> nodes;    // roots of H_n
    std::vector<double> weights;  // weights for integral f(x) e^{-x^2} dx
};

/// Golub-Welsch on the Hermite Jacobi matrix (off-diagonals sqrt(j/2)).
inline const GaussHermiteTable& gauss_hermite_table(int n) {
    static std::mutex mu;
    static std::map<int, GaussHermiteTable> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int j = 1; j < n; ++j) {
        const double b = std::sqrt(j / 2.0);
        J(j, j - 1) = b;
        J(j - 1, j) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    GaussHermiteTable t;
    t.nodes.resize(n);
    t.weights.resize(n);
    const double mu0 = std::sqrt(M_PI);  // int e^{-x^2} dx
    for (int i = 0; i < n; ++i) {
        t.nodes[i] = es.eigenvalues()(i);
        const double v0 = es.eigenvectors()(0, i);
        t.weights[i] = mu0 * v0 * v0;
    }
    return cache.emplace(n, std::move(t)).first->second;
}

/// Integral of f(z) phi(z - center) dz over the real line, phi standard normal.
template <class F>
double gauss_hermite_gaussian(F&& f, double center, int nodes) {
    const auto& t = gauss_hermite_table(nodes);
    constexpr double sqrt2 = 1.4142135623730951;
    KahanSum s;
    for (int i = 0; i < nodes; ++i) s.add(t.weights[i] * f(center + sqrt2 * t.nodes[i]));
    return s.value() / std::sqrt(M_PI);
}

namespace detail {

template <class F>
double adaptive_simpson_rec(F& f, double a, double b, double fa, double fm, double fb,
                            double whole, double eps, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

}  // namespace detail

template <class F>
double adaptive_simpson(F&& f, double a, double b, double eps = 1e-12, int max_depth = 48) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, eps, max_depth);
}

}  // namespace robustbeliefs
