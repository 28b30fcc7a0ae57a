#pragma once

#include <cmath>
#include <functional>

#include "robustbeliefs/common.hpp"

namespace robustbeliefs {

/// Bisection for f with f(lo), f(hi) of opposite sign. Returns the midpoint of
/// the final bracket. Throws NoBracket when the endpoint signs agree.
template <class F>
double bisect(F&& f, double lo, double hi, double xtol = 1e-13, int max_iter = 200) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) throw NoBracket("bisect: no sign change on bracket");
    for (int it = 0; it < max_iter && hi - lo > xtol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

struct MaxResult {
    double x = 0.0;
    double value = 0.0;
};

/// Golden-section search for a maximum of a unimodal f on [lo, hi].
template <class F>
MaxResult golden_section_max(F&& f, double lo, double hi, double xtol = 1e-12) {
    constexpr double gr = 0.6180339887498949;  // (sqrt(5)-1)/2
    double c = hi - gr * (hi - lo);
    double d = lo + gr * (hi - lo);
    double fc = f(c);
    double fd = f(d);
    while (hi - lo > xtol) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (hi - lo);
            fd = f(d);
        }
    }
    const double x = 0.5 * (lo + hi);
    return {x, f(x)};
}

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Ordinary least squares y ~ slope*x + intercept.
inline LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t m = x.size();
    if (m < 2 || y.size() != m) throw RangeError("least_squares: need >=2 matched points");
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw DegenerateFit("least_squares: x has zero variance");
    LinearFit out;
    out.slope = sxy / sxx;
    out.intercept = my - out.slope * mx;
    out.r_squared = (syy == 0.0) ? 1.0 : (sxy * sxy) / (sxx * syy);
    return out;
}

}  // namespace robustbeliefs
