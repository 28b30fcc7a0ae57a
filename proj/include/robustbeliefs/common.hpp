#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <initializer_list>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace robustbeliefs {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : Error { using Error::Error; };
struct RangeError : Error { using Error::Error; };
struct NoBracket : Error { using Error::Error; };
struct NotSquareFree : Error { using Error::Error; };
struct QuadratureDisagreement : Error { using Error::Error; };
struct DegenerateDensity : Error { using Error::Error; };
struct DegenerateFit : Error { using Error::Error; };
struct SizeLimit : Error { using Error::Error; };
struct SimplexViolation : Error { using Error::Error; };
struct ImpossibleEvent : Error { using Error::Error; };
struct ShapeViolation : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// log(1 + e^x) without overflow.
inline double softplus(double x) {
    if (x > 36.0) return x + std::log1p(std::exp(-x));
    return std::log1p(std::exp(x));
}

/// Logistic 1/(1+e^{-x}), exact complement available via logistic(-x).
inline double logistic(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

inline double log_sum_exp(const double* v, std::size_t n) {
    double m = -kInf;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, v[i]);
    if (!std::isfinite(m)) return m;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::exp(v[i] - m);
    return m + std::log(s);
}

inline double log_sum_exp(std::initializer_list<double> v) {
    return log_sum_exp(v.begin(), v.size());
}

/// log|e^a - e^b|; -inf when a == b.
inline double log_diff_exp(double a, double b) {
    if (a == b) return -kInf;
    const double hi = std::max(a, b), lo = std::min(a, b);
    return hi + std::log1p(-std::exp(lo - hi));
}

/// Compensated (Kahan) accumulator for long probability-weighted sums.
class KahanSum {
  public:
    void add(double x) {
        const double y = x - comp_;
        const double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// log C(n,k) + k log p + (n-k) log(1-p)
inline double log_binom_pmf(int n, double p, int k) {
    if (k < 0 || k > n) throw RangeError("binomial count out of [0,n]");
    double lp = (k == 0) ? 0.0 : k * std::log(p);
    double lq = (k == n) ? 0.0 : (n - k) * std::log1p(-p);
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) + lp + lq;
}

inline unsigned worker_count() {
    if (const char* env = std::getenv("ROBUST_BELIEFS_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : std::min(hw, 8u);
}

/// Slot-parallel map: body(i) writes only to slot i, so scheduling cannot
/// change results. Falls back to a serial loop for small ranges.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    const unsigned workers = worker_count();
    if (workers <= 1 || count < 4) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    const unsigned used = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    pool.reserve(used);
    for (unsigned t = 0; t < used; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < count; i += used) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

/// splitmix64; used to derive reproducible per-stream seeds.
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + stream * 0x9E3779B97F4A7C15ull + 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace robustbeliefs
