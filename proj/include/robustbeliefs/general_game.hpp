#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <utility>
#include <vector>

#include "robustbeliefs/bregman.hpp"
#include "robustbeliefs/common.hpp"

namespace robustbeliefs {

using Distribution = std::vector<double>;

inline void validate_distribution(const Distribution& d) {
    if (d.size() < 2) throw DomainError("distribution needs |S| >= 2");
    double sum = 0.0;
    for (double p : d) {
        if (p < 0.0) throw SimplexViolation("distribution has a negative entry");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw SimplexViolation("distribution does not sum to 1");
}

/// Experiment (pi1, pi0): per-state signal distributions over a shared finite
/// signal set.
struct MultinomialExperiment {
    Distribution pi1;
    Distribution pi0;

    MultinomialExperiment(Distribution p1, Distribution p0)
        : pi1(std::move(p1)), pi0(std::move(p0)) {
        validate_distribution(pi1);
        validate_distribution(pi0);
        if (pi1.size() != pi0.size())
            throw DomainError("experiment: state distributions need a common signal set");
    }

    std::size_t signals() const { return pi1.size(); }
    bool uninformative() const {
        for (std::size_t s = 0; s < pi1.size(); ++s)
            if (pi1[s] != pi0[s]) return false;
        return true;
    }
};

struct GeneralMixture {
    std::vector<MultinomialExperiment> support;
    std::vector<double> weights;
    double prior_mu = 0.5;

    void validate() const {
        if (support.empty() || support.size() != weights.size())
            throw DomainError("general mixture: support/weights mismatch");
        double sum = 0.0;
        for (double w : weights) {
            if (w < 0.0) throw DomainError("general mixture: negative weight");
            sum += w;
        }
        if (std::abs(sum - 1.0) > 1e-12) throw DomainError("general mixture: weights must sum to 1");
        if (!(prior_mu > 0.0 && prior_mu < 1.0))
            throw DomainError("general mixture: prior must be interior");
        for (std::size_t i = 1; i < support.size(); ++i)
            if (support[i].signals() != support[0].signals())
                throw DomainError("general mixture: signal sets differ");
    }
};

struct CountVector {
    std::vector<int> counts;

    int total() const {
        int t = 0;
        for (int c : counts) t += c;
        return t;
    }
};

inline double kl_divergence(const Distribution& p, const Distribution& q) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0.0) continue;
        if (q[i] == 0.0) return kInf;
        s += p[i] * (std::log(p[i]) - std::log(q[i]));
    }
    return s;
}

/// Identification check: every state's own signal distribution must be weakly
/// KL-closer than any rival assignment, and the feasible set must contain a
/// unique uninformative experiment.
inline void validate_identification(const std::vector<MultinomialExperiment>& support) {
    int uninformative = 0;
    for (const auto& e : support)
        if (e.uninformative()) ++uninformative;
    if (uninformative != 1)
        throw DomainError("experiment set must contain exactly one uninformative experiment");
    for (const auto& a : support) {
        for (const auto& b : support) {
            if (kl_divergence(a.pi1, b.pi1) > kl_divergence(a.pi1, b.pi0) + 1e-12 ||
                kl_divergence(a.pi0, b.pi0) > kl_divergence(a.pi0, b.pi1) + 1e-12)
                throw DomainError("experiment set violates the KL identification inequalities");
        }
    }
}

/// Multinomial log-likelihood kernel sum_s K_s log dist(s); the combinatorial
/// factor cancels in posteriors and is added separately for marginals.
/// Returns -inf on support violations.
inline double log_multinomial_likelihood(const Distribution& dist, const CountVector& counts) {
    if (counts.counts.size() != dist.size())
        throw RangeError("log_multinomial_likelihood: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        const int k = counts.counts[i];
        if (k < 0) throw RangeError("log_multinomial_likelihood: negative count");
        if (k == 0) continue;
        if (dist[i] <= 0.0) return -kInf;
        s += k * std::log(dist[i]);
    }
    return s;
}

inline double log_multinomial_coefficient(const CountVector& counts) {
    double s = std::lgamma(counts.total() + 1.0);
    for (int k : counts.counts) s -= std::lgamma(k + 1.0);
    return s;
}

/// Oracle posterior q = mu l(pi1;K) / (mu l(pi1;K) + (1-mu) l(pi0;K)).
inline double oracle_posterior_general(const CountVector& counts,
                                       const MultinomialExperiment& exp, double mu) {
    const double l1 = log_multinomial_likelihood(exp.pi1, counts);
    const double l0 = log_multinomial_likelihood(exp.pi0, counts);
    if (l1 == -kInf && l0 == -kInf)
        throw ImpossibleEvent("oracle_posterior_general: zero likelihood in both states");
    if (l1 == -kInf) return 0.0;
    if (l0 == -kInf) return 1.0;
    return logistic(std::log(mu) - std::log1p(-mu) + l1 - l0);
}

/// Immutable DM rule: the sigma-mixture Bayes posterior per count vector,
/// independent of the Bregman generator.
class GeneralRule {
  public:
    GeneralRule(GeneralMixture mix, int n)
        : mix_(std::make_shared<GeneralMixture>(std::move(mix))), n_(n) {
        mix_->validate();
    }

    double operator()(const CountVector& counts) const {
        const std::size_t m = mix_->support.size();
        std::vector<double> t1(m, -kInf), t0(m, -kInf);
        double lmax = -kInf;
        for (std::size_t i = 0; i < m; ++i) {
            if (mix_->weights[i] == 0.0) continue;
            const auto& e = mix_->support[i];
            const double lw = std::log(mix_->weights[i]);
            const double l1 = log_multinomial_likelihood(e.pi1, counts);
            const double l0 = log_multinomial_likelihood(e.pi0, counts);
            if (l1 > -kInf) t1[i] = lw + std::log(mix_->prior_mu) + l1;
            if (l0 > -kInf) t0[i] = lw + std::log1p(-mix_->prior_mu) + l0;
            lmax = std::max({lmax, t1[i], t0[i]});
        }
        if (lmax == -kInf) return 0.5;  // unreachable count, symmetry convention
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double e1 = (t1[i] > -kInf) ? std::exp(t1[i] - lmax) : 0.0;
            const double e0 = (t0[i] > -kInf) ? std::exp(t0[i] - lmax) : 0.0;
            num += e1;
            den += e1 + e0;
        }
        return num / den;
    }

    const GeneralMixture& mixture() const { return *mix_; }
    int sample_size() const { return n_; }

  private:
    std::shared_ptr<const GeneralMixture> mix_;
    int n_;
};

inline GeneralRule dm_rule_general(GeneralMixture mix, int n) {
    return GeneralRule(std::move(mix), n);
}

template <class F>
void for_each_count_vector(int n, int signals, F&& body) {
    CountVector k;
    k.counts.assign(signals, 0);
    const std::function<void(int, int)> rec = [&](int slot, int remaining) {
        if (slot == signals - 1) {
            k.counts[slot] = remaining;
            body(k);
            return;
        }
        for (int c = 0; c <= remaining; ++c) {
            k.counts[slot] = c;
            rec(slot + 1, remaining - c);
        }
    };
    rec(0, n);
}

enum class RegretMode { exact, monte_carlo, auto_select };

struct RegretEstimate {
    double value = 0.0;
    double std_error = 0.0;
    long samples = 0;  // 0 for the exact mode
};

inline constexpr int kExactEnumSignalLimit = 4;
inline constexpr int kExactEnumSampleLimit = 200;

/// Ex-ante regret E[B_G(q_oracle || a(K))] under the mixture. Exact mode fully
/// enumerates count vectors (feasible for |S| <= 4, n <= 200); Monte Carlo is
/// unbiased and reproducible from the seed.
template <class Rule>
RegretEstimate general_regret(const GeneralMixture& mix, const Rule& rule, int n,
                              const BregmanGenerator& G, RegretMode mode = RegretMode::auto_select,
                              long mc_samples = 200000, std::uint64_t seed = 0) {
    mix.validate();
    const int S = static_cast<int>(mix.support[0].signals());
    const bool exact_ok = (S <= kExactEnumSignalLimit && n <= kExactEnumSampleLimit);
    if (mode == RegretMode::exact && !exact_ok)
        throw SizeLimit("general_regret: instance too large for exact enumeration; use MC");
    const bool exact = (mode == RegretMode::exact) || (mode == RegretMode::auto_select && exact_ok);

    if (exact) {
        KahanSum total;
        for_each_count_vector(n, S, [&](const CountVector& counts) {
            const double a = rule(counts);
            const double lc = log_multinomial_coefficient(counts);
            for (std::size_t i = 0; i < mix.support.size(); ++i) {
                if (mix.weights[i] == 0.0) continue;
                const auto& e = mix.support[i];
                const double l1 = log_multinomial_likelihood(e.pi1, counts);
                const double l0 = log_multinomial_likelihood(e.pi0, counts);
                if (l1 == -kInf && l0 == -kInf) continue;
                const double m1 = (l1 > -kInf) ? mix.prior_mu * std::exp(lc + l1) : 0.0;
                const double m0 = (l0 > -kInf) ? (1.0 - mix.prior_mu) * std::exp(lc + l0) : 0.0;
                const double q = oracle_posterior_general(counts, e, mix.prior_mu);
                const double d = divergence(G, q, a);
                if (std::isinf(d)) {
                    if (m1 + m0 > 0.0)
                        throw DomainError("general_regret: infinite divergence with positive mass");
                    continue;
                }
                total.add(mix.weights[i] * (m1 + m0) * d);
            }
        });
        return {total.value(), 0.0, 0};
    }

    // Monte Carlo: per-block substreams so estimates are reproducible and
    // parallel-splittable.
    std::mt19937_64 gen(split_seed(seed, 0x6d63u));
    std::discrete_distribution<int> pick(mix.weights.begin(), mix.weights.end());
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    KahanSum sum, sumsq;
    for (long t = 0; t < mc_samples; ++t) {
        const int i = pick(gen);
        const auto& e = mix.support[i];
        const bool theta1 = unif(gen) < mix.prior_mu;
        const Distribution& dist = theta1 ? e.pi1 : e.pi0;
        CountVector counts;
        counts.counts.assign(S, 0);
        for (int draw = 0; draw < n; ++draw) {
            double u = unif(gen);
            int s = 0;
            while (s + 1 < S && u >= dist[s]) {
                u -= dist[s];
                ++s;
            }
            ++counts.counts[s];
        }
        const double q = oracle_posterior_general(counts, e, mix.prior_mu);
        const double d = divergence(G, q, rule(counts));
        if (std::isinf(d)) throw DomainError("general_regret: infinite divergence sampled");
        sum.add(d);
        sumsq.add(d * d);
    }
    const double mean = sum.value() / static_cast<double>(mc_samples);
    const double var =
        std::max(0.0, sumsq.value() / static_cast<double>(mc_samples) - mean * mean);
    return {mean, std::sqrt(var / static_cast<double>(mc_samples)), mc_samples};
}

/// Nature's local two-point construction: {(pi0, pi0) w.p. 1/2,
/// (pi0 + delta_n, pi0 - delta_n) w.p. 1/2} with delta_n = (c/2) n^{-alpha} d.
/// Returns the per-n mixtures used by the rate experiment.
inline GeneralMixture local_two_point_mixture(const Distribution& base,
                                              const std::vector<double>& direction, double c,
                                              double alpha, int n, double mu) {
    validate_distribution(base);
    if (direction.size() != base.size())
        throw RangeError("local mixture: direction dimension mismatch");
    double dsum = 0.0;
    for (double d : direction) dsum += d;
    if (std::abs(dsum) > 1e-12) throw DomainError("local mixture: direction must sum to 0");
    const double scale = 0.5 * c * std::pow(static_cast<double>(n), -alpha);
    Distribution p1(base.size()), p0(base.size());
    for (std::size_t s = 0; s < base.size(); ++s) {
        p1[s] = base[s] + scale * direction[s];
        p0[s] = base[s] - scale * direction[s];
        if (p1[s] < 0.0 || p1[s] > 1.0 || p0[s] < 0.0 || p0[s] > 1.0)
            throw SimplexViolation("local mixture: perturbation leaves the simplex");
    }
    GeneralMixture mix;
    mix.support.push_back(MultinomialExperiment(base, base));
    mix.support.push_back(MultinomialExperiment(p1, p0));
    mix.weights = {0.5, 0.5};
    mix.prior_mu = mu;
    return mix;
}

struct RatePoint {
    int n = 0;
    RegretEstimate regret;
};

/// Regret of the DM's best reply to the local construction along n_list. The
/// constant c is clipped just enough to keep the smallest-n perturbation in
/// the simplex.
inline std::vector<RatePoint> rate_experiment(const Distribution& base,
                                              const std::vector<double>& direction, double c,
                                              double alpha, const std::vector<int>& n_list,
                                              const BregmanGenerator& G, double mu,
                                              std::uint64_t seed = 0) {
    if (n_list.empty()) throw RangeError("rate_experiment: empty n list");
    int n_min = n_list[0];
    for (int n : n_list) n_min = std::min(n_min, n);
    // clip c so base +- (c/2) n_min^{-alpha} d stays inside the simplex
    double limit = kInf;
    const double scale0 = 0.5 * std::pow(static_cast<double>(n_min), -alpha);
    for (std::size_t s = 0; s < base.size(); ++s) {
        if (direction[s] == 0.0) continue;
        const double room = (direction[s] > 0.0) ? std::min(1.0 - base[s], base[s])
                                                 : std::min(base[s], 1.0 - base[s]);
        limit = std::min(limit, room / (scale0 * std::abs(direction[s])));
    }
    const double c_used = std::min(c, 0.999 * limit);

    std::vector<RatePoint> out(n_list.size());
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        const int n = n_list[i];
        GeneralMixture mix = local_two_point_mixture(base, direction, c_used, alpha, n, mu);
        validate_identification(mix.support);
        const GeneralRule rule = dm_rule_general(mix, n);
        out[i] = {n, general_regret(mix, rule, n, G, RegretMode::auto_select, 200000,
                                    split_seed(seed, static_cast<std::uint64_t>(n)))};
    }
    return out;
}

struct LemmaChecks {
    double llr_mc_mean = 0.0;        // MC mean of (1/n) log L(pi1)/L(pi0)
    double llr_mc_se = 0.0;
    double llr_target = 0.0;         // D(pi_true||pi0) - D(pi_true||pi1)
    std::vector<double> quad_eps;    // perturbation sizes
    std::vector<double> quad_ratio;  // |KL - quadratic| / ||.||_1^3
};

/// Desk-scale verification of the two supporting lemmas: concentration of the
/// normalized log-likelihood ratio, and the local quadratic expansion of the
/// multinomial KL divergence.
inline LemmaChecks lemma_checks(const MultinomialExperiment& exp, const Distribution& pi_true,
                                int n, long samples, std::uint64_t seed = 0) {
    validate_distribution(pi_true);
    if (samples < 10000) throw RangeError("lemma_checks: need >= 1e4 samples");
    LemmaChecks out;
    out.llr_target = kl_divergence(pi_true, exp.pi0) - kl_divergence(pi_true, exp.pi1);

    std::mt19937_64 gen(split_seed(seed, 0x11f2u));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const std::size_t S = pi_true.size();
    std::vector<double> log_ratio(S, 0.0);
    for (std::size_t s = 0; s < S; ++s) {
        if (exp.pi1[s] > 0.0 && exp.pi0[s] > 0.0)
            log_ratio[s] = std::log(exp.pi1[s]) - std::log(exp.pi0[s]);
    }
    KahanSum sum, sumsq;
    for (long t = 0; t < samples; ++t) {
        double llr = 0.0;
        for (int draw = 0; draw < n; ++draw) {
            double u = unif(gen);
            std::size_t s = 0;
            while (s + 1 < S && u >= pi_true[s]) {
                u -= pi_true[s];
                ++s;
            }
            llr += log_ratio[s];
        }
        llr /= static_cast<double>(n);
        sum.add(llr);
        sumsq.add(llr * llr);
    }
    out.llr_mc_mean = sum.value() / static_cast<double>(samples);
    const double var =
        std::max(0.0, sumsq.value() / static_cast<double>(samples) - out.llr_mc_mean * out.llr_mc_mean);
    out.llr_mc_se = std::sqrt(var / static_cast<double>(samples));

    // quadratic expansion along the experiment's own displacement direction
    std::vector<double> dir(S);
    bool informative = false;
    for (std::size_t s = 0; s < S; ++s) {
        dir[s] = exp.pi1[s] - exp.pi0[s];
        if (dir[s] != 0.0) informative = true;
    }
    if (!informative) {
        dir.assign(S, -1.0 / static_cast<double>(S - 1));
        dir[0] = 1.0;
    }
    for (double eps : {0.02, 0.01, 0.005}) {
        Distribution p(S);
        double l1 = 0.0;
        bool ok = true;
        for (std::size_t s = 0; s < S; ++s) {
            p[s] = pi_true[s] + eps * dir[s];
            l1 += std::abs(p[s] - pi_true[s]);
            if (p[s] <= 0.0 || p[s] >= 1.0) ok = false;
        }
        if (!ok || l1 == 0.0) continue;
        const double kl = kl_divergence(pi_true, p);
        double quad = 0.0;
        for (std::size_t s = 0; s < S; ++s)
            quad += 0.5 * (p[s] - pi_true[s]) * (p[s] - pi_true[s]) / pi_true[s];
        out.quad_eps.push_back(eps);
        out.quad_ratio.push_back(std::abs(kl - quad) / (l1 * l1 * l1));
    }
    return out;
}

}  // namespace robustbeliefs
