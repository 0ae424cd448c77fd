#include "spantree/moments.hpp"

#include <cmath>
#include <stdexcept>

#include "spantree/errors.hpp"
#include "spantree/parallel.hpp"
#include "spantree/rng.hpp"
#include "spantree/tree_count.hpp"

namespace spantree {

GnmParams::GnmParams(int n_, std::int64_t m_, double delta_) : n(n_), m(m_), delta(delta_) {
    if (n < 1) throw std::invalid_argument("GnmParams: n must be >= 1");
    if (m < 0 || m > pair_total()) throw std::invalid_argument("GnmParams: m out of range");
    if (!(delta > 0.0 && delta < 0.5)) throw std::invalid_argument("GnmParams: delta outside (0, 1/2)");
}

std::int64_t GnmParams::pair_total() const noexcept {
    return static_cast<std::int64_t>(n) * (n - 1) / 2;
}

double GnmParams::p_m() const noexcept {
    return static_cast<double>(m) / static_cast<double>(pair_total());
}

bool GnmParams::in_concentration_regime() const noexcept {
    const double n2 = static_cast<double>(n) * static_cast<double>(n);
    const double md = static_cast<double>(m);
    return md >= delta * n2 && md <= (1.0 - delta) * n2;
}

LogValue falling_factorial_log(std::int64_t N, std::int64_t l) {
    if (N < 1) throw std::invalid_argument("falling_factorial_log: N must be >= 1");
    if (l < 0 || l > N) throw std::invalid_argument("falling_factorial_log: l outside [0, N]");
    double acc = 0.0;
    for (std::int64_t i = 0; i < l; ++i) acc += std::log(static_cast<double>(N - i));
    return LogValue::from_log(acc);
}

LogValue falling_factorial_estimate(std::int64_t N, std::int64_t l, double regime_slack) {
    if (N < 1) throw std::invalid_argument("falling_factorial_estimate: N must be >= 1");
    if (l < 0) throw std::invalid_argument("falling_factorial_estimate: negative l");
    const double Nd = static_cast<double>(N), ld = static_cast<double>(l);
    if (ld * ld * ld > regime_slack * Nd * Nd)
        throw OutOfRegimeError("falling_factorial_estimate: l^3 exceeds N^2");
    return LogValue::from_log(ld * std::log(Nd) - ld * (ld - 1.0) / (2.0 * Nd));
}

LogValue expected_count_gnm(const GnmParams& params) {
    const std::int64_t l = params.n - 1;
    if (params.m < l) return LogValue::zero();  // too few edges for any tree
    return LogValue::from_log(cayley_log_count(params.n).log() +
                              falling_factorial_log(params.m, l).log() -
                              falling_factorial_log(params.pair_total(), l).log());
}

LogValue expected_count_gnm_asymptotic(const GnmParams& params) {
    const double p = params.p_m();
    if (!(p > 0.0)) throw std::invalid_argument("expected_count_gnm_asymptotic: p_m must be positive");
    const double nd = static_cast<double>(params.n);
    return LogValue::from_log(cayley_log_count(params.n).log() + (nd - 1.0) * std::log(p) -
                              (1.0 - p) / p);
}

LogValue kth_moment_via_ma(const GnmParams& params, int k, const EmpiricalDist& mn_dist) {
    if (k < 1) throw std::invalid_argument("kth_moment_via_ma: k must be >= 1");
    if (mn_dist.trials == 0) throw std::invalid_argument("kth_moment_via_ma: empty distribution");
    const std::int64_t total = params.pair_total();
    std::vector<double> terms;
    terms.reserve(mn_dist.counts.size());
    for (const auto& [a, count] : mn_dist.counts) {
        const std::int64_t j = static_cast<std::int64_t>(params.n - 1) * k - a;
        if (j < 0 || j > params.m || j > total) continue;  // prefactor vanishes
        const double log_p = std::log(static_cast<double>(count) / static_cast<double>(mn_dist.trials));
        terms.push_back(log_p + falling_factorial_log(params.m, j).log() -
                        falling_factorial_log(total, j).log());
    }
    if (terms.empty()) return LogValue::zero();
    const double k_log_n = static_cast<double>(k) * cayley_log_count(params.n).log();
    return LogValue::from_log(k_log_n + log_sum_exp(terms));
}

double kth_moment_via_ma_se(const GnmParams& params, int k,
                            std::span<const EmpiricalDist> shard_dists) {
    const std::size_t s = shard_dists.size();
    if (s < 2) throw std::invalid_argument("kth_moment_via_ma_se: need >= 2 shards");
    EmpiricalDist merged;
    for (const EmpiricalDist& d : shard_dists) merged.merge(d);

    // Leave-one-shard-out estimates, in log units.
    std::vector<double> loo;
    loo.reserve(s);
    for (const EmpiricalDist& d : shard_dists) {
        EmpiricalDist rest = merged;
        rest.trials -= d.trials;
        for (const auto& [a, c] : d.counts) {
            rest.counts[a] -= c;
            if (rest.counts[a] == 0) rest.counts.erase(a);
        }
        loo.push_back(kth_moment_via_ma(params, k, rest).log());
    }
    double mean = 0.0;
    for (double v : loo) mean += v;
    mean /= static_cast<double>(s);
    double ss = 0.0;
    for (double v : loo) ss += (v - mean) * (v - mean);
    return std::sqrt(ss * (static_cast<double>(s) - 1.0) / static_cast<double>(s));
}

std::vector<double> sample_log_counts_gnm(const GnmParams& params, std::uint64_t trials,
                                          std::uint64_t seed, int shards) {
    if (trials < 1) throw std::invalid_argument("sample_log_counts_gnm: trials must be >= 1");
    std::vector<double> logs(trials);
    run_sharded(trials, shards, [&](int, std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t t = begin; t < end; ++t) {
            const Graph g = gen_gnm(params.n, params.m, derive_seed(seed, t));
            logs[t] = matrix_tree_log_count(g).log();  // -inf when disconnected
        }
    });
    return logs;
}

LogValue kth_moment_from_logs(std::span<const double> log_counts, int k) {
    if (log_counts.empty()) throw std::invalid_argument("kth_moment_from_logs: empty sample");
    std::vector<double> scaled(log_counts.size());
    for (std::size_t i = 0; i < log_counts.size(); ++i)
        scaled[i] = static_cast<double>(k) * log_counts[i];
    const double lse = log_sum_exp(scaled);
    if (std::isinf(lse) && lse < 0.0) return LogValue::zero();
    return LogValue::from_log(lse - std::log(static_cast<double>(log_counts.size())));
}

double kth_moment_se_log(std::span<const double> log_counts, int k) {
    const auto trials = static_cast<double>(log_counts.size());
    if (trials < 2) throw std::invalid_argument("kth_moment_se_log: need >= 2 trials");
    std::vector<double> m1(log_counts.size()), m2(log_counts.size());
    for (std::size_t i = 0; i < log_counts.size(); ++i) {
        m1[i] = static_cast<double>(k) * log_counts[i];
        m2[i] = 2.0 * static_cast<double>(k) * log_counts[i];
    }
    const double log_mean = log_sum_exp(m1) - std::log(trials);
    const double log_mean_sq = log_sum_exp(m2) - std::log(trials);
    // Var = E[Y^2] - (E Y)^2 in log space, with the sample-size correction.
    const double gap = 2.0 * log_mean - log_mean_sq;  // <= 0 by Cauchy-Schwarz
    if (!(gap < -1e-15)) return 0.0;                  // numerically constant sample
    const double log_var = log_mean_sq + std::log1p(-std::exp(gap)) + std::log(trials / (trials - 1.0));
    // Relative error of the mean = error of the log, by the delta method.
    return std::exp(0.5 * log_var - log_mean - 0.5 * std::log(trials));
}

LogValue kth_moment_direct_mc(const GnmParams& params, int k, std::uint64_t trials,
                              std::uint64_t seed, int shards) {
    if (k < 1) throw std::invalid_argument("kth_moment_direct_mc: k must be >= 1");
    return kth_moment_from_logs(sample_log_counts_gnm(params, trials, seed, shards), k);
}

double moment_ratio_bound_check(const GnmParams& params, int k, const MomentReport& report,
                                bool enforce_regime) {
    if (k < 1) throw std::invalid_argument("moment_ratio_bound_check: k must be >= 1");
    if (!params.in_concentration_regime() && enforce_regime)
        throw OutOfRegimeError("moment_ratio_bound_check: m outside [delta n^2, (1-delta) n^2]");
    const LogValue& estimate = report.direct.is_zero() ? report.via_ma : report.direct;
    if (estimate.is_zero()) throw std::invalid_argument("moment_ratio_bound_check: zero moment estimate");
    const LogValue exact_mean = expected_count_gnm(params);
    if (exact_mean.is_zero()) throw std::invalid_argument("moment_ratio_bound_check: zero exact mean");
    return std::exp((estimate.log() - static_cast<double>(k) * exact_mean.log()) /
                    static_cast<double>(k));
}

double markov_tail_bound(double C, double K, int k) {
    if (!(C > 0.0)) throw std::invalid_argument("markov_tail_bound: C must be positive");
    if (!(K > C)) throw std::invalid_argument("markov_tail_bound: K must exceed C");
    if (k < 1) throw std::invalid_argument("markov_tail_bound: k must be >= 1");
    return std::pow(C / K, static_cast<double>(k));
}

int markov_k(int n) {
    if (n < 2) throw std::invalid_argument("markov_k: n must be >= 2");
    return static_cast<int>(std::ceil(std::log(static_cast<double>(n))));
}

double markov_tail_bound_logn(double t, int n) {
    if (!(t >= 0.0)) throw std::invalid_argument("markov_tail_bound_logn: t must be >= 0");
    if (n < 2) throw std::invalid_argument("markov_tail_bound_logn: n must be >= 2");
    return std::pow(static_cast<double>(n), -t);
}

}  // namespace spantree
