#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "spantree/log_value.hpp"
#include "spantree/poisson.hpp"

namespace spantree {

// Parameters of the G(n, m) model. delta configures the concentration-window
// window delta n^2 <= m <= (1 - delta) n^2.
struct GnmParams {
    int n = 0;
    std::int64_t m = 0;
    double delta = 0.1;

    GnmParams(int n_, std::int64_t m_, double delta_ = 0.1);

    std::int64_t pair_total() const noexcept;  // C(n, 2)
    double p_m() const noexcept;               // m / C(n, 2)
    bool in_concentration_regime() const noexcept;
};

// Dual estimates of E X^k with their standard errors, both in log units.
struct MomentReport {
    int k = 1;
    LogValue via_ma;
    LogValue direct;
    double via_ma_se_log = 0.0;
    double direct_se_log = 0.0;
};

// log (N)_l = log N(N-1)...(N-l+1), exact.
LogValue falling_factorial_log(std::int64_t N, std::int64_t l);

// l log N - l(l-1)/(2N); valid for l = o(N^(2/3)), enforced as
// l^3 <= regime_slack * N^2.
LogValue falling_factorial_estimate(std::int64_t N, std::int64_t l, double regime_slack = 1.0);

// Exact E X_{n,m} = N (m)_{n-1} / (C(n,2))_{n-1}; zero when m < n - 1.
LogValue expected_count_gnm(const GnmParams& params);

// N p_m^(n-1) exp(-(1-p_m)/p_m), the O(1/n)-accurate closed form.
LogValue expected_count_gnm_asymptotic(const GnmParams& params);

// E X^k through the overlap decomposition: N^k sum_a P[M = a] *
// (m)_{(n-1)k-a} / (C(n,2))_{(n-1)k-a}. mn_dist must be the empirical law of
// M for k trees on K_n with this n. Terms whose falling factorial hits zero
// drop out; if every term drops, the estimate is the zero sentinel.
LogValue kth_moment_via_ma(const GnmParams& params, int k, const EmpiricalDist& mn_dist);

// Jackknife standard error (log units) of kth_moment_via_ma across shard
// sub-distributions. The per-a terms share the same samples, so a resampling
// estimate is the honest error bar. Needs >= 2 shards.
double kth_moment_via_ma_se(const GnmParams& params, int k,
                            std::span<const EmpiricalDist> shard_dists);

// Per-trial log spanning-tree counts of G(n, m) samples; -inf marks a
// disconnected draw. Slot t is driven by the sub-seed of (seed, t), so the
// vector does not depend on the shard count.
std::vector<double> sample_log_counts_gnm(const GnmParams& params, std::uint64_t trials,
                                          std::uint64_t seed, int shards = 1);

// Sample mean of X^k from per-trial log counts, reduced in trial order.
LogValue kth_moment_from_logs(std::span<const double> log_counts, int k);
// Relative (= log-unit) standard error of that mean.
double kth_moment_se_log(std::span<const double> log_counts, int k);

// Direct Monte Carlo estimate of E X^k over G(n, m).
LogValue kth_moment_direct_mc(const GnmParams& params, int k, std::uint64_t trials,
                              std::uint64_t seed, int shards = 1);

// Empirical per-k constant C_hat = (E_hat X^k / (E X)^k)^(1/k), using the
// exact first moment. The moment-ratio bound keeps C_hat bounded in k
// inside the regime; enforce_regime picks error vs. proceed on violation.
double moment_ratio_bound_check(const GnmParams& params, int k, const MomentReport& report,
                                bool enforce_regime = true);

// (C/K)^k, the Markov bound on P[X >= K E X] from the k-th moment.
double markov_tail_bound(double C, double K, int k);

// ceil(log n): the moment order used for the n^(-t) tail bound.
int markov_k(int n);

// Convenience form n^(-t), i.e. the bound at K = C e^t and k = log n.
double markov_tail_bound_logn(double t, int n);

}  // namespace spantree
