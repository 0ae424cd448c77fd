#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "spantree/graph.hpp"

namespace spantree {

// Integer-valued empirical pmf with its trial count.
struct EmpiricalDist {
    std::map<std::int64_t, std::uint64_t> counts;
    std::uint64_t trials = 0;

    void record(std::int64_t outcome, std::uint64_t times = 1);
    void merge(const EmpiricalDist& other);

    double pmf(std::int64_t a) const;
    // Normal-approximation half-width sqrt(p(1-p)/trials) of pmf(a).
    double standard_error(std::int64_t a) const;
    double mean() const;
    std::int64_t max_outcome() const;  // -1 when empty
};

struct PoissonParams {
    double lambda = 0.0;
    explicit PoissonParams(double lambda_);
};

// The parameter window of the sharpened pmf bound: alpha in (0, 1/11),
// k = O(n^alpha), and the bound valid for a <= n^(3 alpha).
class AlphaRegime {
public:
    AlphaRegime(double alpha, int n, int k);

    double alpha() const noexcept { return alpha_; }
    int n() const noexcept { return n_; }
    int k() const noexcept { return k_; }

    double a_threshold() const;  // n^(3 alpha)
    bool a_within(std::int64_t a) const;
    bool k_within(double c = 1.0) const;  // k <= c n^alpha

    // c * n^(11 alpha - 1): the rate of the (1 + o(1)) factor. The constant
    // is not pinned down by the analysis, so c is a caller choice.
    double suggested_slack(double c = 1.0) const;

private:
    double alpha_;
    int n_;
    int k_;
};

// One draw of M = k(n-1) - |union of k independent uniform spanning trees|.
std::int64_t sample_mn(const Graph& g, int k, std::uint64_t seed);

// Empirical law of M over `trials` independent replicates. Each trial uses
// the sub-seed derived from (seed, trial index), so the sampled outcomes are
// identical for every shard count; shards only split the index range.
EmpiricalDist mn_distribution(const Graph& g, int k, std::uint64_t trials, std::uint64_t seed,
                              int shards = 1);

// Same sampling, reported per shard (in shard order). Merging the pieces
// reproduces mn_distribution exactly; the split feeds jackknife error bars.
std::vector<EmpiricalDist> mn_distribution_shards(const Graph& g, int k, std::uint64_t trials,
                                                  std::uint64_t seed, int shards);

double poisson_pmf(const PoissonParams& params, std::int64_t t);

// Total variation distance between the empirical law and Po(lambda):
// half the L1 sum, truncated where the Poisson tail mass drops below 1e-12;
// empirical mass beyond the truncation point is added as-is.
double tv_distance(const EmpiricalDist& emp, const PoissonParams& params);

// (k(k-1))^a / a!, an upper bound on P[M = a] for any n. May exceed 1.
double overlap_pmf_bound(int k, std::int64_t a);

// (1 + slack) P[Po(k(k-1)) = a], valid within the regime; throws
// OutOfRegimeError when a exceeds n^(3 alpha).
double overlap_pmf_refined_bound(const AlphaRegime& regime, std::int64_t a, double slack);

}  // namespace spantree
