#include "spantree/poisson.hpp"

#include <cmath>
#include <stdexcept>

#include "spantree/errors.hpp"
#include "spantree/parallel.hpp"
#include "spantree/rng.hpp"
#include "spantree/tree_sample.hpp"

namespace spantree {

void EmpiricalDist::record(std::int64_t outcome, std::uint64_t times) {
    counts[outcome] += times;
    trials += times;
}

void EmpiricalDist::merge(const EmpiricalDist& other) {
    for (const auto& [outcome, c] : other.counts) counts[outcome] += c;
    trials += other.trials;
}

double EmpiricalDist::pmf(std::int64_t a) const {
    if (trials == 0) throw std::invalid_argument("EmpiricalDist: empty");
    const auto it = counts.find(a);
    return it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(trials);
}

double EmpiricalDist::standard_error(std::int64_t a) const {
    const double p = pmf(a);
    return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

double EmpiricalDist::mean() const {
    if (trials == 0) throw std::invalid_argument("EmpiricalDist: empty");
    double acc = 0.0;
    for (const auto& [outcome, c] : counts)
        acc += static_cast<double>(outcome) * static_cast<double>(c);
    return acc / static_cast<double>(trials);
}

std::int64_t EmpiricalDist::max_outcome() const {
    return counts.empty() ? -1 : counts.rbegin()->first;
}

PoissonParams::PoissonParams(double lambda_) : lambda(lambda_) {
    if (!(lambda >= 0.0)) throw std::invalid_argument("PoissonParams: negative lambda");
}

AlphaRegime::AlphaRegime(double alpha, int n, int k) : alpha_(alpha), n_(n), k_(k) {
    if (!(alpha > 0.0 && alpha < 1.0 / 11.0))
        throw std::invalid_argument("AlphaRegime: alpha outside (0, 1/11)");
    if (n < 1 || k < 1) throw std::invalid_argument("AlphaRegime: n and k must be >= 1");
}

double AlphaRegime::a_threshold() const {
    return std::pow(static_cast<double>(n_), 3.0 * alpha_);
}

bool AlphaRegime::a_within(std::int64_t a) const {
    return static_cast<double>(a) <= a_threshold();
}

bool AlphaRegime::k_within(double c) const {
    return static_cast<double>(k_) <= c * std::pow(static_cast<double>(n_), alpha_);
}

double AlphaRegime::suggested_slack(double c) const {
    return c * std::pow(static_cast<double>(n_), 11.0 * alpha_ - 1.0);
}

namespace {

// Counts distinct edges across k sampled trees with a reusable stamp table;
// avoids building and sorting an explicit union per trial.
class UnionScratch {
public:
    explicit UnionScratch(const Graph& g)
        : stamp_(static_cast<std::size_t>(g.pair_count()), 0) {}

    std::int64_t distinct(const Graph& g, const std::vector<UniformTree>& trees) {
        ++epoch_;
        std::int64_t distinct_count = 0;
        for (const UniformTree& t : trees) {
            for (const Edge& e : t.edges) {
                auto& s = stamp_[static_cast<std::size_t>(g.pair_index(e.a, e.b))];
                if (s != epoch_) {
                    s = epoch_;
                    ++distinct_count;
                }
            }
        }
        return distinct_count;
    }

private:
    std::vector<std::uint64_t> stamp_;
    std::uint64_t epoch_ = 0;
};

std::int64_t sample_mn_with_scratch(const Graph& g, int k, std::uint64_t seed, UnionScratch& scratch) {
    std::vector<UniformTree> trees;
    trees.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        trees.push_back(detail::wilson_sample_unchecked(g, derive_seed(seed, static_cast<std::uint64_t>(i))));
    const std::int64_t union_edges = scratch.distinct(g, trees);
    return static_cast<std::int64_t>(k) * (g.vertex_count() - 1) - union_edges;
}

}  // namespace

std::int64_t sample_mn(const Graph& g, int k, std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("sample_mn: k must be >= 1");
    if (!is_connected(g)) throw DisconnectedError("sample_mn: graph disconnected");
    UnionScratch scratch(g);
    return sample_mn_with_scratch(g, k, seed, scratch);
}

std::vector<EmpiricalDist> mn_distribution_shards(const Graph& g, int k, std::uint64_t trials,
                                                  std::uint64_t seed, int shards) {
    if (k < 1) throw std::invalid_argument("mn_distribution: k must be >= 1");
    if (trials < 1) throw std::invalid_argument("mn_distribution: trials must be >= 1");
    if (shards < 1) throw std::invalid_argument("mn_distribution: shards must be >= 1");
    if (!is_connected(g)) throw DisconnectedError("mn_distribution: graph disconnected");

    // Trial t draws from the sub-seed of (seed, t) no matter which shard runs
    // it, so the outcome multiset is invariant under the shard count.
    std::vector<EmpiricalDist> parts(static_cast<std::size_t>(shards));
    run_sharded(trials, shards, [&](int shard, std::uint64_t begin, std::uint64_t end) {
        UnionScratch scratch(g);
        EmpiricalDist local;
        for (std::uint64_t t = begin; t < end; ++t)
            local.record(sample_mn_with_scratch(g, k, derive_seed(seed, t), scratch));
        parts[static_cast<std::size_t>(shard)] = std::move(local);
    });
    return parts;
}

EmpiricalDist mn_distribution(const Graph& g, int k, std::uint64_t trials, std::uint64_t seed,
                              int shards) {
    EmpiricalDist total;
    for (const EmpiricalDist& part : mn_distribution_shards(g, k, trials, seed, shards))
        total.merge(part);
    return total;
}

double poisson_pmf(const PoissonParams& params, std::int64_t t) {
    if (t < 0) throw std::invalid_argument("poisson_pmf: negative outcome");
    if (params.lambda == 0.0) return t == 0 ? 1.0 : 0.0;
    const double td = static_cast<double>(t);
    return std::exp(-params.lambda + td * std::log(params.lambda) - std::lgamma(td + 1.0));
}

double tv_distance(const EmpiricalDist& emp, const PoissonParams& params) {
    if (emp.trials == 0) throw std::invalid_argument("tv_distance: empty empirical distribution");

    // Truncate where the Poisson tail drops below 1e-12; what little Poisson
    // mass remains joins the sum as-is, as does all empirical mass beyond.
    constexpr double kTailTol = 1e-12;
    std::int64_t cutoff = 0;
    double cumulative = 0.0;
    while (true) {
        cumulative += poisson_pmf(params, cutoff);
        if (1.0 - cumulative < kTailTol) break;
        ++cutoff;
    }

    double l1 = 0.0;
    for (std::int64_t a = 0; a <= cutoff; ++a)
        l1 += std::abs(emp.pmf(a) - poisson_pmf(params, a));
    l1 += std::max(0.0, 1.0 - cumulative);  // Poisson tail
    for (const auto& [outcome, c] : emp.counts)
        if (outcome > cutoff) l1 += static_cast<double>(c) / static_cast<double>(emp.trials);
    return 0.5 * l1;
}

double overlap_pmf_bound(int k, std::int64_t a) {
    if (k < 1) throw std::invalid_argument("overlap_pmf_bound: k must be >= 1");
    if (a < 0) throw std::invalid_argument("overlap_pmf_bound: negative a");
    if (a == 0) return 1.0;
    const double lambda = static_cast<double>(k) * (static_cast<double>(k) - 1.0);
    if (lambda == 0.0) return 0.0;
    const double ad = static_cast<double>(a);
    return std::exp(ad * std::log(lambda) - std::lgamma(ad + 1.0));
}

double overlap_pmf_refined_bound(const AlphaRegime& regime, std::int64_t a, double slack) {
    if (a < 0) throw std::invalid_argument("overlap_pmf_refined_bound: negative a");
    if (!(slack >= 0.0)) throw std::invalid_argument("overlap_pmf_refined_bound: negative slack");
    if (!regime.a_within(a))
        throw OutOfRegimeError("overlap_pmf_refined_bound: a exceeds n^(3 alpha)");
    const double lambda = static_cast<double>(regime.k()) * (static_cast<double>(regime.k()) - 1.0);
    return (1.0 + slack) * poisson_pmf(PoissonParams(lambda), a);
}

}  // namespace spantree
