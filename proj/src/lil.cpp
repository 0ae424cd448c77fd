#include "spantree/lil.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "spantree/parallel.hpp"
#include "spantree/rng.hpp"
#include "spantree/tree_count.hpp"

namespace spantree {

double mu_n(int n, double p) {
    if (n < 2) throw std::invalid_argument("mu_n: n must be >= 2");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("mu_n: p outside (0, 1)");
    const double nd = static_cast<double>(n);
    return (nd - 1.0) * std::log(p) + (nd - 2.0) * std::log(nd);
}

double sigma(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("sigma: p outside (0, 1)");
    return std::sqrt(2.0 * (1.0 - p) / p);
}

double edge_zscore(const Graph& g, double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("edge_zscore: p outside (0, 1)");
    const double pairs = static_cast<double>(g.pair_count());
    return (static_cast<double>(g.edge_count()) - pairs * p) / std::sqrt(pairs * p * (1.0 - p));
}

LilConfig::LilConfig(double p_, int grid_base_, int n_min_, int n_max_)
    : p(p_), grid_base(grid_base_), n_min(n_min_), n_max(n_max_) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("LilConfig: p outside (0, 1)");
    if (grid_base < 2) throw std::invalid_argument("LilConfig: grid base must be an integer > 1");
    if (n_min < 16) throw std::invalid_argument("LilConfig: n_min must be >= 16 (log log n > 0)");
    if (n_max < n_min) throw std::invalid_argument("LilConfig: n_max below n_min");
}

double LilConfig::sigma() const { return spantree::sigma(p); }

std::vector<int> LilConfig::grid() const {
    std::vector<int> points;
    double v = 1.0;
    while (true) {
        const auto n = static_cast<int>(std::ceil(v));
        if (n > n_max) break;
        if (n >= n_min && (points.empty() || points.back() != n)) points.push_back(n);
        v *= static_cast<double>(grid_base);
    }
    return points;
}

std::vector<TrajectoryPoint> trajectory(const CoupledGraphSource& source, const LilConfig& config) {
    if (!(source.p > 0.0 && source.p < 1.0))
        throw std::invalid_argument("trajectory: source p outside (0, 1)");
    const double sig = config.sigma();
    std::vector<TrajectoryPoint> points;
    for (int n : config.grid()) {
        const Graph g = coupled_restrict(source, n);
        TrajectoryPoint pt;
        pt.n = n;
        pt.edge_count = g.edge_count();
        pt.e_star = edge_zscore(g, config.p);
        pt.log_x = matrix_tree_log_count(g);
        pt.mu = mu_n(n, config.p);
        if (!pt.log_x.is_zero()) {
            const double centered = (pt.log_x.log() - pt.mu) / sig;
            pt.lil_stat = centered / std::sqrt(2.0 * std::log(std::log(static_cast<double>(n))));
            pt.residual = centered - pt.e_star;
            pt.defined = true;
        }
        points.push_back(pt);
    }
    return points;
}

JansonCltResult janson_clt_sample(int n, double p, std::uint64_t trials, std::uint64_t seed,
                                  int shards) {
    if (n < 16) throw std::invalid_argument("janson_clt_sample: n must be >= 16");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("janson_clt_sample: p outside (0, 1)");
    if (trials < 1) throw std::invalid_argument("janson_clt_sample: trials must be >= 1");

    const double mu = mu_n(n, p);
    const double shift = (1.0 - p) / p;
    const double scale = std::sqrt(p);
    std::vector<double> raw(trials);
    run_sharded(trials, shards, [&](int, std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t t = begin; t < end; ++t) {
            const Graph g = gen_gnp(n, p, derive_seed(seed, t));
            const LogValue log_x = matrix_tree_log_count(g);
            raw[t] = log_x.is_zero() ? std::numeric_limits<double>::quiet_NaN()
                                     : scale * (log_x.log() - mu + shift);
        }
    });

    JansonCltResult result;
    result.samples.reserve(trials);
    for (double v : raw) {
        if (std::isnan(v))
            ++result.dropped;
        else
            result.samples.push_back(v);
    }
    return result;
}

LilSupremumSummary lil_supremum_report(std::span<const std::vector<TrajectoryPoint>> trajectories,
                                       int n_tail) {
    if (trajectories.empty()) throw std::invalid_argument("lil_supremum_report: no trajectories");
    LilSupremumSummary summary;
    for (const auto& traj : trajectories) {
        double best = -std::numeric_limits<double>::infinity();
        for (const TrajectoryPoint& pt : traj)
            if (pt.defined && pt.n >= n_tail) best = std::max(best, pt.lil_stat);
        if (!std::isinf(best)) summary.tail_maxima.push_back(best);
    }
    if (summary.tail_maxima.empty())
        throw std::invalid_argument("lil_supremum_report: no defined points in the grid tail");
    summary.min = *std::min_element(summary.tail_maxima.begin(), summary.tail_maxima.end());
    summary.max = *std::max_element(summary.tail_maxima.begin(), summary.tail_maxima.end());
    double acc = 0.0;
    for (double v : summary.tail_maxima) acc += v;
    summary.mean = acc / static_cast<double>(summary.tail_maxima.size());
    return summary;
}

}  // namespace spantree
