#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "spantree/graph.hpp"
#include "spantree/log_value.hpp"

namespace spantree {

// One grid point of a coupled trajectory. When the restriction is
// disconnected (possible only at tiny n), log_x is the zero sentinel and the
// derived statistics are undefined rather than fatal.
struct TrajectoryPoint {
    int n = 0;
    std::int64_t edge_count = 0;
    double e_star = 0.0;  // normalized edge count (E - C(n,2) p) / sqrt(C(n,2) p (1-p))
    LogValue log_x;
    double mu = 0.0;        // (n-1) log p + (n-2) log n
    double lil_stat = 0.0;  // (log_x - mu) / (sigma sqrt(2 log log n))
    double residual = 0.0;  // (log_x - mu) / sigma - e_star
    bool defined = false;
};

// Geometric grid n_j = ceil(base^j) clipped to [n_min, n_max]. n_min >= 16
// keeps log log n positive under natural logs.
struct LilConfig {
    double p = 0.5;
    int grid_base = 2;
    int n_min = 16;
    int n_max = 1024;

    LilConfig(double p_, int grid_base_ = 2, int n_min_ = 16, int n_max_ = 1024);

    double sigma() const;
    std::vector<int> grid() const;
};

// (n-1) log p + (n-2) log n = log E X_n for G(n, p).
double mu_n(int n, double p);

// sqrt(2 (1-p) / p).
double sigma(double p);

// (|edges| - C(n,2) p) / sqrt(C(n,2) p (1-p)).
double edge_zscore(const Graph& g, double p);

// Restrict the coupled graph to each grid size and evaluate the LIL
// statistics along the way. Edge sets are nested by construction.
std::vector<TrajectoryPoint> trajectory(const CoupledGraphSource& source, const LilConfig& config);

struct JansonCltResult {
    std::vector<double> samples;   // sqrt(p) (log X - mu_n + (1-p)/p), connected draws only
    std::uint64_t dropped = 0;     // disconnected draws
};

// Independent G(n, p) draws of the normalized log count. The limiting law is
// N(0, 2(1-p)).
JansonCltResult janson_clt_sample(int n, double p, std::uint64_t trials, std::uint64_t seed,
                                  int shards = 1);

struct LilSupremumSummary {
    std::vector<double> tail_maxima;  // per trajectory, over defined points with n >= n_tail
    double min = 0.0;
    double mean = 0.0;
    double max = 0.0;
};

// Running max of the LIL statistic over each trajectory's grid tail, plus the
// cross-trajectory spread of those maxima.
LilSupremumSummary lil_supremum_report(std::span<const std::vector<TrajectoryPoint>> trajectories,
                                       int n_tail = 16);

}  // namespace spantree
