#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>

namespace spantree::stats {

inline double mean(std::span<const double> xs) {
    if (xs.empty()) throw std::invalid_argument("mean: empty sample");
    double acc = 0.0;
    for (double x : xs) acc += x;
    return acc / static_cast<double>(xs.size());
}

inline double sample_variance(std::span<const double> xs) {
    if (xs.size() < 2) throw std::invalid_argument("sample_variance: need >= 2 values");
    const double m = mean(xs);
    double acc = 0.0;
    for (double x : xs) acc += (x - m) * (x - m);
    return acc / static_cast<double>(xs.size() - 1);
}

inline double correlation(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("correlation: mismatched or tiny samples");
    const double mx = mean(xs), my = mean(ys);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw std::invalid_argument("correlation: degenerate sample");
    return sxy / std::sqrt(sxx * syy);
}

// Normal-approximation standard error of a Bernoulli frequency.
inline double binomial_se(double p_hat, double trials) {
    return std::sqrt(p_hat * (1.0 - p_hat) / trials);
}

// Pearson chi-square statistic against the given expected counts.
inline double chi_square(std::span<const std::uint64_t> observed,
                         std::span<const double> expected) {
    if (observed.size() != expected.size() || observed.empty())
        throw std::invalid_argument("chi_square: mismatched bins");
    double stat = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (expected[i] <= 0.0) throw std::invalid_argument("chi_square: nonpositive expectation");
        const double d = static_cast<double>(observed[i]) - expected[i];
        stat += d * d / expected[i];
    }
    return stat;
}

}  // namespace spantree::stats
