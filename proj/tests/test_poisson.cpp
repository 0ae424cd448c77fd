#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "spantree/errors.hpp"
#include "spantree/poisson.hpp"
#include "spantree/stats.hpp"
#include "spantree/tree_count.hpp"
#include "test_util.hpp"

using namespace spantree;

TEST_CASE("sample_mn basics") {
    const Graph k5 = make_complete(5);
    for (std::uint64_t seed = 0; seed < 20; ++seed) CHECK(sample_mn(k5, 1, seed) == 0);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const std::int64_t m = sample_mn(k5, 3, seed);
        CHECK(m >= 0);
        CHECK(m <= 2 * 4);  // (k-1)(n-1)
    }
    const Graph two_parts(4, {Edge{0, 1}, Edge{2, 3}});
    CHECK_THROWS_AS(sample_mn(two_parts, 2, 1), DisconnectedError);
}

TEST_CASE("exact law of M for two trees on K_3") {
    // Exhaustive over the 9 ordered tree pairs: identical pairs give M = 2,
    // distinct pairs give M = 1, so P[M=1] = 2/3 and P[M=2] = 1/3.
    const auto trees = enumerate_spanning_trees(make_complete(3));
    std::map<std::int64_t, int> law;
    for (const EdgeSet& t1 : trees) {
        for (const EdgeSet& t2 : trees) {
            const std::vector<EdgeSet> pair{t1, t2};
            law[2 * 2 - union_size(pair)]++;
        }
    }
    CHECK(law[1] == 6);
    CHECK(law[2] == 3);

    const EmpiricalDist dist = mn_distribution(make_complete(3), 2, 100000, 71, 2);
    CHECK(std::abs(dist.pmf(1) - 2.0 / 3.0) <= 4.0 * std::sqrt(2.0 / 9.0 / 100000.0));
    CHECK(std::abs(dist.pmf(2) - 1.0 / 3.0) <= 4.0 * std::sqrt(2.0 / 9.0 / 100000.0));
}

TEST_CASE("mn_distribution bookkeeping and shard invariance") {
    const Graph g = make_complete(6);
    const EmpiricalDist one = mn_distribution(g, 2, 5000, 9, 1);
    const EmpiricalDist four = mn_distribution(g, 2, 5000, 9, 4);
    CHECK(one.trials == 5000);
    CHECK(one.counts == four.counts);  // trial seeds do not depend on shard layout

    const EmpiricalDist point = mn_distribution(g, 1, 200, 1, 2);
    CHECK(point.pmf(0) == 1.0);

    std::uint64_t total = 0;
    for (const auto& [outcome, c] : one.counts) total += c;
    CHECK(total == one.trials);
}

TEST_CASE("poisson_pmf") {
    CHECK(poisson_pmf(PoissonParams(0.0), 0) == doctest::Approx(1.0));
    CHECK(poisson_pmf(PoissonParams(0.0), 3) == doctest::Approx(0.0));
    CHECK(poisson_pmf(PoissonParams(2.0), 2) == doctest::Approx(2.0 * std::exp(-2.0)));
    CHECK(poisson_pmf(PoissonParams(2.0), 0) == doctest::Approx(std::exp(-2.0)));
    CHECK_THROWS_AS(PoissonParams(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(poisson_pmf(PoissonParams(2.0), -1), std::invalid_argument);

    double total = 0.0;
    for (std::int64_t t = 0; t < 60; ++t) total += poisson_pmf(PoissonParams(6.5), t);
    CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("tv_distance") {
    // Scaled truncated Poisson counts reproduce the pmf to ~1e-13.
    const PoissonParams po(2.0);
    EmpiricalDist near_exact;
    const auto scale = static_cast<double>(std::uint64_t{1} << 52);
    for (std::int64_t a = 0; a < 60; ++a) {
        const auto c = static_cast<std::uint64_t>(std::llround(poisson_pmf(po, a) * scale));
        if (c > 0) near_exact.record(a, c);
    }
    CHECK(tv_distance(near_exact, po) <= 1e-11);

    EmpiricalDist point_mass;
    point_mass.record(0, 1000);
    CHECK(tv_distance(point_mass, po) == doctest::Approx(1.0 - std::exp(-2.0)));
    CHECK(tv_distance(point_mass, PoissonParams(0.0)) == doctest::Approx(0.0));

    EmpiricalDist empty;
    CHECK_THROWS_AS(tv_distance(empty, po), std::invalid_argument);
}

TEST_CASE("overlap_pmf_bound") {
    CHECK(overlap_pmf_bound(5, 0) == doctest::Approx(1.0));
    CHECK(overlap_pmf_bound(2, 3) == doctest::Approx(8.0 / 6.0));
    CHECK(overlap_pmf_bound(2, 10) == doctest::Approx(std::pow(2.0, 10) / 3628800.0));
    CHECK(overlap_pmf_bound(1, 4) == doctest::Approx(0.0));  // k(k-1) = 0
}

TEST_CASE("empirical pmf respects the factorial bound (K_50, k = 2)") {
    const EmpiricalDist dist = mn_distribution(make_complete(50), 2, 20000, 83, 2);
    for (const auto& [a, c] : dist.counts) {
        const double bound = std::min(overlap_pmf_bound(2, a), 1.0);
        CHECK(dist.pmf(a) <= bound + 4.0 * dist.standard_error(a));
    }
}

TEST_CASE("AlphaRegime and overlap_pmf_refined_bound") {
    CHECK_THROWS_AS(AlphaRegime(0.0, 100, 2), std::invalid_argument);
    CHECK_THROWS_AS(AlphaRegime(1.0 / 11.0, 100, 2), std::invalid_argument);

    const AlphaRegime wide(0.05, 10000, 2);
    CHECK(wide.a_threshold() == doctest::Approx(std::pow(10000.0, 0.15)));
    CHECK(wide.a_within(3));
    CHECK_FALSE(wide.a_within(5));
    CHECK(overlap_pmf_refined_bound(wide, 0, 0.0) == doctest::Approx(std::exp(-2.0)));
    CHECK_THROWS_AS(overlap_pmf_refined_bound(wide, 5, 0.0), OutOfRegimeError);
    CHECK_THROWS_AS(overlap_pmf_refined_bound(wide, 1, -0.5), std::invalid_argument);

    const AlphaRegime r2(0.08, 200, 2);
    CHECK_FALSE(r2.k_within(1.0));  // 200^0.08 ~ 1.53 < 2
    CHECK(r2.k_within(2.0));
    CHECK(r2.suggested_slack() == doctest::Approx(std::pow(200.0, 11.0 * 0.08 - 1.0)));
}

TEST_CASE("refined pmf bound holds empirically on K_200 within its regime") {
    // n^{3a} at n=200 never reaches 5 for any a < 1/11, so only small a are
    // in regime; larger a raise OutOfRegimeError by construction.
    const AlphaRegime regime(0.08, 200, 2);
    const double slack = regime.suggested_slack();
    const EmpiricalDist dist = mn_distribution(make_complete(200), 2, 20000, 97, 2);
    for (std::int64_t a = 0; a <= dist.max_outcome(); ++a) {
        if (!regime.a_within(a)) {
            CHECK_THROWS_AS(overlap_pmf_refined_bound(regime, a, slack), OutOfRegimeError);
            continue;
        }
        CHECK(dist.pmf(a) <= overlap_pmf_refined_bound(regime, a, slack) + 4.0 * dist.standard_error(a));
    }
}

TEST_CASE("M converges to the Poisson mean at n = 400") {
    for (int k : {2, 3}) {
        const EmpiricalDist dist = mn_distribution(make_complete(400), k, 100000, 53, 2);
        const double lambda = static_cast<double>(k) * (k - 1.0);
        // SE of the sample mean via the Poisson-ish variance.
        const double se = std::sqrt(lambda / 100000.0);
        CHECK(std::abs(dist.mean() - lambda) <= 4.0 * se);
    }
}
