// spantree: seeded, reproducible experiment runner for spanning-tree
// statistics. Every randomized subcommand requires an explicit --seed; a
// given config always produces byte-identical reports. Wall-clock timing is
// printed to stderr so it never perturbs the report bytes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "report_writer.hpp"
#include "spantree/electrical.hpp"
#include "spantree/errors.hpp"
#include "spantree/graph.hpp"
#include "spantree/graph_io.hpp"
#include "spantree/lil.hpp"
#include "spantree/log_value.hpp"
#include "spantree/moments.hpp"
#include "spantree/poisson.hpp"
#include "spantree/rng.hpp"
#include "spantree/stats.hpp"
#include "spantree/tree_count.hpp"
#include "spantree/tree_sample.hpp"

namespace {

using namespace spantree;
using cli::CsvWriter;
using cli::fmt12;
using cli::JsonWriter;

constexpr const char* kToolVersion = "spantree 0.1.0";

struct OutputOpts {
    std::string format = "json";
    std::string path;
};

void add_output_opts(CLI::App* cmd, OutputOpts& out) {
    cmd->add_option("--format", out.format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", out.path, "Write the report to this path instead of stdout");
}

int emit(const OutputOpts& out, const std::string& json, const std::string& csv) {
    const std::string& body = out.format == "csv" ? csv : json;
    if (out.path.empty()) {
        std::cout << body;
    } else {
        std::ofstream f(out.path, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot write " << out.path << "\n";
            return 2;
        }
        f << body;
    }
    return 0;
}

struct Assertion {
    std::string name;
    bool pass;
    std::string detail;
};

void write_assertions(JsonWriter& w, const std::vector<Assertion>& asserts) {
    w.key("assertions").begin_array();
    for (const Assertion& a : asserts) {
        w.begin_object();
        w.kv("name", a.name);
        w.kv("pass", a.pass);
        w.kv("detail", a.detail);
        w.end_object();
    }
    w.end_array();
}

bool all_pass(const std::vector<Assertion>& asserts) {
    for (const Assertion& a : asserts)
        if (!a.pass) return false;
    return true;
}

void write_shards(JsonWriter& w, std::uint64_t trials, int shards, std::uint64_t seed) {
    w.key("shards").begin_array();
    const auto s = static_cast<std::uint64_t>(shards);
    std::uint64_t begin = 0;
    for (int i = 0; i < shards; ++i) {
        const std::uint64_t len = trials / s + (static_cast<std::uint64_t>(i) < trials % s ? 1 : 0);
        w.begin_object();
        w.kv("index", i);
        w.kv("first_trial", begin);
        w.kv("trials", len);
        w.kv("first_trial_seed", derive_seed(seed, begin));
        w.end_object();
        begin += len;
    }
    w.end_array();
}

// ---------------------------------------------------------------------------
// Shared graph-source flags: --complete N | --gnp N P | --gnm N M | --file F
// ---------------------------------------------------------------------------

struct GraphSourceOpts {
    int complete_n = 0;
    std::vector<double> gnp;
    std::vector<std::int64_t> gnm;
    std::string file;
    std::uint64_t seed = 0;
    bool has_seed = false;
};

void add_graph_source(CLI::App* cmd, GraphSourceOpts& src) {
    cmd->add_option("--complete", src.complete_n, "Complete graph K_n");
    cmd->add_option("--gnp", src.gnp, "Random graph G(n, p)")->expected(2);
    cmd->add_option("--gnm", src.gnm, "Random graph G(n, m)")->expected(2);
    cmd->add_option("--file", src.file, "Graph file: header 'n m', one 'a b' line per edge");
    cmd->add_option("--seed", src.seed, "Seed for random graph sources")
        ->each([&src](const std::string&) { src.has_seed = true; });
}

Graph build_graph(const GraphSourceOpts& src, std::string& description) {
    const int picked = (src.complete_n > 0) + !src.gnp.empty() + !src.gnm.empty() + !src.file.empty();
    if (picked != 1)
        throw CLI::ValidationError("graph source",
                                   "give exactly one of --complete, --gnp, --gnm, --file");
    if (src.complete_n > 0) {
        description = "complete " + std::to_string(src.complete_n);
        return make_complete(src.complete_n);
    }
    if (!src.gnp.empty()) {
        if (!src.has_seed) throw CLI::ValidationError("--gnp", "requires an explicit --seed");
        description = "gnp " + fmt12(src.gnp[0]) + " " + fmt12(src.gnp[1]);
        return gen_gnp(static_cast<int>(src.gnp[0]), src.gnp[1], src.seed);
    }
    if (!src.gnm.empty()) {
        if (!src.has_seed) throw CLI::ValidationError("--gnm", "requires an explicit --seed");
        description = "gnm " + std::to_string(src.gnm[0]) + " " + std::to_string(src.gnm[1]);
        return gen_gnm(static_cast<int>(src.gnm[0]), src.gnm[1], src.seed);
    }
    description = "file " + src.file;
    return load_graph(src.file);
}

std::string log_value_cell(const LogValue& v) { return v.is_zero() ? "" : fmt12(v.log()); }

// ---------------------------------------------------------------------------
// tv-poisson
// ---------------------------------------------------------------------------

struct TvPoissonOpts {
    int n = 0;
    int k = 2;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    int shards = 1;
    double alpha = 0.08;
    double slack_c = 1.0;
    double assert_tv_max = -1.0;
    bool assert_pmf_bound = false;
    bool assert_refined_bound = false;
    OutputOpts out;
};

int run_tv_poisson(const TvPoissonOpts& o) {
    const Graph g = make_complete(o.n);
    const auto shard_dists = mn_distribution_shards(g, o.k, o.trials, o.seed, o.shards);
    EmpiricalDist dist;
    for (const auto& part : shard_dists) dist.merge(part);

    const double lambda = static_cast<double>(o.k) * (o.k - 1.0);
    const PoissonParams po(lambda);
    const double tv = tv_distance(dist, po);
    const AlphaRegime regime(o.alpha, o.n, o.k);
    const double slack = regime.suggested_slack(o.slack_c);

    std::vector<Assertion> asserts;
    if (o.assert_tv_max >= 0.0)
        asserts.push_back({"tv_max", tv <= o.assert_tv_max,
                           "tv " + fmt12(tv) + " vs max " + fmt12(o.assert_tv_max)});

    JsonWriter w;
    w.begin_object();
    w.kv("tool", kToolVersion);
    w.kv("command", "tv-poisson");
    w.key("config").begin_object();
    w.kv("n", o.n).kv("k", o.k).kv("trials", o.trials).kv("seed", o.seed).kv("shards", o.shards);
    w.kv("alpha", o.alpha).kv("slack_c", o.slack_c);
    w.end_object();
    write_shards(w, o.trials, o.shards, o.seed);

    CsvWriter csv({"a", "count", "p_hat", "std_error", "poisson_pmf", "overlap_pmf_bound", "overlap_pmf_refined_bound"});
    w.key("rows").begin_array();
    bool pmf_bound_ok = true, refined_ok = true;
    for (std::int64_t a = 0; a <= std::max<std::int64_t>(dist.max_outcome(), 0); ++a) {
        const double p_hat = dist.pmf(a);
        const double se = dist.standard_error(a);
        const double q = poisson_pmf(po, a);
        const double c1 = overlap_pmf_bound(o.k, a);
        const bool in_regime = regime.a_within(a);
        const double c2 = in_regime ? overlap_pmf_refined_bound(regime, a, slack) : 0.0;
        if (p_hat > c1 + 4.0 * se) pmf_bound_ok = false;
        if (in_regime && p_hat > c2 + 4.0 * se) refined_ok = false;

        w.begin_object();
        w.kv("a", a);
        w.kv("count", dist.counts.count(a) ? dist.counts.at(a) : 0);
        w.kv("p_hat", p_hat).kv("std_error", se).kv("poisson_pmf", q).kv("overlap_pmf_bound", c1);
        if (in_regime)
            w.kv("overlap_pmf_refined_bound", c2);
        else
            w.kv("overlap_pmf_refined_bound", "out-of-regime");
        w.end_object();
        csv.row({std::to_string(a), std::to_string(dist.counts.count(a) ? dist.counts.at(a) : 0),
                 fmt12(p_hat), fmt12(se), fmt12(q), fmt12(c1),
                 in_regime ? fmt12(c2) : "out-of-regime"});
    }
    w.end_array();

    w.key("summary").begin_object();
    w.kv("tv_distance", tv);
    w.kv("l1_distance", 2.0 * tv);
    w.kv("empirical_mean", dist.mean());
    w.kv("poisson_mean", lambda);
    w.kv("refined_bound_slack", slack);
    w.end_object();

    if (o.assert_pmf_bound) asserts.push_back({"overlap_pmf_bound", pmf_bound_ok, "pmf within the factorial bound + 4se at every a"});
    if (o.assert_refined_bound) asserts.push_back({"overlap_pmf_refined_bound", refined_ok, "pmf within the refined bound + 4se in regime"});
    write_assertions(w, asserts);
    w.end_object();

    const int code = emit(o.out, w.str(), csv.str());
    return code != 0 ? code : (all_pass(asserts) ? 0 : 1);
}

// ---------------------------------------------------------------------------
// count
// ---------------------------------------------------------------------------

int run_count(const GraphSourceOpts& src, const OutputOpts& out) {
    std::string description;
    const Graph g = build_graph(src, description);
    const LogValue count = matrix_tree_log_count(g);
    const bool disconnected = count.is_zero();

    std::optional<double> cayley;
    if (src.complete_n > 0) cayley = cayley_log_count(g.vertex_count()).log();
    std::optional<double> grimmett;
    if (g.vertex_count() >= 2 && g.edge_count() > 0)
        grimmett = grimmett_log_bound(g.vertex_count(), g.edge_count()).log();

    JsonWriter w;
    w.begin_object();
    w.kv("tool", kToolVersion);
    w.kv("command", "count");
    w.key("config").begin_object();
    w.kv("source", description);
    if (src.has_seed) w.kv("seed", src.seed);
    w.end_object();
    w.kv("n", g.vertex_count());
    w.kv("m", g.edge_count());
    w.kv("disconnected", disconnected);
    w.key("log_tree_count");
    if (disconnected)
        w.null();
    else
        w.value(count.log());
    w.key("cayley_log");
    if (cayley)
        w.value(*cayley);
    else
        w.null();
    w.key("grimmett_log_bound");
    if (grimmett)
        w.value(*grimmett);
    else
        w.null();
    w.end_object();

    CsvWriter csv({"n", "m", "disconnected", "log_tree_count", "cayley_log", "grimmett_log_bound"});
    csv.row({std::to_string(g.vertex_count()), std::to_string(g.edge_count()),
             disconnected ? "true" : "false", log_value_cell(count),
             cayley ? fmt12(*cayley) : "", grimmett ? fmt12(*grimmett) : ""});
    return emit(out, w.str(), csv.str());
}

// ---------------------------------------------------------------------------
// resistance
// ---------------------------------------------------------------------------

int run_resistance(const GraphSourceOpts& src, const std::vector<int>& edge, const OutputOpts& out) {
    std::string description;
    const Graph g = build_graph(src, description);
    const int a = edge[0], b = edge[1];

    double r = 0.0;
    try {
        r = effective_resistance(g, a, b).ohms;
    } catch (const DisconnectedError& e) {
        JsonWriter w;
        w.begin_object();
        w.kv("tool", kToolVersion);
        w.kv("command", "resistance");
        w.kv("error", std::string(e.what()));
        w.end_object();
        CsvWriter csv({"error"});
        csv.row({std::string(e.what())});
        emit(out, w.str(), csv.str());
        return 2;
    }

    const bool adjacent = g.has_edge(a, b);
    std::optional<double> inclusion, bound;
    if (adjacent) {
        bound = two_path_inclusion_bound(g, Edge{a, b});
        if (is_connected(g)) inclusion = edge_inclusion_probability(g, Edge{a, b});
    }

    JsonWriter w;
    w.begin_object();
    w.kv("tool", kToolVersion);
    w.kv("command", "resistance");
    w.key("config").begin_object();
    w.kv("source", description);
    w.kv("a", a).kv("b", b);
    if (src.has_seed) w.kv("seed", src.seed);
    w.end_object();
    w.kv("effective_resistance", r);
    w.key("inclusion_probability");
    if (inclusion)
        w.value(*inclusion);
    else
        w.null();
    w.key("two_path_bound");
    if (bound)
        w.value(*bound);
    else
        w.null();
    w.end_object();

    CsvWriter csv({"a", "b", "effective_resistance", "inclusion_probability", "two_path_bound"});
    csv.row({std::to_string(a), std::to_string(b), fmt12(r),
             inclusion ? fmt12(*inclusion) : "", bound ? fmt12(*bound) : ""});
    return emit(out, w.str(), csv.str());
}

// ---------------------------------------------------------------------------
// moments
// ---------------------------------------------------------------------------

struct MomentsOpts {
    int n = 0;
    std::int64_t m = 0;
    int k = 1;
    std::uint64_t trials = 0;
    std::uint64_t mn_trials = 0;  // defaults to trials
    std::uint64_t seed = 0;
    int shards = 1;
    double delta = 0.1;
    double k_factor = 2.0;
    bool allow_out_of_regime = false;
    double assert_dual_sigma = -1.0;
    double assert_chat_max = -1.0;
    bool assert_tail = false;
    OutputOpts out;
};

int run_moments(const MomentsOpts& o) {
    const GnmParams params(o.n, o.m, o.delta);
    const std::uint64_t mn_trials = o.mn_trials ? o.mn_trials : o.trials;

    // Overlap-identity estimator: empirical M law for k trees on K_n. The
    // jackknife block count is fixed so the reported error bar does not
    // depend on the worker count.
    constexpr int kJackknifeBlocks = 16;
    const auto shard_dists = mn_distribution_shards(make_complete(o.n), o.k, mn_trials,
                                                    derive_seed(o.seed, 0xA11), kJackknifeBlocks);
    EmpiricalDist mn_dist;
    for (const auto& part : shard_dists) mn_dist.merge(part);

    MomentReport report;
    report.k = o.k;
    report.via_ma = kth_moment_via_ma(params, o.k, mn_dist);
    report.via_ma_se_log = kth_moment_via_ma_se(params, o.k, shard_dists);

    // Direct estimator plus tail statistics, from one pass of samples.
    const auto logs = sample_log_counts_gnm(params, o.trials, derive_seed(o.seed, 0xD17), o.shards);
    report.direct = kth_moment_from_logs(logs, o.k);
    report.direct_se_log = kth_moment_se_log(logs, o.k);

    const double c_hat = moment_ratio_bound_check(params, o.k, report, !o.allow_out_of_regime);
    const double markov = markov_tail_bound(c_hat, o.k_factor * c_hat, o.k);
    const LogValue exact_mean = expected_count_gnm(params);
    const double threshold = std::log(o.k_factor * c_hat) + exact_mean.log();
    std::uint64_t tail_count = 0;
    for (double v : logs)
        if (v >= threshold) ++tail_count;
    const double tail_freq = static_cast<double>(tail_count) / static_cast<double>(o.trials);
    const double tail_se = stats::binomial_se(tail_freq, static_cast<double>(o.trials));

    std::vector<Assertion> asserts;
    if (o.assert_dual_sigma >= 0.0) {
        const double gap = std::abs(report.via_ma.log() - report.direct.log());
        const double combined = std::hypot(report.via_ma_se_log, report.direct_se_log);
        asserts.push_back({"dual_estimators", gap <= o.assert_dual_sigma * combined,
                           "gap " + fmt12(gap) + " vs " + fmt12(o.assert_dual_sigma) + " x " + fmt12(combined)});
    }
    if (o.assert_chat_max >= 0.0)
        asserts.push_back({"c_hat_max", c_hat <= o.assert_chat_max,
                           "c_hat " + fmt12(c_hat) + " vs max " + fmt12(o.assert_chat_max)});
    if (o.assert_tail)
        asserts.push_back({"markov_tail", tail_freq <= markov + 4.0 * tail_se,
                           "freq " + fmt12(tail_freq) + " vs bound " + fmt12(markov)});

    JsonWriter w;
    w.begin_object();
    w.kv("tool", kToolVersion);
    w.kv("command", "moments");
    w.key("config").begin_object();
    w.kv("n", o.n).kv("m", o.m).kv("k", o.k).kv("trials", o.trials).kv("mn_trials", mn_trials);
    w.kv("seed", o.seed).kv("shards", o.shards).kv("delta", o.delta).kv("k_factor", o.k_factor);
    w.end_object();
    write_shards(w, o.trials, o.shards, derive_seed(o.seed, 0xD17));
    w.key("rows").begin_array();
    w.begin_object();
    w.kv("n", o.n).kv("m", o.m).kv("k", o.k);
    w.kv("via_ma_log", report.via_ma.log());
    w.kv("via_ma_se_log", report.via_ma_se_log);
    w.kv("direct_log", report.direct.log());
    w.kv("direct_se_log", report.direct_se_log);
    w.kv("c_hat", c_hat);
    w.kv("exact_mean_log", exact_mean.log());
    w.kv("in_concentration_regime", params.in_concentration_regime());
    w.kv("markov_K", o.k_factor * c_hat);
    w.kv("markov_bound", markov);
    w.kv("tail_freq", tail_freq);
    w.kv("tail_se", tail_se);
    w.end_object();
    w.end_array();
    write_assertions(w, asserts);
    w.end_object();

    CsvWriter csv({"n", "m", "k", "via_ma_log", "via_ma_se_log", "direct_log", "direct_se_log",
                   "c_hat", "exact_mean_log", "markov_K", "markov_bound", "tail_freq", "tail_se"});
    csv.row({std::to_string(o.n), std::to_string(o.m), std::to_string(o.k),
             fmt12(report.via_ma.log()), fmt12(report.via_ma_se_log), fmt12(report.direct.log()),
             fmt12(report.direct_se_log), fmt12(c_hat), fmt12(exact_mean.log()),
             fmt12(o.k_factor * c_hat), fmt12(markov), fmt12(tail_freq), fmt12(tail_se)});

    const int code = emit(o.out, w.str(), csv.str());
    return code != 0 ? code : (all_pass(asserts) ? 0 : 1);
}

// ---------------------------------------------------------------------------
// lil
// ---------------------------------------------------------------------------

struct LilOpts {
    double p = 0.5;
    int grid_base = 2;
    int n_min = 16;
    int n_max = 1024;
    int sources = 1;
    std::uint64_t seed = 0;
    int n_tail = 16;
    int corr_n_min = 64;
    double assert_residual_band = -1.0;
    double assert_correlation_min = -2.0;
    OutputOpts out;
};

int run_lil(const LilOpts& o) {
    const LilConfig config(o.p, o.grid_base, o.n_min, o.n_max);
    if (o.sources < 1) throw CLI::ValidationError("--sources", "must be >= 1");

    std::vector<std::vector<TrajectoryPoint>> trajectories;
    std::vector<std::uint64_t> source_seeds;
    for (int s = 0; s < o.sources; ++s) {
        const std::uint64_t src_seed = derive_seed(o.seed, static_cast<std::uint64_t>(s));
        source_seeds.push_back(src_seed);
        trajectories.push_back(trajectory(CoupledGraphSource(src_seed, o.p), config));
    }

    // Correlation between the centered log count and the edge z-score, and
    // the widest residual, over defined points with n >= corr_n_min.
    const double sig = config.sigma();
    std::vector<double> centered, zscores;
    double residual_band = 0.0;
    for (const auto& traj : trajectories) {
        for (const TrajectoryPoint& pt : traj) {
            if (!pt.defined) continue;
            residual_band = std::max(residual_band, std::abs(pt.residual));
            if (pt.n >= o.corr_n_min) {
                centered.push_back((pt.log_x.log() - pt.mu) / sig);
                zscores.push_back(pt.e_star);
            }
        }
    }
    std::optional<double> correlation;
    if (centered.size() >= 2) correlation = stats::correlation(centered, zscores);
    const LilSupremumSummary sup = lil_supremum_report(trajectories, o.n_tail);

    std::vector<Assertion> asserts;
    if (o.assert_residual_band >= 0.0)
        asserts.push_back({"residual_band", residual_band <= o.assert_residual_band,
                           "band " + fmt12(residual_band) + " vs " + fmt12(o.assert_residual_band)});
    if (o.assert_correlation_min >= -1.0)
        asserts.push_back({"correlation_min",
                           correlation.has_value() && *correlation >= o.assert_correlation_min,
                           "correlation " + (correlation ? fmt12(*correlation) : "undefined")});

    JsonWriter w;
    w.begin_object();
    w.kv("tool", kToolVersion);
    w.kv("command", "lil");
    w.key("config").begin_object();
    w.kv("p", o.p).kv("grid_base", o.grid_base).kv("n_min", o.n_min).kv("n_max", o.n_max);
    w.kv("sources", o.sources).kv("seed", o.seed).kv("n_tail", o.n_tail).kv("corr_n_min", o.corr_n_min);
    w.end_object();
    w.key("rows").begin_array();
    CsvWriter csv({"source_seed", "n", "edge_count", "e_star", "log_x", "mu", "lil_stat", "residual"});
    for (int s = 0; s < o.sources; ++s) {
        for (const TrajectoryPoint& pt : trajectories[static_cast<std::size_t>(s)]) {
            w.begin_object();
            w.kv("source_seed", source_seeds[static_cast<std::size_t>(s)]);
            w.kv("n", pt.n);
            w.kv("edge_count", pt.edge_count);
            w.kv("e_star", pt.e_star);
            w.key("log_x");
            if (pt.defined)
                w.value(pt.log_x.log());
            else
                w.null();
            w.kv("mu", pt.mu);
            w.key("lil_stat");
            if (pt.defined)
                w.value(pt.lil_stat);
            else
                w.null();
            w.key("residual");
            if (pt.defined)
                w.value(pt.residual);
            else
                w.null();
            w.end_object();
            csv.row({std::to_string(source_seeds[static_cast<std::size_t>(s)]), std::to_string(pt.n),
                     std::to_string(pt.edge_count), fmt12(pt.e_star),
                     pt.defined ? fmt12(pt.log_x.log()) : "", fmt12(pt.mu),
                     pt.defined ? fmt12(pt.lil_stat) : "", pt.defined ? fmt12(pt.residual) : ""});
        }
    }
    w.end_array();

    w.key("summary").begin_object();
    w.kv("residual_band", residual_band);
    w.key("correlation");
    if (correlation)
        w.value(*correlation);
    else
        w.null();
    w.kv("tail_max_min", sup.min);
    w.kv("tail_max_mean", sup.mean);
    w.kv("tail_max_max", sup.max);
    w.end_object();
    write_assertions(w, asserts);
    w.end_object();

    const int code = emit(o.out, w.str(), csv.str());
    return code != 0 ? code : (all_pass(asserts) ? 0 : 1);
}

// ---------------------------------------------------------------------------
// sample
// ---------------------------------------------------------------------------

int run_sample(const GraphSourceOpts& src, int k, std::uint64_t seed, bool has_seed,
               const OutputOpts& out) {
    if (!has_seed) throw CLI::ValidationError("--seed", "sampling requires an explicit --seed");
    std::string description;
    const Graph g = build_graph(src, description);
    const auto trees = sample_k_trees(g, k, seed);

    JsonWriter w;
    w.begin_object();
    w.kv("tool", kToolVersion);
    w.kv("command", "sample");
    w.key("config").begin_object();
    w.kv("source", description).kv("k", k).kv("seed", seed);
    w.end_object();
    w.kv("n", g.vertex_count());
    w.key("rows").begin_array();
    CsvWriter csv({"tree", "max_degree", "edges"});
    for (std::size_t i = 0; i < trees.size(); ++i) {
        std::string joined;
        for (const Edge& e : trees[i].edges) {
            if (!joined.empty()) joined += ';';
            joined += std::to_string(e.a) + "-" + std::to_string(e.b);
        }
        w.begin_object();
        w.kv("tree", static_cast<std::int64_t>(i));
        w.kv("max_degree", tree_max_degree(trees[i]));
        w.key("edges").begin_array();
        for (const Edge& e : trees[i].edges) {
            w.begin_array();
            w.value(e.a).value(e.b);
            w.end_array();
        }
        w.end_array();
        w.end_object();
        csv.row({std::to_string(i), std::to_string(tree_max_degree(trees[i])), joined});
    }
    w.end_array();
    w.end_object();
    return emit(out, w.str(), csv.str());
}

// ---------------------------------------------------------------------------
// selftest: compact oracle battery
// ---------------------------------------------------------------------------

// All connected graphs on exactly n labeled vertices (n small).
std::vector<Graph> connected_graphs(int n) {
    std::vector<Edge> pairs;
    for (int b = 1; b < n; ++b)
        for (int a = 0; a < b; ++a) pairs.emplace_back(a, b);
    std::vector<Graph> out;
    const std::size_t subsets = std::size_t{1} << pairs.size();
    for (std::size_t mask = 0; mask < subsets; ++mask) {
        Graph g(n);
        for (std::size_t i = 0; i < pairs.size(); ++i)
            if (mask >> i & 1) g.add_edge(pairs[i].a, pairs[i].b);
        if (is_connected(g)) out.push_back(std::move(g));
    }
    return out;
}

bool selftest_counting_oracle() {
    for (int n = 2; n <= 5; ++n) {
        for (const Graph& g : connected_graphs(n)) {
            const auto trees = enumerate_spanning_trees(g);
            const double count = std::exp(matrix_tree_log_count(g).log());
            if (static_cast<std::int64_t>(trees.size()) != std::llround(count)) return false;
        }
    }
    return true;
}

bool selftest_kirchhoff() {
    const auto check = [](const Graph& g) {
        const auto trees = enumerate_spanning_trees(g);
        for (const Edge& e : g.edges()) {
            std::size_t with = 0;
            for (const EdgeSet& t : trees)
                if (std::binary_search(t.begin(), t.end(), e)) ++with;
            const double exact = static_cast<double>(with) / static_cast<double>(trees.size());
            const double solved = edge_inclusion_probability(g, e);
            if (std::abs(solved - exact) > 1e-9 * exact) return false;
        }
        return true;
    };
    Graph k4e = make_complete(4);
    Graph c6(6, {Edge{0, 1}, Edge{1, 2}, Edge{2, 3}, Edge{3, 4}, Edge{4, 5}, Edge{0, 5}});
    Graph k4_minus(4, {Edge{0, 1}, Edge{0, 2}, Edge{0, 3}, Edge{1, 2}, Edge{1, 3}});
    return check(make_complete(5)) && check(c6) && check(k4_minus) && check(k4e);
}

bool selftest_negative_correlation() {
    for (int n = 2; n <= 5; ++n) {
        for (const Graph& g : connected_graphs(n)) {
            const auto trees = enumerate_spanning_trees(g);
            const auto total = static_cast<double>(trees.size());
            const auto& edges = g.edges();
            for (std::size_t i = 0; i < edges.size(); ++i) {
                for (std::size_t j = i + 1; j < edges.size(); ++j) {
                    std::size_t ci = 0, cj = 0, cij = 0;
                    for (const EdgeSet& t : trees) {
                        const bool hi = std::binary_search(t.begin(), t.end(), edges[i]);
                        const bool hj = std::binary_search(t.begin(), t.end(), edges[j]);
                        ci += hi;
                        cj += hj;
                        cij += hi && hj;
                    }
                    if (static_cast<double>(cij) / total >
                        (static_cast<double>(ci) / total) * (static_cast<double>(cj) / total) + 1e-12)
                        return false;
                }
            }
        }
    }
    return true;
}

bool selftest_wilson_uniformity(std::uint64_t seed) {
    const Graph g = make_complete(4);
    const auto trees = enumerate_spanning_trees(g);
    std::vector<std::uint64_t> observed(trees.size(), 0);
    constexpr std::uint64_t kSamples = 160000;
    for (std::uint64_t t = 0; t < kSamples; ++t) {
        const UniformTree tree = detail::wilson_sample_unchecked(g, derive_seed(seed, t));
        const auto it = std::lower_bound(trees.begin(), trees.end(), tree.edges);
        observed[static_cast<std::size_t>(it - trees.begin())]++;
    }
    const std::vector<double> expected(trees.size(), static_cast<double>(kSamples) / trees.size());
    // 0.999 quantile of chi-square with 15 degrees of freedom.
    return stats::chi_square(observed, expected) < 37.6973;
}

bool selftest_falling_factorial() {
    for (std::int64_t N : {10000, 100000, 1000000}) {
        for (std::int64_t l : {10, 100, 1000}) {
            const double Nd = static_cast<double>(N), ld = static_cast<double>(l);
            if (ld * ld * ld > Nd * Nd) continue;
            const double exact = falling_factorial_log(N, l).log();
            const double estimate = falling_factorial_estimate(N, l).log();
            if (std::abs(exact - estimate) > 2.0 * ld * ld * ld / (Nd * Nd)) return false;
        }
    }
    return true;
}

bool selftest_mn_small_law(std::uint64_t seed) {
    const EmpiricalDist dist = mn_distribution(make_complete(3), 2, 30000, seed, 2);
    const double se = 4.0 * std::sqrt((2.0 / 9.0) / 30000.0);
    return std::abs(dist.pmf(1) - 2.0 / 3.0) < se && std::abs(dist.pmf(2) - 1.0 / 3.0) < se;
}

int run_selftest(std::uint64_t seed, const OutputOpts& out) {
    const std::vector<std::pair<std::string, bool>> checks = {
        {"counting_oracle_n_le_5", selftest_counting_oracle()},
        {"kirchhoff_inclusion", selftest_kirchhoff()},
        {"negative_correlation_n_le_5", selftest_negative_correlation()},
        {"wilson_uniformity_k4", selftest_wilson_uniformity(seed)},
        {"falling_factorial_estimate", selftest_falling_factorial()},
        {"mn_small_law_k3", selftest_mn_small_law(seed)},
    };

    JsonWriter w;
    w.begin_object();
    w.kv("tool", kToolVersion);
    w.kv("command", "selftest");
    w.key("config").begin_object();
    w.kv("seed", seed);
    w.end_object();
    w.key("rows").begin_array();
    CsvWriter csv({"check", "pass"});
    bool all = true;
    for (const auto& [name, pass] : checks) {
        all = all && pass;
        w.begin_object();
        w.kv("check", name).kv("pass", pass);
        w.end_object();
        csv.row({name, pass ? "true" : "false"});
    }
    w.end_array();
    w.kv("all_pass", all);
    w.end_object();

    const int code = emit(out, w.str(), csv.str());
    return code != 0 ? code : (all ? 0 : 1);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo laboratory for unions of uniform spanning trees"};
    app.require_subcommand(1);

    TvPoissonOpts tv;
    CLI::App* tv_cmd = app.add_subcommand("tv-poisson", "Empirical law of M and its Poisson limit");
    tv_cmd->add_option("--n", tv.n, "Vertices of K_n")->required();
    tv_cmd->add_option("--k", tv.k, "Number of independent trees")->required();
    tv_cmd->add_option("--trials", tv.trials, "Monte Carlo replicates")->required();
    tv_cmd->add_option("--seed", tv.seed, "Seed (required: reports are reproducible)")->required();
    tv_cmd->add_option("--shards", tv.shards, "Worker shards");
    tv_cmd->add_option("--alpha", tv.alpha, "Regime exponent in (0, 1/11)");
    tv_cmd->add_option("--slack-c", tv.slack_c, "Constant c in the refined-bound slack c n^(11a-1)");
    tv_cmd->add_option("--assert-tv-max", tv.assert_tv_max, "Fail unless TV <= this");
    tv_cmd->add_flag("--assert-pmf-bound", tv.assert_pmf_bound, "Fail unless pmf <= (k(k-1))^a/a! + 4se everywhere");
    tv_cmd->add_flag("--assert-refined-bound", tv.assert_refined_bound, "Fail unless pmf <= refined Poisson bound + 4se in regime");
    add_output_opts(tv_cmd, tv.out);

    GraphSourceOpts count_src;
    OutputOpts count_out;
    CLI::App* count_cmd = app.add_subcommand("count", "Log spanning-tree count of a graph");
    add_graph_source(count_cmd, count_src);
    add_output_opts(count_cmd, count_out);

    GraphSourceOpts res_src;
    OutputOpts res_out;
    std::vector<int> res_edge;
    CLI::App* res_cmd = app.add_subcommand("resistance", "Effective resistance and inclusion probability");
    add_graph_source(res_cmd, res_src);
    res_cmd->add_option("--edge", res_edge, "Vertex pair a b")->expected(2)->required();
    add_output_opts(res_cmd, res_out);

    MomentsOpts mo;
    CLI::App* mo_cmd = app.add_subcommand("moments", "Dual k-th moment estimates for G(n, m)");
    mo_cmd->add_option("--n", mo.n, "Vertices")->required();
    mo_cmd->add_option("--m", mo.m, "Edges")->required();
    mo_cmd->add_option("--k", mo.k, "Moment order")->required();
    mo_cmd->add_option("--trials", mo.trials, "Direct Monte Carlo replicates")->required();
    mo_cmd->add_option("--mn-trials", mo.mn_trials, "Replicates for the overlap-identity estimator");
    mo_cmd->add_option("--seed", mo.seed, "Seed")->required();
    mo_cmd->add_option("--shards", mo.shards, "Worker shards");
    mo_cmd->add_option("--delta", mo.delta, "Concentration window parameter in (0, 1/2)");
    mo_cmd->add_option("--k-factor", mo.k_factor, "Tail threshold K = k_factor * c_hat");
    mo_cmd->add_flag("--allow-out-of-regime", mo.allow_out_of_regime,
                     "Proceed (library mode) when m is outside the concentration window");
    mo_cmd->add_option("--assert-dual-sigma", mo.assert_dual_sigma,
                       "Fail unless the estimators agree within this many combined SEs");
    mo_cmd->add_option("--assert-chat-max", mo.assert_chat_max, "Fail unless c_hat <= this");
    mo_cmd->add_flag("--assert-tail", mo.assert_tail, "Fail unless tail freq <= Markov bound + 4se");
    add_output_opts(mo_cmd, mo.out);

    LilOpts lil;
    CLI::App* lil_cmd = app.add_subcommand("lil", "Coupled trajectories of the LIL statistic");
    lil_cmd->add_option("--p", lil.p, "Edge probability in (0, 1)")->required();
    lil_cmd->add_option("--grid-base", lil.grid_base, "Geometric grid base (integer > 1)");
    lil_cmd->add_option("--n-min", lil.n_min, "Smallest grid size (>= 16)");
    lil_cmd->add_option("--n-max", lil.n_max, "Largest grid size");
    lil_cmd->add_option("--sources", lil.sources, "Independent coupled sources");
    lil_cmd->add_option("--seed", lil.seed, "Seed")->required();
    lil_cmd->add_option("--n-tail", lil.n_tail, "Tail threshold for the supremum report");
    lil_cmd->add_option("--corr-n-min", lil.corr_n_min, "Smallest n entering the correlation");
    lil_cmd->add_option("--assert-residual-band", lil.assert_residual_band,
                        "Fail unless every |residual| <= this");
    lil_cmd->add_option("--assert-correlation-min", lil.assert_correlation_min,
                        "Fail unless the tracking correlation >= this");
    add_output_opts(lil_cmd, lil.out);

    GraphSourceOpts sample_src;
    OutputOpts sample_out;
    int sample_k = 1;
    CLI::App* sample_cmd = app.add_subcommand("sample", "Sample and dump uniform spanning trees");
    add_graph_source(sample_cmd, sample_src);
    sample_cmd->add_option("--k", sample_k, "Number of trees");
    add_output_opts(sample_cmd, sample_out);

    OutputOpts selftest_out;
    std::uint64_t selftest_seed = 0;
    CLI::App* selftest_cmd = app.add_subcommand("selftest", "Run the oracle suites");
    selftest_cmd->add_option("--seed", selftest_seed, "Seed")->required();
    add_output_opts(selftest_cmd, selftest_out);

    CLI11_PARSE(app, argc, argv);

    const auto started = std::chrono::steady_clock::now();
    int code = 0;
    try {
        if (tv_cmd->parsed()) code = run_tv_poisson(tv);
        else if (count_cmd->parsed()) code = run_count(count_src, count_out);
        else if (res_cmd->parsed()) code = run_resistance(res_src, res_edge, res_out);
        else if (mo_cmd->parsed()) code = run_moments(mo);
        else if (lil_cmd->parsed()) code = run_lil(lil);
        else if (sample_cmd->parsed())
            code = run_sample(sample_src, sample_k, sample_src.seed, sample_src.has_seed, sample_out);
        else if (selftest_cmd->parsed()) code = run_selftest(selftest_seed, selftest_out);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
    std::fprintf(stderr, "wall_clock_s %.3f\n", elapsed.count());
    return code;
}
