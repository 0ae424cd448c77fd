// End-to-end checks of the spantree binary: argument validation, report
// determinism, and a few numeric spot checks parsed from CSV output.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

const std::string kCli = SPANTREE_CLI_PATH;

struct RunResult {
    int exit_code;
    std::string output;
};

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "spantree_cli_test";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

RunResult run_cli(const std::string& args, const std::string& tag) {
    const fs::path out = scratch_dir() / (tag + ".out");
    const std::string command = kCli + " " + args + " > " + out.string() + " 2> /dev/null";
    const int status = std::system(command.c_str());
    std::ifstream f(out);
    std::stringstream buffer;
    buffer << f.rdbuf();
    return RunResult{WEXITSTATUS(status), buffer.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

}  // namespace

TEST_CASE("usage errors exit nonzero") {
    CHECK(run_cli("tv-poisson --n 10 --k 2 --trials 100", "noseed").exit_code != 0);
    CHECK(run_cli("lil --p 1.5 --seed 1", "badp").exit_code != 0);
    CHECK(run_cli("count", "nosource").exit_code != 0);
    CHECK(run_cli("sample --complete 4 --k 2", "sample_noseed").exit_code != 0);
    CHECK(run_cli("nonsense", "nonsense").exit_code != 0);
}

TEST_CASE("count subcommand") {
    const RunResult r = run_cli("count --complete 4 --format csv", "count_k4");
    CHECK(r.exit_code == 0);
    const auto rows = parse_csv(r.output);
    REQUIRE(rows.size() == 2);
    CHECK(std::stod(rows[1][3]) == doctest::Approx(std::log(16.0)));  // log_tree_count
    CHECK(std::stod(rows[1][4]) == doctest::Approx(std::log(16.0)));  // cayley

    // Every 5-edge graph on 4 vertices has 8 spanning trees, whatever the seed.
    const RunResult g = run_cli("count --gnm 4 5 --seed 1 --format csv", "count_gnm");
    CHECK(std::stod(parse_csv(g.output)[1][3]) == doctest::Approx(std::log(8.0)));

    const RunResult d = run_cli("count --gnm 6 2 --seed 1 --format csv", "count_disc");
    const auto drows = parse_csv(d.output);
    CHECK(drows[1][2] == "true");  // disconnected flag
    CHECK(drows[1][3] == "");      // no finite log count
}

TEST_CASE("resistance subcommand") {
    const RunResult k4 = run_cli("resistance --complete 4 --edge 0 1 --format csv", "res_k4");
    CHECK(k4.exit_code == 0);
    const auto rows = parse_csv(k4.output);
    CHECK(std::stod(rows[1][2]) == doctest::Approx(0.5));
    CHECK(std::stod(rows[1][3]) == doctest::Approx(0.5));
    CHECK(std::stod(rows[1][4]) == doctest::Approx(0.5));

    // C_4 via file input.
    const fs::path c4 = scratch_dir() / "c4.graph";
    std::ofstream(c4) << "4 4\n0 1\n0 3\n1 2\n2 3\n";
    const RunResult c4r =
        run_cli("resistance --file " + c4.string() + " --edge 0 1 --format csv", "res_c4");
    const auto c4rows = parse_csv(c4r.output);
    CHECK(std::stod(c4rows[1][2]) == doctest::Approx(0.75));
    CHECK(std::stod(c4rows[1][3]) == doctest::Approx(0.75));
    CHECK(std::stod(c4rows[1][4]) == doctest::Approx(1.0));

    // Bridge: inclusion probability 1.
    const fs::path bridge = scratch_dir() / "bridge.graph";
    std::ofstream(bridge) << "5 5\n0 1\n0 2\n1 2\n2 3\n3 4\n";
    const RunResult br =
        run_cli("resistance --file " + bridge.string() + " --edge 2 3 --format csv", "res_bridge");
    CHECK(std::stod(parse_csv(br.output)[1][3]) == doctest::Approx(1.0));

    // Disconnected pair: error report, nonzero exit.
    const fs::path split = scratch_dir() / "split.graph";
    std::ofstream(split) << "4 2\n0 1\n2 3\n";
    const RunResult err =
        run_cli("resistance --file " + split.string() + " --edge 0 2 --format csv", "res_disc");
    CHECK(err.exit_code != 0);
}

TEST_CASE("tv-poisson small-case law and k = 1 degeneracy") {
    const RunResult r =
        run_cli("tv-poisson --n 3 --k 2 --trials 50000 --seed 7 --format csv", "tv_k3");
    CHECK(r.exit_code == 0);
    const auto rows = parse_csv(r.output);
    REQUIRE(rows.size() >= 3);
    CHECK(rows[1][0] == "0");
    CHECK(std::stod(rows[2][1]) / 50000.0 == doctest::Approx(2.0 / 3.0).epsilon(0.02));

    // k = 1: point mass at 0, TV to Po(0) is zero; assert through the CLI.
    const RunResult one = run_cli(
        "tv-poisson --n 10 --k 1 --trials 2000 --seed 3 --assert-tv-max 1e-9", "tv_k1");
    CHECK(one.exit_code == 0);

    const RunResult fail = run_cli(
        "tv-poisson --n 3 --k 2 --trials 2000 --seed 3 --assert-tv-max 1e-12", "tv_fail");
    CHECK(fail.exit_code == 1);  // requested assertion cannot hold
}

TEST_CASE("reports are byte-identical for identical configs") {
    const std::vector<std::pair<std::string, std::string>> runs = {
        {"tv-poisson --n 20 --k 2 --trials 3000 --seed 11 --shards 2", "det_tv"},
        {"count --gnm 8 12 --seed 3", "det_count"},
        {"resistance --complete 4 --edge 0 1", "det_res"},
        {"moments --n 12 --m 30 --k 2 --trials 1500 --seed 5 --shards 2 --allow-out-of-regime",
         "det_mom"},
        {"lil --p 0.5 --n-min 16 --n-max 64 --sources 2 --seed 9", "det_lil"},
        {"sample --complete 5 --k 3 --seed 2", "det_sample"},
    };
    for (const auto& [args, tag] : runs) {
        const RunResult a = run_cli(args, tag + "_a");
        const RunResult b = run_cli(args, tag + "_b");
        CHECK(a.exit_code == 0);
        CHECK(a.output == b.output);
        CHECK_FALSE(a.output.empty());
    }
}

TEST_CASE("shard count changes neither rows nor statistics") {
    const std::string base = "tv-poisson --n 25 --k 2 --trials 4000 --seed 13 --format csv";
    const RunResult one = run_cli(base + " --shards 1", "shards1");
    const RunResult eight = run_cli(base + " --shards 8", "shards8");
    CHECK(one.output == eight.output);

    const std::string mom =
        "moments --n 12 --m 30 --k 2 --trials 1500 --seed 5 --allow-out-of-regime --format csv";
    CHECK(run_cli(mom + " --shards 1", "mshards1").output ==
          run_cli(mom + " --shards 8", "mshards8").output);
}

TEST_CASE("moments subcommand on the degenerate G(3,2) case") {
    const RunResult r = run_cli(
        "moments --n 3 --m 2 --k 2 --trials 800 --seed 5 --allow-out-of-regime --format csv",
        "mom_g32");
    CHECK(r.exit_code == 0);
    const auto rows = parse_csv(r.output);
    // X = 1 on every G(3,2) draw, so the direct estimate is exactly log 1.
    CHECK(std::abs(std::stod(rows[1][5])) <= 1e-12);
    // The identity estimate is log(3 p_hat(2)); exact only in the limit.
    CHECK(std::abs(std::stod(rows[1][3])) <= 0.25);
}

TEST_CASE("lil subcommand emits one row per source and grid point") {
    const RunResult r = run_cli(
        "lil --p 0.5 --n-min 16 --n-max 128 --sources 2 --seed 21 --format csv "
        "--assert-residual-band 5 --assert-correlation-min -1",
        "lil_rows");
    CHECK(r.exit_code == 0);
    const auto rows = parse_csv(r.output);
    CHECK(rows.size() == 1 + 2 * 4);  // header + 2 sources x {16, 32, 64, 128}

    const RunResult single =
        run_cli("lil --p 0.5 --n-min 16 --n-max 16 --sources 1 --seed 21 --format csv", "lil_one");
    CHECK(parse_csv(single.output).size() == 2);
}

TEST_CASE("sample subcommand dumps k valid trees") {
    const RunResult r = run_cli("sample --complete 6 --k 3 --seed 4 --format csv", "sample_k6");
    CHECK(r.exit_code == 0);
    const auto rows = parse_csv(r.output);
    REQUIRE(rows.size() == 4);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        // 5 edges separated by semicolons.
        const std::string& edges = rows[i][2];
        CHECK(std::count(edges.begin(), edges.end(), ';') == 4);
    }
}

TEST_CASE("selftest passes and is deterministic") {
    const RunResult a = run_cli("selftest --seed 1", "selftest_a");
    CHECK(a.exit_code == 0);
    const RunResult b = run_cli("selftest --seed 1", "selftest_b");
    CHECK(a.output == b.output);
}
