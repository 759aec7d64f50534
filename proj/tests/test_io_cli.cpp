#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "sgx/cli.hpp"
#include "sgx/decimation.hpp"
#include "sgx/errors.hpp"
#include "sgx/extrema.hpp"
#include "sgx/io.hpp"

using namespace sgx;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "sgx_unit";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("grid round trip") {
    const auto fn = EigenFn::from_boundary(Triple(0.3, -1.2, 2.0), DecimationPath(0, 4.4, BranchWord::parse("-+")));
    const auto g = extend(fn, 5);
    std::stringstream ss;
    write_grid_csv(ss, g, fn);
    const auto back = read_grid_csv(ss);
    REQUIRE(back.fn);
    CHECK(back.grid.level() == 5);
    CHECK(back.grid.values.size() == g.values.size());
    for (std::size_t k = 0; k < g.values.size(); ++k) CHECK(back.grid.values[k] == g.values[k]);
    CHECK(back.fn->path.eps == fn.path.eps);
    CHECK(back.fn->path.lambda_birth == fn.path.lambda_birth);
    CHECK(back.fn->lambda == fn.lambda);
    CHECK(count_exact(*back.fn).count == count_exact(fn).count);
}

TEST_CASE("report json") {
    const auto fn = EigenFn::small(8.0, Triple(1, 1, 1));
    const auto j = nlohmann::json::parse(count_report_json(count_exact(fn)));
    CHECK(j["count"] == 1);
    CHECK(j["method"] == "exact");
    REQUIRE(j["sets"].size() == 1);
    CHECK(j["sets"][0]["kind"] == "max");
    CHECK(j["sets"][0]["locus_type"] == "cell_triangle");
    CHECK(j["sets"][0].contains("word_or_vertex"));
    CHECK(j["sets"][0].contains("value"));
    CHECK(j["flags"].is_array());
}

TEST_CASE("reports are deterministic") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> n(0, 1);
    for (int t = 0; t < 5; ++t) {
        const auto fn = EigenFn::from_boundary(Triple(n(rng), n(rng), n(rng)), DecimationPath(0, 2.7, BranchWord::parse("++")));
        CHECK(count_report_json(count_exact(fn)) == count_report_json(count_exact(fn)));
        CHECK(count_report_json(count_discrete(extend(fn, 7))) == count_report_json(count_discrete(extend(fn, 7))));
    }
}

}

TEST_SUITE("cli") {

TEST_CASE("exit codes") {
    CHECK(run({}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"spectrum", "--kind", "d"}).code == 2);
    CHECK(run({"classify", "--lambda", "100", "--a", "1,2,3"}).code == 2);
    CHECK(run({"classify", "--lambda", "small", "--a", "1,2"}).code == 2);
    CHECK(run({"eigenfn", "--series", "Generic", "--a", "1,2,3", "--lambda0", "1", "--eps", "+-", "--level", "2", "--out", "-"}).code == 2);
    CHECK(run({"verify", "nonsense"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("classify output") {
    const auto r = run({"classify", "--lambda", "small", "--a", "1,1,1"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("Theta\n", 0) == 0);
    const auto j = run({"--format", "json", "classify", "--lambda", "5", "--a", "1,2,3"});
    CHECK(j.code == 0);
    CHECK(nlohmann::json::parse(j.out).contains("region"));
}

TEST_CASE("spectrum and oracle output") {
    const auto s = run({"spectrum", "--kind", "d", "--max", "100"});
    CHECK(s.code == 0);
    CHECK(s.out.find("D2,1,none,1") != std::string::npos);
    const auto o = run({"oracle", "--level", "2", "--kind", "n", "--crosscheck"});
    CHECK(o.code == 0);
    CHECK(o.out.find("false") == std::string::npos);
    const auto e = run({"oracle", "--level", "1", "--kind", "d", "--edges"});
    CHECK(e.code == 0);
    CHECK(std::count(e.out.begin(), e.out.end(), '\n') == 10);
}

TEST_CASE("eigenfunction file through extrema") {
    const auto path = scratch("d2.csv").string();
    CHECK(run({"eigenfn", "--series", "D2", "--level", "6", "--out", path}).code == 0);
    const auto exact = run({"--format", "json", "extrema", "--in", path});
    const auto discrete = run({"--format", "json", "extrema", "--in", path, "--method", "discrete"});
    REQUIRE(exact.code == 0);
    REQUIRE(discrete.code == 0);
    CHECK(nlohmann::json::parse(exact.out)["count"] == nlohmann::json::parse(discrete.out)["count"]);
    CHECK(run({"extrema", "--in", scratch("missing.csv").string()}).code == 2);
}

TEST_CASE("config file") {
    const auto good = scratch("good.cfg");
    {
        std::ofstream f(good);
        f << "# tolerances\nregion_tol=1e-9\nrng_seed=7\nformat=json\n";
    }
    const auto r = run({"--config", good.string(), "classify", "--lambda", "small", "--a", "1,1,1"});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out).contains("region"));

    const auto bad = scratch("bad.cfg");
    {
        std::ofstream f(bad);
        f << "unknown_key=1\n";
    }
    CHECK(run({"--config", bad.string(), "classify", "--lambda", "small", "--a", "1,1,1"}).code == 2);

    const auto negative = scratch("negative.cfg");
    {
        std::ofstream f(negative);
        f << "region_tol=-1\n";
    }
    CHECK(run({"--config", negative.string(), "spectrum", "--kind", "d", "--max", "10"}).code == 2);
}

TEST_CASE("verify suites report through the exit code") {
    const auto r = run({"verify", "psi"});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["pass"] == true);
}

}
