#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "subord/cli.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = subord::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

fs::path temp_path(const std::string& name) { return fs::temp_directory_path() / ("subord_cli_" + name); }

} // namespace

TEST_CASE("check: equality tuple passes with margin 0") {
    const auto r = run({"check", "--family", "linear-deriv", "--k", "0", "--A", "1", "--B", "0", "--D", "1", "--E", "0",
                        "--beta", "1"});
    CHECK(r.code == subord::cli::kExitOk);
    CHECK(r.out.find("holds (margin 0)") != std::string::npos);
}

TEST_CASE("check: failing condition exits 1") {
    const auto r = run({"check", "--family", "linear-deriv", "--A", "1", "--B", "0", "--D", "1", "--E", "0",
                        "--beta", "0.5"});
    CHECK(r.code == subord::cli::kExitCheckFailed);
}

TEST_CASE("min-beta: infeasible tuple exits 1") {
    const auto r = run({"min-beta", "--family", "linear-deriv", "--k", "1", "--A", "1", "--B", "-1", "--D", "1", "--E",
                        "-1"});
    CHECK(r.code == subord::cli::kExitCheckFailed);
    CHECK(r.out.find("INFEASIBLE") != std::string::npos);
}

TEST_CASE("invalid input exits 2 with the violated invariant") {
    auto r = run({"check", "--family", "squared-deriv", "--A", "1", "--B", "0", "--D", "1", "--E", "0"});
    CHECK(r.code == subord::cli::kExitInvalidInput);
    CHECK(r.err.find("requires -1 <= E < 0 < D <= 1") != std::string::npos);

    r = run({"check", "--family", "nope", "--A", "1", "--B", "0", "--D", "1", "--E", "0"});
    CHECK(r.code == subord::cli::kExitInvalidInput);
    CHECK(r.err.find("unknown family 'nope'") != std::string::npos);

    r = run({"check", "--family", "linear-deriv", "--A", "0", "--B", "0.5", "--D", "1", "--E", "0"});
    CHECK(r.code == subord::cli::kExitInvalidInput);

    r = run({"check", "--family", "linear-deriv", "--A", "1"});
    CHECK(r.code == subord::cli::kExitInvalidInput);
    CHECK(r.err.find("missing --B") != std::string::npos);

    r = run({"bogus"});
    CHECK(r.code == subord::cli::kExitInvalidInput);

    r = run({"check", "--family", "linear-deriv", "--A", "one"});
    CHECK(r.code == subord::cli::kExitInvalidInput);
}

TEST_CASE("unknown family is rejected before any output file is written") {
    const auto out = temp_path("never.json");
    fs::remove(out);
    const auto r = run({"trial", "--family", "nope", "--A", "1", "--B", "0", "--D", "1", "--E", "0", "--out",
                        out.string()});
    CHECK(r.code == subord::cli::kExitInvalidInput);
    CHECK_FALSE(fs::exists(out));
}

TEST_CASE("region: eight rows on the circle |w - 1| = 1") {
    const auto r = run({"region", "--A", "1", "--B", "0", "--points", "8"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "theta,re,im,chi");
    int rows = 0;
    while (std::getline(in, line)) {
        double theta, re, im, chi;
        char c1, c2, c3;
        std::istringstream row(line);
        row >> theta >> c1 >> re >> c2 >> im >> c3 >> chi;
        CHECK(std::hypot(re - 1.0, im) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(chi == doctest::Approx(1.0).epsilon(1e-14));
        ++rows;
    }
    CHECK(rows == 8);
}

TEST_CASE("JSON reports are schema-tagged and byte-identical across runs") {
    const auto a = temp_path("a.json");
    const auto b = temp_path("b.json");
    const std::vector<std::string> base{"min-beta", "--family", "squared-deriv", "--k", "2", "--A", "0.5", "--B", "0",
                                        "--D", "0.5", "--E", "-0.5", "--out"};
    auto args = base;
    args.push_back(a.string());
    CHECK(run(args).code == 0);
    args = base;
    args.push_back(b.string());
    CHECK(run(args).code == 0);
    const auto text = slurp(a);
    CHECK(text == slurp(b));
    const auto j = nlohmann::ordered_json::parse(text);
    CHECK(j.begin().key() == "schema");
    CHECK(j["schema"] == 1);
    CHECK(j["family"] == "squared-deriv");
    CHECK(j["threshold"].get<double>() == doctest::Approx(18.0));
    CHECK(text.find("\"threshold\": 18") != std::string::npos);
}

TEST_CASE("--params file with flag overrides") {
    const auto params = temp_path("params.json");
    {
        std::ofstream f(params);
        f << R"({"A": 1, "B": 0, "D": 1, "E": 0, "beta": 0.5, "k": 0})";
    }
    auto r = run({"check", "--family", "linear-deriv", "--params", params.string()});
    CHECK(r.code == 1);
    r = run({"check", "--family", "linear-deriv", "--params", params.string(), "--beta", "2"});
    CHECK(r.code == 0);
    r = run({"check", "--family", "linear-deriv", "--params", temp_path("missing.json").string()});
    CHECK(r.code == 2);
}

TEST_CASE("admissible and trial") {
    const std::vector<std::string> tuple{"--family", "linear-deriv", "--k", "0", "--A", "1", "--B", "0",
                                         "--D", "1", "--E", "0", "--beta", "1"};
    auto args = tuple;
    args.insert(args.begin(), "admissible");
    args.insert(args.end(), {"--n-theta", "64", "--m-grid", "1,2,4"});
    auto r = run(args);
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);

    args = tuple;
    args.insert(args.begin(), "trial");
    const auto out = temp_path("trial.json");
    args.insert(args.end(), {"--samples", "50", "--seed", "9", "--out", out.string()});
    r = run(args);
    CHECK(r.code == 0);
    const auto j = nlohmann::ordered_json::parse(slurp(out));
    CHECK(j["verdict"]["n_violations"] == 0);
    CHECK(j["options"]["seed"] == 9);

    r = run({"trial", "--family", "linear-deriv", "--A", "1", "--B", "0", "--D", "1", "--E", "0", "--beta", "0.1",
             "--samples", "300"});
    CHECK(r.code == 1);
    r = run({"trial", "--family", "linear-deriv", "--A", "1", "--B", "0", "--D", "1", "--E", "0", "--beta", "0.1",
             "--samples", "300", "--explore"});
    CHECK(r.code == 1);
    CHECK(r.out.find(" 0 violations") == std::string::npos);

    r = run({"admissible", "--family", "linear-deriv", "--A", "1", "--B", "0", "--D", "1", "--E", "0", "--beta",
             "1", "--m-grid", "1,x"});
    CHECK(r.code == 2);
}

TEST_CASE("starlike on the Koebe series") {
    const auto series = temp_path("koebe.json");
    {
        std::ofstream f(series);
        f << "[[0, 0]";
        for (int k = 1; k <= 16; ++k) {
            f << ", [" << k << ", 0]";
        }
        f << "]";
    }
    auto r = run({"starlike", "--series", series.string(), "--variant", "b", "--A", "1", "--B", "-1", "--D", "0.5",
                  "--E", "-0.5", "--beta", "1", "--radius", "0.9", "--explore"});
    CHECK(r.code == 1); // hypothesis margin is negative for this beta
    CHECK(r.out.find("conclusion margin") != std::string::npos);

    const auto p = temp_path("p.json");
    {
        std::ofstream f(p);
        f << "[[1, 0], [0.1, 0]]";
    }
    r = run({"starlike", "--series", p.string(), "--from-p", "--truncation", "20", "--variant", "a", "--A", "0.5",
             "--B", "0", "--D", "0.5", "--E", "-0.5", "--beta", "20"});
    CHECK(r.code == 0); // f = z exp(0.1 z) satisfies both memberships
    r = run({"starlike", "--series", p.string(), "--variant", "a", "--A", "0.5", "--B", "0", "--D", "0.5", "--E",
             "-0.5", "--beta", "20"});
    CHECK(r.code == 2); // not normalized
    r = run({"starlike", "--series", p.string(), "--variant", "z", "--A", "0.5", "--B", "0", "--D", "0.5", "--E",
             "-0.5"});
    CHECK(r.code == 2);
}

TEST_CASE("help exits 0") {
    const auto r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("min-beta") != std::string::npos);
}

TEST_CASE("SUBORD_THREADS parsing") {
    ::setenv("SUBORD_THREADS", "3", 1);
    CHECK(subord::cli::threads_from_env() == 3);
    ::setenv("SUBORD_THREADS", "abc", 1);
    CHECK(subord::cli::threads_from_env() == 0);
    ::unsetenv("SUBORD_THREADS");
    CHECK(subord::cli::threads_from_env() == 0);
}
