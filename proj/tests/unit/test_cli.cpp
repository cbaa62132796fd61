#include "lupoly/cli.hpp"
#include "lupoly/json_io.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace lupoly;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
    json doc() const { return json::parse(out); }
};

Result run(std::vector<std::string> args, const std::string& stdin_text = "") {
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    const int code = cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
    const auto p = std::filesystem::temp_directory_path() / ("lupoly_cli_" + name);
    std::ofstream(p) << content;
    return p;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("dim example") {
    const auto r = run({"dim", "--lambda", "0,0.1,0.2,0.15"});
    REQUIRE(r.code == 0);
    const auto d = r.doc();
    CHECK(d["dim_M"] == 12);
    CHECK(d["num_invariants"] == 16);
    CHECK(d["formula"] == "case3");
    CHECK(d["status"] == "paper-exact");
    CHECK(run({"dim", "--lambda", "0.5,0.5,0.5,0.5"}).doc()["dim_M"] == 0);
}

TEST_CASE("exact fractions reach the wall") {
    const auto d = run({"classify", "--lambda", "1/6,1/3,1/3"}).doc();
    CHECK(d["classification"]["tight_walls"] == json::array({1}));
    CHECK(d["lambdas_exact"] == json::array({"1/6", "1/3", "1/3"}));
    CHECK(run({"dim", "--lambda", "1/6,1/3,1/3"}).doc()["formula"] == "case2");
}

TEST_CASE("vertices with oracle") {
    const auto r = run({"vertices", "-L", "4", "--oracle"});
    REQUIRE(r.code == 0);
    const auto d = r.doc();
    CHECK(d["count"] == 12);
    CHECK(d["oracle_agrees"] == true);
    CHECK(d["vertices"][0]["label"] == "v_SEP");
}

TEST_CASE("facets emit the face lattice") {
    const auto d = run({"facets", "-L", "4"}).doc();
    CHECK(d["facet_count"] == 12);
    CHECK(d["vertices"].size() == 12);
    CHECK(d["facets"][0]["type"] == "wall");
}

TEST_CASE("oracle-dim example") {
    const auto r = run({"oracle-dim", "--lambda", "0.1,0.1,0.1", "--samples", "5", "--seed", "1"});
    REQUIRE(r.code == 0);
    const auto d = r.doc();
    CHECK(d["dim_estimate"] == 2);
    CHECK(d["regular"] == true);
    CHECK(d["agrees"] == true);
}

TEST_CASE("psi output round-trips into dim") {
    std::mt19937_64 rng(4);
    const PureState s = random_state(4, rng);
    const auto path = std::filesystem::temp_directory_path() / "lupoly_cli_state.json";
    write_state_file(path, s);
    const auto psi = run({"psi", "--state", path.string()});
    REQUIRE(psi.code == 0);
    const auto via_pipe = run({"dim", "--spectra", "-"}, psi.out);
    const auto direct = run({"dim", "--state", path.string()});
    CHECK(via_pipe.code == 0);
    CHECK(via_pipe.out == direct.out);
}

TEST_CASE("config file with flag override") {
    const auto cfg = temp_file("cfg.json", R"({"tol": 0.2})");
    const auto spectra = temp_file("sp.json", R"({"L": 3, "lambdas": [0.45, 0.1, 0.1]})");
    CHECK(run({"--config", cfg.string(), "classify", "--spectra", spectra.string()}).doc()["classification"]["k_half"] == 1);
    CHECK(run({"classify", "--spectra", spectra.string(), "--config", cfg.string(), "--tol", "1e-9"})
              .doc()["classification"]["k_half"] == 0);
    const auto bad = temp_file("bad.json", R"({"tolerance": 1})");
    CHECK(run({"--config", bad.string(), "classify", "--lambda", "0.1,0.1,0.1"}).code == 1);
}

TEST_CASE("output file") {
    const auto path = std::filesystem::temp_directory_path() / "lupoly_cli_out.json";
    std::filesystem::remove(path);
    const auto r = run({"xspec", "-L", "3", "-o", path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    CHECK(json::parse(in)["eigenvalues"].size() == 4);
}

TEST_CASE("other subcommands") {
    const auto x = run({"xspec", "-L", "4", "--k", "1"}).doc();
    CHECK(x["eigenspace"]["dimension"] == 4);
    const auto w = run({"wall-check", "--lambda", "1/6,1/3,1/3"}).doc();
    CHECK(w["certificate"]["transitive"] == true);
    CHECK(w["wall_state"]["max_error"].get<double>() < 1e-12);
    CHECK(run({"wall-check", "-L", "6"}).doc()["certificate"]["rank"] == 6);
    const auto st = run({"stable", "-L", "5"}).doc();
    CHECK(st["verdict"]["stable"] == true);
    CHECK(run({"stable", "-L", "4", "--alpha", "1", "--probe"}).doc()["verdict"]["stable"] == false);
    const auto f = run({"sample-fiber", "--lambda", "1/6,1/6,1/6", "--seed", "3"});
    CHECK(f.code == 0);
    CHECK(f.doc()["residual"].get<double>() < 1e-10);
}

TEST_CASE("exit codes on error paths") {
    CHECK(run({}).code == 1);
    CHECK(run({"bogus"}).code == 1);
    const auto unknown = run({"dim", "--lambda", "0.1,0.1,0.1", "--nope"});
    CHECK(unknown.code == 1);
    CHECK(unknown.err.find("Usage") != std::string::npos);
    CHECK(run({"dim"}).code == 1);                                                   // no input
    CHECK(run({"dim", "--lambda", "0.1,0.1,0.1", "--state", "x.json"}).code == 1);  // two inputs
    CHECK(run({"dim", "--lambda", "0.1,abc"}).code == 1);
    const auto outside = run({"dim", "--lambda", "0.6,0.1,0.1"});
    CHECK(outside.code == 1);
    CHECK(outside.doc()["classification"]["member"] == false);
    CHECK(run({"psi", "--state", "/nonexistent/state.json"}).code == 1);
    CHECK(run({"psi", "--state", temp_file("notjson", "{").string()}).code == 1);
    CHECK(run({"psi", "--state", temp_file("unnorm", R"({"L":1,"amplitudes":[[2,0],[0,0]]})").string()}).code == 1);
    CHECK(run({"psi", "--state", temp_file("unnorm2", R"({"L":1,"amplitudes":[[2,0],[0,0]]})").string(), "--renormalize"}).code == 0);
    CHECK(run({"stable", "-L", "4", "--alpha", "1"}).code == 1);
    CHECK(run({"vertices", "-L", "40"}).code == 1);
    CHECK(run({"oracle-dim", "--lambda", "0.5,0.1,0.2,0.15"}).code == 1);
    CHECK(run({"wall-check", "--lambda", "0.1,0.1,0.1"}).code == 1);
    CHECK(run({"sample-fiber", "--lambda", "0.0,0.1,0.2,0.15", "--max-iterations", "1", "--max-restarts", "0"}).code == 2);
    CHECK(run({"dim", "--lambda", "0.1,0.1,0.1", "--tol", "-1"}).code == 1);
    // Errors still produce one JSON document on stdout.
    CHECK(run({"bogus"}).doc()["error"]["code"] == 1);
    CHECK(run({"--help"}).code == 0);
}

}
