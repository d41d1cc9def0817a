#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bhtlab/cli.hpp"
#include "bhtlab/io.hpp"

using namespace bhtlab;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;

  json summary() const {
    std::istringstream lines(out);
    std::string last;
    for (std::string line; std::getline(lines, line);) {
      if (!line.empty()) last = line;
    }
    return json::parse(last);
  }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run_main(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "bhtlab_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

// Restores BHTLAB_SEED on scope exit.
struct SeedEnv {
  explicit SeedEnv(const char* value) {
    if (value) {
      ::setenv("BHTLAB_SEED", value, 1);
    } else {
      ::unsetenv("BHTLAB_SEED");
    }
  }
  ~SeedEnv() { ::unsetenv("BHTLAB_SEED"); }
};

std::vector<double> column(const std::string& csv, std::size_t index) {
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  std::vector<double> values;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string cell;
    for (std::size_t i = 0; i <= index; ++i) std::getline(row, cell, ',');
    values.push_back(std::stod(cell));
  }
  return values;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("path helpers and system names") {
    CHECK(cli::json_path("out/run") == "out/run.json");
    CHECK(cli::json_path("out/run.json") == "out/run.json");
    CHECK(cli::csv_path("out/run.csv") == "out/run.csv");
    CHECK(cli::csv_path("run.json") == "run.csv");
    for (const char* name : {"bht", "nahm", "holo", "alts_jccc", "gauge_bht", "nahm_schmid_check"}) {
      CHECK(cli::to_string(cli::parse_system(name)) == name);
    }
    CHECK_THROWS_AS(cli::parse_system("bogus"), ValidationError);
  }

  TEST_CASE("config validation") {
    cli::RunConfig cfg;
    CHECK_NOTHROW(cli::validate(cfg));
    cfg.n = 1;
    cfg.m = 2;
    CHECK_THROWS_AS(cli::validate(cfg), ValidationError);
    cfg.system = cli::System::nahm;
    CHECK_NOTHROW(cli::validate(cfg));
    cfg = {};
    cfg.radius = -1.0;
    CHECK_THROWS_AS(cli::validate(cfg), ValidationError);
    cfg = {};
    cfg.out_path.clear();
    CHECK_THROWS_AS(cli::validate(cfg), ValidationError);
  }

  TEST_CASE("BHTLAB_SEED") {
    {
      SeedEnv env(nullptr);
      CHECK(cli::default_seed() == 0);
    }
    {
      SeedEnv env("12345");
      CHECK(cli::default_seed() == 12345);
    }
    {
      SeedEnv env("12x");
      CHECK_THROWS_AS(cli::default_seed(), ValidationError);
      CHECK(run({"check", "--suite", "algebra", "--trials", "1"}).code == 2);
      CHECK(run({"check", "--suite", "algebra", "--trials", "1", "--seed", "4"}).code == 0);
    }
    {
      SeedEnv env("99");
      const Result r = run({"check", "--suite", "algebra", "--trials", "1"});
      CHECK(r.code == 0);
      CHECK(r.summary().at("seed") == 99);
    }
  }

  TEST_CASE("help, version and usage errors") {
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"--version"}).code == 0);
    CHECK(run({}).code == 2);
    CHECK(run({"simulate", "--bogus"}).code == 2);
    CHECK(run({"simulate", "--system", "nope"}).code == 2);
    CHECK(run({"simulate", "-n", "2"}).code == 2);
    CHECK(run({"spectral"}).code == 2);
  }

  TEST_CASE("simulate: scalar case has constant F and zero drift") {
    const std::string stem = scratch("scalar").string();
    const Result r = run({"simulate", "--n", "1", "--m", "1", "--t-end", "0.1", "--dt", "0.01",
                          "--seed", "3", "--out", stem});
    REQUIRE(r.code == 0);
    const json s = r.summary();
    CHECK(s.at("status") == "ok");
    CHECK(s.at("rows") == 11);
    CHECK(s.at("max_spectral_drift").get<double>() == 0.0);
    const std::string csv = io::read_file(stem + ".csv");
    CHECK(csv.rfind("t,F,gap,nahm_residual_max,spectral_drift\n", 0) == 0);
    for (const double f : column(csv, 1)) CHECK(f == 0.0);
  }

  TEST_CASE("simulate: F is monotone, drift small, output byte-identical") {
    const std::string a = scratch("run_a").string();
    const std::string b = scratch("run_b").string();
    const std::vector<std::string> base{"simulate", "--system", "bht", "--n", "2", "--m", "2",
                                        "--seed", "42", "--t-end", "1", "--dt", "1e-3", "--stride", "10"};
    auto args_a = base;
    args_a.insert(args_a.end(), {"--out", a});
    auto args_b = base;
    args_b.insert(args_b.end(), {"--out", b + ".json"});
    const Result ra = run(args_a);
    const Result rb = run(args_b);
    REQUIRE(ra.code == 0);
    REQUIRE(rb.code == 0);
    CHECK(ra.summary().at("F_monotone") == true);
    CHECK(ra.summary().at("max_spectral_drift").get<double>() < 1e-8);
    CHECK(io::read_file(a + ".csv") == io::read_file(b + ".csv"));
    CHECK(io::read_file(a + ".json") == io::read_file(b + ".json"));

    const std::vector<double> f = column(io::read_file(a + ".csv"), 1);
    for (std::size_t i = 1; i < f.size(); ++i) CHECK(f[i] >= f[i - 1] - 1e-10);

    const json doc = json::parse(io::read_file(a + ".json"));
    CHECK(doc.at("format") == io::kTrajectoryFormat);
    CHECK(doc.at("seed") == 42);
    CHECK(doc.at("prng").at("name").is_string());
  }

  TEST_CASE("simulate: every system runs") {
    for (const char* sys : {"nahm", "holo", "alts_jccc", "gauge_bht", "nahm_schmid_check"}) {
      INFO(sys);
      const Result r = run({"simulate", "--system", sys, "--n", "3", "--m", "2", "--t-end", "0.05",
                            "--dt", "0.01", "--out", scratch(std::string("sys_") + sys).string()});
      CHECK(r.code == 0);
    }
  }

  TEST_CASE("simulate: errors") {
    CHECK(run({"simulate", "--dt", "0", "--out", scratch("e1").string()}).code == 2);
    CHECK(run({"simulate", "--n", "1", "--m", "2", "--out", scratch("e2").string()}).code == 2);
    CHECK(run({"simulate", "--out", "/nonexistent-dir/x/run"}).code == 2);
    const Result blow = run({"simulate", "--n", "3", "--m", "2", "--radius", "1e4", "--t-end", "10",
                             "--dt", "0.1", "--out", scratch("blow").string()});
    CHECK(blow.code == 3);
    CHECK(blow.summary().at("status") == "blowup");
  }

  TEST_CASE("check: pass and corrupt") {
    const Result ok = run({"check", "--suite", "all", "--trials", "1", "--seed", "5"});
    CHECK(ok.code == 0);
    CHECK(ok.summary().at("status") == "pass");
    CHECK(ok.summary().at("failures").empty());
    const Result bad = run({"check", "--suite", "algebra", "--trials", "1", "--corrupt"});
    CHECK(bad.code == 1);
    CHECK_FALSE(bad.summary().at("failures").empty());
    CHECK(run({"check", "--trials", "0"}).code == 2);
  }

  TEST_CASE("spectral: handmade scalar trajectory") {
    const fs::path input = scratch("hand.json");
    json doc{{"format", io::kTrajectoryFormat}, {"format_version", 1}, {"system", "bht"},
             {"n", 1}, {"m", 1}};
    doc["states"] = json::array();
    for (const double t : {0.0, 0.5}) {
      doc["states"].push_back({{"t", t}, {"A", json::parse("[[[1,0]]]")}, {"B", json::parse("[[[0,1]]]")}});
    }
    io::write_file(input.string(), doc.dump());
    const std::string stem = scratch("hand_spec").string();
    const Result r = run({"spectral", "--input", input.string(), "--out", stem});
    REQUIRE(r.code == 0);
    CHECK(r.summary().at("rows") == 2);
    CHECK(r.summary().at("max_column_variation").get<double>() == 0.0);
    CHECK(r.summary().at("lambda_power") == 0);
    const json rep = json::parse(io::read_file(stem + ".json"));
    CHECK(rep.at("report").at("Phat").at("terms").size() == 3);
    CHECK(io::read_file(stem + ".csv").rfind("t,", 0) == 0);

    io::write_file(input.string(), "{not json");
    CHECK(run({"spectral", "--input", input.string(), "--out", stem}).code == 2);
    CHECK(run({"spectral", "--input", scratch("missing.json").string(), "--out", stem}).code == 2);
  }

  TEST_CASE("spectral on simulate output") {
    const std::string stem = scratch("for_spec").string();
    REQUIRE(run({"simulate", "--n", "2", "--m", "2", "--t-end", "0.2", "--dt", "0.01", "--stride", "5",
                 "--out", stem})
                .code == 0);
    const Result r = run({"spectral", "--input", stem + ".json", "--out", scratch("for_spec_out").string()});
    REQUIRE(r.code == 0);
    CHECK(r.summary().at("max_column_variation").get<double>() < 1e-8);
  }
}
