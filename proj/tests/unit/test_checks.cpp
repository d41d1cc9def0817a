#include <doctest.h>

#include <set>

#include "bhtlab/checks.hpp"

using namespace bhtlab;
using namespace bhtlab::checks;

TEST_SUITE("checks") {
  TEST_CASE("derive_seed separates streams and trials") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t stream = 0; stream < 8; ++stream) {
      for (std::uint64_t i = 0; i < 64; ++i) seen.insert(derive_seed(7, stream, i));
    }
    CHECK(seen.size() == 8 * 64);
    CHECK(derive_seed(7, 1, 2) == derive_seed(7, 1, 2));
    CHECK(derive_seed(7, 1, 2) != derive_seed(8, 1, 2));
  }

  TEST_CASE("all suites pass and are reproducible") {
    CheckOptions opts;
    opts.trials = 2;
    opts.seed = 3;
    const auto a = run_checks(opts);
    const auto b = run_checks(opts);
    REQUIRE(a.size() == b.size());
    std::set<std::string> suites;
    for (std::size_t i = 0; i < a.size(); ++i) {
      INFO(a[i].suite << "/" << a[i].name << " residual " << a[i].max_residual);
      CHECK(a[i].passed());
      CHECK(a[i].samples > 0);
      CHECK(a[i].max_residual == b[i].max_residual);
      suites.insert(a[i].suite);
    }
    CHECK(suites == std::set<std::string>{"algebra", "flows", "spectral"});
  }

  TEST_CASE("suite selection") {
    CheckOptions opts;
    opts.trials = 1;
    opts.suite = Suite::spectral;
    for (const auto& r : run_checks(opts)) CHECK(r.suite == "spectral");
  }

  TEST_CASE("the corrupted triple is caught") {
    CheckOptions opts;
    opts.trials = 2;
    opts.suite = Suite::algebra;
    opts.corrupt = true;
    std::size_t failed = 0;
    for (const auto& r : run_checks(opts)) failed += r.passed() ? 0 : 1;
    CHECK(failed > 0);
  }

  TEST_CASE("NaN residuals fail") {
    CheckResult r{"s", "n", std::nan(""), 1.0, 1};
    CHECK_FALSE(r.passed());
  }
}
