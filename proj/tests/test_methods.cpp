#include <doctest.h>

#include <cmath>

#include "minimax/methods.hpp"
#include "minimax/theta.hpp"
#include "test_support.hpp"

using namespace minimax;
using minimax::testing::QuadraticOracle;

TEST_CASE("gradient descent minimizes the plain quadratic in one step") {
  QuadraticOracle oracle(3, 2.0);
  const RunResult r = run_gd(oracle, {4.0, -1.0, 0.5}, 1, 2.0);
  CHECK(r.output == zeros(3));
  CHECK(r.calls_used == 1);
  CHECK(oracle.calls() == 1);
  CHECK(r.search_points.size() == 1);
  CHECK(r.search_points[0] == Vec{4.0, -1.0, 0.5});
}

TEST_CASE("fast gradient method converges on the plain quadratic") {
  QuadraticOracle oracle(2, 1.0);
  const RunResult r = run_fgm(oracle, {10.0, -3.0}, 8, 1.0);
  CHECK(norm(r.output) <= 1e-12);
  CHECK(r.calls_used == 8);
  CHECK(oracle.calls() == 8);
}

TEST_CASE("ogm value decreases with the budget on the plain quadratic") {
  double prev = 1e300;
  for (int n = 1; n <= 6; ++n) {
    QuadraticOracle oracle(2, 1.0);
    const RunResult r = run_ogm(oracle, {1.0, 1.0}, n, 1.0);
    const double value = 0.5 * dot(r.output, r.output);
    CHECK(value < prev);
    CHECK(oracle.calls() == n);
    prev = value;
  }
}

TEST_CASE("methods use exactly N oracle calls") {
  for (const auto& [name, fn] : method_registry()) {
    for (int n : {1, 2, 5}) {
      QuadraticOracle oracle(3, 1.0);
      const RunResult r = fn(oracle, {1.0, 2.0, 3.0}, n, 1.0);
      CHECK(r.method == name);
      CHECK(r.calls_used == n);
      CHECK(oracle.calls() == n);
      CHECK(static_cast<int>(r.search_points.size()) == n);
    }
  }
}

TEST_CASE("frozen single-step runs against the adversary") {
  SUBCASE("gradient descent lands at the scaled gradient point") {
    ResistingOracle oracle(2, 1, 1.0, 1.0, zeros(2));
    const RunResult r = run_gd(oracle, zeros(2), 1, 1.0);
    CHECK(r.output[0] == doctest::Approx(-0.408248).epsilon(1e-6));
    oracle.finalize(r.output);
    CHECK(oracle.transcript().gap == doctest::Approx(5.0 / 36).epsilon(1e-9));
  }
  SUBCASE("fgm with one step coincides with gradient descent") {
    ResistingOracle oracle(2, 1, 1.0, 1.0, zeros(2));
    const RunResult r = run_fgm(oracle, zeros(2), 1, 1.0);
    CHECK(r.output[0] == doctest::Approx(-0.408248).epsilon(1e-6));
    oracle.finalize(r.output);
    CHECK(oracle.transcript().gap == doctest::Approx(5.0 / 36).epsilon(1e-9));
  }
  SUBCASE("ogm overshoots to the exact worst-case point") {
    ResistingOracle oracle(2, 1, 1.0, 1.0, zeros(2));
    const RunResult r = run_ogm(oracle, zeros(2), 1, 1.0);
    CHECK(r.output[0] == doctest::Approx(-0.612372).epsilon(1e-6));
    CHECK(std::abs(r.output[1]) <= 1e-15);
    oracle.finalize(r.output);
    CHECK(oracle.transcript().gap == doctest::Approx(0.125).epsilon(1e-9));
  }
}

TEST_CASE("every method stays above the risk level") {
  for (const auto& [name, fn] : method_registry()) {
    for (int n = 1; n <= 12; ++n) {
      ResistingOracle oracle(n + 1, n, 1.0, 1.0, zeros(n + 1));
      const RunResult r = fn(oracle, zeros(n + 1), n, 1.0);
      oracle.finalize(r.output);
      CHECK(oracle.transcript().gap >= oracle.transcript().bound - 1e-9);
    }
  }
}

TEST_CASE("ogm meets the risk level exactly") {
  for (int n = 1; n <= 12; ++n) {
    ResistingOracle oracle(n + 1, n, 1.0, 1.0, zeros(n + 1));
    const RunResult r = run_ogm(oracle, zeros(n + 1), n, 1.0);
    oracle.finalize(r.output);
    const double gap = oracle.transcript().gap;
    const double bound = oracle.transcript().bound;
    CHECK(std::abs(gap - bound) <= 1e-6 * bound);
  }
}

TEST_CASE("oracle budget errors propagate") {
  ResistingOracle oracle(2, 1, 1.0, 1.0, zeros(2));
  CHECK_THROWS_AS(run_gd(oracle, zeros(2), 2, 1.0), BudgetError);
}

TEST_CASE("registry lookup") {
  CHECK(method_registry().count("gd") == 1);
  CHECK(method_registry().count("fgm") == 1);
  CHECK(method_registry().count("ogm") == 1);
  QuadraticOracle oracle(2, 1.0);
  CHECK_THROWS_AS(run_method("newton", oracle, zeros(2), 1, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_gd(oracle, zeros(2), 0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(run_fgm(oracle, zeros(2), 0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(run_ogm(oracle, zeros(2), 0, 1.0), std::invalid_argument);
}
