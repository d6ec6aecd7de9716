#include <doctest.h>

#include <cmath>
#include <random>

#include "minimax/interpolation.hpp"
#include "minimax/worst_case.hpp"
#include "test_support.hpp"

using namespace minimax;
using minimax::testing::gaussian_vec;

namespace {

TripleSet single_origin_triple(int d, double L) {
  TripleSet T;
  T.L = L;
  T.points.push_back({zeros(d), zeros(d), 0.0});
  return T;
}

}  // namespace

TEST_CASE("kernel projections") {
  const Vec v = {-1.0, 2.0};
  CHECK(project_kernel(Kernel::NonnegativeOrthant, v) == Vec{0.0, 2.0});
  CHECK(project_kernel(Kernel::ZeroPoint, v) == Vec{0.0, 0.0});
  CHECK(project_kernel(Kernel::FullSpace, v) == v);
}

TEST_CASE("interpolation conditions") {
  SUBCASE("single zero triple passes any kernel") {
    const TripleSet T = single_origin_triple(2, 1.0);
    for (Kernel k : {Kernel::ZeroPoint, Kernel::NonnegativeOrthant, Kernel::FullSpace}) {
      CHECK(check_interpolation_conditions(T, k).overall);
    }
  }
  SUBCASE("conflicting values at one point fail") {
    TripleSet T = single_origin_triple(2, 1.0);
    T.points.push_back({zeros(2), zeros(2), -1.0});
    const ConditionReport report =
        check_interpolation_conditions(T, Kernel::NonnegativeOrthant);
    CHECK(!report.pairwise_ok[0][1]);  // 0 <= -1 is false
    CHECK(report.pairwise_ok[1][0]);
    CHECK(!report.overall);
  }
  SUBCASE("worst-case triples pass over the orthant") {
    for (int n : {1, 3, 7}) {
      const WorstCaseFunction W = build_triples(zeta_star(n, 1.0), 1.0);
      CHECK(check_interpolation_conditions(W.triples, Kernel::NonnegativeOrthant)
                .overall);
    }
  }
  SUBCASE("any strictly decreasing zeta works, not just the optimal one") {
    ZetaVector zeta;
    zeta.N = 2;
    zeta.R = 1.0;
    zeta.values = {2.0, 0.9, 0.35, 0.2, 0.0};
    const WorstCaseFunction W = build_triples(zeta, 1.5);
    CHECK(check_interpolation_conditions(W.triples, Kernel::NonnegativeOrthant)
              .overall);
  }
}

TEST_CASE("quadratic form evaluation") {
  const WorstCaseFunction W = build_triples(zeta_star(2, 1.0), 1.0);

  SUBCASE("vertex weights reproduce the data values") {
    for (std::size_t i = 0; i < W.triples.points.size(); ++i) {
      SimplexWeights alpha;
      alpha.alpha.assign(W.triples.points.size(), 0.0);
      alpha.alpha[i] = 1.0;
      const double w =
          eval_quadratic_w(W.triples, W.triples.points[i].x, zeros(3), alpha);
      CHECK(w == doctest::Approx(W.triples.points[i].f).epsilon(1e-13));
    }
  }
  SUBCASE("single zero triple gives the plain quadratic") {
    const TripleSet T = single_origin_triple(2, 3.0);
    SimplexWeights alpha;
    alpha.alpha = {1.0};
    const Vec y = {0.5, -2.0};
    CHECK(eval_quadratic_w(T, y, zeros(2), alpha) ==
          doctest::Approx(0.5 * 3.0 * dot(y, y)).epsilon(1e-15));
  }
  SUBCASE("frozen value at the origin, N=1") {
    const WorstCaseFunction W1 = build_triples(zeta_star(1, 1.0), 1.0);
    SimplexWeights alpha;
    alpha.alpha = {1.0, 0.0, 0.0};
    CHECK(eval_quadratic_w(W1.triples, zeros(2), zeros(2), alpha) ==
          doctest::Approx(0.25).epsilon(1e-15));
  }
  SUBCASE("dimension and weight validation") {
    SimplexWeights alpha;
    alpha.alpha = {0.5, 0.5, 0.0, 0.0};
    CHECK_THROWS_AS(eval_quadratic_w(W.triples, zeros(2), zeros(3), alpha),
                    std::invalid_argument);
    SimplexWeights bad;
    bad.alpha = {0.9, 0.3, -0.2, 0.0};
    CHECK_THROWS_AS(eval_quadratic_w(W.triples, zeros(3), zeros(3), bad),
                    std::invalid_argument);
  }
}

TEST_CASE("simplex weights validity") {
  SimplexWeights w;
  w.alpha = {0.25, 0.75};
  CHECK(w.valid());
  w.alpha = {1.0, -5e-15};  // within tolerance
  CHECK(w.valid());
  w.alpha = {1.0, -1e-10};
  CHECK(!w.valid());
  w.alpha = {0.3, 0.3};
  CHECK(!w.valid());
}

TEST_CASE("interpolant on a single zero triple is the distance quadratic") {
  const double L = 2.0;
  const TripleSet T = single_origin_triple(2, L);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 10; ++i) {
    const Vec y = gaussian_vec(2, 1.0, rng);
    const EvalResult e = eval_interpolant(T, Kernel::ZeroPoint, y);
    CHECK(e.value == doctest::Approx(0.5 * L * dot(y, y)).epsilon(1e-12));
    for (int j = 0; j < 2; ++j) {
      CHECK(e.gradient[j] == doctest::Approx(L * y[j]).epsilon(1e-12));
    }
    CHECK(e.argmin_alpha.alpha == std::vector<double>{1.0});
    CHECK(!e.active_pair.has_value());
  }
}

TEST_CASE("interpolant passes through condition-passing triples") {
  const WorstCaseFunction W = build_triples(zeta_star(3, 1.0), 1.0);
  for (const TriplePoint& p : W.triples.points) {
    const EvalResult e = eval_interpolant(W.triples, Kernel::NonnegativeOrthant, p.x);
    CHECK(std::abs(e.value - p.f) <= 1e-9);
    CHECK(norm(sub(e.gradient, p.g)) <= 1e-6);
    CHECK(e.argmin_nu == project_kernel(Kernel::NonnegativeOrthant, e.argmin_nu));
  }
}

TEST_CASE("full-space kernel collapses to the smallest offset") {
  const WorstCaseFunction W = build_triples(zeta_star(2, 1.0), 1.0);
  std::mt19937_64 rng(11);
  double cmin = W.c[0];
  for (double c : W.c) cmin = std::min(cmin, c);
  for (int i = 0; i < 5; ++i) {
    const Vec y = gaussian_vec(3, 1.0, rng);
    const EvalResult e = eval_interpolant(W.triples, Kernel::FullSpace, y);
    CHECK(e.value == doctest::Approx(cmin).epsilon(1e-12));
    CHECK(norm(e.gradient) <= 1e-12);
  }
}

TEST_CASE("interpolant agrees with the pair-scan evaluator") {
  std::mt19937_64 rng(42);
  for (int n = 1; n <= 5; ++n) {
    const WorstCaseFunction W = build_triples(zeta_star(n, 1.0), 1.0);
    for (int p = 0; p < 20; ++p) {
      const Vec y = gaussian_vec(n + 1, 1.0, rng);
      const EvalResult ref = eval_interpolant(W.triples, Kernel::NonnegativeOrthant, y);
      const EvalResult fast = eval_worst_case(W, y);
      CHECK(std::abs(ref.value - fast.value) <= 1e-8);
    }
  }
}

TEST_CASE("interpolant convexity samples") {
  const WorstCaseFunction W = build_triples(zeta_star(4, 1.0), 1.0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const Vec y1 = gaussian_vec(5, 1.0, rng);
    const Vec y2 = gaussian_vec(5, 1.0, rng);
    const double lambda = unif(rng);
    Vec mix = scaled(y1, lambda);
    axpy(mix, 1.0 - lambda, y2);
    const double lhs =
        eval_interpolant(W.triples, Kernel::NonnegativeOrthant, mix).value;
    const double rhs =
        lambda * eval_interpolant(W.triples, Kernel::NonnegativeOrthant, y1).value +
        (1.0 - lambda) *
            eval_interpolant(W.triples, Kernel::NonnegativeOrthant, y2).value;
    CHECK(lhs <= rhs + 1e-9);
  }
}

TEST_CASE("interpolant co-coercivity samples") {
  const double L = 1.0;
  const WorstCaseFunction W = build_triples(zeta_star(3, 1.0), L);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const Vec y1 = gaussian_vec(4, 1.0, rng);
    const Vec y2 = gaussian_vec(4, 1.0, rng);
    const EvalResult e1 = eval_interpolant(W.triples, Kernel::NonnegativeOrthant, y1);
    const EvalResult e2 = eval_interpolant(W.triples, Kernel::NonnegativeOrthant, y2);
    const Vec dg = sub(e1.gradient, e2.gradient);
    const double slack = e2.value - e1.value - dot(e1.gradient, sub(y2, y1)) -
                         dot(dg, dg) / (2.0 * L);
    CHECK(slack >= -1e-9);
  }
}

TEST_CASE("interpolant gradient matches central differences") {
  const WorstCaseFunction W = build_triples(zeta_star(3, 1.0), 1.0);
  std::mt19937_64 rng(9);
  const double h = 1e-6;
  for (int i = 0; i < 10; ++i) {
    const Vec y = gaussian_vec(4, 1.0, rng);
    const EvalResult e = eval_interpolant(W.triples, Kernel::NonnegativeOrthant, y);
    Vec fd(4);
    for (int j = 0; j < 4; ++j) {
      Vec yp = y, ym = y;
      yp[j] += h;
      ym[j] -= h;
      fd[j] = (eval_interpolant(W.triples, Kernel::NonnegativeOrthant, yp).value -
               eval_interpolant(W.triples, Kernel::NonnegativeOrthant, ym).value) /
              (2.0 * h);
    }
    CHECK(norm(sub(e.gradient, fd)) <= 1e-5 * std::max(norm(e.gradient), 1e-12));
  }
}

TEST_CASE("interpolant input validation and solver error") {
  const WorstCaseFunction W = build_triples(zeta_star(2, 1.0), 1.0);
  CHECK_THROWS_AS(eval_interpolant(W.triples, Kernel::NonnegativeOrthant, zeros(5)),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      eval_interpolant(W.triples, Kernel::NonnegativeOrthant, zeros(3), 0.0),
      std::invalid_argument);
  CHECK_THROWS_AS(
      eval_interpolant(W.triples, Kernel::NonnegativeOrthant, zeros(3), 1e-10, 0),
      std::invalid_argument);
  // An exhausted iteration budget must surface as an error, not a silent
  // wrong answer. The optimum here sits strictly inside an edge, so no
  // single vertex can satisfy the gap test.
  const WorstCaseFunction W1 = build_triples(zeta_star(1, 1.0), 1.0);
  CHECK_THROWS_AS(eval_interpolant(W1.triples, Kernel::NonnegativeOrthant,
                                   {-0.408248290463863, 0.0}, 1e-12, 1),
                  SolverError);
}

TEST_CASE("triple set json round trip") {
  const WorstCaseFunction W = build_triples(zeta_star(2, 1.5), 2.0);
  const std::string text = triple_set_to_json(W.triples);
  const TripleSet back = triple_set_from_json(text);
  CHECK(back.L == W.triples.L);
  REQUIRE(back.points.size() == W.triples.points.size());
  for (std::size_t i = 0; i < back.points.size(); ++i) {
    CHECK(back.points[i].x == W.triples.points[i].x);
    CHECK(back.points[i].g == W.triples.points[i].g);
    CHECK(back.points[i].f == W.triples.points[i].f);
  }

  CHECK_THROWS(triple_set_from_json("{\"L\": 1.0}"));
  CHECK_THROWS_AS(
      triple_set_from_json(
          R"({"L": 1.0, "points": [{"x": [0, 0], "g": [0], "f": 0}]})"),
      std::invalid_argument);
}
