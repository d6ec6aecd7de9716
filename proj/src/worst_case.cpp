#include "minimax/worst_case.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace minimax {

namespace {

constexpr double kIdentityTol = 1e-10;
constexpr double kBisectWidth = 1e-14;
constexpr int kBisectIterations = 200;

double rel_err(double observed, double expected) {
  return std::abs(observed - expected) / std::max(1.0, std::abs(expected));
}

}  // namespace

WorstCaseFunction build_triples(const ZetaVector& zeta, double L) {
  if (!(L > 0.0)) throw std::invalid_argument("build_triples: L must be positive");
  if (zeta.N < 1 || !zeta.strictly_decreasing_to_zero()) {
    throw std::invalid_argument(
        "build_triples: zeta must be strictly decreasing with last entry 0");
  }
  const int N = zeta.N;
  const std::vector<double>& z = zeta.values;
  const std::size_t dim = static_cast<std::size_t>(N) + 1;

  std::vector<double> inv_sqrt(dim);
  for (std::size_t j = 0; j < dim; ++j) inv_sqrt[j] = 1.0 / std::sqrt(z[j] - z[j + 1]);

  WorstCaseFunction W;
  W.N = N;
  W.L = L;
  W.zeta = zeta;
  W.triples.L = L;
  W.triples.points.resize(dim + 1);
  for (std::size_t i = 0; i <= dim; ++i) {
    TriplePoint& p = W.triples.points[i];
    p.x.assign(dim, 0.0);
    for (std::size_t j = 0; j < i && j < dim; ++j) {
      p.x[j] = -(z[j] - z[i + 1]) * inv_sqrt[j];
    }
    p.g.assign(dim, 0.0);
    if (i < dim) {
      p.g[i] = L * std::sqrt(z[i] - z[i + 1]);
      p.f = 0.5 * L * (z[i] + z[i + 1]);
    } else {
      p.f = 0.0;
    }
  }

  W.u.resize(dim + 1);
  W.c.resize(dim + 1);
  for (std::size_t i = 0; i <= dim; ++i) {
    const TriplePoint& p = W.triples.points[i];
    W.u[i] = p.x;
    axpy(W.u[i], -1.0 / L, p.g);
    W.c[i] = p.f - dot(p.g, p.g) / (2.0 * L);
  }
  return W;
}

EvalResult eval_worst_case(const WorstCaseFunction& W, const Vec& y) {
  const std::size_t dim = static_cast<std::size_t>(W.N) + 1;
  if (y.size() != dim) throw std::invalid_argument("eval_worst_case: dimension mismatch");
  const double L = W.L;

  double best_value = std::numeric_limits<double>::infinity();
  int best_m = -1;
  double best_t = 0.0;
  Vec best_v;

  Vec v(dim);
  for (int m = 0; m <= W.N; ++m) {
    const Vec& um = W.u[m];
    const Vec& un = W.u[m + 1];
    // v(t) = y - t*u_m - (1-t)*u_{m+1}; phi(t) = (L/2)||max(v,0)||^2 + t c_m + (1-t) c_{m+1}
    auto slope = [&](double t) {
      double s = 0.0;
      for (std::size_t j = 0; j < dim; ++j) {
        const double vj = y[j] - t * um[j] - (1.0 - t) * un[j];
        if (vj > 0.0) s -= vj * (um[j] - un[j]);
      }
      return L * s + W.c[m] - W.c[m + 1];
    };
    double t;
    if (slope(0.0) >= 0.0) {
      t = 0.0;
    } else if (slope(1.0) <= 0.0) {
      t = 1.0;
    } else {
      double lo = 0.0, hi = 1.0;
      for (int b = 0; b < kBisectIterations && hi - lo > kBisectWidth; ++b) {
        const double mid = 0.5 * (lo + hi);
        (slope(mid) < 0.0 ? lo : hi) = mid;
      }
      t = 0.5 * (lo + hi);
    }
    double quad = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      v[j] = y[j] - t * um[j] - (1.0 - t) * un[j];
      if (v[j] > 0.0) quad += v[j] * v[j];
    }
    const double value = 0.5 * L * quad + t * W.c[m] + (1.0 - t) * W.c[m + 1];
    if (value < best_value) {
      best_value = value;
      best_m = m;
      best_t = t;
      best_v = v;
    }
  }

  EvalResult result;
  result.value = best_value;
  result.gradient = scaled(positive_part(best_v), L);
  result.argmin_nu = positive_part(scaled(best_v, -1.0));
  result.argmin_alpha.alpha.assign(dim + 1, 0.0);
  result.argmin_alpha.alpha[best_m] = best_t;
  result.argmin_alpha.alpha[best_m + 1] = 1.0 - best_t;
  result.active_pair = {best_m, best_t};
  return result;
}

EvalResult eval_worst_case_reference(const WorstCaseFunction& W, const Vec& y,
                                     double tol) {
  return eval_interpolant(W.triples, Kernel::NonnegativeOrthant, y, tol);
}

IdentityReport verify_identities(const WorstCaseFunction& W, double R) {
  if (!(R > 0.0)) throw std::invalid_argument("verify_identities: R must be positive");
  const int N = W.N;
  const std::vector<double>& z = W.zeta.values;
  const double L = W.L;
  IdentityReport report;

  for (int i = 0; i <= N + 1; ++i) {
    report.values_err = std::max(report.values_err, rel_err(W.c[i], L * z[i + 1]));
  }
  report.values_ok = report.values_err <= kIdentityTol;

  // g_i is supported on coordinate i, so <g_i, -u_j> = g_i[i] * (-u_j[i]).
  // g_{N+1} is identically zero; the closed form does not cover i = j = N+1.
  for (int i = 0; i <= N + 1; ++i) {
    const double gi = i <= N ? W.triples.points[i].g[i] : 0.0;
    for (int j = 0; j <= N + 1; ++j) {
      if (i == N + 1 && j == N + 1) continue;
      const double lhs = i <= N ? gi * -W.u[j][i] : 0.0;
      const double expected = L * std::max(z[i] - z[j + 1], 0.0);
      report.inner_err = std::max(report.inner_err, rel_err(lhs, expected));
    }
  }
  report.inner_ok = report.inner_err <= kIdentityTol;

  for (const Vec& u : W.u) {
    for (double comp : u) {
      report.nonneg_err = std::max(report.nonneg_err, comp);
    }
  }
  report.nonneg_ok = report.nonneg_err <= kIdentityTol;

  const double xnorm = norm(W.triples.points[N + 1].x);
  report.norm_err = std::abs(xnorm - R) / R;
  report.norm_ok = report.norm_err <= kIdentityTol;

  const double thN = theta_sequence(N).back();
  const double expected_gap = L * R * R / (2.0 * thN * thN);
  report.min_gap_err = std::abs(W.triples.points[N].f - expected_gap) / expected_gap;
  report.min_gap_ok = report.min_gap_err <= kIdentityTol;
  return report;
}

std::string worst_case_to_json(const WorstCaseFunction& W) {
  nlohmann::json j;
  j["N"] = W.N;
  j["L"] = W.L;
  j["R"] = W.zeta.R;
  j["zeta"] = W.zeta.values;
  return j.dump();
}

WorstCaseFunction worst_case_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  ZetaVector zeta;
  zeta.N = j.at("N").get<int>();
  zeta.R = j.at("R").get<double>();
  zeta.values = j.at("zeta").get<std::vector<double>>();
  return build_triples(zeta, j.at("L").get<double>());
}

}  // namespace minimax
