#include "minimax/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

#include <json.hpp>

namespace minimax {

namespace {

constexpr double kConicTol = 1e-12;
constexpr double kPairwiseTol = 1e-12;
constexpr int kBisectIterations = 200;

// Residual after folding the optimal nu back in: rho(r) = r + P_C(-r).
Vec fold_kernel(Kernel kernel, const Vec& r) {
  switch (kernel) {
    case Kernel::ZeroPoint:
      return r;
    case Kernel::NonnegativeOrthant:
      return positive_part(r);
    case Kernel::FullSpace:
      return zeros(r.size());
  }
  throw std::logic_error("fold_kernel: unknown kernel");
}

}  // namespace

void TripleSet::validate() const {
  if (points.empty()) throw std::invalid_argument("TripleSet: no points");
  if (!(L > 0.0)) throw std::invalid_argument("TripleSet: L must be positive");
  const std::size_t d = points.front().x.size();
  for (const TriplePoint& p : points) {
    if (p.x.size() != d || p.g.size() != d) {
      throw std::invalid_argument("TripleSet: inconsistent dimensions");
    }
  }
}

bool SimplexWeights::valid() const {
  double sum = 0.0;
  for (double a : alpha) {
    if (a < -1e-14) return false;
    sum += a;
  }
  return std::abs(sum - 1.0) <= 1e-12;
}

Vec project_kernel(Kernel kernel, const Vec& v) {
  switch (kernel) {
    case Kernel::ZeroPoint:
      return zeros(v.size());
    case Kernel::NonnegativeOrthant:
      return positive_part(v);
    case Kernel::FullSpace:
      return v;
  }
  throw std::logic_error("project_kernel: unknown kernel");
}

ConditionReport check_interpolation_conditions(const TripleSet& T, Kernel kernel) {
  T.validate();
  const std::size_t n = T.points.size();
  const double L = T.L;
  ConditionReport report;
  report.conic_ok.resize(n);
  report.pairwise_ok.assign(n, std::vector<char>(n));
  report.overall = true;

  for (std::size_t i = 0; i < n; ++i) {
    const Vec proj = project_kernel(kernel, scaled(T.points[i].g, -1.0 / L));
    report.conic_ok[i] = norm(proj) <= kConicTol;
    if (!report.conic_ok[i]) report.overall = false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const TriplePoint& pi = T.points[i];
    for (std::size_t j = 0; j < n; ++j) {
      const TriplePoint& pj = T.points[j];
      const Vec dg = sub(pi.g, pj.g);
      const double slack = pj.f - pi.f - dot(pi.g, sub(pj.x, pi.x)) -
                           dot(dg, dg) / (2.0 * L);
      report.pairwise_ok[i][j] = slack >= -kPairwiseTol;
      if (!report.pairwise_ok[i][j]) report.overall = false;
    }
  }
  return report;
}

double eval_quadratic_w(const TripleSet& T, const Vec& y, const Vec& nu,
                        const SimplexWeights& alpha) {
  T.validate();
  const std::size_t d = static_cast<std::size_t>(T.dimension());
  if (y.size() != d || nu.size() != d) {
    throw std::invalid_argument("eval_quadratic_w: dimension mismatch");
  }
  if (alpha.alpha.size() != T.points.size()) {
    throw std::invalid_argument("eval_quadratic_w: weight count mismatch");
  }
  if (!alpha.valid()) throw std::invalid_argument("eval_quadratic_w: invalid weights");

  const double L = T.L;
  Vec residual = add(y, nu);
  double linear = 0.0;
  for (std::size_t i = 0; i < T.points.size(); ++i) {
    const double a = alpha.alpha[i];
    const TriplePoint& p = T.points[i];
    for (std::size_t k = 0; k < d; ++k) {
      residual[k] -= a * (p.x[k] - p.g[k] / L);
    }
    linear += a * (p.f - dot(p.g, p.g) / (2.0 * L));
  }
  return 0.5 * L * dot(residual, residual) + linear;
}

EvalResult eval_interpolant(const TripleSet& T, Kernel kernel, const Vec& y,
                            double tol, int max_iterations) {
  T.validate();
  if (!(tol > 0.0)) throw std::invalid_argument("eval_interpolant: tol must be positive");
  if (max_iterations < 1) {
    throw std::invalid_argument("eval_interpolant: max_iterations must be >= 1");
  }
  const std::size_t d = static_cast<std::size_t>(T.dimension());
  if (y.size() != d) throw std::invalid_argument("eval_interpolant: dimension mismatch");

  const double L = T.L;
  const std::size_t K = T.points.size();
  std::vector<Vec> u(K);
  std::vector<double> c(K);
  for (std::size_t i = 0; i < K; ++i) {
    u[i] = T.points[i].x;
    axpy(u[i], -1.0 / L, T.points[i].g);
    c[i] = T.points[i].f - dot(T.points[i].g, T.points[i].g) / (2.0 * L);
  }

  auto residual_of = [&](const std::vector<double>& alpha) {
    Vec r = y;
    for (std::size_t i = 0; i < K; ++i) axpy(r, -alpha[i], u[i]);
    return r;
  };
  auto objective_of = [&](const std::vector<double>& alpha) {
    const Vec rho = fold_kernel(kernel, residual_of(alpha));
    double lin = 0.0;
    for (std::size_t i = 0; i < K; ++i) lin += alpha[i] * c[i];
    return 0.5 * L * dot(rho, rho) + lin;
  };

  // Start from the best vertex.
  std::vector<double> alpha(K, 0.0);
  {
    std::size_t best = 0;
    double best_val = std::numeric_limits<double>::infinity();
    std::vector<double> probe(K, 0.0);
    for (std::size_t j = 0; j < K; ++j) {
      probe[j] = 1.0;
      const double v = objective_of(probe);
      probe[j] = 0.0;
      if (v < best_val) {
        best_val = v;
        best = j;
      }
    }
    alpha[best] = 1.0;
  }

  double gap = std::numeric_limits<double>::infinity();
  bool converged = false;
  for (int iter = 0; iter < max_iterations; ++iter) {
    const Vec r = residual_of(alpha);
    const Vec rho = fold_kernel(kernel, r);
    std::vector<double> grad(K);
    for (std::size_t i = 0; i < K; ++i) grad[i] = c[i] - L * dot(u[i], rho);

    double grad_dot_alpha = 0.0;
    for (std::size_t i = 0; i < K; ++i) grad_dot_alpha += grad[i] * alpha[i];

    // Frank-Wolfe vertex (smallest index on ties) and away vertex.
    std::size_t s = 0;
    for (std::size_t i = 1; i < K; ++i) {
      if (grad[i] < grad[s]) s = i;
    }
    const double fw_gap = grad_dot_alpha - grad[s];
    gap = fw_gap;
    if (fw_gap <= tol) {
      converged = true;
      break;
    }
    std::size_t a = s;
    double away_grad = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < K; ++i) {
      if (alpha[i] > 0.0 && grad[i] > away_grad) {
        away_grad = grad[i];
        a = i;
      }
    }
    const double away_gap = away_grad - grad_dot_alpha;

    // Direction d and step cap. Away steps are what lets the solver clear
    // weights stranded off the optimal face; plain steps alone stall there.
    const bool use_fw = fw_gap >= away_gap;
    std::vector<double> dir(K);
    double gamma_max;
    if (use_fw) {
      for (std::size_t i = 0; i < K; ++i) dir[i] = -alpha[i];
      dir[s] += 1.0;
      gamma_max = 1.0;
    } else {
      dir = alpha;
      dir[a] -= 1.0;
      gamma_max = alpha[a] / (1.0 - alpha[a]);
      if (!(gamma_max <= 1e8)) gamma_max = 1e8;
    }

    Vec q(d, 0.0);
    for (std::size_t i = 0; i < K; ++i) {
      if (dir[i] != 0.0) axpy(q, dir[i], u[i]);
    }
    double c_dot_dir = 0.0;
    for (std::size_t i = 0; i < K; ++i) c_dot_dir += c[i] * dir[i];

    // Exact line search: bisection on the derivative of the convex 1-D slice.
    auto slope = [&](double gamma) {
      Vec rg = r;
      axpy(rg, -gamma, q);
      return c_dot_dir - L * dot(q, fold_kernel(kernel, rg));
    };
    double gamma;
    if (slope(gamma_max) <= 0.0) {
      gamma = gamma_max;
    } else if (slope(0.0) >= 0.0) {
      gamma = 0.0;
    } else {
      double lo = 0.0, hi = gamma_max;
      const double width_tol = 1e-14 * std::max(1.0, gamma_max);
      for (int b = 0; b < kBisectIterations && hi - lo > width_tol; ++b) {
        const double mid = 0.5 * (lo + hi);
        (slope(mid) < 0.0 ? lo : hi) = mid;
      }
      gamma = 0.5 * (lo + hi);
    }

    if (use_fw) {
      for (std::size_t i = 0; i < K; ++i) alpha[i] *= 1.0 - gamma;
      alpha[s] += gamma;
    } else {
      for (std::size_t i = 0; i < K; ++i) alpha[i] *= 1.0 + gamma;
      alpha[a] -= gamma;
      if (alpha[a] < 0.0) alpha[a] = 0.0;
    }
    double sum = 0.0;
    for (double v : alpha) sum += v;
    for (double& v : alpha) v /= sum;
  }
  if (!converged) {
    throw SolverError("eval_interpolant: iteration cap reached, gap " +
                      std::to_string(gap));
  }

  EvalResult result;
  const Vec r = residual_of(alpha);
  const Vec rho = fold_kernel(kernel, r);
  result.value = objective_of(alpha);
  result.gradient = scaled(rho, L);
  result.argmin_nu = project_kernel(kernel, scaled(r, -1.0));
  result.argmin_alpha.alpha = std::move(alpha);
  return result;
}

std::string triple_set_to_json(const TripleSet& T) {
  nlohmann::json j;
  j["L"] = T.L;
  j["points"] = nlohmann::json::array();
  for (const TriplePoint& p : T.points) {
    j["points"].push_back({{"x", p.x}, {"g", p.g}, {"f", p.f}});
  }
  return j.dump();
}

TripleSet triple_set_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  TripleSet T;
  T.L = j.at("L").get<double>();
  for (const nlohmann::json& jp : j.at("points")) {
    TriplePoint p;
    p.x = jp.at("x").get<Vec>();
    p.g = jp.at("g").get<Vec>();
    p.f = jp.at("f").get<double>();
    T.points.push_back(std::move(p));
  }
  T.validate();
  return T;
}

}  // namespace minimax
