#include "minimax/methods.hpp"

#include <cmath>
#include <stdexcept>

#include "minimax/theta.hpp"

namespace minimax {

RunResult run_gd(FirstOrderOracle& oracle, const Vec& x0, int N, double L) {
  if (N < 1) throw std::invalid_argument("run_gd: N must be >= 1");
  RunResult result;
  result.method = "gd";
  Vec x = x0;
  for (int k = 0; k < N; ++k) {
    result.search_points.push_back(x);
    const OracleAnswer a = oracle.query(x);
    axpy(x, -1.0 / L, a.gradient);
    ++result.calls_used;
  }
  result.output = std::move(x);
  return result;
}

RunResult run_fgm(FirstOrderOracle& oracle, const Vec& x0, int N, double L) {
  if (N < 1) throw std::invalid_argument("run_fgm: N must be >= 1");
  RunResult result;
  result.method = "fgm";
  Vec x = x0;
  Vec y_prev = x0;
  double t = 1.0;
  for (int i = 0; i < N; ++i) {
    result.search_points.push_back(x);
    const OracleAnswer a = oracle.query(x);
    Vec y = x;
    axpy(y, -1.0 / L, a.gradient);
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    x = y;
    axpy(x, (t - 1.0) / t_next, sub(y, y_prev));
    y_prev = std::move(y);
    t = t_next;
    ++result.calls_used;
  }
  result.output = std::move(y_prev);
  return result;
}

RunResult run_ogm(FirstOrderOracle& oracle, const Vec& x0, int N, double L) {
  if (N < 1) throw std::invalid_argument("run_ogm: N must be >= 1");
  const std::vector<double>& theta = theta_sequence(N).values;
  RunResult result;
  result.method = "ogm";
  Vec x = x0;
  Vec y_prev = x0;
  for (int i = 0; i < N; ++i) {
    result.search_points.push_back(x);
    const OracleAnswer a = oracle.query(x);
    Vec y = x;
    axpy(y, -1.0 / L, a.gradient);
    Vec x_next = y;
    axpy(x_next, (theta[i] - 1.0) / theta[i + 1], sub(y, y_prev));
    axpy(x_next, theta[i] / theta[i + 1], sub(y, x));
    x = std::move(x_next);
    y_prev = std::move(y);
    ++result.calls_used;
  }
  result.output = std::move(x);
  return result;
}

const std::map<std::string, MethodFn>& method_registry() {
  static const std::map<std::string, MethodFn> registry = {
      {"gd", &run_gd}, {"fgm", &run_fgm}, {"ogm", &run_ogm}};
  return registry;
}

RunResult run_method(const std::string& name, FirstOrderOracle& oracle,
                     const Vec& x0, int N, double L) {
  const auto it = method_registry().find(name);
  if (it == method_registry().end()) {
    throw std::invalid_argument("run_method: unknown method '" + name + "'");
  }
  return it->second(oracle, x0, N, L);
}

}  // namespace minimax
