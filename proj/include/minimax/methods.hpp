#ifndef MINIMAX_METHODS_HPP
#define MINIMAX_METHODS_HPP

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "minimax/oracle.hpp"
#include "minimax/vec.hpp"

namespace minimax {

/// Trajectory of one method run. gap and bound stay NaN until the harness
/// finalizes the run against a resisting oracle.
struct RunResult {
  std::string method;
  std::vector<Vec> search_points;  // x_0 .. x_{N-1}
  Vec output;
  int calls_used = 0;
  double gap = std::numeric_limits<double>::quiet_NaN();
  double bound = std::numeric_limits<double>::quiet_NaN();
};

/// Gradient descent with fixed step 1/L; outputs x_N after N steps.
RunResult run_gd(FirstOrderOracle& oracle, const Vec& x0, int N, double L);

/// Fast gradient method: t_0 = 1, t_{i+1} = (1 + sqrt(1 + 4 t_i^2)) / 2,
///   y_{i+1} = x_i - grad(x_i)/L,
///   x_{i+1} = y_{i+1} + ((t_i - 1)/t_{i+1}) (y_{i+1} - y_i).
/// Outputs y_N, the last gradient-step point.
RunResult run_fgm(FirstOrderOracle& oracle, const Vec& x0, int N, double L);

/// Optimized gradient method with the theta sequence (final step uses the
/// widened coefficient):
///   y_{i+1} = x_i - grad(x_i)/L,
///   x_{i+1} = y_{i+1} + ((theta_i - 1)/theta_{i+1}) (y_{i+1} - y_i)
///                     + (theta_i/theta_{i+1}) (y_{i+1} - x_i).
/// Outputs x_N; no gradient is taken there.
RunResult run_ogm(FirstOrderOracle& oracle, const Vec& x0, int N, double L);

using MethodFn = RunResult (*)(FirstOrderOracle&, const Vec&, int, double);

/// Methods selectable by name: "gd", "fgm", "ogm".
const std::map<std::string, MethodFn>& method_registry();

/// Looks up and runs a registered method; throws std::invalid_argument for
/// unknown names.
RunResult run_method(const std::string& name, FirstOrderOracle& oracle,
                     const Vec& x0, int N, double L);

}  // namespace minimax

#endif
