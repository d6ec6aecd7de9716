#ifndef MINIMAX_INTERPOLATION_HPP
#define MINIMAX_INTERPOLATION_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "minimax/vec.hpp"

namespace minimax {

/// One first-order data point: position, gradient, value.
struct TriplePoint {
  Vec x;
  Vec g;
  double f = 0.0;
};

/// First-order data {(x_i, g_i, f_i)} together with the gradient Lipschitz
/// constant L. All points share one dimension.
struct TripleSet {
  std::vector<TriplePoint> points;
  double L = 1.0;

  int dimension() const {
    return points.empty() ? 0 : static_cast<int>(points.front().x.size());
  }
  void validate() const;
};

/// Kernel set for the auxiliary variable nu. Every variant contains the
/// origin.
enum class Kernel { ZeroPoint, NonnegativeOrthant, FullSpace };

/// Nonnegative weights summing to one.
struct SimplexWeights {
  std::vector<double> alpha;

  /// alpha_i >= -1e-14 and |sum - 1| <= 1e-12.
  bool valid() const;
};

/// Result of minimizing the inner problem at a point y.
struct EvalResult {
  double value = 0.0;
  Vec gradient;
  Vec argmin_nu;
  SimplexWeights argmin_alpha;
  /// Winning consecutive pair (m, t), set only by the pair-scan evaluator.
  std::optional<std::pair<int, double>> active_pair;
};

/// Per-point and per-ordered-pair interpolation conditions.
struct ConditionReport {
  std::vector<char> conic_ok;                  // ||P_C(-g_i/L)|| <= 1e-12
  std::vector<std::vector<char>> pairwise_ok;  // smoothness inequality slack >= -1e-12
  bool overall = false;
};

/// Thrown when the inner solver hits its iteration cap before reaching the
/// requested duality gap.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

/// Euclidean projection of v onto the kernel set.
Vec project_kernel(Kernel kernel, const Vec& v);

/// Checks the two sufficient conditions for the interpolant to pass through
/// every triple: P_C(-g_i/L) = 0 and, for every ordered pair (i, j),
///   (1/2L) ||g_i - g_j||^2 <= f_j - f_i - <g_i, x_j - x_i>.
ConditionReport check_interpolation_conditions(const TripleSet& T, Kernel kernel);

/// The underlying quadratic
///   w(y, nu, alpha) = (L/2) ||y + nu - sum_i alpha_i (x_i - g_i/L)||^2
///                     + sum_i alpha_i (f_i - ||g_i||^2 / (2L)).
double eval_quadratic_w(const TripleSet& T, const Vec& y, const Vec& nu,
                        const SimplexWeights& alpha);

/// Minimizes w(y, nu, alpha) over nu in the kernel and alpha in the simplex.
/// nu is eliminated in closed form through project_kernel; the reduced convex
/// objective is minimized over the simplex by Frank-Wolfe with away steps and
/// exact line search, stopping once the Frank-Wolfe gap is <= tol.
/// Throws SolverError if the iteration cap is hit first.
EvalResult eval_interpolant(const TripleSet& T, Kernel kernel, const Vec& y,
                            double tol = 1e-10, int max_iterations = 100000);

/// JSON round trip, schema {"L": float, "points": [{"x": [...], "g": [...], "f": ...}]}.
std::string triple_set_to_json(const TripleSet& T);
TripleSet triple_set_from_json(const std::string& text);

}  // namespace minimax

#endif
