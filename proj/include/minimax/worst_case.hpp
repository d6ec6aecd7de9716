#ifndef MINIMAX_WORST_CASE_HPP
#define MINIMAX_WORST_CASE_HPP

#include <string>
#include <vector>

#include "minimax/interpolation.hpp"
#include "minimax/theta.hpp"
#include "minimax/vec.hpp"

namespace minimax {

/// The worst-case instance in dimension N+1, built from a strictly
/// decreasing zeta vector:
///   x_i = -sum_{j<i} (zeta_j - zeta_{i+1}) / sqrt(zeta_j - zeta_{j+1}) e_j,
///   g_i = L sqrt(zeta_i - zeta_{i+1}) e_i   (i <= N),  g_{N+1} = 0,
///   f_i = (L/2)(zeta_i + zeta_{i+1})        (i <= N),  f_{N+1} = 0.
/// u_i = x_i - g_i/L and c_i = f_i - ||g_i||^2/(2L) are precomputed.
struct WorstCaseFunction {
  int N = 0;
  double L = 1.0;
  ZetaVector zeta;
  TripleSet triples;
  std::vector<Vec> u;
  std::vector<double> c;
};

/// Per-identity outcome of verify_identities. Failures are reported through
/// the flags, never thrown.
struct IdentityReport {
  bool values_ok = false;      // c_i = L * zeta_{i+1}
  bool inner_ok = false;       // <g_i, -u_j> = L * max(zeta_i - zeta_{j+1}, 0)
  bool nonneg_ok = false;      // -u_i componentwise >= 0
  bool norm_ok = false;        // ||x_{N+1}|| = R
  bool min_gap_ok = false;     // f_N = L R^2 / (2 theta_N^2)
  double values_err = 0.0;
  double inner_err = 0.0;
  double nonneg_err = 0.0;
  double norm_err = 0.0;
  double min_gap_err = 0.0;

  bool all() const {
    return values_ok && inner_ok && nonneg_ok && norm_ok && min_gap_ok;
  }
};

/// Builds the instance from zeta; rejects zeta that is not strictly
/// decreasing to zero.
WorstCaseFunction build_triples(const ZetaVector& zeta, double L);

/// Fast evaluator. The minimizing weights can always be supported on a
/// consecutive index pair (m, m+1), so the simplex problem splits into N+1
/// one-dimensional convex problems, each solved by bisection on the
/// derivative over t in [0, 1]. Ties across m go to the smallest m.
EvalResult eval_worst_case(const WorstCaseFunction& W, const Vec& y);

/// Independent check path: solves the full simplex problem with the general
/// interpolation solver over the nonnegative orthant kernel.
EvalResult eval_worst_case_reference(const WorstCaseFunction& W, const Vec& y,
                                     double tol = 1e-10);

/// Checks the closed-form identities of an instance built from
/// zeta_star(N, R), each at relative tolerance 1e-10.
IdentityReport verify_identities(const WorstCaseFunction& W, double R);

/// JSON round trip, schema {"N": int, "L": float, "R": float, "zeta": [...]}.
std::string worst_case_to_json(const WorstCaseFunction& W);
WorstCaseFunction worst_case_from_json(const std::string& text);

}  // namespace minimax

#endif
