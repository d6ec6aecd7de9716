#ifndef MINIMAX_THETA_HPP
#define MINIMAX_THETA_HPP

#include <optional>
#include <vector>

namespace minimax {

/// Step-size/weight sequence driving both the optimized gradient method and
/// the certified risk level L*R^2 / (2*theta_N^2).
///
/// theta_0 = 1,
/// theta_i = (1 + sqrt(1 + 4*theta_{i-1}^2)) / 2   for i = 1..N-1,
/// theta_N = (1 + sqrt(1 + 8*theta_{N-1}^2)) / 2.
struct ThetaSequence {
  int N = 0;                   // oracle-call budget, N >= 1
  std::vector<double> values;  // theta_0..theta_N

  double back() const { return values.back(); }
};

/// Parameter vector of the worst-case instance. Strictly decreasing with
/// zeta_{N+2} = 0; units of length^2 (scales as R^2).
struct ZetaVector {
  int N = 0;
  double R = 0.0;
  std::vector<double> values;  // zeta_0..zeta_{N+2}

  /// Strict monotonicity zeta_0 > ... > zeta_{N+1} > zeta_{N+2} = 0.
  bool strictly_decreasing_to_zero() const;
};

/// Closed-form risk levels for the standard problem classes.
struct BoundsReport {
  double L = 0.0;
  double R = 0.0;
  int N = 0;
  double smooth_exact = 0.0;    // L*R^2 / (2*theta_N^2)
  double quadratic_ref = 0.0;   // L*R^2 / (2*(2N+1)^2)
  std::optional<double> nonsmooth_ref;  // M*R / sqrt(N+1), when M given
};

/// Computes theta_0..theta_N. Rejects N < 1: the base case and the final-step
/// formula would both claim index 0.
ThetaSequence theta_sequence(int N);

/// The worst-case parameter vector:
///   zeta_{N+2} = 0,
///   zeta_{N+1} = (theta_N - 1) R^2 / (theta_N^2 (2 theta_N - 1)),
///   zeta_N     = theta_N / (theta_N - 1) * zeta_{N+1},
///   zeta_i     = 2 theta_i / (2 theta_i - 1) * zeta_{i+1},  i < N.
ZetaVector zeta_star(int N, double R);

/// Reference bound table; nonsmooth_ref present iff M is given.
BoundsReport reference_bounds(double L, double R, int N,
                              std::optional<double> M = std::nullopt);

}  // namespace minimax

#endif
