#include "minimax/theta.hpp"

#include <cmath>
#include <stdexcept>

namespace minimax {

bool ZetaVector::strictly_decreasing_to_zero() const {
  if (values.size() != static_cast<std::size_t>(N) + 3) return false;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    if (!(values[i] > values[i + 1])) return false;
  }
  return values.back() == 0.0;
}

ThetaSequence theta_sequence(int N) {
  if (N < 1) throw std::invalid_argument("theta_sequence: N must be >= 1");
  ThetaSequence seq;
  seq.N = N;
  seq.values.resize(static_cast<std::size_t>(N) + 1);
  seq.values[0] = 1.0;
  for (int i = 1; i < N; ++i) {
    const double prev = seq.values[i - 1];
    seq.values[i] = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * prev * prev));
  }
  const double prev = seq.values[N - 1];
  seq.values[N] = 0.5 * (1.0 + std::sqrt(1.0 + 8.0 * prev * prev));
  return seq;
}

ZetaVector zeta_star(int N, double R) {
  if (N < 1) throw std::invalid_argument("zeta_star: N must be >= 1");
  if (!(R > 0.0)) throw std::invalid_argument("zeta_star: R must be positive");
  const ThetaSequence theta = theta_sequence(N);
  const double thN = theta.values[N];

  ZetaVector zeta;
  zeta.N = N;
  zeta.R = R;
  zeta.values.resize(static_cast<std::size_t>(N) + 3);
  zeta.values[N + 2] = 0.0;
  zeta.values[N + 1] = (thN - 1.0) * R * R / (thN * thN * (2.0 * thN - 1.0));
  zeta.values[N] = thN / (thN - 1.0) * zeta.values[N + 1];
  for (int i = N - 1; i >= 0; --i) {
    const double th = theta.values[i];
    zeta.values[i] = 2.0 * th / (2.0 * th - 1.0) * zeta.values[i + 1];
  }
  return zeta;
}

BoundsReport reference_bounds(double L, double R, int N, std::optional<double> M) {
  if (!(L > 0.0) || !(R > 0.0)) {
    throw std::invalid_argument("reference_bounds: L and R must be positive");
  }
  if (N < 1) throw std::invalid_argument("reference_bounds: N must be >= 1");
  if (M && !(*M > 0.0)) {
    throw std::invalid_argument("reference_bounds: M must be positive");
  }
  BoundsReport report;
  report.L = L;
  report.R = R;
  report.N = N;
  const double thN = theta_sequence(N).back();
  report.smooth_exact = L * R * R / (2.0 * thN * thN);
  const double q = 2.0 * N + 1.0;
  report.quadratic_ref = L * R * R / (2.0 * q * q);
  if (M) report.nonsmooth_ref = *M * R / std::sqrt(N + 1.0);
  return report;
}

}  // namespace minimax
