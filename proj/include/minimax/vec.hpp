#ifndef MINIMAX_VEC_HPP
#define MINIMAX_VEC_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace minimax {

using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

// a += s * b
inline void axpy(Vec& a, double s, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("axpy: dimension mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
}

inline void scale(Vec& a, double s) {
  for (double& v : a) v *= s;
}

inline Vec sub(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("sub: dimension mismatch");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec add(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("add: dimension mismatch");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec scaled(const Vec& a, double s) {
  Vec r = a;
  scale(r, s);
  return r;
}

// componentwise max(a, 0)
inline Vec positive_part(const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] > 0.0 ? a[i] : 0.0;
  return r;
}

inline Vec zeros(std::size_t n) { return Vec(n, 0.0); }

inline Vec unit(std::size_t n, std::size_t i) {
  Vec r(n, 0.0);
  r.at(i) = 1.0;
  return r;
}

}  // namespace minimax

#endif
