#pragma once

#include <random>
#include <string>
#include <vector>

#include "lsr/point.hpp"

namespace testing {

// Points of the closed half-space with |y| up to `spread`.
inline std::vector<lsr::Point> random_points(int N, int count, double spread, std::uint64_t seed,
                                             bool boundary = false) {
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<double> uni(-spread, spread);
  std::vector<lsr::Point> pts;
  for (int i = 0; i < count; ++i) {
    lsr::Point p(N);
    for (int d = 0; d < N; ++d) p[d] = uni(g);
    p[N - 1] = boundary ? 0.0 : std::abs(p[N - 1]);
    pts.push_back(p);
  }
  return pts;
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace testing

#include "lsr/coeffs.hpp"

namespace testing {

// F_j - k A written out again in long double, as a finite-difference oracle.
inline long double reduced_minus_A(long double r, long double L, int k, const lsr::ExpansionConstants& c) {
  const lsr::ProblemParams& p = c.params;
  const long double j = c.regime.frak_m;
  const long double m = std::pow(static_cast<long double>(k), (p.N - 2.0L) / (p.N - 2.0L - j));
  const long double d = m * p.r0 - r;
  const long double mj = std::pow(m, -j);
  const long double bracket =
      c.A1 / std::pow(L, j) - c.B1 / (std::pow(L, p.N - 2.0L) * std::pow(static_cast<long double>(p.r0), p.N - 2.0L));
  return k * (bracket * mj + c.A2 * d * d * mj / std::pow(L, j - 2.0L));
}

// Fourth-order central difference.
template <class F>
long double diff4(F&& f, long double x, long double h) {
  return (8.0L * (f(x + h) - f(x - h)) - (f(x + 2.0L * h) - f(x - 2.0L * h))) / (12.0L * h);
}

}  // namespace testing
