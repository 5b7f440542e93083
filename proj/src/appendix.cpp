#include "lsr/appendix.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "lsr/bubble.hpp"
#include "lsr/error.hpp"
#include "lsr/energy.hpp"

namespace lsr {

double pair_decay_ratio(const Point& y, const Point& xi, const Point& xj, double alpha, double beta, double sigma) {
  const double a = 1.0 + dist(y, xj), b = 1.0 + dist(y, xi);
  const double e = alpha + beta - sigma;
  // Divide through by the larger envelope to stay in range far away.
  const double lo = std::min(a, b);
  const double num = std::pow(lo / a, alpha) * std::pow(lo / b, beta) * std::pow(dist(xi, xj) / lo, sigma);
  const double den = std::pow(lo / b, e) + std::pow(lo / a, e);
  return num / den;
}

namespace {

double draw_max(const PairDecaySpec& s, std::uint64_t seed, const double* bound, int* violations) {
  const int N = s.N;
  double worst = 0.0;
  for (int c = 0; c < s.n_configs; ++c) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(c), 0x61u};
    std::mt19937_64 g(seq);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::normal_distribution<double> gauss;
    const double d = std::pow(10.0, -1.0 + 4.0 * c / std::max(1, s.n_configs - 1));
    Point xi(N), xj(N), u(N);
    double nu = 0.0;
    for (int i = 0; i + 1 < N; ++i) {
      u[i] = gauss(g);
      nu += u[i] * u[i];
      xi[i] = 3.7 * c * (i == 0);
    }
    nu = std::sqrt(nu);
    for (int i = 0; i + 1 < N; ++i) xj[i] = xi[i] + d * u[i] / nu;
    Point mid(N), far(N);
    for (int i = 0; i < N; ++i) {
      mid[i] = 0.5 * (xi[i] + xj[i]);
      far[i] = xi[i] + 2.0 * (xj[i] - xi[i]);
    }
    const Point* anchors[] = {&xi, &xj, &mid, &far};
    for (int n = 0; n < s.n_samples; ++n) {
      const Point& a = *anchors[static_cast<int>(uni(g) * 4.0) % 4];
      const double t = std::max(1.0, d) * std::pow(10.0, -3.0 + 7.0 * uni(g));
      Point dir(N);
      double nd = 0.0;
      for (int i = 0; i < N; ++i) {
        dir[i] = gauss(g);
        nd += dir[i] * dir[i];
      }
      nd = std::sqrt(nd);
      Point y(N);
      for (int i = 0; i < N; ++i) y[i] = a[i] + t * dir[i] / nd;
      y[N - 1] = std::abs(y[N - 1]);
      const double q = pair_decay_ratio(y, xi, xj, s.alpha, s.beta, s.sigma);
      worst = std::max(worst, q);
      if (bound && violations && q > *bound) ++*violations;
    }
  }
  return worst;
}

}  // namespace

PairDecayResult pair_decay_suite(const PairDecaySpec& s) {
  if (!(s.sigma > 0.0) || !(s.sigma < std::min(s.alpha, s.beta)))
    throw Error(Errc::InvalidParameter, "need 0 < sigma < min(alpha, beta)");
  if (s.n_configs < 1 || s.n_samples < 1) throw Error(Errc::InvalidParameter, "empty sample plan");
  PairDecayResult r;
  r.C_proven = std::pow(2.0, s.sigma);
  r.C_fit = draw_max(s, s.fit_seed, nullptr, nullptr);
  const double bound = (1.0 + s.margin) * r.C_fit;
  r.C_check = draw_max(s, s.check_seed, &bound, &r.violations);
  r.samples = static_cast<std::int64_t>(s.n_configs) * s.n_samples;
  r.pass = r.violations == 0 && r.C_fit <= r.C_proven && r.C_check <= r.C_proven;
  return r;
}

double halfspace_potential_radial(int N, double sigma, double abs_y) {
  QuadratureSpec q;
  q.rel_tol = 1e-12;
  q.abs_tol = 1e-300;
  const double e = 2.0 + sigma;
  auto f = [e](double t) { return std::pow(1.0 + t, -e); };
  double inner = 0.0;
  if (abs_y > 0.0) {
    inner = std::pow(abs_y, 2.0 - N) *
            integrate_1d([&](double t) { return std::pow(t, N - 1.0) * f(t); }, 0.0, abs_y, q).value;
  }
  const double outer =
      integrate_1d([&](double t) { return t * f(t); }, abs_y, std::numeric_limits<double>::infinity(), q,
                   std::max(1.0, abs_y))
          .value;
  return 0.5 * sphere_area(N) * (inner + outer);
}

IntegralResult halfspace_potential_quadrature(int N, double sigma, double abs_y, bool boundary,
                                              const QuadratureSpec& spec) {
  ReducedIntegrand in;
  in.N = N;
  in.scale = std::max(1.0, 0.25 * abs_y);
  in.y1_breaks = {0.0, abs_y};
  in.check_symmetry = false;
  const double e = boundary ? 1.0 + sigma : 2.0 + sigma;
  in.f = [=](const Point& z) {
    Point y(N);
    y[0] = abs_y;
    const double d2 = dist_sq(y, z);
    if (d2 == 0.0) return 0.0;
    return std::pow(d2, 0.5 * (2 - N)) * std::pow(1.0 + norm(z), -e);
  };
  return integrate_reduced(in, boundary ? Reduction::boundary_axial2 : Reduction::axial3, spec);
}

PotentialDecayResult potential_decay_suite(int N, double sigma, bool boundary, const std::vector<double>& tested,
                                           const QuadratureSpec& spec) {
  if (!(sigma > 0.0) || !(sigma < N - 2.0)) throw Error(Errc::InvalidParameter, "need 0 < sigma < N-2");
  if (tested.empty()) throw Error(Errc::EmptyGrid, "no radii to test");
  PotentialDecayResult r;
  r.N = N;
  r.sigma = sigma;
  r.boundary = boundary;
  r.abs_y = tested;
  const double top = *std::max_element(tested.begin(), tested.end());
  r.abs_y.push_back(10.0 * top);
  r.abs_y.push_back(100.0 * top);
  for (double a : r.abs_y) {
    const double v = boundary ? halfspace_potential_quadrature(N, sigma, a, true, spec).value
                              : halfspace_potential_radial(N, sigma, a);
    r.ratios.push_back(v * std::pow(1.0 + a, sigma));
  }
  const std::size_t nt = tested.size();
  r.C_fit = *std::max_element(r.ratios.begin(), r.ratios.begin() + nt);
  const double p1 = r.ratios[nt], p2 = r.ratios[nt + 1];
  r.saturation = std::abs(p2 - p1) / p1;
  if (!boundary) r.limit = 0.5 * sphere_area(N) * (1.0 / (N - 2.0 - sigma) + 1.0 / sigma);
  // Bounded: the probes far beyond the tested range level off below a
  // constant of the size fitted on the tested radii.
  const double cap = std::max(r.C_fit, boundary ? std::max(p1, p2) : r.limit);
  r.pass = r.saturation < 0.05 && p2 <= cap * (1.0 + 1e-9) && cap <= 2.0 * r.C_fit;
  return r;
}

ConvolutionGainResult convolution_gain_suite(const ConvolutionGainSpec& s, const QuadratureSpec& quad) {
  const ProblemParams& p = s.params;
  validate(p);
  const int N = p.N;
  if (N < 5) throw Error(Errc::DimensionTooSmall, "the convolution estimate needs N >= 5");
  if (!(s.tau > 0.0) || !(s.tau < 1.5)) throw Error(Errc::InvalidParameter, "tau must lie in (0, 3/2)");
  if (s.k < 1 || s.k > 2) throw Error(Errc::InvalidParameter, "axial reduction supports k = 1 or 2");
  if (static_cast<int>(s.distances.size()) < s.tail_points + 2)
    throw Error(Errc::EmptyGrid, "too few distances for the gain fit");
  const RingAnsatz ring(RingConfig{s.k, s.r, s.Lambda, p});
  const double e = 0.5 * (N - 2) + s.tau;
  const double wpow = s.boundary ? 2.0 / (N - 2) : 4.0 / (N - 2);
  const double len = std::max(1.0, std::sqrt(p.Dfrak * p.Dfrak - 1.0)) / s.Lambda;

  auto envelope = [&](const Point& y, double ex) {
    double acc = 0.0;
    for (const auto& b : ring.bubbles()) acc += std::pow(1.0 + dist(y, b.center), -ex);
    return acc;
  };

  ConvolutionGainResult r;
  r.distances = s.distances;
  std::vector<Point> ys;
  for (double d : s.distances) {
    Point y(N);
    y[0] = s.r + d;
    ys.push_back(y);
    ReducedIntegrand in;
    in.N = N;
    in.scale = len;
    in.y1_breaks = {s.r, y[0]};
    if (s.k == 2) in.y1_breaks.push_back(-s.r);
    in.check_symmetry = false;
    in.f = [&, y](const Point& z) {
      const double d2 = dist_sq(y, z);
      if (d2 == 0.0) return 0.0;
      return std::pow(d2, 0.5 * (2 - N)) * std::pow(ring.value(z), wpow) * envelope(z, e);
    };
    r.lhs.push_back(integrate_reduced(in, s.boundary ? Reduction::boundary_axial2 : Reduction::axial3, quad).value);
  }
  // Gain: slope of log(lhs / envelope_e) against log(1+d) over the far points.
  const std::size_t n = s.distances.size();
  std::vector<double> xs, qs;
  for (std::size_t i = n - s.tail_points; i < n; ++i) {
    xs.push_back(1.0 + s.distances[i]);
    qs.push_back(r.lhs[i] / envelope(ys[i], e));
  }
  r.theta_fit = -loglog_fit(xs, qs).slope;
  r.theta_used = 0.5 * std::min(r.theta_fit, 1.0);
  for (std::size_t i = 0; i < n; ++i) r.ratios.push_back(r.lhs[i] / envelope(ys[i], e + r.theta_used));
  r.C_fit = *std::max_element(r.ratios.begin(), r.ratios.end());
  // The sup must be reached before the far tail for the bound to extend.
  r.pass = r.theta_fit > 0.0 && r.ratios.back() < r.C_fit;
  return r;
}

}  // namespace lsr
