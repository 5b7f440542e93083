#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "lsr/parallel.hpp"
#include "lsr/point.hpp"
#include "lsr/special.hpp"

namespace lsr {

enum class TailMode {
  mapped,     // semi-infinite pieces are integrated after x = a + R(1/t - 1)
  truncated,  // integrate the core only and report an analytic tail bound
};

struct QuadratureSpec {
  double rel_tol = 1e-8;
  double abs_tol = 1e-14;
  std::int64_t max_evals = 40'000'000;
  double truncation_radius = 50.0;  // multiple of the integrand's decay scale
  std::int64_t subdivision_limit = 2'000'000;
  TailMode tail_mode = TailMode::mapped;
  bool strict = true;  // throw ToleranceNotMet when the budget runs out
};

void check_spec(const QuadratureSpec& spec);

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::int64_t evals = 0;
  double truncation_tail_bound = 0.0;
  bool converged = true;
};

// ---- generic adaptive engine on products of intervals ----

// One coordinate piece; lo may be -inf and hi may be +inf (not both).
struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

struct Region {
  std::vector<Interval> axes;  // 1 to 3 axes
};

using ScalarFn = std::function<double(const double* x)>;

// Integrates f over the union of the regions. Infinite pieces are mapped
// to (0,1] with scale `tail_scale`; cells use Gauss-Kronrod 7/15 in 1-D and
// the Genz-Malik 7/5 pair in 2-D/3-D. Values of regions touching infinity
// are accumulated into truncation_tail_bound as a diagnostic.
IntegralResult integrate_regions(const std::vector<Region>& regions, const ScalarFn& f,
                                 const QuadratureSpec& spec, double tail_scale,
                                 Exec exec = default_exec());

// Convenience 1-D integral on [a, b], either end possibly infinite.
IntegralResult integrate_1d(const std::function<double(double)>& f, double a, double b,
                            const QuadratureSpec& spec, double tail_scale = 1.0,
                            std::vector<double> breaks = {});

// ---- symmetry reductions of half-space and boundary integrals ----

enum class Reduction { radial2, axial3, boundary_radial1, boundary_axial2, bipolar3 };

struct ReducedIntegrand {
  // Called at a representative point of full dimension N (boundary
  // reductions pass y_N = 0).
  std::function<double(const Point&)> f;
  int N = 5;
  double scale = 1.0;              // decay length of the integrand
  std::vector<double> y1_breaks;   // centres along y_1 (axial3, bipolar3, boundary_axial2)
  double decay_power = -1.0;       // |f| <~ |y|^{-p}; used for truncated tails (default N+2)
  bool check_symmetry = true;
};

// Measures: radial2 uses polar (t, psi) in the (|ybar|, y_N) quarter plane
// with weight |S^{N-2}| rho^{N-2}; axial3 uses (y_1, rho, y_N) with
// |S^{N-3}| rho^{N-3}; the boundary variants drop y_N.
IntegralResult integrate_reduced(const ReducedIntegrand& integrand, Reduction reduction,
                                 const QuadratureSpec& spec, Exec exec = default_exec());

// ---- Monte Carlo on the half-space or its boundary ----

// Equal-weight mixture of radial densities
//   q(x) = d s^a / |S^{d-1}| (s^a + |x - c|^a)^{-(d/a+1)}
// whose tail |x|^{-(d+a)} dominates bubble powers. In half-space mode the
// last coordinate is reflected, so centres must lie on the boundary.
class MixtureSampler {
 public:
  MixtureSampler(int dim, std::vector<Point> centers, double scale, double tail, bool halfspace);

  int dim() const noexcept { return dim_; }
  double density(const Point& x) const;
  Point sample(double u_pick, double u_radius, const double* gaussians) const;
  int gaussians_needed() const noexcept { return dim_; }

 private:
  int dim_;
  std::vector<Point> centers_;
  double s_, a_;
  bool half_;
  double norm_;
};

struct McSpec {
  std::int64_t samples = 1'000'000;
  std::uint64_t seed = 12345;
};

// Block-partitioned estimator: block b draws from a std::mt19937_64 seeded by
// (seed, b); block statistics are merged in block order, so the serial and
// parallel paths agree bit for bit.
IntegralResult integrate_mc(const std::function<double(const Point&)>& f,
                            const MixtureSampler& sampler, const McSpec& spec,
                            Exec exec = default_exec());

// ---- one-dimensional reference integrals ----

// I_m^alpha = int_0^inf rho^alpha (1+rho^2)^{-m} = B((alpha+1)/2, m-(alpha+1)/2)/2.
double I_integral(double alpha, double mexp);
double I_integral_quadrature(double alpha, double mexp);
// phi_m = int_D^inf (t^2-1)^{-m} dt; closed form when m = 3/2.
double phi_integral(double mexp, double Dfrak);
double phi_integral_quadrature(double mexp, double Dfrak);

}  // namespace lsr
