#pragma once

#include <functional>
#include <vector>

#include "lsr/model.hpp"
#include "lsr/point.hpp"
#include "lsr/special.hpp"

namespace lsr {

// Value, gradient and Laplacian of a scalar field at one point.
struct Jet {
  double value = 0.0;
  Point grad;
  double lap = 0.0;
};

using Field = std::function<Jet(const Point&)>;

struct BubbleParams {
  Point center;  // N coordinates, last one zero
  double Lambda = 1.0;
  double Dfrak = 2.0;
  int N = 5;
};

BubbleParams make_bubble(std::span<const double> center_bar, double Lambda, double Dfrak);
BubbleParams standard_bubble(int N, double Dfrak);
void check_bubble(const BubbleParams& b);

double alpha_N(int N);

double bubble_eval(const Point& p, const BubbleParams& b);
Jet bubble_jet(const Point& p, const BubbleParams& b);

struct BubbleDerivatives {
  Point gradient;
  double laplacian = 0.0;
  double d_r = 0.0;
  double d_Lambda = 0.0;
};

// d_r differentiates along the ray through the center, so the center must
// be off the origin.
BubbleDerivatives bubble_derivatives(const Point& p, const BubbleParams& b);
double bubble_d_Lambda(const Point& p, const BubbleParams& b);
double bubble_d_r(const Point& p, const BubbleParams& b);

// Kernel of the linearized problem at the standard bubble:
// index 0 is the scaling mode, 1..N-1 the tangential translations.
double kernel_eval(const Point& p, int index, double Dfrak, int N);
Jet kernel_jet(const Point& p, int index, double Dfrak, int N);

enum class ResidualKind { interior, boundary, linearized_interior, linearized_boundary };

struct ResidualValue {
  double value = 0.0;
  double scale = 0.0;  // sum of the magnitudes of the balanced terms
  double relative() const noexcept { return scale > 0.0 ? std::abs(value) / scale : std::abs(value); }
};

// Linearized residuals use U_{0,1}; nonlinear ones use the given profiles.
ResidualValue residual(const Point& p, const Field& field, ResidualKind which,
                       const Profiles& profiles, int N, double Dfrak);

struct RingConfig {
  int k = 1;
  double r = 1.0;
  double Lambda = 1.0;
  ProblemParams params{};
};

std::vector<Point> ring_points(int k, double r, int N);

// Cached ring of bubbles; the hot-path form of w_eval.
class RingAnsatz {
 public:
  explicit RingAnsatz(const RingConfig& cfg);

  const RingConfig& config() const noexcept { return cfg_; }
  const std::vector<BubbleParams>& bubbles() const noexcept { return bubbles_; }
  int N() const noexcept { return cfg_.params.N; }

  double value(const Point& p) const;
  Jet jet(const Point& p) const;
  // Individual bubble values U_j(p), written into out (size k).
  void terms(const Point& p, std::span<double> out) const;
  int sector(const Point& p) const;
  Point fold_to_first_sector(const Point& p) const;

 private:
  RingConfig cfg_;
  std::vector<BubbleParams> bubbles_;
};

double w_eval(const Point& p, const RingConfig& ring);
int sector_index(const Point& p, const RingConfig& ring);

enum class GreenNormalization { sphere_area, unit_ball_volume };

// Neumann Green's function of the half-space by reflection. With the
// sphere-area normalization -Laplace G = delta; the unit-ball-volume
// reading gives N times that.
double greens_function(const Point& x, const Point& y,
                       GreenNormalization norm = GreenNormalization::sphere_area);

Point inversion_map(const Point& x);
Point inversion_map_inverse(const Point& xi);

}  // namespace lsr
