#pragma once

#include <cstdint>
#include <vector>

#include "lsr/model.hpp"
#include "lsr/quad.hpp"

namespace lsr {

// g(y) |x_i - x_j|^s / ((1+|y-x_i|)^{-(a+b-s)} + (1+|y-x_j|)^{-(a+b-s)})
// with g(y) = (1+|y-x_j|)^{-a} (1+|y-x_i|)^{-b}.
double pair_decay_ratio(const Point& y, const Point& xi, const Point& xj, double alpha, double beta, double sigma);

struct PairDecaySpec {
  double alpha = 1.7, beta = 1.7, sigma = 1.0;
  int N = 5;
  int n_configs = 10;
  int n_samples = 10000;  // per configuration
  std::uint64_t fit_seed = 1;
  std::uint64_t check_seed = 2;
  double margin = 0.05;  // validation tolerance on the fitted constant
};

struct PairDecayResult {
  double C_fit = 0.0;       // max ratio on the fitting draw
  double C_check = 0.0;     // max ratio on the independent draw
  double C_proven = 0.0;    // 2^sigma
  int violations = 0;       // validation ratios above (1+margin) C_fit
  std::int64_t samples = 0;
  bool pass = false;
};

PairDecayResult pair_decay_suite(const PairDecaySpec& spec);

// int_{R^N_+} |y-z|^{2-N} (1+|z|)^{-(2+s)} dz for y on the boundary, from the
// spherical-mean formula of the full-space Newton potential.
double halfspace_potential_radial(int N, double sigma, double abs_y);
// The same integral by reduced cubature (interior), or the boundary integral
// int |y-z|^{2-N} (1+|z|)^{-(1+s)} dzbar when `boundary` is set.
IntegralResult halfspace_potential_quadrature(int N, double sigma, double abs_y, bool boundary,
                                              const QuadratureSpec& spec);

struct PotentialDecayResult {
  int N = 5;
  double sigma = 1.0;
  bool boundary = false;
  std::vector<double> abs_y;   // tested radii followed by the saturation probes
  std::vector<double> ratios;  // integral * (1+|y|)^sigma
  double C_fit = 0.0;          // max over the tested radii
  double limit = 0.0;          // large-|y| limit of the ratio (interior only, 0 otherwise)
  double saturation = 0.0;     // relative change between the last two probes
  bool pass = false;
};

PotentialDecayResult potential_decay_suite(int N, double sigma, bool boundary, const std::vector<double>& tested,
                                           const QuadratureSpec& spec);

struct ConvolutionGainSpec {
  ProblemParams params{};
  int k = 2;
  double r = 10.0;
  double Lambda = 1.0;
  double tau = 0.2;
  bool boundary = false;
  std::vector<double> distances = {0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0, 200.0, 400.0};
  int tail_points = 3;  // far distances used for the gain fit
};

struct ConvolutionGainResult {
  std::vector<double> distances;
  std::vector<double> lhs;
  std::vector<double> ratios;  // lhs / sum_j (1+|y-x_j|)^{-(e+theta)}
  double theta_fit = 0.0;      // decay gain over the base exponent
  double theta_used = 0.0;
  double C_fit = 0.0;
  bool pass = false;
};

// y runs outward from x_1 along the y_1 axis on the boundary.
ConvolutionGainResult convolution_gain_suite(const ConvolutionGainSpec& spec, const QuadratureSpec& quad);

}  // namespace lsr
