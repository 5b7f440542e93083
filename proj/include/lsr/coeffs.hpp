#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lsr/model.hpp"
#include "lsr/quad.hpp"

namespace lsr {

enum class Provenance { quadrature, closed_form, ring_sum, assembled };
std::string_view to_string(Provenance p);

struct NamedConstant {
  std::string name;
  double value = 0.0;
  Provenance provenance = Provenance::assembled;
  double error = 0.0;  // quadrature error estimate where one exists
};

struct ExpansionConstants {
  double a_N = 0, b_N = 0;
  double d1 = 0, d2 = 0, d3 = 0, d4 = 0, d5 = 0, d6 = 0;
  double A = 0, B = 0, B0 = 0, B1 = 0, B2 = 0, B3 = 0, A1 = 0, A2 = 0;
  ProblemParams params{};
  Regime regime{};
  // Fixed order: a_N b_N d1..d6 A B B0 B1 B2 B3 A1 A2.
  std::vector<NamedConstant> entries;

  const NamedConstant& entry(std::string_view name) const;
};

struct ConstantsOptions {
  std::vector<int> b0_k_list = {64, 128, 256, 512};
};

// Every integral by quadrature over the reduced coordinates: a_N, d1, and
// the |y_1|-weighted d3, d4 in the interior; b_N, d2, d5, d6 on the boundary.
// d1 and d2 carry one extra factor alpha_N.
ExpansionConstants compute_constants(const ValidatedParams& params, const QuadratureSpec& spec,
                                     const ConstantsOptions& opts = {});

// The same integrals from their one-dimensional reductions
//   int |y_1|^m D^{-s} = c_{N-1,m} I^{m+N-2}_s phi_{s-(m+N-1)/2}
//   int |ybar_1|^n (|ybar|^2+Dfrak^2-1)^{-s} = c_{N-1,n} (Dfrak^2-1)^{(n+N-1)/2-s} I^{n+N-2}_s
// with c_{d,m} = 2 pi^{(d-1)/2} Gamma((m+1)/2) / Gamma((d+m)/2).
ExpansionConstants closed_form_constants(const ValidatedParams& params, const ConstantsOptions& opts = {});

// Only d1, d2 and B = -d1/2 + (N-1)/sqrt(N(N-1)) Dfrak d2, by quadrature.
struct DirectB {
  double d1 = 0, d2 = 0, B = 0, error = 0;
};
DirectB compute_B_direct(int N, double Dfrak, const QuadratureSpec& spec);

// alpha_N^{2*}/2 |S^{N-2}| I^{N-2}_{N/2+1}; independent of Dfrak.
double B_closed_form(const ProblemParams& params);
double B_closed_form(int N);

double ring_sum(int k, double r, double beta);

struct B0Fit {
  double B0 = 0.0;
  double slope = 0.0;       // coefficient of k^{-q}
  double exponent = 0.0;    // q = min(2, N-3)
  double residual = 0.0;    // rms misfit of the normalised sums
};

// Fits r^{N-2} k^{-(N-2)} ring_sum(k, r, N-2) = B0 + c k^{-q}.
B0Fit B0_extrapolate(const std::vector<int>& k_list, double r, int N);
// 2 zeta(N-2) / (2 pi)^{N-2}: the large-k limit of the normalised ring sum.
double B0_zeta_hypothesis(int N);

double lambda0(const Regime& regime, const ExpansionConstants& c, const ProblemParams& params);

// Riemann zeta by Euler-Maclaurin summation.
double zeta(double s);

}  // namespace lsr
