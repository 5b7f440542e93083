#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lsr/coeffs.hpp"
#include "lsr/energy.hpp"

namespace lsr {

enum class Objective { reduced, reduced_plus_modeled_error };

// Smooth stand-in for the dropped error terms:
// amplitude * k mu^{-(j+sigma)} sin(a u + p1) cos(b v + p2), with u, v the
// box-normalised offsets from (mu r0, Lambda0).
struct Perturbation {
  double amplitude = 1.0;
  double a = 1.3, b = 0.9;
  double phase_r = 0.4, phase_L = 1.1;
};

struct SolverOptions {
  Objective objective = Objective::reduced;
  Perturbation perturbation{};
  double tol = 1e-12;  // on the box-scaled gradient relative to the size of the terms of F
  int max_iter = 60;
  int k0 = 6;
  int grid_n = 41;
  std::optional<std::pair<double, double>> start;  // default (mu r0, Lambda0)
};

struct ExistenceReport {
  ProblemParams params{};
  Regime regime{};
  ExpansionConstants constants{};
  double Lambda0 = 0.0;
  int k = 0;
  double mu = 0.0;
  BoxDj box{};
  double r_star = 0.0, Lambda_star = 0.0;
  double grad_norm = 0.0;  // box-scaled, relative to the size of the terms of F
  Hess2 hessian{};         // of the leading-order functional at the solution
  std::string signature;   // "max", "min" or "saddle"
  bool converged = false;
  bool solved = false;     // false when the k < k0 guard skipped the solve
  bool used_grid_fallback = false;
  int iterations = 0;
  std::vector<double> history;  // scaled gradient norm per Newton iterate
  std::vector<std::string> notes;
  std::optional<ExpansionCheck> expansion;
  std::optional<DecayFit> decay_in, decay_bd;
};

double perturbation_value(double r, double L, int k, const ExpansionConstants& c, const Perturbation& p);
Grad2 perturbation_grad(double r, double L, int k, const ExpansionConstants& c, const Perturbation& p);
Hess2 perturbation_hess(double r, double L, int k, const ExpansionConstants& c, const Perturbation& p);

std::string hessian_signature(const Hess2& h);

// Throws NotAdmissible for a regime outside the sign table and
// NoInteriorCriticalPoint when no stationary point is found strictly inside D_j.
ExistenceReport find_critical_point(int k, const ExpansionConstants& c, const SolverOptions& opts = {});

struct ReportOptions {
  SolverOptions solver{};
  bool use_quadrature_constants = false;  // default: one-dimensional closed forms
  QuadratureSpec quad{};
  ExpansionSpec expansion{};
  std::vector<int> decay_k = {6, 8, 12, 16};
  WeightedNormSpec norm{};
};

ExistenceReport construct_report(int k, const ProblemParams& params, bool full, const ReportOptions& opts = {});

}  // namespace lsr
