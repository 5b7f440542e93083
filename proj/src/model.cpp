#include "lsr/model.hpp"

#include <cmath>
#include <string>

#include "lsr/error.hpp"

namespace lsr {

namespace {

bool finite_all(const ProblemParams& p) {
  for (double v : {p.m, p.n, p.c0, p.d0, p.r0, p.Dfrak, p.theta, p.delta, p.theta_bar, p.sigma})
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace

ValidatedParams validate(const ProblemParams& p) {
  if (p.N < 5) throw Error(Errc::DimensionTooSmall, "N = " + std::to_string(p.N) + " < 5");
  if (!finite_all(p)) throw Error(Errc::InvalidParameter, "non-finite parameter");
  const double top = p.N - 2;
  if (!(p.m >= 2.0 && p.m < top))
    throw Error(Errc::ExponentOutOfRange, "m must lie in [2, N-2)");
  if (!(p.n >= 2.0 && p.n < top))
    throw Error(Errc::ExponentOutOfRange, "n must lie in [2, N-2)");
  if (!(p.Dfrak > 1.0)) throw Error(Errc::NonPhysicalD, "Dfrak must exceed 1");
  if (!(p.r0 > 0.0)) throw Error(Errc::InvalidParameter, "r0 must be positive");
  if (!(p.delta > 0.0)) throw Error(Errc::InvalidParameter, "delta must be positive");
  if (!(p.theta > 0.0)) throw Error(Errc::InvalidParameter, "theta must be positive");
  if (!(p.theta_bar > 0.0 && p.theta_bar < 1.0))
    throw Error(Errc::InvalidParameter, "theta_bar must lie in (0,1)");
  if (!(p.sigma > 0.0 && p.sigma < 1.0))
    throw Error(Errc::InvalidParameter, "sigma must lie in (0,1)");
  return ValidatedParams(p);
}

double c_N(int N) { return 4.0 * (N - 1) / (N - 2); }
double two_star(int N) { return 2.0 * N / (N - 2); }
double two_sharp(int N) { return 2.0 * (N - 1) / (N - 2); }
double p_interior(int N) { return (N + 2.0) / (N - 2.0); }
double p_boundary(int N) { return static_cast<double>(N) / (N - 2); }
double H0(int N, double Dfrak) { return Dfrak / std::sqrt(static_cast<double>(N) * (N - 1)); }

double curvature_K(double r, const ProblemParams& p) {
  if (!(r >= 0.0)) throw Error(Errc::DomainError, "curvature_K needs r >= 0");
  const double edge = 1.0 - p.c0 * std::pow(p.delta, p.m);
  if (edge <= 0.0) throw Error(Errc::ProfileNotPositive, "K vanishes inside the window");
  const double h = std::min(std::abs(r - p.r0), p.delta);
  return 1.0 - p.c0 * std::pow(h, p.m);
}

double curvature_H(double r, const ProblemParams& p) {
  if (!(r >= 0.0)) throw Error(Errc::DomainError, "curvature_H needs r >= 0");
  const double h0 = H0(p.N, p.Dfrak);
  const double edge = h0 - p.d0 * std::pow(p.delta, p.n);
  if (edge <= 0.0) throw Error(Errc::ProfileNotPositive, "H vanishes inside the window");
  const double h = std::min(std::abs(r - p.r0), p.delta);
  return h0 - p.d0 * std::pow(h, p.n);
}

std::string_view to_string(RegimeTag tag) {
  switch (tag) {
    case RegimeTag::M_DOMINANT: return "M_DOMINANT";
    case RegimeTag::BALANCED: return "BALANCED";
    case RegimeTag::N_DOMINANT: return "N_DOMINANT";
  }
  return "UNKNOWN";
}

Regime regime(const ValidatedParams& vp) {
  const ProblemParams& p = *vp;
  Regime g;
  g.frak_m = std::min(p.m, p.n);
  if (p.m < p.n) {
    g.tag = RegimeTag::M_DOMINANT;
    g.admissible = p.c0 < 0.0;
  } else if (p.m == p.n) {
    g.tag = RegimeTag::BALANCED;
    g.admissible = p.c0 < 0.0 && p.d0 > 0.0;
  } else {
    g.tag = RegimeTag::N_DOMINANT;
    g.admissible = p.d0 > 0.0;
  }
  return g;
}

double mu(int k, const ProblemParams& p) {
  if (k < 1) throw Error(Errc::InvalidParameter, "k must be >= 1");
  const double fm = std::min(p.m, p.n);
  return std::pow(static_cast<double>(k), (p.N - 2.0) / (p.N - 2.0 - fm));
}

Profiles Profiles::constant(int N, double Dfrak) {
  Profiles pr;
  pr.constant_ = true;
  pr.H0_ = H0(N, Dfrak);
  pr.params_.N = N;
  pr.params_.Dfrak = Dfrak;
  return pr;
}

Profiles Profiles::scaled(const ProblemParams& params, double mu_value) {
  Profiles pr;
  pr.constant_ = false;
  pr.params_ = params;
  pr.mu_ = mu_value;
  pr.H0_ = H0(params.N, params.Dfrak);
  curvature_K(params.r0, params);
  curvature_H(params.r0, params);
  return pr;
}

// Positivity was checked once in scaled(); these are the hot-loop forms.
double Profiles::K(double abs_y) const {
  if (constant_) return 1.0;
  const double h = std::min(std::abs(abs_y / mu_ - params_.r0), params_.delta);
  return 1.0 - params_.c0 * std::pow(h, params_.m);
}

double Profiles::H(double abs_ybar) const {
  if (constant_) return H0_;
  const double h = std::min(std::abs(abs_ybar / mu_ - params_.r0), params_.delta);
  return H0_ - params_.d0 * std::pow(h, params_.n);
}

}  // namespace lsr
