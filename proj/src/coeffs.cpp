#include "lsr/coeffs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lsr/bubble.hpp"
#include "lsr/error.hpp"

namespace lsr {

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::quadrature: return "quadrature";
    case Provenance::closed_form: return "closed_form";
    case Provenance::ring_sum: return "ring_sum";
    case Provenance::assembled: return "assembled";
  }
  return "unknown";
}

const NamedConstant& ExpansionConstants::entry(std::string_view name) const {
  for (const auto& e : entries)
    if (e.name == name) return e;
  throw Error(Errc::InvalidParameter, "no constant named " + std::string(name));
}

namespace {

// Sphere moment int_{S^{d-1}} |w_1|^m dw.
double sphere_moment(int d, double m) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * (d - 1)) *
         std::exp(std::lgamma(0.5 * (m + 1.0)) - std::lgamma(0.5 * (d + m)));
}

double interior_reduced(int N, double Dfrak, double m, double s) {
  return sphere_moment(N - 1, m) * I_integral(m + N - 2.0, s) * phi_integral(s - 0.5 * (m + N - 1.0), Dfrak);
}

double boundary_reduced(int N, double Dfrak, double n, double s) {
  return sphere_moment(N - 1, n) * std::pow(Dfrak * Dfrak - 1.0, 0.5 * (n + N - 1.0) - s) *
         I_integral(n + N - 2.0, s);
}

void assemble(ExpansionConstants& c, const ProblemParams& p, const ConstantsOptions& opts,
              Provenance integrals, const std::vector<double>& errors) {
  const int N = p.N;
  const double ts = two_star(N);
  const double h0 = H0(N, p.Dfrak);
  c.A = (1.0 / ts - 0.5) * c.a_N + h0 * c.b_N;
  c.B = -0.5 * c.d1 + (N - 1.0) / std::sqrt(N * (N - 1.0)) * p.Dfrak * c.d2;
  c.B0 = B0_extrapolate(opts.b0_k_list, 1.0, N).B0;
  c.B1 = c.B * c.B0;
  const double fm = std::min(p.m, p.n);
  c.B2 = -p.c0 / ts * c.d3 + p.d0 * (N - 2) * c.d5;
  c.B3 = -fm * (fm - 1.0) * p.c0 / (2.0 * ts) * c.d4 + fm * (fm - 1.0) * p.d0 * (N - 2) / 2.0 * c.d6;
  switch (c.regime.tag) {
    case RegimeTag::M_DOMINANT:
      c.A1 = -p.c0 / ts * c.d3;
      c.A2 = -p.m * (p.m - 1.0) * p.c0 / (2.0 * ts) * c.d4;
      break;
    case RegimeTag::N_DOMINANT:
      c.A1 = (N - 2) * p.d0 * c.d5;
      c.A2 = p.n * (p.n - 1.0) * (N - 2) * p.d0 / 2.0 * c.d6;
      break;
    case RegimeTag::BALANCED:
      c.A1 = c.B2;
      c.A2 = c.B3;
      break;
  }
  const double vals[] = {c.a_N, c.b_N, c.d1, c.d2, c.d3, c.d4, c.d5, c.d6};
  const char* names[] = {"a_N", "b_N", "d1", "d2", "d3", "d4", "d5", "d6"};
  c.entries.clear();
  for (int i = 0; i < 8; ++i) c.entries.push_back({names[i], vals[i], integrals, errors.empty() ? 0.0 : errors[i]});
  c.entries.push_back({"A", c.A, Provenance::assembled, 0.0});
  c.entries.push_back({"B", c.B, Provenance::assembled, 0.0});
  c.entries.push_back({"B0", c.B0, Provenance::ring_sum, 0.0});
  c.entries.push_back({"B1", c.B1, Provenance::assembled, 0.0});
  c.entries.push_back({"B2", c.B2, Provenance::assembled, 0.0});
  c.entries.push_back({"B3", c.B3, Provenance::assembled, 0.0});
  c.entries.push_back({"A1", c.A1, Provenance::assembled, 0.0});
  c.entries.push_back({"A2", c.A2, Provenance::assembled, 0.0});
}

ReducedIntegrand bubble_power(int N, double Dfrak, double power, double weight_exp, double prefactor) {
  const BubbleParams b = standard_bubble(N, Dfrak);
  ReducedIntegrand in;
  in.N = N;
  in.scale = std::max(1.0, std::sqrt(Dfrak * Dfrak - 1.0));
  in.f = [b, power, weight_exp, prefactor](const Point& y) {
    const double w = weight_exp == 0.0 ? 1.0 : std::pow(std::abs(y[0]), weight_exp);
    return prefactor * w * std::pow(bubble_eval(y, b), power);
  };
  if (weight_exp != 0.0) in.y1_breaks = {0.0};
  return in;
}

}  // namespace

DirectB compute_B_direct(int N, double Dfrak, const QuadratureSpec& spec) {
  const double a = alpha_N(N);
  const IntegralResult r1 = integrate_reduced(bubble_power(N, Dfrak, two_star(N) - 1.0, 0.0, a), Reduction::radial2, spec);
  const IntegralResult r2 =
      integrate_reduced(bubble_power(N, Dfrak, two_sharp(N) - 1.0, 0.0, a), Reduction::boundary_radial1, spec);
  DirectB d;
  d.d1 = r1.value;
  d.d2 = r2.value;
  const double c2 = (N - 1.0) / std::sqrt(N * (N - 1.0)) * Dfrak;
  d.B = -0.5 * d.d1 + c2 * d.d2;
  d.error = 0.5 * r1.error_estimate + c2 * r2.error_estimate;
  return d;
}

ExpansionConstants compute_constants(const ValidatedParams& vp, const QuadratureSpec& spec,
                                     const ConstantsOptions& opts) {
  const ProblemParams& p = *vp;
  const int N = p.N;
  const double D = p.Dfrak;
  ExpansionConstants c;
  c.params = p;
  c.regime = regime(vp);
  const double ts = two_star(N), tsh = two_sharp(N);
  std::vector<double> err;
  auto run = [&](const ReducedIntegrand& in, Reduction red) {
    const IntegralResult r = integrate_reduced(in, red, spec);
    err.push_back(r.error_estimate);
    return r.value;
  };
  c.a_N = run(bubble_power(N, D, ts, 0.0, 1.0), Reduction::radial2);
  c.b_N = run(bubble_power(N, D, tsh, 0.0, 1.0), Reduction::boundary_radial1);
  const DirectB db = compute_B_direct(N, D, spec);
  c.d1 = db.d1;
  c.d2 = db.d2;
  err.push_back(0.0);
  err.push_back(0.0);
  c.d3 = run(bubble_power(N, D, ts, p.m, 1.0), Reduction::axial3);
  c.d4 = run(bubble_power(N, D, ts, p.m - 2.0, 1.0), Reduction::axial3);
  c.d5 = run(bubble_power(N, D, tsh, p.n, 1.0), Reduction::boundary_axial2);
  c.d6 = run(bubble_power(N, D, tsh, p.n - 2.0, 1.0), Reduction::boundary_axial2);
  assemble(c, p, opts, Provenance::quadrature, err);
  return c;
}

ExpansionConstants closed_form_constants(const ValidatedParams& vp, const ConstantsOptions& opts) {
  const ProblemParams& p = *vp;
  const int N = p.N;
  const double D = p.Dfrak;
  ExpansionConstants c;
  c.params = p;
  c.regime = regime(vp);
  const double a = alpha_N(N);
  const double a_in = std::pow(a, two_star(N)), a_bd = std::pow(a, two_sharp(N));
  c.a_N = a_in * interior_reduced(N, D, 0.0, N);
  c.b_N = a_bd * boundary_reduced(N, D, 0.0, N - 1.0);
  c.d1 = a_in * interior_reduced(N, D, 0.0, 0.5 * (N + 2));
  c.d2 = a_bd * boundary_reduced(N, D, 0.0, 0.5 * N);
  c.d3 = a_in * interior_reduced(N, D, p.m, N);
  c.d4 = a_in * interior_reduced(N, D, p.m - 2.0, N);
  c.d5 = a_bd * boundary_reduced(N, D, p.n, N - 1.0);
  c.d6 = a_bd * boundary_reduced(N, D, p.n - 2.0, N - 1.0);
  assemble(c, p, opts, Provenance::closed_form, {});
  return c;
}

double B_closed_form(int N) {
  if (N < 5) throw Error(Errc::DimensionTooSmall, "B needs N >= 5");
  return 0.5 * std::pow(alpha_N(N), two_star(N)) * sphere_area(N - 1) * I_integral(N - 2.0, 0.5 * N + 1.0);
}

double B_closed_form(const ProblemParams& p) {
  if (!(p.Dfrak > 1.0)) throw Error(Errc::NonPhysicalD, "B needs Dfrak > 1");
  return B_closed_form(p.N);
}

double ring_sum(int k, double r, double beta) {
  if (k < 2) throw Error(Errc::InvalidParameter, "ring_sum needs k >= 2");
  if (!(r > 0.0)) throw Error(Errc::InvalidParameter, "ring radius must be positive");
  double s = 0.0;
  for (int j = 2; j <= k; ++j) s += std::pow(2.0 * r * std::sin((j - 1) * std::numbers::pi / k), -beta);
  return s;
}

B0Fit B0_extrapolate(const std::vector<int>& ks, double r, int N) {
  if (ks.size() < 4) throw Error(Errc::FitIllConditioned, "B0 fit needs at least four k values");
  for (size_t i = 1; i < ks.size(); ++i)
    if (ks[i] <= ks[i - 1]) throw Error(Errc::FitIllConditioned, "k values must increase");
  if (ks.front() < 2) throw Error(Errc::FitIllConditioned, "k values must be >= 2");
  const double beta = N - 2.0;
  const double q = std::min(2.0, N - 3.0);
  // Least squares for y = B0 + c x with x = k^{-q}.
  std::vector<double> xs, ys;
  for (int k : ks) {
    xs.push_back(std::pow(static_cast<double>(k), -q));
    // ring_sum is homogeneous of degree -beta in r, so rescale to r = 1
    // before normalising; the fit is then exactly r-independent.
    ys.push_back(ring_sum(k, r, beta) * std::pow(r, beta) * std::pow(static_cast<double>(k), -beta));
  }
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double det = n * sxx - sx * sx;
  if (!(std::abs(det) > 1e-14 * n * sxx)) throw Error(Errc::FitIllConditioned, "degenerate B0 design");
  B0Fit fit;
  fit.slope = (n * sxy - sx * sy) / det;
  fit.B0 = (sy - fit.slope * sx) / n;
  fit.exponent = q;
  double ss = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - fit.B0 - fit.slope * xs[i];
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

double B0_zeta_hypothesis(int N) { return 2.0 * zeta(N - 2.0) / std::pow(2.0 * std::numbers::pi, N - 2.0); }

double lambda0(const Regime& g, const ExpansionConstants& c, const ProblemParams& p) {
  if (!g.admissible) throw Error(Errc::InadmissibleRegime, "Lambda0 needs an admissible regime");
  const int N = p.N;
  const double r0n = std::pow(p.r0, N - 2.0);
  double radicand = 0.0, e = 0.0;
  switch (g.tag) {
    case RegimeTag::M_DOMINANT:
      radicand = two_star(N) * c.B1 * (N - 2) / (-p.c0 * p.m * c.d3 * r0n);
      e = 1.0 / (N - 2.0 - p.m);
      break;
    case RegimeTag::N_DOMINANT:
      radicand = c.B1 / (p.d0 * p.n * c.d5 * r0n);
      e = 1.0 / (N - 2.0 - p.n);
      break;
    case RegimeTag::BALANCED:
      radicand = c.B1 * (N - 2) / (c.B2 * g.frak_m * r0n);
      e = 1.0 / (N - 2.0 - g.frak_m);
      break;
  }
  if (!(radicand > 0.0)) throw Error(Errc::InadmissibleRegime, "non-positive Lambda0 radicand");
  return std::pow(radicand, e);
}

double zeta(double s) {
  if (!(s > 1.0)) throw Error(Errc::DomainError, "zeta needs s > 1");
  // Bernoulli numbers B_2 .. B_20.
  static const double B2k[] = {1.0 / 6,         -1.0 / 30,     1.0 / 42,        -1.0 / 30,
                               5.0 / 66,        -691.0 / 2730, 7.0 / 6,         -3617.0 / 510,
                               43867.0 / 798,   -174611.0 / 330};
  const int M = 16;
  double sum = 0.0;
  for (int n = M - 1; n >= 1; --n) sum += std::pow(static_cast<double>(n), -s);
  const double Mm = M;
  sum += std::pow(Mm, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(Mm, -s);
  double rising = s;  // s (s+1) ... (s+2j-2)
  double fact = 2.0;  // (2j)!
  for (int j = 1; j <= 10; ++j) {
    sum += B2k[j - 1] / fact * rising * std::pow(Mm, -s - 2.0 * j + 1.0);
    rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
    fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
  }
  return sum;
}

}  // namespace lsr
