#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "lsr/bubble.hpp"
#include "lsr/coeffs.hpp"
#include "lsr/model.hpp"
#include "lsr/quad.hpp"

namespace lsr {

// ---- reduced functional ----

struct BoxDj {
  double r_lo = 0, r_hi = 0, L_lo = 0, L_hi = 0;
  double r_center = 0, L_center = 0;
  double j = 0;
  bool contains(double r, double L) const noexcept {
    return r >= r_lo && r <= r_hi && L >= L_lo && L <= L_hi;
  }
};

// r in mu r0 -/+ mu^{-theta_bar}; Lambda in Lambda0 -/+ mu^{-3 theta_bar/2} clipped to lambda_range.
BoxDj make_box(int k, const ExpansionConstants& c);
// A-priori Lambda range [Lambda0/4, 4 Lambda0].
std::pair<double, double> lambda_range(const ExpansionConstants& c);

struct Grad2 {
  double dr = 0, dL = 0;
};
struct Hess2 {
  double rr = 0, rL = 0, LL = 0;
};

// k (A + (A1/L^j - B1/(L^{N-2} r0^{N-2})) mu^{-j} + A2 (mu r0 - r)^2 / (L^{j-2} mu^j)),
// without the box check.
double F_reduced_formula(double r, double L, int k, const ExpansionConstants& c);
Grad2 F_reduced_grad_formula(double r, double L, int k, const ExpansionConstants& c);
Hess2 F_reduced_hess_formula(double r, double L, int k, const ExpansionConstants& c);

// Box-checked versions; throw OutsideBox.
double F_reduced(double r, double L, int k, const ExpansionConstants& c, const Regime& g);
Grad2 F_reduced_grad(double r, double L, int k, const ExpansionConstants& c, const Regime& g);

// ---- full energy on the ring ansatz ----

enum class EnergyForm {
  green,     // gradient cross terms rewritten with the bubble equation
  gradient,  // c_N/2 |grad W|^2 evaluated from the analytic bubble gradients
};

struct JFullOptions {
  EnergyForm form = EnergyForm::green;
  bool constant_profiles = false;  // K = 1, H = Dfrak/sqrt(N(N-1))
  std::vector<double> translation;  // optional shift of every centre (N-1 entries)
  double sampler_tail = 2.0;
};

struct JFullResult {
  IntegralResult total;
  double single = 0.0;        // k J(U_1), deterministic
  double single_error = 0.0;
  IntegralResult interaction;  // J(W) - k J(U_1), Monte Carlo over the first sector
};

// J(W) = k J(U_1) + k * int_{Omega_1} [e(W) - sum_i e(U_i)].
JFullResult J_full(const RingConfig& ring, const QuadratureSpec& quad, const McSpec& mc,
                   const JFullOptions& opts = {});

// ---- error fields and weighted norms ----

enum class ErrorKind { in, bd };

class ErrorField {
 public:
  explicit ErrorField(const RingConfig& ring, std::optional<Profiles> profiles = std::nullopt);
  double operator()(const Point& p, ErrorKind which) const;
  const RingAnsatz& ansatz() const noexcept { return ring_; }

 private:
  RingAnsatz ring_;
  Profiles profiles_;
};

double error_field(const Point& p, const RingConfig& ring, ErrorKind which);

enum class NormKind { star, dstar, tstar };

struct WeightedNormSpec {
  double tau = 0.2;
  double cutoff_radius = 0.0;  // 0: three ring radii plus 50 bubble lengths
  int n_radial = 40;
  int n_directions = 48;
};

void check_norm_spec(const WeightedNormSpec& s, int N);

double norm_weight(const Point& p, const RingAnsatz& ring, NormKind which, double tau);
std::vector<Point> make_sector_grid(const RingAnsatz& ring, const WeightedNormSpec& spec, bool boundary);

struct NormResult {
  double value = 0.0;
  Point argmax;
  std::size_t n_points = 0;
  double cutoff = 0.0;
};

NormResult weighted_norm(const std::function<double(const Point&)>& field, const RingAnsatz& ring,
                         NormKind which, const WeightedNormSpec& spec, Exec exec = default_exec());
NormResult weighted_norm_on(const std::function<double(const Point&)>& field, const RingAnsatz& ring,
                            NormKind which, double tau, const std::vector<Point>& grid,
                            Exec exec = default_exec());

struct LogLogFit {
  double slope = 0, intercept = 0, r2 = 0;
};
LogLogFit loglog_fit(const std::vector<double>& xs, const std::vector<double>& ys);

enum class DecayField { in, bd, weight_control };

struct DecayFit {
  LogLogFit fit;
  std::vector<int> ks;
  std::vector<double> mus;
  std::vector<double> norms;
};

DecayFit decay_fit(const std::vector<int>& k_list, const ProblemParams& params, DecayField which, double Lambda,
                   const WeightedNormSpec& spec);

// ---- kernel pairing ----

enum class PairingEngine { quadrature, monte_carlo };

struct PairingSpec {
  PairingEngine engine = PairingEngine::quadrature;
  QuadratureSpec quad{};
  McSpec mc{};
};

// -2 sqrt(N(N-1)) Dfrak int_bd U_i^{2/(N-2)} Z_{i,l} phi + (N+2) int U_i^{4/(N-2)} Z_{i,l} phi
// with U_i the i-th ring bubble, Z_{i,1} = d/dr and Z_{i,2} = d/dLambda.
IntegralResult pairing_Z(const std::function<double(const Point&)>& phi, int i, int ell, const RingConfig& ring,
                         const PairingSpec& spec);

// ---- expansion agreement ----

struct ExpansionSpec {
  QuadratureSpec quad{};
  McSpec mc{};
  double tolerance = 0.05;
  JFullOptions jopts{};
};

struct ExpansionCheck {
  int k = 0;
  double mu = 0, r = 0, Lambda = 0;
  double J_full_value = 0, J_full_error = 0;
  double leading_value = 0;
  double residual = 0;
  double residual_bound_prediction = 0;  // k mu^{-(frak_m + sigma)}
  double tolerance_bound = 0;            // tolerance k mu^{-frak_m}
  bool pass = false;
};

// Leading bracket with the exact ring sum.
double expansion_bracket(int k, double r, double Lambda, const ExpansionConstants& c);

ExpansionCheck expansion_check(int k, const ExpansionConstants& c, const ExpansionSpec& spec,
                               std::optional<std::pair<double, double>> r_Lambda = std::nullopt);

}  // namespace lsr
