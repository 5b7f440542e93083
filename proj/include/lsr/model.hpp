#pragma once

#include <string_view>

namespace lsr {

struct ProblemParams {
  int N = 5;
  double m = 2.0;
  double n = 2.0;
  double c0 = -1.0;
  double d0 = 1.0;
  double r0 = 1.0;
  double Dfrak = 2.0;
  double theta = 0.5;
  double delta = 0.5;
  double theta_bar = 0.05;
  double sigma = 0.1;

  bool operator==(const ProblemParams&) const = default;
};

// Only obtainable through validate(); carries the guarantee that every
// parameter invariant holds.
class ValidatedParams {
 public:
  const ProblemParams& operator*() const noexcept { return p_; }
  const ProblemParams* operator->() const noexcept { return &p_; }
  const ProblemParams& get() const noexcept { return p_; }

 private:
  explicit ValidatedParams(const ProblemParams& p) : p_(p) {}
  ProblemParams p_;
  friend ValidatedParams validate(const ProblemParams& params);
};

ValidatedParams validate(const ProblemParams& params);

// Exponents and constants of the critical problem in dimension N.
double c_N(int N);
double two_star(int N);       // 2N/(N-2)
double two_sharp(int N);      // 2(N-1)/(N-2)
double p_interior(int N);     // (N+2)/(N-2)
double p_boundary(int N);     // N/(N-2)
double H0(int N, double Dfrak);  // Dfrak / sqrt(N(N-1))

double curvature_K(double r, const ProblemParams& params);
double curvature_H(double r, const ProblemParams& params);

enum class RegimeTag { M_DOMINANT, BALANCED, N_DOMINANT };
std::string_view to_string(RegimeTag tag);

struct Regime {
  RegimeTag tag = RegimeTag::BALANCED;
  double frak_m = 2.0;
  bool admissible = false;
  double j() const noexcept { return frak_m; }
};

Regime regime(const ValidatedParams& params);
double mu(int k, const ProblemParams& params);

// K(|y|/mu) and H(|ybar|/mu) as seen by the scaled problem, or the
// constant pair (1, H0) for which a single bubble is exact.
class Profiles {
 public:
  static Profiles constant(int N, double Dfrak);
  static Profiles scaled(const ProblemParams& params, double mu);

  double K(double abs_y) const;
  double H(double abs_ybar) const;
  bool is_constant() const noexcept { return constant_; }

 private:
  Profiles() = default;
  bool constant_ = true;
  double H0_ = 0.0;
  double mu_ = 1.0;
  ProblemParams params_{};
};

}  // namespace lsr
