#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "lsr/energy.hpp"
#include "lsr/error.hpp"

using namespace lsr;
using testing::rel_err;

namespace {

struct Desk {
  ProblemParams p{};
  ExpansionConstants c = closed_form_constants(validate(p));
  double L0 = lambda0(c.regime, c, p);
};

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::ConfigError;
}

}  // namespace

TEST_SUITE("energy") {
  TEST_CASE("box D_j") {
    const Desk d;
    for (int k : {6, 8, 12, 40}) {
      const BoxDj b = make_box(k, d.c);
      const double m = mu(k, d.p);
      CHECK(b.contains(m * d.p.r0, d.L0));
      CHECK(b.r_center == doctest::Approx(m * d.p.r0));
      CHECK(b.r_hi - b.r_center == doctest::Approx(std::pow(m, -d.p.theta_bar)));
      CHECK(b.L_center == doctest::Approx(d.L0));
      const auto [lo, hi] = lambda_range(d.c);
      CHECK(b.L_lo >= lo);
      CHECK(b.L_hi <= hi);
      CHECK(b.L_hi - b.L_center <= std::pow(m, -1.5 * d.p.theta_bar) * (1 + 1e-14));
    }
  }

  TEST_CASE("reduced functional at the centre and symmetry in r") {
    const Desk d;
    const int k = 8;
    const double m = mu(k, d.p), j = d.c.regime.j();
    const double F = F_reduced(m * d.p.r0, d.L0, k, d.c, d.c.regime);
    const double expect =
        k * (d.c.A + (d.c.A1 / std::pow(d.L0, j) - d.c.B1 / std::pow(d.L0, 3.0)) / std::pow(m, j));
    CHECK(F == doctest::Approx(expect).epsilon(1e-14));
    const BoxDj b = make_box(k, d.c);
    for (double t : {0.1, 0.5, 0.9}) {
      const double r = m * d.p.r0 + t * (b.r_hi - b.r_center);
      const double L = d.L0 + 0.3 * (b.L_hi - b.L_center);
      CHECK(F_reduced(r, L, k, d.c, d.c.regime) ==
            doctest::Approx(F_reduced(2 * m * d.p.r0 - r, L, k, d.c, d.c.regime)).epsilon(1e-15));
    }
  }

  TEST_CASE("mu-law scaling of the reduced term") {
    const Desk d;
    const double j = d.c.regime.j();
    auto per_bubble = [&](int k) {
      return F_reduced_formula(mu(k, d.p) * d.p.r0, d.L0, k, d.c) / k - d.c.A;
    };
    CHECK(per_bubble(24) / per_bubble(6) == doctest::Approx(std::pow(4.0, -j * 3.0 / (3.0 - j))).epsilon(1e-12));
  }

  TEST_CASE("reduced gradient against finite differences") {
    const Desk d;
    for (int k : {6, 8, 12}) {
      const BoxDj b = make_box(k, d.c);
      for (auto [u, v] : {std::pair{0.3, -0.4}, std::pair{-0.7, 0.6}, std::pair{0.9, 0.1}}) {
        const double r = b.r_center + u * (b.r_hi - b.r_center);
        const double L = b.L_center + v * (v > 0 ? b.L_hi - b.L_center : b.L_center - b.L_lo);
        const Grad2 g = F_reduced_grad(r, L, k, d.c, d.c.regime);
        const long double hr = 1e-3L * (b.r_hi - b.r_center), hL = 1e-3L * L;
        const long double fr = testing::diff4([&](long double x) { return testing::reduced_minus_A(x, L, k, d.c); }, r, hr);
        const long double fL = testing::diff4([&](long double x) { return testing::reduced_minus_A(r, x, k, d.c); }, L, hL);
        CHECK(rel_err(g.dr, static_cast<double>(fr)) <= 1e-8);
        CHECK(rel_err(g.dL, static_cast<double>(fL)) <= 1e-8);
        const double F = F_reduced(r, L, k, d.c, d.c.regime);
        CHECK(std::abs(F - k * d.c.A - static_cast<double>(testing::reduced_minus_A(r, L, k, d.c))) <= 1e-13 * std::abs(F));
        const Hess2 h = F_reduced_hess_formula(r, L, k, d.c);
        const double fLL = static_cast<double>(
            testing::diff4([&](long double x) { return static_cast<long double>(F_reduced_grad_formula(r, static_cast<double>(x), k, d.c).dL); }, L, hL));
        CHECK(rel_err(h.LL, fLL) <= 1e-6);
      }
      const double m = mu(k, d.p);
      CHECK(F_reduced_grad(m * d.p.r0, d.L0, k, d.c, d.c.regime).dL == 0.0);
      for (double t : {-0.5, 0.0, 0.7})
        CHECK(F_reduced_grad(m * d.p.r0, b.L_center + t * (t > 0 ? b.L_hi - b.L_center : b.L_center - b.L_lo), k, d.c,
                             d.c.regime)
                  .dr == 0.0);
    }
  }

  TEST_CASE("reduced functional rejects points outside the box") {
    const Desk d;
    const BoxDj b = make_box(8, d.c);
    CHECK(code_of([&] { F_reduced(b.r_hi + 1.0, d.L0, 8, d.c, d.c.regime); }) == Errc::OutsideBox);
    CHECK(code_of([&] { F_reduced_grad(b.r_center, b.L_hi * 2, 8, d.c, d.c.regime); }) == Errc::OutsideBox);
    ProblemParams bad;
    bad.c0 = 1.0;
    const ExpansionConstants cb = closed_form_constants(validate(bad));
    CHECK(code_of([&] { F_reduced(b.r_center, d.L0, 8, cb, cb.regime); }) == Errc::InadmissibleRegime);
  }

  TEST_CASE("single-bubble energy equals A") {
    const Desk d;
    JFullOptions o;
    o.constant_profiles = true;
    McSpec mc;
    mc.samples = 20000;
    for (EnergyForm f : {EnergyForm::green, EnergyForm::gradient}) {
      o.form = f;
      const JFullResult r = J_full(RingConfig{1, 3.0, 0.7, d.p}, QuadratureSpec{}, mc, o);
      CHECK(r.total.value == doctest::Approx(d.c.A).epsilon(1e-6));
    }
  }

  TEST_CASE("energy forms agree and the Monte Carlo error scales with the sample count") {
    const Desk d;
    McSpec mc;
    mc.samples = 100000;
    const RingConfig ring{2, 3.0, 0.7, d.p};
    JFullOptions o;
    const JFullResult g1 = J_full(ring, QuadratureSpec{}, mc, o);
    o.form = EnergyForm::gradient;
    const JFullResult gr = J_full(ring, QuadratureSpec{}, mc, o);
    CHECK(std::abs(g1.total.value - gr.total.value) <=
          3.0 * std::hypot(g1.total.error_estimate, gr.total.error_estimate));
    o.form = EnergyForm::green;
    mc.samples = 200000;
    const JFullResult g2 = J_full(ring, QuadratureSpec{}, mc, o);
    const double ratio = g2.interaction.error_estimate / g1.interaction.error_estimate;
    CHECK(ratio == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.15));
  }

  TEST_CASE("energy is invariant under tangential translation") {
    const Desk d;
    McSpec mc;
    mc.samples = 100000;
    JFullOptions o;
    o.constant_profiles = true;
    const RingConfig ring{2, 3.0, 0.7, d.p};
    const JFullResult a = J_full(ring, QuadratureSpec{}, mc, o);
    o.translation = {0.0, 0.0, 1.7, -0.4};
    mc.seed = 777;
    const JFullResult b = J_full(ring, QuadratureSpec{}, mc, o);
    CHECK(std::abs(a.total.value - b.total.value) <= 3.0 * std::hypot(a.total.error_estimate, b.total.error_estimate));
    o.constant_profiles = false;
    CHECK_THROWS_AS(J_full(ring, QuadratureSpec{}, mc, o), Error);
  }

  TEST_CASE("error fields") {
    ProblemParams p;
    const RingConfig one{1, 20.0, 0.5, p};
    const ErrorField exact(one, Profiles::constant(p.N, p.Dfrak));
    for (const Point& y : testing::random_points(5, 50, 30.0, 7)) {
      CHECK(exact(y, ErrorKind::in) == 0.0);
      if (y.on_boundary()) CHECK(exact(y, ErrorKind::bd) == 0.0);
    }
    const double m = 16.0;
    const double r = m * 1.3;
    const Profiles prof = Profiles::scaled(p, m);
    const ErrorField e(RingConfig{1, r, 0.5, p}, prof);
    Point x1(5);
    x1[0] = r;
    const double U = e.ansatz().value(x1);
    const double expect = (curvature_K(r / m, p) - 1.0) * std::pow(U, p_interior(5));
    CHECK(e(x1, ErrorKind::in) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(e(x1, ErrorKind::in) > 0.0);
    const ErrorField two(RingConfig{2, 3.0, 1.0, p}, Profiles::constant(p.N, p.Dfrak));
    CHECK(two(Point(5), ErrorKind::in) > 0.0);
    CHECK(two(Point{0.0, 1.0, 0.0, 0.0, 0.0}, ErrorKind::bd) != 0.0);
  }

  TEST_CASE("weighted norms") {
    ProblemParams p;
    const RingAnsatz ring(RingConfig{4, 10.0, 1.0, p});
    WeightedNormSpec s;
    s.n_radial = 12;
    s.n_directions = 12;
    for (NormKind k : {NormKind::star, NormKind::dstar, NormKind::tstar}) {
      auto w = [&](const Point& y) { return norm_weight(y, ring, k, s.tau); };
      CHECK(weighted_norm(w, ring, k, s).value == doctest::Approx(1.0).epsilon(1e-14));
      auto w2 = [&](const Point& y) { return 2.0 * w(y); };
      CHECK(weighted_norm(w2, ring, k, s).value == doctest::Approx(2.0).epsilon(1e-14));
    }
    auto f = [](const Point& y) { return std::sin(y[0]) * std::exp(-0.01 * norm_sq(y)); };
    auto g = [](const Point& y) { return std::cos(3 * y[1]) / (1.0 + norm_sq(y)); };
    const double nf = weighted_norm(f, ring, NormKind::dstar, s).value;
    const double ng = weighted_norm(g, ring, NormKind::dstar, s).value;
    const double nsum = weighted_norm([&](const Point& y) { return f(y) + g(y); }, ring, NormKind::dstar, s).value;
    const double nneg = weighted_norm([&](const Point& y) { return -3.0 * f(y); }, ring, NormKind::dstar, s).value;
    CHECK(nsum <= nf + ng + 1e-15);
    CHECK(nneg == doctest::Approx(3.0 * nf).epsilon(1e-14));
    const ErrorField e(RingConfig{1, 10.0, 1.0, p}, Profiles::constant(p.N, p.Dfrak));
    const RingAnsatz r1(RingConfig{1, 10.0, 1.0, p});
    CHECK(weighted_norm([&](const Point& y) { return e(y, ErrorKind::in); }, r1, NormKind::dstar, s).value == 0.0);
    WeightedNormSpec bad = s;
    bad.tau = 1.6;
    CHECK_THROWS_AS(check_norm_spec(bad, 5), Error);
  }

  TEST_CASE("decay fits") {
    const Desk d;
    const WeightedNormSpec s;
    const DecayFit c = decay_fit({6, 8, 12, 16}, d.p, DecayField::weight_control, d.L0, s);
    CHECK(std::abs(c.fit.slope) < 1e-12);
    const DecayFit in = decay_fit({6, 8, 12, 16}, d.p, DecayField::in, d.L0, s);
    CHECK(in.fit.slope <= -d.p.m / 2 + 0.1);
    CHECK(in.norms.size() == 4);
    CHECK(code_of([&] { decay_fit({6, 8, 12}, d.p, DecayField::in, d.L0, s); }) == Errc::FitIllConditioned);
    const LogLogFit f = loglog_fit({1, 2, 4, 8}, {3, 3.0 / 4, 3.0 / 16, 3.0 / 64});
    CHECK(f.slope == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(f.r2 == doctest::Approx(1.0));
  }

  TEST_CASE("kernel pairing") {
    ProblemParams p;
    const RingConfig ring{3, 8.0, 1.0, p};
    const RingAnsatz ra(ring);
    PairingSpec q;
    q.quad.rel_tol = 1e-7;
    CHECK(pairing_Z([](const Point&) { return 0.0; }, 1, 1, ring, q).value == 0.0);
    const BubbleParams b1 = ra.bubbles()[0];
    auto z1 = [&](const Point& y) { return bubble_d_r(y, b1); };
    auto z2 = [&](const Point& y) { return bubble_d_Lambda(y, b1); };
    const IntegralResult d22 = pairing_Z(z2, 1, 2, ring, q);
    const IntegralResult d11 = pairing_Z(z1, 1, 1, ring, q);
    CHECK(d22.value < 0.0);
    CHECK(d11.value < 0.0);
    // The scaling and radial modes are orthogonal under the pairing.
    PairingSpec loose = q;
    loose.quad.abs_tol = 1e-9 * std::abs(d22.value);
    const double s12 = pairing_Z(z2, 1, 1, ring, loose).value, s21 = pairing_Z(z1, 1, 2, ring, loose).value;
    CHECK(std::abs(s12) <= 1e-6 * std::abs(d22.value));
    CHECK(std::abs(s21) <= 1e-6 * std::abs(d22.value));
    PairingSpec mc;
    mc.engine = PairingEngine::monte_carlo;
    mc.mc.samples = 200000;
    const IntegralResult odd = pairing_Z([](const Point& y) { return y[1] / (1.0 + norm_sq(y)); }, 1, 2, ring, mc);
    CHECK(std::abs(odd.value) <= 3.0 * odd.error_estimate);
    const IntegralResult m22 = pairing_Z(z2, 1, 2, ring, mc);
    CHECK(std::abs(m22.value - d22.value) <= 4.0 * m22.error_estimate);
    // The pairing sees each bubble through its own frame.
    const BubbleParams b2 = ra.bubbles()[1];
    const IntegralResult e22 = pairing_Z([&](const Point& y) { return bubble_d_Lambda(y, b2); }, 2, 2, ring, q);
    CHECK(e22.value == doctest::Approx(d22.value).epsilon(1e-6));
    CHECK_THROWS_AS(pairing_Z(z1, 4, 1, ring, q), Error);
    CHECK_THROWS_AS(pairing_Z(z1, 1, 3, ring, q), Error);
  }

  TEST_CASE("expansion bracket and two-bubble residual") {
    ProblemParams p;
    p.c0 = 0.0;
    p.d0 = 0.0;
    const ExpansionConstants c = closed_form_constants(validate(p));
    CHECK(expansion_bracket(1, 1.0, 0.7, c) == c.A);
    const Desk d;
    const double L = 0.7;
    CHECK(expansion_bracket(1, 1.0, L, d.c) ==
          doctest::Approx(d.c.A + d.c.d3 / (two_star(5) * L * L) + 3.0 * d.c.d5 / (L * L)).epsilon(1e-15));
    ExpansionSpec es;
    es.mc.samples = 200000;
    double prev = INFINITY;
    for (double r : {5.0, 10.0, 20.0}) {
      const ExpansionCheck e = expansion_check(2, c, es, std::pair{r, 1.0});
      const double ring_term = 2 * c.B * ring_sum(2, r, 3.0);
      const double q = e.residual / ring_term;
      CHECK(q > 0.0);
      CHECK(q < prev);
      prev = q;
    }
    CHECK(prev < 0.15);
  }
}
