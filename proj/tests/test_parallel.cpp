#include <cmath>

#include "doctest.h"
#include "lsr/energy.hpp"
#include "lsr/parallel.hpp"
#include "lsr/quad.hpp"

using namespace lsr;

namespace {

struct ExecGuard {
  Exec saved = default_exec();
  ~ExecGuard() { set_default_exec(saved); }
};

}  // namespace

TEST_SUITE("parallel") {
  TEST_CASE("Monte Carlo: serial and parallel agree bit for bit") {
    const BubbleParams b = standard_bubble(5, 2.0);
    const MixtureSampler s(5, {Point(5)}, std::sqrt(3.0), 2.0, true);
    McSpec mc;
    mc.samples = 100003;
    auto f = [&](const Point& y) { return std::pow(bubble_eval(y, b), 10.0 / 3.0); };
    const IntegralResult a = integrate_mc(f, s, mc, Exec::serial);
    const IntegralResult p = integrate_mc(f, s, mc, Exec::parallel);
    CHECK(a.value == p.value);
    CHECK(a.error_estimate == p.error_estimate);
    CHECK(a.evals == p.evals);
  }

  TEST_CASE("cubature: serial and parallel agree bit for bit") {
    const BubbleParams b = standard_bubble(5, 2.0);
    ReducedIntegrand in;
    in.N = 5;
    in.scale = std::sqrt(3.0);
    in.f = [&](const Point& y) { return std::pow(bubble_eval(y, b), 10.0 / 3.0); };
    QuadratureSpec q;
    q.rel_tol = 1e-9;
    for (Reduction r : {Reduction::radial2, Reduction::axial3}) {
      const IntegralResult a = integrate_reduced(in, r, q, Exec::serial);
      const IntegralResult p = integrate_reduced(in, r, q, Exec::parallel);
      CHECK(a.value == p.value);
      CHECK(a.error_estimate == p.error_estimate);
    }
  }

  TEST_CASE("weighted norm: serial and parallel agree bit for bit") {
    ProblemParams pp;
    const RingConfig ring{6, 40.0, 0.2, pp};
    const ErrorField e(ring, Profiles::scaled(pp, 40.0));
    WeightedNormSpec s;
    auto f = [&](const Point& y) { return e(y, ErrorKind::in); };
    const NormResult a = weighted_norm(f, e.ansatz(), NormKind::dstar, s, Exec::serial);
    const NormResult p = weighted_norm(f, e.ansatz(), NormKind::dstar, s, Exec::parallel);
    CHECK(a.value == p.value);
    CHECK(a.argmax == p.argmax);
  }

  TEST_CASE("full energy: serial and parallel agree bit for bit") {
    ExecGuard guard;
    ProblemParams pp;
    McSpec mc;
    mc.samples = 50000;
    const RingConfig ring{3, 5.0, 0.7, pp};
    set_default_exec(Exec::serial);
    const JFullResult a = J_full(ring, QuadratureSpec{}, mc);
    set_default_exec(Exec::parallel);
    const JFullResult p = J_full(ring, QuadratureSpec{}, mc);
    CHECK(a.total.value == p.total.value);
    CHECK(a.total.error_estimate == p.total.error_estimate);
  }

  TEST_CASE("thread count") { CHECK(max_threads() >= 1); }
}
