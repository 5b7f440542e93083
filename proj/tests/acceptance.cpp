// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lsr/appendix.hpp"
#include "lsr/bubble.hpp"
#include "lsr/cli.hpp"
#include "lsr/coeffs.hpp"
#include "lsr/energy.hpp"
#include "lsr/error.hpp"
#include "lsr/io.hpp"
#include "lsr/solver.hpp"
#include "helpers.hpp"

using namespace lsr;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
  std::vector<std::string> notes;  // extra diagnostic lines
};

std::string fmt(const char* f, auto... xs) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, xs...);
  return buf;
}

std::vector<Point> points(int N, int count, double spread, std::uint64_t seed, bool boundary) {
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<double> uni(-spread, spread);
  std::vector<Point> pts;
  for (int i = 0; i < count; ++i) {
    Point p(N);
    for (int d = 0; d < N; ++d) p[d] = uni(g);
    p[N - 1] = boundary ? 0.0 : std::abs(p[N - 1]);
    pts.push_back(p);
  }
  return pts;
}

const ProblemParams kDesk{};

Outcome bubble_exactness() {
  double wi = 0, wb = 0;
  for (double D : {1.5, 2.0}) {
    const BubbleParams b = standard_bubble(5, D);
    const Field U = [&](const Point& y) { return bubble_jet(y, b); };
    const Profiles pr = Profiles::constant(5, D);
    for (const Point& y : points(5, 200, 5.0, 11, false))
      wi = std::max(wi, residual(y, U, ResidualKind::interior, pr, 5, D).relative());
    for (const Point& y : points(5, 200, 5.0, 12, true))
      wb = std::max(wb, residual(y, U, ResidualKind::boundary, pr, 5, D).relative());
  }
  return {wi <= 1e-8 && wb <= 1e-8, fmt("max relative residual interior %.2e, boundary %.2e (bound 1e-8)", wi, wb)};
}

Outcome kernel_exactness() {
  const int N = 5;
  double wl = 0, wz = 0;
  for (double D : {1.5, 2.0}) {
    const Profiles pr = Profiles::constant(N, D);
    for (int idx = 0; idx < N; ++idx) {
      const Field Z = [&](const Point& y) { return kernel_jet(y, idx, D, N); };
      for (const Point& y : points(N, 200, 5.0, 20 + idx, false))
        wl = std::max(wl, residual(y, Z, ResidualKind::linearized_interior, pr, N, D).relative());
      for (const Point& y : points(N, 200, 5.0, 30 + idx, true))
        wl = std::max(wl, residual(y, Z, ResidualKind::linearized_boundary, pr, N, D).relative());
    }
    const BubbleParams b = standard_bubble(N, D);
    for (const Point& y : points(N, 200, 4.0, 40, false)) {
      const Jet u = bubble_jet(y, b);
      double gy = 0.0;
      for (int i = 0; i < N; ++i) gy += u.grad[i] * (y[i] + (i == N - 1 ? D : 0.0));
      const double expr = (2.0 - N) / 2.0 * u.value - gy + D * u.grad[N - 1];
      const double z0 = kernel_eval(y, 0, D, N);
      wz = std::max(wz, std::abs(z0 - expr) / std::max(std::abs(z0), u.value));
    }
  }
  return {wl <= 1e-8 && wz <= 1e-9,
          fmt("linearized residual %.2e (bound 1e-8); scaling kernel vs derivative expression %.2e (bound 1e-9)", wl, wz)};
}

Outcome derivative_consistency() {
  const int N = 5, k = 6;
  const double r = 4.0, L = 0.8, D = 2.0;
  auto bubble = [&](int i, double rr, double LL) {
    const double a = 2.0 * 3.14159265358979323846 * i / k;
    std::vector<double> c(N - 1, 0.0);
    c[0] = rr * std::cos(a);
    c[1] = rr * std::sin(a);
    return make_bubble(c, LL, D);
  };
  double worst = 0.0;
  int skipped = 0;
  std::vector<double> err_h1, err_h2;
  const std::vector<Point> pts = points(N, 200, 6.0, 50, false);
  for (size_t n = 0; n < pts.size(); ++n) {
    const Point& y = pts[n];
    const int i = static_cast<int>(n % k);
    const BubbleParams b = bubble(i, r, L);
    const double zr = bubble_d_r(y, b), zL = bubble_d_Lambda(y, b);
    const double U = bubble_eval(y, b);
    auto fd = [&](double h, bool in_r) {
      return in_r ? (bubble_eval(y, bubble(i, r + h, L)) - bubble_eval(y, bubble(i, r - h, L))) / (2 * h)
                  : (bubble_eval(y, bubble(i, r, L + h)) - bubble_eval(y, bubble(i, r, L - h))) / (2 * h);
    };
    for (auto [z, in_r] : {std::pair{zr, true}, std::pair{zL, false}}) {
      // Near the nodal set of Z the relative error is meaningless.
      if (std::abs(z) < 1e-3 * U) {
        ++skipped;
        continue;
      }
      worst = std::max(worst, std::abs(fd(1e-5, in_r) - z) / std::abs(z));
      err_h1.push_back(std::abs(fd(2e-2, in_r) - z) / std::abs(z));
      err_h2.push_back(std::abs(fd(1e-2, in_r) - z) / std::abs(z));
    }
  }
  double e1 = 0, e2 = 0;
  for (size_t j = 0; j < err_h1.size(); ++j) {
    e1 += err_h1[j];
    e2 += err_h2[j];
  }
  const double order = std::log2(e1 / e2);
  return {worst <= 1e-6 && std::abs(order - 2.0) < 0.2,
          fmt("max relative error %.2e at h=1e-5 (bound 1e-6); observed order %.3f; %d near-nodal samples skipped", worst,
              order, skipped)};
}

Outcome constant_cross_validation() {
  QuadratureSpec q;
  q.rel_tol = 1e-7;
  bool ok = true;
  std::string d;
  for (int N : {5, 6}) {
    ProblemParams p;
    p.N = N;
    const double ref = B_closed_form(N);
    double lo = INFINITY, hi = -INFINITY, worst = 0;
    for (double D : {1.5, 2.0, 3.0}) {
      p.Dfrak = D;
      const ExpansionConstants c = compute_constants(validate(p), q);
      worst = std::max(worst, std::abs(c.B / ref - 1.0));
      lo = std::min(lo, c.B);
      hi = std::max(hi, c.B);
    }
    const double spread = (hi - lo) / ref;
    ok = ok && worst <= 1e-3 && spread <= 1e-3;
    d += fmt("N=%d: max |B/B_closed-1| %.2e, Dfrak spread %.2e; ", N, worst, spread);
  }
  return {ok, d + "bounds 1e-3"};
}

Outcome exponent_degeneration() {
  QuadratureSpec q;
  q.rel_tol = 1e-8;
  const ExpansionConstants c = compute_constants(validate(kDesk), q);
  const double e4 = std::abs(c.d4 / c.a_N - 1.0), e6 = std::abs(c.d6 / c.b_N - 1.0);
  return {e4 <= 1e-6 && e6 <= 1e-6, fmt("|d4/a_N-1| %.2e, |d6/b_N-1| %.2e (bound 1e-6)", e4, e6)};
}

Outcome interaction_asymptotics() {
  const ExpansionConstants c = closed_form_constants(validate(kDesk));
  const int N = 5;
  std::vector<double> dev;
  std::string d;
  for (double sep : {20.0, 50.0, 100.0}) {
    const BubbleParams b1 = standard_bubble(N, kDesk.Dfrak);
    BubbleParams b2 = b1;
    b2.center[0] = sep;
    ReducedIntegrand in;
    in.N = N;
    in.y1_breaks = {0.0, sep};
    in.check_symmetry = false;
    in.f = [&](const Point& y) { return std::pow(bubble_eval(y, b1), p_interior(N)) * bubble_eval(y, b2); };
    QuadratureSpec q;
    q.rel_tol = 1e-7;
    q.abs_tol = 1e-300;
    const double ratio = integrate_reduced(in, Reduction::bipolar3, q).value * std::pow(sep, N - 2) / c.d1;
    dev.push_back(std::abs(ratio - 1.0));
    d += fmt("ratio(%g) = %.6f; ", sep, ratio);
  }
  const bool mono = dev[0] > dev[1] && dev[1] > dev[2];
  return {dev[2] <= 0.02 && mono, d + (mono ? "monotone" : "not monotone")};
}

Outcome ring_sum_constant() {
  const B0Fit a = B0_extrapolate({64, 128, 256, 512}, 1.0, 5);
  const B0Fit b = B0_extrapolate({64, 128, 256, 512}, 10.0, 5);
  const B0Fit c = B0_extrapolate({128, 256, 512, 1024}, 1.0, 5);
  const double rdep = std::abs(a.B0 - b.B0) / a.B0, self = std::abs(c.B0 / a.B0 - 1.0);
  const double zeta = std::abs(a.B0 / B0_zeta_hypothesis(5) - 1.0);
  return {rdep <= 1e-12 && self <= 1e-3,
          fmt("B0 = %.10f; r-dependence %.1e (bound 1e-12); shift to larger k %.1e (bound 1e-3); "
              "zeta hypothesis 2 zeta(3)/(2 pi)^3 off by %.1e (not gating)",
              a.B0, rdep, self, zeta)};
}

Outcome reduced_gradient() {
  const ExpansionConstants c = closed_form_constants(validate(kDesk));
  const double L0 = lambda0(c.regime, c, kDesk);
  double worst = 0.0, dL_center = 0.0;
  for (int k : {6, 8, 12, 16}) {
    const BoxDj b = make_box(k, c);
    dL_center = std::max(dL_center, std::abs(F_reduced_grad(b.r_center, L0, k, c, c.regime).dL));
    for (double u : {-0.8, -0.2, 0.5})
      for (double v : {-0.7, 0.3, 0.9}) {
        const double r = b.r_center + u * (b.r_hi - b.r_center);
        const double L = b.L_center + v * (v > 0 ? b.L_hi - b.L_center : b.L_center - b.L_lo);
        const Grad2 g = F_reduced_grad(r, L, k, c, c.regime);
        const long double hr = 1e-3L * (b.r_hi - b.r_center), hL = 1e-3L * L;
        const double fr = static_cast<double>(
            testing::diff4([&](long double x) { return testing::reduced_minus_A(x, L, k, c); }, r, hr));
        const double fL = static_cast<double>(
            testing::diff4([&](long double x) { return testing::reduced_minus_A(r, x, k, c); }, L, hL));
        worst = std::max({worst, std::abs(g.dr - fr) / std::abs(fr), std::abs(g.dL - fL) / std::abs(fL)});
      }
  }
  return {worst <= 1e-8 && dL_center == 0.0,
          fmt("max relative gradient error %.2e (bound 1e-8); |dF/dLambda| at (mu r0, Lambda0) = %g", worst, dL_center)};
}

Outcome critical_point() {
  const ExpansionConstants c = closed_form_constants(validate(kDesk));
  bool ok = true;
  std::string d;
  for (int k : {6, 8, 12}) {
    const ExistenceReport r = find_critical_point(k, c);
    const double er = std::abs(r.r_star - r.mu * kDesk.r0), eL = std::abs(r.Lambda_star - r.Lambda0);
    SolverOptions o;
    o.objective = Objective::reduced_plus_modeled_error;
    const ExistenceReport q = find_critical_point(k, c, o);
    const bool inside = std::abs(q.r_star - q.mu * kDesk.r0) <= std::pow(q.mu, -kDesk.theta_bar) &&
                        std::abs(q.Lambda_star - q.Lambda0) <= std::pow(q.mu, -1.5 * kDesk.theta_bar);
    ok = ok && er <= 1e-6 && eL <= 1e-6 && inside && q.converged;
    d += fmt("%sk=%d: offset (%.1e, %.1e), perturbed shift (%.1e, %.1e) %s", d.empty() ? "" : "; ", k, er, eL, q.r_star - q.mu * kDesk.r0,
             q.Lambda_star - q.Lambda0, inside ? "inside D_j" : "OUTSIDE D_j");
  }
  return {ok, d};
}

Outcome expansion_agreement() {
  const ExpansionConstants c = closed_form_constants(validate(kDesk));
  ExpansionSpec es;
  es.mc.samples = 4'000'000;
  Outcome o;
  o.pass = true;
  int passed = 0;
  for (int k : {6, 8, 10}) {
    const ExpansionCheck e = expansion_check(k, c, es);
    const double bound = std::max(3.0 * e.J_full_error, e.tolerance_bound);
    o.pass = o.pass && e.pass;
    passed += e.pass;
    const double L = e.Lambda, m = e.mu;
    const double mterms = k * (-kDesk.c0 * c.d3 / (two_star(5) * std::pow(L * m, kDesk.m)) +
                               3.0 * kDesk.d0 * c.d5 / std::pow(L * m, kDesk.n));
    o.notes.push_back(fmt("k=%d mu=%g: J_full %.10g +- %.1e, leading %.10g, |residual| %.3e, allowed %.3e; "
                          "residual / mu^{-m} terms of the bracket %.3f",
                          k, m, e.J_full_value, e.J_full_error, e.leading_value, std::abs(e.residual), bound,
                          std::abs(e.residual) / mterms));
  }
  o.detail = fmt("%d/3 values of k within max(3 MC error, 0.05 k mu^{-m})", passed);
  return o;
}

Outcome error_decay() {
  const ExpansionConstants c = closed_form_constants(validate(kDesk));
  const double L0 = lambda0(c.regime, c, kDesk);
  const WeightedNormSpec s;
  const DecayFit in = decay_fit({6, 8, 12, 16}, kDesk, DecayField::in, L0, s);
  const DecayFit bd = decay_fit({6, 8, 12, 16}, kDesk, DecayField::bd, L0, s);
  const bool ok = in.fit.slope <= -kDesk.m / 2 + 0.1 && bd.fit.slope <= -kDesk.n / 2 + 0.1;
  return {ok, fmt("slope_in %.4f (bound %.2f), slope_bd %.4f (bound %.2f)", in.fit.slope, -kDesk.m / 2 + 0.1,
                  bd.fit.slope, -kDesk.n / 2 + 0.1)};
}

Outcome appendix_suites() {
  Outcome o;
  o.pass = true;
  int n = 0, good = 0;
  for (auto t : {std::array<double, 3>{1.7, 1.7, 1.0}, {1.7, 3.7, 1.5}, {3.7, 3.7, 2.0}, {1.0, 2.0, 0.9}}) {
    PairDecaySpec s;
    s.alpha = t[0];
    s.beta = t[1];
    s.sigma = t[2];
    const PairDecayResult r = pair_decay_suite(s);
    ++n;
    good += r.pass;
    o.notes.push_back(fmt("pair decay (%g, %g, %g): C_fit %.4f, C_check %.4f, proven %.4f, %d violations in %lld samples",
                          t[0], t[1], t[2], r.C_fit, r.C_check, r.C_proven, r.violations,
                          static_cast<long long>(r.samples)));
  }
  QuadratureSpec q;
  q.rel_tol = 1e-6;
  for (double s : {0.5, 1.0, 2.0})
    for (bool bd : {false, true}) {
      const PotentialDecayResult r = potential_decay_suite(5, s, bd, {1, 10, 100}, q);
      ++n;
      good += r.pass;
      o.notes.push_back(fmt("potential %s sigma=%g: C_fit %.5g, saturation %.2e, %s", bd ? "boundary" : "interior", s,
                            r.C_fit, r.saturation, r.pass ? "pass" : "fail"));
    }
  for (int k : {1, 2})
    for (bool bd : {false, true}) {
      ConvolutionGainSpec s;
      s.k = k;
      s.boundary = bd;
      const ConvolutionGainResult r = convolution_gain_suite(s, q);
      ++n;
      good += r.pass;
      o.notes.push_back(fmt("convolution gain k=%d %s: theta_fit %.3f, theta used %.3f, C_fit %.4g, %s", k,
                            bd ? "boundary" : "interior", r.theta_fit, r.theta_used, r.C_fit, r.pass ? "pass" : "fail"));
    }
  o.pass = good == n;
  o.detail = fmt("%d/%d suites pass", good, n);
  return o;
}

Outcome regime_gate() {
  struct Case {
    double m, n, c0, d0;
    bool admissible;
  };
  const Case cases[] = {{2.0, 2.5, -1.0, 1.0, true},  {2.0, 2.5, 1.0, 1.0, false},
                        {2.0, 2.0, -1.0, 1.0, true},  {2.0, 2.0, -1.0, -1.0, false},
                        {2.5, 2.0, 1.0, 1.0, true},   {2.5, 2.0, -1.0, -1.0, false}};
  int good = 0;
  for (const Case& c : cases) {
    ProblemParams p;
    p.m = c.m;
    p.n = c.n;
    p.c0 = c.c0;
    p.d0 = c.d0;
    const Regime g = regime(validate(p));
    bool solver_agrees;
    try {
      construct_report(8, p, false);
      solver_agrees = c.admissible;
    } catch (const Error& e) {
      solver_agrees = !c.admissible && e.code() == Errc::NotAdmissible;
    }
    good += g.admissible == c.admissible && solver_agrees;
  }
  return {good == 6, fmt("%d/6 sign and ordering combinations classified and gated correctly", good)};
}

Outcome determinism() {
  const std::string cfg = "/tmp/lsr_acceptance_config.json";
  {
    std::FILE* f = std::fopen(cfg.c_str(), "w");
    std::fputs(R"({"mc": {"samples": 2000, "seed": 7}, "norm": {"n_radial": 8, "n_directions": 8}})", f);
    std::fclose(f);
  }
  const std::vector<std::vector<std::string>> cmds = {{"constants", "--source", "closed-form"},
                                                      {"check-bubble"},
                                                      {"energy-scan", "--n", "5"},
                                                      {"expansion-check", "--k", "6"},
                                                      {"error-decay"},
                                                      {"critical-point", "--k", "8"},
                                                      {"export-profile"}};
  int same = 0, total = 0;
  for (const auto& base : cmds)
    for (const char* format : {"json", "csv"}) {
      std::vector<std::string> args = {"lsr"};
      args.insert(args.end(), base.begin(), base.end());
      args.insert(args.end(), {"--config", cfg, "--format", format, "--no-timestamp"});
      std::vector<const char*> argv;
      for (const auto& a : args) argv.push_back(a.c_str());
      std::string outs[2];
      bool ok = true;
      for (auto& s : outs) {
        std::ostringstream out, err;
        ok = ok && run(static_cast<int>(argv.size()), argv.data(), out, err) == 0;
        s = out.str();
      }
      ++total;
      same += ok && !outs[0].empty() && outs[0] == outs[1];
    }
  return {same == total, fmt("%d/%d subcommand outputs byte-identical on rerun", same, total)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all = {
      {"bubble exactness", bubble_exactness},
      {"kernel exactness", kernel_exactness},
      {"derivative consistency", derivative_consistency},
      {"constant cross-validation", constant_cross_validation},
      {"exponent degeneration", exponent_degeneration},
      {"interaction asymptotics", interaction_asymptotics},
      {"ring-sum constant", ring_sum_constant},
      {"reduced-gradient correctness", reduced_gradient},
      {"critical point", critical_point},
      {"expansion agreement", expansion_agreement},
      {"error-term decay", error_decay},
      {"appendix inequalities", appendix_suites},
      {"regime gate", regime_gate},
      {"determinism", determinism},
  };
  int failed = 0;
  for (size_t i = 0; i < all.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = all[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::printf("%s  %2zu %-29s %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", i + 1, all[i].name, o.detail.c_str(), dt);
    for (const auto& n : o.notes) std::printf("          %s\n", n.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria pass\n", static_cast<int>(all.size()) - failed, all.size());
  return failed == 0 ? 0 : 1;
}
