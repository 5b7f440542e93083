#include "lsr/energy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "lsr/error.hpp"

namespace lsr {

namespace {

double bubble_length(double Dfrak, double Lambda) {
  return std::max(1.0, std::sqrt(Dfrak * Dfrak - 1.0)) / Lambda;
}

void require_admissible(const Regime& g) {
  if (!g.admissible) throw Error(Errc::InadmissibleRegime, "reduced functional needs an admissible regime");
}

// W^a - sum_j U_j^a without cancellation near a dominant bubble.
double power_excess(std::span<const double> u, double a) {
  std::size_t imax = 0;
  for (std::size_t j = 1; j < u.size(); ++j)
    if (u[j] > u[imax]) imax = j;
  const double um = u[imax];
  if (um <= 0.0) return 0.0;
  double rest = 0.0, rest_pow = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (j == imax) continue;
    rest += u[j];
    rest_pow += std::pow(u[j], a);
  }
  if (rest == 0.0) return 0.0;
  return std::pow(um, a) * std::expm1(a * std::log1p(rest / um)) - rest_pow;
}

Point lift(const Point& bar, int N) {
  Point p(N);
  for (int i = 0; i + 1 < N; ++i) p[i] = bar[i];
  return p;
}

Point drop_last(const Point& p) {
  Point q(p.dim() - 1);
  for (int i = 0; i + 1 < p.dim(); ++i) q[i] = p[i];
  return q;
}

Point rotate12(const Point& p, double a) {
  Point q = p;
  q[0] = std::cos(a) * p[0] - std::sin(a) * p[1];
  q[1] = std::sin(a) * p[0] + std::cos(a) * p[1];
  return q;
}

IntegralResult reduced_or_budget(const ReducedIntegrand& in, Reduction red, const QuadratureSpec& spec) {
  try {
    return integrate_reduced(in, red, spec);
  } catch (const Error& e) {
    if (e.code() == Errc::ToleranceNotMet) throw Error(Errc::BudgetExhausted, e.what());
    throw;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// reduced functional

std::pair<double, double> lambda_range(const ExpansionConstants& c) {
  const double L0 = lambda0(c.regime, c, c.params);
  return {0.25 * L0, 4.0 * L0};
}

BoxDj make_box(int k, const ExpansionConstants& c) {
  require_admissible(c.regime);
  const ProblemParams& p = c.params;
  const double m = mu(k, p);
  const double L0 = lambda0(c.regime, c, p);
  BoxDj b;
  b.j = c.regime.j();
  b.r_center = m * p.r0;
  b.L_center = L0;
  const double dr = std::pow(m, -p.theta_bar), dL = std::pow(m, -1.5 * p.theta_bar);
  b.r_lo = b.r_center - dr;
  b.r_hi = b.r_center + dr;
  // Intersected with the a-priori range [L0, L1]; at moderate k the
  // Lambda half-width exceeds Lambda0 itself.
  b.L_lo = std::max(L0 - dL, 0.25 * L0);
  b.L_hi = std::min(L0 + dL, 4.0 * L0);
  return b;
}

double F_reduced_formula(double r, double L, int k, const ExpansionConstants& c) {
  const ProblemParams& p = c.params;
  const int N = p.N;
  const double j = c.regime.j();
  const double m = mu(k, p);
  const double mj = std::pow(m, -j);
  const double d = m * p.r0 - r;
  const double bracket = c.A1 / std::pow(L, j) - c.B1 / (std::pow(L, N - 2.0) * std::pow(p.r0, N - 2.0));
  return k * (c.A + bracket * mj + c.A2 * d * d * mj / std::pow(L, j - 2.0));
}

Grad2 F_reduced_grad_formula(double r, double L, int k, const ExpansionConstants& c) {
  const ProblemParams& p = c.params;
  const int N = p.N;
  const double j = c.regime.j();
  const double m = mu(k, p);
  const double mj = std::pow(m, -j);
  const double d = m * p.r0 - r;
  const double r0n = std::pow(p.r0, N - 2.0);
  Grad2 g;
  g.dr = -2.0 * k * c.A2 * d * mj / std::pow(L, j - 2.0);
  g.dL = k * ((-j * c.A1 / std::pow(L, j + 1.0) + (N - 2.0) * c.B1 / (std::pow(L, N - 1.0) * r0n)) * mj +
              (2.0 - j) * c.A2 * d * d * mj / std::pow(L, j - 1.0));
  return g;
}

Hess2 F_reduced_hess_formula(double r, double L, int k, const ExpansionConstants& c) {
  const ProblemParams& p = c.params;
  const int N = p.N;
  const double j = c.regime.j();
  const double m = mu(k, p);
  const double mj = std::pow(m, -j);
  const double d = m * p.r0 - r;
  const double r0n = std::pow(p.r0, N - 2.0);
  Hess2 h;
  h.rr = 2.0 * k * c.A2 * mj / std::pow(L, j - 2.0);
  h.rL = -2.0 * k * (2.0 - j) * c.A2 * d * mj / std::pow(L, j - 1.0);
  h.LL = k * ((j * (j + 1.0) * c.A1 / std::pow(L, j + 2.0) -
               (N - 2.0) * (N - 1.0) * c.B1 / (std::pow(L, static_cast<double>(N)) * r0n)) *
                  mj +
              (2.0 - j) * (1.0 - j) * c.A2 * d * d * mj / std::pow(L, j));
  return h;
}

namespace {
void check_in_box(double r, double L, int k, const ExpansionConstants& c, const Regime& g) {
  require_admissible(g);
  const BoxDj b = make_box(k, c);
  if (!b.contains(r, L)) throw Error(Errc::OutsideBox, "(r, Lambda) lies outside D_j");
}
}  // namespace

double F_reduced(double r, double L, int k, const ExpansionConstants& c, const Regime& g) {
  check_in_box(r, L, k, c, g);
  return F_reduced_formula(r, L, k, c);
}

Grad2 F_reduced_grad(double r, double L, int k, const ExpansionConstants& c, const Regime& g) {
  check_in_box(r, L, k, c, g);
  return F_reduced_grad_formula(r, L, k, c);
}

// ---------------------------------------------------------------------------
// full energy

namespace {

struct Centers {
  std::vector<BubbleParams> bubbles;
  int N = 5;

  void values(const Point& y, std::span<double> out) const {
    for (std::size_t j = 0; j < bubbles.size(); ++j) out[j] = bubble_eval(y, bubbles[j]);
  }
};

Centers make_centers(const RingConfig& ring, const std::vector<double>& shift) {
  Centers c;
  c.N = ring.params.N;
  const RingAnsatz ra(ring);
  c.bubbles = ra.bubbles();
  if (!shift.empty()) {
    if (static_cast<int>(shift.size()) != c.N - 1)
      throw Error(Errc::InvalidParameter, "translation needs N-1 tangential components");
    for (auto& b : c.bubbles)
      for (int i = 0; i + 1 < c.N; ++i) b.center[i] += shift[i];
  }
  return c;
}

}  // namespace

JFullResult J_full(const RingConfig& ring, const QuadratureSpec& quad, const McSpec& mc, const JFullOptions& opts) {
  const ProblemParams& p = ring.params;
  validate(p);
  const int N = p.N;
  const int k = ring.k;
  const double D = p.Dfrak;
  const double ts = two_star(N), tsh = two_sharp(N), cN = c_N(N), h0 = H0(N, D);
  if (!opts.translation.empty() && !opts.constant_profiles)
    throw Error(Errc::InvalidParameter, "translations keep J invariant only with constant profiles");
  const Profiles prof = opts.constant_profiles ? Profiles::constant(N, D) : Profiles::scaled(p, mu(k, p));
  const double len = bubble_length(D, ring.Lambda);

  BubbleParams b1;
  b1.N = N;
  b1.center = Point(N);
  b1.center[0] = ring.r;
  b1.Lambda = ring.Lambda;
  b1.Dfrak = D;
  BubbleParams b0 = b1;
  b0.center = Point(N);

  JFullResult out;
  double single = 0.0, single_err = 0.0;
  auto add = [&](const IntegralResult& r, double factor) {
    single += factor * r.value;
    single_err += std::abs(factor) * r.error_estimate;
  };

  ReducedIntegrand in;
  in.N = N;
  in.scale = len;
  if (opts.form == EnergyForm::green) {
    // c_N/2 |grad U|^2 = -U^{2*}/2 in the bulk plus (N-1) H0 U^{2#} on the boundary.
    in.f = [b0, ts](const Point& y) { return std::pow(bubble_eval(y, b0), ts); };
    add(reduced_or_budget(in, Reduction::radial2, quad), 1.0 / ts - 0.5);
    in.f = [b0, tsh](const Point& y) { return std::pow(bubble_eval(y, b0), tsh); };
    add(reduced_or_budget(in, Reduction::boundary_radial1, quad), h0);
    if (!prof.is_constant()) {
      // Profile corrections are small; their tolerance is set by the leading term.
      QuadratureSpec cq = quad;
      cq.abs_tol = std::max(quad.abs_tol, quad.rel_tol * std::abs(single));
      in.y1_breaks = {ring.r};
      in.f = [b1, ts, prof](const Point& y) {
        return (prof.K(norm(y)) - 1.0) * std::pow(bubble_eval(y, b1), ts);
      };
      add(reduced_or_budget(in, Reduction::axial3, cq), 1.0 / ts);
      in.f = [b1, tsh, prof, h0](const Point& y) {
        return (h0 - prof.H(tangential_norm(y))) * std::pow(bubble_eval(y, b1), tsh);
      };
      add(reduced_or_budget(in, Reduction::boundary_axial2, cq), N - 2.0);
    }
  } else {
    in.y1_breaks = {ring.r};
    in.f = [b1, ts, cN, prof](const Point& y) {
      const Jet j = bubble_jet(y, b1);
      return 0.5 * cN * norm_sq(j.grad) + prof.K(norm(y)) / ts * std::pow(j.value, ts);
    };
    add(reduced_or_budget(in, Reduction::axial3, quad), 1.0);
    in.f = [b1, tsh, prof](const Point& y) {
      return prof.H(tangential_norm(y)) * std::pow(bubble_eval(y, b1), tsh);
    };
    add(reduced_or_budget(in, Reduction::boundary_axial2, quad), -(N - 2.0));
  }
  out.single = k * single;
  out.single_error = k * single_err;

  if (k > 1) {
    const Centers cs = make_centers(ring, opts.translation);
    std::vector<Point> cin, cbd;
    for (const auto& b : cs.bubbles) {
      cin.push_back(b.center);
      cbd.push_back(drop_last(b.center));
    }
    const double pin = p_interior(N), pbd = p_boundary(N);
    std::function<double(const Point&)> f_in, f_bd;
    if (opts.form == EnergyForm::green) {
      f_in = [cs, prof, ts, pin, k](const Point& y) {
        std::vector<double> us(k);
        cs.values(y, us);
        double w = 0.0, cross = 0.0;
        for (double v : us) w += v;
        for (double v : us) cross += std::pow(v, pin) * (w - v);
        return -0.5 * cross + prof.K(norm(y)) / ts * power_excess(us, ts);
      };
      f_bd = [cs, prof, tsh, pbd, h0, k, N](const Point& ybar) {
        const Point y = lift(ybar, N);
        std::vector<double> us(k);
        cs.values(y, us);
        double w = 0.0, cross = 0.0;
        for (double v : us) w += v;
        for (double v : us) cross += std::pow(v, pbd) * (w - v);
        return (N - 1.0) * h0 * cross - (N - 2.0) * prof.H(tangential_norm(y)) * power_excess(us, tsh);
      };
    } else {
      f_in = [cs, prof, ts, cN, k, N](const Point& y) {
        std::vector<double> us(k);
        Point g(N);
        double self = 0.0;
        for (int j = 0; j < k; ++j) {
          const Jet jt = bubble_jet(y, cs.bubbles[j]);
          us[j] = jt.value;
          self += norm_sq(jt.grad);
          for (int i = 0; i < N; ++i) g[i] += jt.grad[i];
        }
        return 0.5 * cN * (norm_sq(g) - self) + prof.K(norm(y)) / ts * power_excess(us, ts);
      };
      f_bd = [cs, prof, tsh, k, N](const Point& ybar) {
        const Point y = lift(ybar, N);
        std::vector<double> us(k);
        cs.values(y, us);
        return -(N - 2.0) * prof.H(tangential_norm(y)) * power_excess(us, tsh);
      };
    }
    const MixtureSampler s_in(N, cin, len, opts.sampler_tail, true);
    const MixtureSampler s_bd(N - 1, cbd, len, std::min(opts.sampler_tail, 1.5), false);
    McSpec mc_bd = mc;
    mc_bd.seed = mc.seed ^ 0x9e3779b97f4a7c15ULL;
    const IntegralResult ri = integrate_mc(f_in, s_in, mc);
    const IntegralResult rb = integrate_mc(f_bd, s_bd, mc_bd);
    out.interaction.value = ri.value + rb.value;
    out.interaction.error_estimate = std::hypot(ri.error_estimate, rb.error_estimate);
    out.interaction.evals = ri.evals + rb.evals;
  }
  out.total.value = out.single + out.interaction.value;
  out.total.error_estimate = std::hypot(out.single_error, out.interaction.error_estimate);
  out.total.evals = out.interaction.evals;
  return out;
}

// ---------------------------------------------------------------------------
// error fields

ErrorField::ErrorField(const RingConfig& ring, std::optional<Profiles> profiles)
    : ring_(ring),
      profiles_(profiles ? *profiles : Profiles::scaled(ring.params, mu(ring.k, ring.params))) {}

double ErrorField::operator()(const Point& p, ErrorKind which) const {
  const int N = ring_.N();
  const int k = ring_.config().k;
  std::vector<double> us(k);
  ring_.terms(p, us);
  double w = 0.0;
  for (double v : us) w += v;
  if (which == ErrorKind::in) {
    const double a = p_interior(N);
    return (profiles_.K(norm(p)) - 1.0) * std::pow(w, a) + power_excess(us, a);
  }
  if (!p.on_boundary()) throw Error(Errc::NotOnBoundary, "boundary error needs y_N = 0");
  const double a = p_boundary(N);
  const double h0 = H0(N, ring_.config().params.Dfrak);
  return (profiles_.H(tangential_norm(p)) - h0) * std::pow(w, a) + h0 * power_excess(us, a);
}

double error_field(const Point& p, const RingConfig& ring, ErrorKind which) { return ErrorField(ring)(p, which); }

// ---------------------------------------------------------------------------
// weighted norms

void check_norm_spec(const WeightedNormSpec& s, int N) {
  if (!(s.tau > 0.0) || !(s.tau < 0.5 * (N - 2)))
    throw Error(Errc::InvalidParameter, "tau must lie in (0, (N-2)/2)");
  if (!(s.cutoff_radius >= 0.0)) throw Error(Errc::InvalidParameter, "cutoff radius must be >= 0");
  if (s.n_radial < 2 || s.n_directions < 1) throw Error(Errc::InvalidParameter, "grid too small");
}

double norm_weight(const Point& p, const RingAnsatz& ring, NormKind which, double tau) {
  const int N = ring.N();
  double e = 0.0;
  switch (which) {
    case NormKind::star: e = 0.5 * (N - 2) + tau; break;
    case NormKind::dstar: e = 0.5 * (N + 2) + tau; break;
    case NormKind::tstar: e = 0.5 * N + tau; break;
  }
  double s = 0.0;
  for (const auto& b : ring.bubbles()) s += std::pow(1.0 + dist(p, b.center), -e);
  return s;
}

std::vector<Point> make_sector_grid(const RingAnsatz& ring, const WeightedNormSpec& spec, bool boundary) {
  const int N = ring.N();
  check_norm_spec(spec, N);
  const RingConfig& cfg = ring.config();
  const double len = bubble_length(cfg.params.Dfrak, cfg.Lambda);
  const double cutoff = spec.cutoff_radius > 0.0 ? spec.cutoff_radius : 3.0 * cfg.r + 50.0 * len;
  const int dim = boundary ? N - 1 : N;

  std::vector<Point> dirs;
  auto push_dir = [&](Point d) {
    if (!boundary) d[N - 1] = std::abs(d[N - 1]);
    const double n = norm(d);
    if (n == 0.0) return;
    for (int i = 0; i < N; ++i) d[i] /= n;
    dirs.push_back(d);
  };
  for (int i = 0; i < dim; ++i) {
    for (double s : {1.0, -1.0}) {
      if (!boundary && i == N - 1 && s < 0) continue;
      Point d(N);
      d[i] = s;
      push_dir(d);
    }
  }
  if (cfg.k > 1) {
    const auto& bs = ring.bubbles();
    Point d(N);
    for (int i = 0; i < N; ++i) d[i] = bs[1].center[i] - bs[0].center[i];
    push_dir(d);
  }
  std::mt19937_64 gen(0x5eed);
  std::normal_distribution<double> gauss;
  while (static_cast<int>(dirs.size()) < spec.n_directions + 2 * dim) {
    Point d(N);
    for (int i = 0; i < dim; ++i) d[i] = gauss(gen);
    push_dir(d);
  }

  std::vector<double> radii;
  const double rmin = 1e-2 * len;
  for (int i = 0; i < spec.n_radial; ++i)
    radii.push_back(rmin * std::pow(cutoff / rmin, static_cast<double>(i) / (spec.n_radial - 1)));

  std::vector<Point> grid;
  const Point x1 = ring.bubbles()[0].center;
  auto keep = [&](Point y) {
    if (boundary) y[N - 1] = 0.0;
    if (std::hypot(y[0], y[1]) < 1e-12 * std::max(1.0, cfg.r)) return;
    if (ring.sector(y) != 1) return;
    grid.push_back(y);
  };
  keep(x1);
  for (bool from_x1 : {true, false}) {
    for (const Point& d : dirs) {
      for (double t : radii) {
        Point y(N);
        for (int i = 0; i < N; ++i) y[i] = (from_x1 ? x1[i] : 0.0) + t * d[i];
        keep(y);
      }
    }
  }
  return grid;
}

NormResult weighted_norm_on(const std::function<double(const Point&)>& field, const RingAnsatz& ring,
                            NormKind which, double tau, const std::vector<Point>& grid, Exec exec) {
  if (grid.empty()) throw Error(Errc::EmptyGrid, "weighted norm needs at least one grid point");
  std::vector<double> ratio(grid.size());
  for_each_index(static_cast<std::int64_t>(grid.size()), exec, [&](std::int64_t i) {
    ratio[i] = std::abs(field(grid[i])) / norm_weight(grid[i], ring, which, tau);
  });
  NormResult out;
  out.n_points = grid.size();
  std::size_t best = 0;
  for (std::size_t i = 1; i < ratio.size(); ++i)
    if (ratio[i] > ratio[best]) best = i;
  out.value = ratio[best];
  out.argmax = grid[best];
  return out;
}

NormResult weighted_norm(const std::function<double(const Point&)>& field, const RingAnsatz& ring, NormKind which,
                         const WeightedNormSpec& spec, Exec exec) {
  const auto grid = make_sector_grid(ring, spec, which == NormKind::tstar);
  NormResult r = weighted_norm_on(field, ring, which, spec.tau, grid, exec);
  const RingConfig& cfg = ring.config();
  r.cutoff = spec.cutoff_radius > 0.0 ? spec.cutoff_radius
                                      : 3.0 * cfg.r + 50.0 * bubble_length(cfg.params.Dfrak, cfg.Lambda);
  return r;
}

LogLogFit loglog_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw Error(Errc::FitIllConditioned, "need >= 2 matched points");
  const std::size_t n = xs.size();
  double sx = 0, sy = 0;
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) throw Error(Errc::FitIllConditioned, "log-log fit needs positive data");
    lx[i] = std::log(xs[i]);
    ly[i] = std::log(ys[i]);
    sx += lx[i];
    sy += ly[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (!(sxx > 1e-12)) throw Error(Errc::FitIllConditioned, "abscissae coincide");
  LogLogFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
  return f;
}

DecayFit decay_fit(const std::vector<int>& k_list, const ProblemParams& params, DecayField which, double Lambda,
                   const WeightedNormSpec& spec) {
  validate(params);
  if (k_list.size() < 4) throw Error(Errc::FitIllConditioned, "decay fit needs at least four values of k");
  DecayFit out;
  for (int k : k_list) {
    const double m = mu(k, params);
    RingConfig cfg{k, m * params.r0, Lambda, params};
    const RingAnsatz ring(cfg);
    NormResult nr;
    if (which == DecayField::weight_control) {
      nr = weighted_norm([&](const Point& y) { return norm_weight(y, ring, NormKind::dstar, spec.tau); }, ring,
                         NormKind::dstar, spec);
    } else {
      const ErrorField ef(cfg);
      const ErrorKind kind = which == DecayField::in ? ErrorKind::in : ErrorKind::bd;
      nr = weighted_norm([&](const Point& y) { return ef(y, kind); }, ring,
                         which == DecayField::in ? NormKind::dstar : NormKind::tstar, spec);
    }
    out.ks.push_back(k);
    out.mus.push_back(m);
    out.norms.push_back(nr.value);
  }
  out.fit = loglog_fit(out.mus, out.norms);
  return out;
}

// ---------------------------------------------------------------------------
// pairing

IntegralResult pairing_Z(const std::function<double(const Point&)>& phi, int i, int ell, const RingConfig& ring,
                         const PairingSpec& spec) {
  const RingAnsatz ra(ring);
  const int N = ra.N();
  const int k = ring.k;
  if (i < 1 || i > k) throw Error(Errc::IndexOutOfRange, "bubble index out of range");
  if (ell != 1 && ell != 2) throw Error(Errc::IndexOutOfRange, "pairing index must be 1 or 2");
  const double D = ring.params.Dfrak;
  const double len = bubble_length(D, ring.Lambda);
  const double cbd = -2.0 * std::sqrt(N * (N - 1.0)) * D, cin = N + 2.0;
  const double ein = 4.0 / (N - 2), ebd = 2.0 / (N - 2);
  auto Z = [ell](const Point& y, const BubbleParams& b) {
    return ell == 1 ? bubble_d_r(y, b) : bubble_d_Lambda(y, b);
  };

  if (spec.engine == PairingEngine::quadrature) {
    // Work in the frame where x_i sits on the positive y_1 axis.
    const double a = 2.0 * std::numbers::pi * (i - 1) / k;
    BubbleParams b = ra.bubbles()[0];
    ReducedIntegrand in;
    in.N = N;
    in.scale = len;
    in.y1_breaks = {ring.r};
    in.f = [=](const Point& y) {
      const double u = bubble_eval(y, b);
      return std::pow(u, ein) * Z(y, b) * phi(rotate12(y, a));
    };
    const IntegralResult ri = reduced_or_budget(in, Reduction::axial3, spec.quad);
    in.f = [=](const Point& y) {
      const double u = bubble_eval(y, b);
      return std::pow(u, ebd) * Z(y, b) * phi(rotate12(y, a));
    };
    const IntegralResult rb = reduced_or_budget(in, Reduction::boundary_axial2, spec.quad);
    IntegralResult out;
    out.value = cin * ri.value + cbd * rb.value;
    out.error_estimate = cin * ri.error_estimate + std::abs(cbd) * rb.error_estimate;
    out.evals = ri.evals + rb.evals;
    return out;
  }

  const BubbleParams b = ra.bubbles()[i - 1];
  const MixtureSampler s_in(N, {b.center}, len, 2.0, true);
  const MixtureSampler s_bd(N - 1, {drop_last(b.center)}, len, 1.5, false);
  const IntegralResult ri = integrate_mc(
      [&](const Point& y) { return std::pow(bubble_eval(y, b), ein) * Z(y, b) * phi(y); }, s_in, spec.mc);
  McSpec mb = spec.mc;
  mb.seed ^= 0x9e3779b97f4a7c15ULL;
  const IntegralResult rb = integrate_mc(
      [&](const Point& ybar) {
        const Point y = lift(ybar, N);
        return std::pow(bubble_eval(y, b), ebd) * Z(y, b) * phi(y);
      },
      s_bd, mb);
  IntegralResult out;
  out.value = cin * ri.value + cbd * rb.value;
  out.error_estimate = std::hypot(cin * ri.error_estimate, cbd * rb.error_estimate);
  out.evals = ri.evals + rb.evals;
  return out;
}

// ---------------------------------------------------------------------------
// expansion agreement

double expansion_bracket(int k, double r, double Lambda, const ExpansionConstants& c) {
  const ProblemParams& p = c.params;
  const int N = p.N;
  const double m = mu(k, p);
  const double inter = k >= 2 ? c.B * ring_sum(k, r, N - 2.0) / std::pow(Lambda, N - 2.0) : 0.0;
  return c.A - inter - p.c0 * c.d3 / (two_star(N) * std::pow(Lambda * m, p.m)) +
         (N - 2.0) * p.d0 * c.d5 / std::pow(Lambda * m, p.n);
}

ExpansionCheck expansion_check(int k, const ExpansionConstants& c, const ExpansionSpec& spec,
                               std::optional<std::pair<double, double>> r_Lambda) {
  const ProblemParams& p = c.params;
  ExpansionCheck ec;
  ec.k = k;
  ec.mu = mu(k, p);
  if (r_Lambda) {
    ec.r = r_Lambda->first;
    ec.Lambda = r_Lambda->second;
  } else {
    ec.r = ec.mu * p.r0;
    ec.Lambda = lambda0(c.regime, c, p);
    const auto [L0, L1] = lambda_range(c);
    if (ec.Lambda < L0 || ec.Lambda > L1) throw Error(Errc::OutsideBox, "Lambda outside [L0, L1]");
  }
  const JFullResult jr = J_full(RingConfig{k, ec.r, ec.Lambda, p}, spec.quad, spec.mc, spec.jopts);
  ec.J_full_value = jr.total.value;
  ec.J_full_error = jr.total.error_estimate;
  ec.leading_value = k * expansion_bracket(k, ec.r, ec.Lambda, c);
  ec.residual = ec.J_full_value - ec.leading_value;
  const double fm = c.regime.frak_m;
  ec.residual_bound_prediction = k * std::pow(ec.mu, -(fm + p.sigma));
  ec.tolerance_bound = spec.tolerance * k * std::pow(ec.mu, -fm);
  ec.pass = std::abs(ec.residual) <= std::max(3.0 * ec.J_full_error, ec.tolerance_bound);
  return ec;
}

}  // namespace lsr
