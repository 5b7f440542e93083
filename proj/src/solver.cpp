#include "lsr/solver.hpp"

#include <algorithm>
#include <cmath>

#include "lsr/error.hpp"

namespace lsr {

namespace {

struct Frame {
  double m, s, ur, vL, r0, L0;
};

Frame frame(int k, const ExpansionConstants& c, const Perturbation& p) {
  const ProblemParams& pr = c.params;
  Frame f;
  f.m = mu(k, pr);
  f.s = p.amplitude * k * std::pow(f.m, -(c.regime.j() + pr.sigma));
  f.ur = std::pow(f.m, pr.theta_bar);
  f.vL = std::pow(f.m, 1.5 * pr.theta_bar);
  f.r0 = f.m * pr.r0;
  f.L0 = lambda0(c.regime, c, pr);
  return f;
}

}  // namespace

double perturbation_value(double r, double L, int k, const ExpansionConstants& c, const Perturbation& p) {
  const Frame f = frame(k, c, p);
  return f.s * std::sin(p.a * (r - f.r0) * f.ur + p.phase_r) * std::cos(p.b * (L - f.L0) * f.vL + p.phase_L);
}

Grad2 perturbation_grad(double r, double L, int k, const ExpansionConstants& c, const Perturbation& p) {
  const Frame f = frame(k, c, p);
  const double U = p.a * (r - f.r0) * f.ur + p.phase_r, V = p.b * (L - f.L0) * f.vL + p.phase_L;
  return {f.s * p.a * f.ur * std::cos(U) * std::cos(V), -f.s * p.b * f.vL * std::sin(U) * std::sin(V)};
}

Hess2 perturbation_hess(double r, double L, int k, const ExpansionConstants& c, const Perturbation& p) {
  const Frame f = frame(k, c, p);
  const double U = p.a * (r - f.r0) * f.ur + p.phase_r, V = p.b * (L - f.L0) * f.vL + p.phase_L;
  const double sc = std::sin(U) * std::cos(V);
  return {-f.s * p.a * p.a * f.ur * f.ur * sc, -f.s * p.a * p.b * f.ur * f.vL * std::cos(U) * std::sin(V),
          -f.s * p.b * p.b * f.vL * f.vL * sc};
}

std::string hessian_signature(const Hess2& h) {
  const double det = h.rr * h.LL - h.rL * h.rL;
  const double tr = h.rr + h.LL;
  if (det < 0.0) return "saddle";
  if (det > 0.0) return tr < 0.0 ? "max" : "min";
  return "degenerate";
}

namespace {

struct Objectives {
  int k;
  const ExpansionConstants& c;
  const SolverOptions& o;
  double hr, hL, scale;

  Grad2 grad(double r, double L) const {
    Grad2 g = F_reduced_grad_formula(r, L, k, c);
    if (o.objective == Objective::reduced_plus_modeled_error) {
      const Grad2 q = perturbation_grad(r, L, k, c, o.perturbation);
      g.dr += q.dr;
      g.dL += q.dL;
    }
    return g;
  }
  Hess2 hess(double r, double L) const {
    Hess2 h = F_reduced_hess_formula(r, L, k, c);
    if (o.objective == Objective::reduced_plus_modeled_error) {
      const Hess2 q = perturbation_hess(r, L, k, c, o.perturbation);
      h.rr += q.rr;
      h.rL += q.rL;
      h.LL += q.LL;
    }
    return h;
  }
  double gnorm(double r, double L) const {
    const Grad2 g = grad(r, L);
    return std::hypot(g.dr * hr, g.dL * hL) / scale;
  }
};

struct NewtonOutcome {
  double r, L, gn;
  int iters;
  bool converged;
  std::vector<double> history;
};

NewtonOutcome newton(const Objectives& ob, const BoxDj& box, double r, double L) {
  NewtonOutcome out{r, L, ob.gnorm(r, L), 0, false, {}};
  out.history.push_back(out.gn);
  for (int it = 0; it < ob.o.max_iter; ++it) {
    if (out.gn <= ob.o.tol) {
      out.converged = true;
      return out;
    }
    const Grad2 g = ob.grad(out.r, out.L);
    const Hess2 h = ob.hess(out.r, out.L);
    const double det = h.rr * h.LL - h.rL * h.rL;
    if (det == 0.0 || !std::isfinite(det)) return out;
    const double dr = -(h.LL * g.dr - h.rL * g.dL) / det;
    const double dL = -(-h.rL * g.dr + h.rr * g.dL) / det;
    double t = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls, t *= 0.5) {
      const double rn = std::clamp(out.r + t * dr, box.r_lo, box.r_hi);
      const double Ln = std::clamp(out.L + t * dL, box.L_lo, box.L_hi);
      const double gn = ob.gnorm(rn, Ln);
      if (gn < out.gn) {
        out.r = rn;
        out.L = Ln;
        out.gn = gn;
        accepted = true;
        break;
      }
    }
    ++out.iters;
    if (!accepted) return out;
    out.history.push_back(out.gn);
  }
  out.converged = out.gn <= ob.o.tol;
  return out;
}

}  // namespace

ExistenceReport find_critical_point(int k, const ExpansionConstants& c, const SolverOptions& o) {
  if (!c.regime.admissible)
    throw Error(Errc::NotAdmissible, std::string("regime ") + std::string(to_string(c.regime.tag)) +
                                         " is not admissible for these signs of c0, d0");
  ExistenceReport rep;
  rep.params = c.params;
  rep.regime = c.regime;
  rep.constants = c;
  rep.k = k;
  rep.mu = mu(k, c.params);
  rep.Lambda0 = lambda0(c.regime, c, c.params);
  rep.box = make_box(k, c);
  rep.solved = true;
  const BoxDj& box = rep.box;
  const double j = c.regime.j();
  const double hr = 0.5 * (box.r_hi - box.r_lo), hL = 0.5 * (box.L_hi - box.L_lo);
  // Gradient norms are measured against the size of the individual terms of F.
  const double L0 = rep.Lambda0;
  const double term_scale = k * std::pow(rep.mu, -j) *
                            (j * std::abs(c.A1) / std::pow(L0, j) + 2.0 * std::abs(c.A2) * hr * hr / std::pow(L0, j - 2.0));
  const Objectives ob{k, c, o, hr, hL, term_scale};

  const double r_start = o.start ? o.start->first : box.r_center;
  const double L_start = o.start ? o.start->second : box.L_center;
  if (!box.contains(r_start, L_start)) throw Error(Errc::OutsideBox, "solver start lies outside D_j");
  NewtonOutcome nw = newton(ob, box, r_start, L_start);
  if (!nw.converged) {
    rep.used_grid_fallback = true;
    rep.notes.push_back("Newton stagnated; restarted from the best point of a coarse grid");
    double best = INFINITY, br = box.r_center, bL = box.L_center;
    for (int a = 1; a < o.grid_n; ++a)
      for (int b = 1; b < o.grid_n; ++b) {
        const double r = box.r_lo + (box.r_hi - box.r_lo) * a / o.grid_n;
        const double L = box.L_lo + (box.L_hi - box.L_lo) * b / o.grid_n;
        const double g = ob.gnorm(r, L);
        if (g < best) {
          best = g;
          br = r;
          bL = L;
        }
      }
    NewtonOutcome second = newton(ob, box, br, bL);
    second.iters += nw.iters;
    second.history.insert(second.history.begin(), nw.history.begin(), nw.history.end());
    nw = second;
  }
  rep.r_star = nw.r;
  rep.Lambda_star = nw.L;
  rep.grad_norm = nw.gn;
  rep.iterations = nw.iters;
  rep.history = nw.history;
  rep.hessian = F_reduced_hess_formula(nw.r, nw.L, k, c);
  rep.signature = hessian_signature(rep.hessian);
  const bool interior = nw.r > box.r_lo && nw.r < box.r_hi && nw.L > box.L_lo && nw.L < box.L_hi;
  if (!nw.converged || !interior) {
    throw Error(Errc::NoInteriorCriticalPoint,
                "no interior stationary point in D_j (scaled gradient " + std::to_string(nw.gn) + ")");
  }
  rep.converged = true;
  return rep;
}

ExistenceReport construct_report(int k, const ProblemParams& params, bool full, const ReportOptions& opts) {
  const ValidatedParams vp = validate(params);
  const Regime g = regime(vp);
  if (!g.admissible)
    throw Error(Errc::NotAdmissible, std::string("regime ") + std::string(to_string(g.tag)) +
                                         " is not admissible for these signs of c0, d0");
  const ExpansionConstants c =
      opts.use_quadrature_constants ? compute_constants(vp, opts.quad) : closed_form_constants(vp);
  if (k < opts.solver.k0) {
    ExistenceReport rep;
    rep.params = params;
    rep.regime = g;
    rep.constants = c;
    rep.k = k;
    rep.mu = mu(k, params);
    rep.Lambda0 = lambda0(g, c, params);
    rep.notes.push_back("k = " + std::to_string(k) + " is below k0 = " + std::to_string(opts.solver.k0) +
                        "; no solve attempted");
    return rep;
  }
  ExistenceReport rep = find_critical_point(k, c, opts.solver);
  if (full) {
    rep.expansion = expansion_check(k, c, opts.expansion);
    rep.decay_in = decay_fit(opts.decay_k, params, DecayField::in, rep.Lambda0, opts.norm);
    rep.decay_bd = decay_fit(opts.decay_k, params, DecayField::bd, rep.Lambda0, opts.norm);
  }
  return rep;
}

}  // namespace lsr
