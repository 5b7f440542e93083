#include "lsr/bubble.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lsr/error.hpp"

namespace lsr {

namespace {

// D^{-a} with D = |s|^2 - 1 and s = Lambda (y - z) + Dfrak e_N.
Jet power_of_D(const Point& y, const Point& z, double Lambda, double Dfrak, double a) {
  const int N = y.dim();
  Point s(N);
  double S2 = 0.0;
  for (int i = 0; i < N; ++i) {
    s[i] = Lambda * (y[i] - z[i]);
    if (i == N - 1) s[i] += Dfrak;
    S2 += s[i] * s[i];
  }
  const double D = S2 - 1.0;
  Jet j;
  j.value = std::pow(D, -a);
  const double w = j.value / D;
  j.grad = Point(N);
  for (int i = 0; i < N; ++i) j.grad[i] = -2.0 * a * Lambda * s[i] * w;
  const double L2 = Lambda * Lambda;
  j.lap = -2.0 * a * L2 * N * w + 4.0 * a * (a + 1.0) * L2 * S2 * w / D;
  return j;
}

// g * f for g = c + b.y + kappa |y|^2.
Jet times_quadratic(const Jet& f, const Point& y, double c, const Point* b, double kappa) {
  const int N = y.dim();
  double g = c + kappa * norm_sq(y);
  Point dg(N);
  for (int i = 0; i < N; ++i) dg[i] = 2.0 * kappa * y[i];
  if (b) {
    g += dot(*b, y);
    for (int i = 0; i < N; ++i) dg[i] += (*b)[i];
  }
  Jet out;
  out.value = g * f.value;
  out.grad = Point(N);
  for (int i = 0; i < N; ++i) out.grad[i] = dg[i] * f.value + g * f.grad[i];
  out.lap = 2.0 * kappa * N * f.value + 2.0 * dot(dg, f.grad) + g * f.lap;
  return out;
}

double denominator(const Point& p, const BubbleParams& b) {
  const int N = b.N;
  double D = 0.0;
  for (int i = 0; i + 1 < N; ++i) {
    const double d = b.Lambda * (p[i] - b.center[i]);
    D += d * d;
  }
  const double t = b.Lambda * p[N - 1] + b.Dfrak;
  return D + t * t - 1.0;
}

}  // namespace

double alpha_N(int N) { return std::pow(4.0 * N * (N - 1.0), (N - 2.0) / 4.0); }

BubbleParams make_bubble(std::span<const double> center_bar, double Lambda, double Dfrak) {
  BubbleParams b;
  b.N = static_cast<int>(center_bar.size()) + 1;
  b.center = Point(b.N);
  for (size_t i = 0; i < center_bar.size(); ++i) b.center[static_cast<int>(i)] = center_bar[i];
  b.Lambda = Lambda;
  b.Dfrak = Dfrak;
  check_bubble(b);
  return b;
}

BubbleParams standard_bubble(int N, double Dfrak) {
  BubbleParams b;
  b.N = N;
  b.center = Point(N);
  b.Lambda = 1.0;
  b.Dfrak = Dfrak;
  check_bubble(b);
  return b;
}

void check_bubble(const BubbleParams& b) {
  if (b.N < 3 || b.center.dim() != b.N)
    throw Error(Errc::InvalidParameter, "bubble center must have N coordinates");
  if (b.center.last() != 0.0) throw Error(Errc::InvalidParameter, "bubble center must lie on the boundary");
  if (!(b.Lambda > 0.0)) throw Error(Errc::InvalidParameter, "Lambda must be positive");
  if (!(b.Dfrak > 1.0)) throw Error(Errc::NonPhysicalD, "Dfrak must exceed 1");
}

double bubble_eval(const Point& p, const BubbleParams& b) {
  const double e = 0.5 * (b.N - 2);
  return alpha_N(b.N) * std::pow(b.Lambda, e) * std::pow(denominator(p, b), -e);
}

Jet bubble_jet(const Point& p, const BubbleParams& b) {
  const double e = 0.5 * (b.N - 2);
  Jet j = power_of_D(p, b.center, b.Lambda, b.Dfrak, e);
  const double c = alpha_N(b.N) * std::pow(b.Lambda, e);
  j.value *= c;
  for (int i = 0; i < b.N; ++i) j.grad[i] *= c;
  j.lap *= c;
  return j;
}

double bubble_d_Lambda(const Point& p, const BubbleParams& b) {
  const int N = b.N;
  const double D = denominator(p, b);
  const double U = alpha_N(N) * std::pow(b.Lambda, 0.5 * (N - 2)) * std::pow(D, -0.5 * (N - 2));
  double t2 = 0.0;
  for (int i = 0; i + 1 < N; ++i) t2 += (p[i] - b.center[i]) * (p[i] - b.center[i]);
  const double L2 = b.Lambda * b.Lambda;
  const double yN = p[N - 1];
  return U * (N - 2) / (2.0 * b.Lambda) * (b.Dfrak * b.Dfrak - 1.0 - L2 * yN * yN - L2 * t2) / D;
}

double bubble_d_r(const Point& p, const BubbleParams& b) {
  const int N = b.N;
  const double r = tangential_norm(b.center);
  if (r == 0.0) throw Error(Errc::CenterAtOrigin, "d_r needs a center off the origin");
  const double D = denominator(p, b);
  const double U = alpha_N(N) * std::pow(b.Lambda, 0.5 * (N - 2)) * std::pow(D, -0.5 * (N - 2));
  double proj = 0.0;
  for (int i = 0; i + 1 < N; ++i) proj += (p[i] - b.center[i]) * b.center[i] / r;
  return U * (N - 2) * b.Lambda * b.Lambda * proj / D;
}

BubbleDerivatives bubble_derivatives(const Point& p, const BubbleParams& b) {
  BubbleDerivatives d;
  d.d_r = bubble_d_r(p, b);
  const Jet j = bubble_jet(p, b);
  d.gradient = j.grad;
  d.laplacian = j.lap;
  d.d_Lambda = bubble_d_Lambda(p, b);
  return d;
}

Jet kernel_jet(const Point& p, int index, double Dfrak, int N) {
  if (index < 0 || index > N - 1)
    throw Error(Errc::IndexOutOfRange, "kernel index " + std::to_string(index));
  const Point origin(N);
  const Jet base = power_of_D(p, origin, 1.0, Dfrak, 0.5 * N);
  const double a = alpha_N(N);
  if (index == 0) {
    const double c = a * (N - 2) / 2.0;
    return times_quadratic(base, p, c * (1.0 - Dfrak * Dfrak), nullptr, c);
  }
  Point b(N);
  b[index - 1] = a * (2.0 - N);
  return times_quadratic(base, p, 0.0, &b, 0.0);
}

double kernel_eval(const Point& p, int index, double Dfrak, int N) {
  return kernel_jet(p, index, Dfrak, N).value;
}

ResidualValue residual(const Point& p, const Field& field, ResidualKind which,
                       const Profiles& profiles, int N, double Dfrak) {
  const bool boundary = which == ResidualKind::boundary || which == ResidualKind::linearized_boundary;
  if (boundary && !p.on_boundary()) throw Error(Errc::NotOnBoundary, "boundary residual needs y_N = 0");
  const Jet f = field(p);
  const double cn = c_N(N);
  ResidualValue r;
  switch (which) {
    case ResidualKind::interior: {
      const double up = std::pow(std::max(f.value, 0.0), p_interior(N));
      const double K = profiles.K(norm(p));
      r.value = -cn * f.lap + K * up;
      r.scale = std::abs(cn * f.lap) + std::abs(K * up);
      break;
    }
    case ResidualKind::boundary: {
      const double up = std::pow(std::max(f.value, 0.0), p_boundary(N));
      const double H = profiles.H(tangential_norm(p));
      const double dn = -2.0 / (N - 2) * f.grad[N - 1];
      r.value = dn - H * up;
      r.scale = std::abs(dn) + std::abs(H * up);
      break;
    }
    case ResidualKind::linearized_interior: {
      const double U = bubble_eval(p, standard_bubble(N, Dfrak));
      const double pot = p_interior(N) * std::pow(U, 4.0 / (N - 2)) * f.value;
      r.value = -cn * f.lap + pot;
      r.scale = std::abs(cn * f.lap) + std::abs(pot);
      break;
    }
    case ResidualKind::linearized_boundary: {
      const double U = bubble_eval(p, standard_bubble(N, Dfrak));
      const double pot = p_boundary(N) * H0(N, Dfrak) * std::pow(U, 2.0 / (N - 2)) * f.value;
      const double dn = -2.0 / (N - 2) * f.grad[N - 1];
      r.value = dn - pot;
      r.scale = std::abs(dn) + std::abs(pot);
      break;
    }
  }
  return r;
}

std::vector<Point> ring_points(int k, double r, int N) {
  if (k < 1) throw Error(Errc::InvalidParameter, "k must be >= 1");
  if (!(r > 0.0)) throw Error(Errc::InvalidParameter, "ring radius must be positive");
  std::vector<Point> pts;
  pts.reserve(k);
  for (int j = 0; j < k; ++j) {
    Point x(N);
    const double a = 2.0 * j * std::numbers::pi / k;
    x[0] = r * std::cos(a);
    x[1] = r * std::sin(a);
    pts.push_back(x);
  }
  return pts;
}

RingAnsatz::RingAnsatz(const RingConfig& cfg) : cfg_(cfg) {
  const int N = cfg.params.N;
  if (!(cfg.Lambda > 0.0)) throw Error(Errc::InvalidParameter, "Lambda must be positive");
  for (const Point& x : ring_points(cfg.k, cfg.r, N)) {
    BubbleParams b;
    b.N = N;
    b.center = x;
    b.Lambda = cfg.Lambda;
    b.Dfrak = cfg.params.Dfrak;
    check_bubble(b);
    bubbles_.push_back(b);
  }
}

double RingAnsatz::value(const Point& p) const {
  double s = 0.0;
  for (const auto& b : bubbles_) s += bubble_eval(p, b);
  return s;
}

Jet RingAnsatz::jet(const Point& p) const {
  Jet acc;
  acc.grad = Point(N());
  for (const auto& b : bubbles_) {
    const Jet j = bubble_jet(p, b);
    acc.value += j.value;
    for (int i = 0; i < N(); ++i) acc.grad[i] += j.grad[i];
    acc.lap += j.lap;
  }
  return acc;
}

void RingAnsatz::terms(const Point& p, std::span<double> out) const {
  for (size_t j = 0; j < bubbles_.size(); ++j) out[j] = bubble_eval(p, bubbles_[j]);
}

int RingAnsatz::sector(const Point& p) const {
  const int k = cfg_.k;
  if (k == 1) return 1;
  const double x = p[0], y = p[1];
  const double rho = std::hypot(x, y);
  if (rho == 0.0) throw Error(Errc::DegenerateAxis, "sector undefined on the axis y' = 0");
  const double step = 2.0 * std::numbers::pi / k;
  double ang = std::atan2(y, x);
  if (ang < 0.0) ang += 2.0 * std::numbers::pi;
  const int guess = static_cast<int>(std::floor(ang / step + 0.5)) % k;
  // Compare the guess with its neighbours; near-ties go to the lower index.
  int best = -1;
  double best_dot = -2.0;
  for (int d : {-1, 0, 1}) {
    const int l = ((guess + d) % k + k) % k;
    const double a = step * l;
    const double c = (x * std::cos(a) + y * std::sin(a)) / rho;
    if (c > best_dot + 1e-13 || (std::abs(c - best_dot) <= 1e-13 && l < best)) {
      best = l;
      best_dot = std::max(c, best_dot);
    }
  }
  return best + 1;
}

Point RingAnsatz::fold_to_first_sector(const Point& p) const {
  if (cfg_.k == 1) return p;
  const int l = sector(p) - 1;
  if (l == 0) return p;
  const double a = -2.0 * std::numbers::pi * l / cfg_.k;
  Point q = p;
  q[0] = std::cos(a) * p[0] - std::sin(a) * p[1];
  q[1] = std::sin(a) * p[0] + std::cos(a) * p[1];
  return q;
}

double w_eval(const Point& p, const RingConfig& ring) { return RingAnsatz(ring).value(p); }

int sector_index(const Point& p, const RingConfig& ring) { return RingAnsatz(ring).sector(p); }

double greens_function(const Point& x, const Point& y, GreenNormalization normalization) {
  const int N = x.dim();
  const double d2 = dist_sq(x, y);
  if (d2 == 0.0) throw Error(Errc::CoincidentPoints, "Green's function is singular at x = y");
  Point ys = y;
  ys[N - 1] = -y[N - 1];
  const double e = 0.5 * (2 - N);
  const double omega =
      normalization == GreenNormalization::sphere_area ? sphere_area(N) : unit_ball_volume(N);
  return (std::pow(d2, e) + std::pow(dist_sq(x, ys), e)) / (omega * (N - 2));
}

Point inversion_map(const Point& x) {
  const int N = x.dim();
  const double xb2 = norm_sq(x) - x[N - 1] * x[N - 1];
  const double q = xb2 + (x[N - 1] + 1.0) * (x[N - 1] + 1.0);
  Point xi(N);
  for (int i = 0; i + 1 < N; ++i) xi[i] = 2.0 * x[i] / q;
  xi[N - 1] = (1.0 - xb2 - x[N - 1] * x[N - 1]) / q;
  return xi;
}

Point inversion_map_inverse(const Point& xi) {
  const int N = xi.dim();
  Point w = xi;
  w[N - 1] += 1.0;
  const double q = norm_sq(w);
  if (q == 0.0) throw Error(Errc::DomainError, "the pole -e_N has no preimage");
  Point x(N);
  for (int i = 0; i < N; ++i) x[i] = 2.0 * w[i] / q;
  x[N - 1] -= 1.0;
  return x;
}

}  // namespace lsr
