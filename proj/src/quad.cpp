#include "lsr/quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include "lsr/error.hpp"

namespace lsr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

enum class AxisKind { finite, upper_tail, lower_tail };

struct Axis {
  AxisKind kind = AxisKind::finite;
  double a = 0.0;  // finite: lo; upper tail: start
  double b = 1.0;  // finite: hi; lower tail: end
};

struct Cell {
  std::array<double, 3> c{};
  std::array<double, 3> h{};
  double value = 0.0;
  double error = 0.0;
  int axis = 0;
  int region = 0;
  std::int64_t id = 0;
};

bool heap_less(const Cell& a, const Cell& b) {
  if (a.error != b.error) return a.error < b.error;
  return a.id > b.id;
}

class Engine {
 public:
  Engine(const std::vector<Region>& regions, const ScalarFn& f, double scale)
      : f_(f), scale_(scale) {
    if (regions.empty()) throw Error(Errc::InvalidParameter, "no integration regions");
    dim_ = static_cast<int>(regions.front().axes.size());
    if (dim_ < 1 || dim_ > 3) throw Error(Errc::InvalidParameter, "adaptive engine supports 1 to 3 axes");
    for (const Region& r : regions) {
      if (static_cast<int>(r.axes.size()) != dim_)
        throw Error(Errc::InvalidParameter, "regions must share one dimension");
      std::array<Axis, 3> ax{};
      bool tail = false;
      for (int i = 0; i < dim_; ++i) {
        const Interval& iv = r.axes[i];
        if (std::isinf(iv.lo) && std::isinf(iv.hi))
          throw Error(Errc::InvalidParameter, "split doubly infinite axes first");
        if (!(iv.lo < iv.hi)) throw Error(Errc::InvalidParameter, "empty interval");
        if (std::isinf(iv.hi)) {
          ax[i] = {AxisKind::upper_tail, iv.lo, 0.0};
          tail = true;
        } else if (std::isinf(iv.lo)) {
          ax[i] = {AxisKind::lower_tail, 0.0, iv.hi};
          tail = true;
        } else {
          ax[i] = {AxisKind::finite, iv.lo, iv.hi};
        }
      }
      axes_.push_back(ax);
      is_tail_.push_back(tail);
    }
  }

  int dim() const { return dim_; }
  size_t regions() const { return axes_.size(); }
  bool is_tail(int r) const { return is_tail_[r]; }

  Cell initial_cell(int r) const {
    Cell c;
    c.region = r;
    for (int i = 0; i < dim_; ++i) {
      const Axis& ax = axes_[r][i];
      const double lo = ax.kind == AxisKind::finite ? ax.a : 0.0;
      const double hi = ax.kind == AxisKind::finite ? ax.b : 1.0;
      c.c[i] = 0.5 * (lo + hi);
      c.h[i] = 0.5 * (hi - lo);
    }
    return c;
  }

  int evals_per_cell() const {
    if (dim_ == 1) return 15;
    return 1 + 4 * dim_ + 2 * dim_ * (dim_ - 1) + (1 << dim_);
  }

  void evaluate(Cell& cell) const {
    if (dim_ == 1)
      gk15(cell);
    else
      genz_malik(cell);
  }

 private:
  double g(int region, const double* u) const {
    double x[3];
    double jac = 1.0;
    bool near_infinity = false;
    for (int i = 0; i < dim_; ++i) {
      const Axis& ax = axes_[region][i];
      switch (ax.kind) {
        case AxisKind::finite:
          x[i] = u[i];
          break;
        case AxisKind::upper_tail:
        case AxisKind::lower_tail: {
          const double t = u[i];
          if (t < 1e-12) near_infinity = true;
          const double off = scale_ * (1.0 / t - 1.0);
          x[i] = ax.kind == AxisKind::upper_tail ? ax.a + off : ax.b - off;
          jac *= scale_ / (t * t);
          break;
        }
      }
    }
    if (near_infinity) return 0.0;
    const double v = f_(x) * jac;
    if (!std::isfinite(v)) throw Error(Errc::DomainError, "integrand is not finite inside the domain");
    return v;
  }

  void gk15(Cell& cell) const {
    const double c = cell.c[0], h = cell.h[0];
    double u = c;
    const double fc = g(cell.region, &u);
    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
      double u1 = c - h * kXgk[j], u2 = c + h * kXgk[j];
      const double s = g(cell.region, &u1) + g(cell.region, &u2);
      resk += kWgk[j] * s;
      if (j % 2 == 1) resg += kWg[j / 2] * s;
    }
    cell.value = resk * h;
    cell.error = std::abs((resk - resg) * h);
    cell.axis = 0;
  }

  void genz_malik(Cell& cell) const {
    const int n = dim_;
    const double l2 = std::sqrt(9.0 / 70.0), l4 = std::sqrt(9.0 / 10.0), l5 = std::sqrt(9.0 / 19.0);
    const double w1 = (12824.0 - 9120.0 * n + 400.0 * n * n) / 19683.0;
    const double w2 = 980.0 / 6561.0;
    const double w3 = (1820.0 - 400.0 * n) / 19683.0;
    const double w4 = 200.0 / 19683.0;
    const double w5 = 6859.0 / 19683.0 / (1 << n);
    const double e1 = (729.0 - 950.0 * n + 50.0 * n * n) / 729.0;
    const double e2 = 245.0 / 486.0;
    const double e3 = (265.0 - 100.0 * n) / 1458.0;
    const double e4 = 25.0 / 729.0;
    const double ratio = (l2 * l2) / (l4 * l4);

    double u[3];
    for (int i = 0; i < n; ++i) u[i] = cell.c[i];
    const double f0 = g(cell.region, u);
    double s2 = 0.0, s3 = 0.0, s4 = 0.0, s5 = 0.0;
    double diff[3] = {0.0, 0.0, 0.0};
    for (int i = 0; i < n; ++i) {
      double a[4];
      const double off[4] = {-l2, l2, -l4, l4};
      for (int q = 0; q < 4; ++q) {
        u[i] = cell.c[i] + off[q] * cell.h[i];
        a[q] = g(cell.region, u);
      }
      u[i] = cell.c[i];
      s2 += a[0] + a[1];
      s3 += a[2] + a[3];
      diff[i] = std::abs(a[0] + a[1] - 2.0 * f0 - ratio * (a[2] + a[3] - 2.0 * f0));
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int si : {-1, 1})
          for (int sj : {-1, 1}) {
            u[i] = cell.c[i] + si * l4 * cell.h[i];
            u[j] = cell.c[j] + sj * l4 * cell.h[j];
            s4 += g(cell.region, u);
            u[i] = cell.c[i];
            u[j] = cell.c[j];
          }
    for (int mask = 0; mask < (1 << n); ++mask) {
      for (int i = 0; i < n; ++i) u[i] = cell.c[i] + ((mask >> i) & 1 ? l5 : -l5) * cell.h[i];
      s5 += g(cell.region, u);
    }
    double vol = 1.0;
    for (int i = 0; i < n; ++i) vol *= 2.0 * cell.h[i];
    const double r7 = vol * (w1 * f0 + w2 * s2 + w3 * s3 + w4 * s4 + w5 * s5);
    const double r5 = vol * (e1 * f0 + e2 * s2 + e3 * s3 + e4 * s4);
    cell.value = r7;
    cell.error = std::abs(r7 - r5);
    int best = 0;
    for (int i = 1; i < n; ++i) {
      const double d = diff[i], db = diff[best];
      if (d > db * (1.0 + 1e-12) || (std::abs(d - db) <= 1e-12 * db && cell.h[i] > cell.h[best]))
        best = i;
    }
    cell.axis = best;
  }

  int dim_ = 1;
  std::vector<std::array<Axis, 3>> axes_;
  std::vector<bool> is_tail_;
  const ScalarFn& f_;
  double scale_;
};

struct Neumaier {
  double sum = 0.0, comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  double get() const { return sum + comp; }
};

}  // namespace

void check_spec(const QuadratureSpec& s) {
  if (!(s.rel_tol > 0.0) || !(s.abs_tol > 0.0))
    throw Error(Errc::InvalidParameter, "quadrature tolerances must be positive");
  if (s.max_evals <= 0 || s.subdivision_limit <= 0)
    throw Error(Errc::InvalidParameter, "quadrature budgets must be positive");
  if (!(s.truncation_radius > 0.0)) throw Error(Errc::InvalidParameter, "truncation_radius must be positive");
}

IntegralResult integrate_regions(const std::vector<Region>& regions, const ScalarFn& f,
                                 const QuadratureSpec& spec, double tail_scale, Exec exec) {
  check_spec(spec);
  Engine eng(regions, f, tail_scale);
  constexpr size_t kBatch = 32;
  const int per_cell = eng.evals_per_cell();

  std::int64_t next_id = 0;
  std::vector<Cell> fresh;
  for (size_t r = 0; r < eng.regions(); ++r) {
    Cell c = eng.initial_cell(static_cast<int>(r));
    c.id = next_id++;
    fresh.push_back(c);
  }
  auto eval_batch = [&](std::vector<Cell>& cells) {
    for_each_index(static_cast<std::int64_t>(cells.size()), exec,
                   [&](std::int64_t i) { eng.evaluate(cells[static_cast<size_t>(i)]); });
  };
  eval_batch(fresh);
  std::int64_t evals = static_cast<std::int64_t>(fresh.size()) * per_cell;

  std::vector<Cell> heap;
  double total = 0.0, err = 0.0;
  for (const Cell& c : fresh) {
    total += c.value;
    err += c.error;
    heap.push_back(c);
    std::push_heap(heap.begin(), heap.end(), heap_less);
  }

  bool converged = true;
  std::int64_t rounds = 0;
  while (err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    const size_t take = std::min(kBatch, heap.size());
    if (evals + static_cast<std::int64_t>(2 * take) * per_cell > spec.max_evals ||
        static_cast<std::int64_t>(heap.size() + take) > spec.subdivision_limit) {
      converged = false;
      break;
    }
    std::vector<Cell> parents;
    for (size_t i = 0; i < take; ++i) {
      std::pop_heap(heap.begin(), heap.end(), heap_less);
      parents.push_back(heap.back());
      heap.pop_back();
    }
    fresh.clear();
    for (const Cell& p : parents) {
      Cell a = p, b = p;
      const int ax = p.axis;
      a.h[ax] = b.h[ax] = 0.5 * p.h[ax];
      a.c[ax] = p.c[ax] - a.h[ax];
      b.c[ax] = p.c[ax] + b.h[ax];
      a.id = next_id++;
      b.id = next_id++;
      fresh.push_back(a);
      fresh.push_back(b);
    }
    eval_batch(fresh);
    evals += static_cast<std::int64_t>(fresh.size()) * per_cell;
    for (const Cell& p : parents) {
      total -= p.value;
      err -= p.error;
    }
    for (const Cell& c : fresh) {
      total += c.value;
      err += c.error;
      heap.push_back(c);
      std::push_heap(heap.begin(), heap.end(), heap_less);
    }
    if (++rounds % 256 == 0) {
      Neumaier tv, te;
      for (const Cell& c : heap) {
        tv.add(c.value);
        te.add(c.error);
      }
      total = tv.get();
      err = te.get();
    }
  }

  std::sort(heap.begin(), heap.end(), [](const Cell& a, const Cell& b) { return a.id < b.id; });
  Neumaier tv, te, tt;
  for (const Cell& c : heap) {
    tv.add(c.value);
    te.add(c.error);
    if (eng.is_tail(c.region)) tt.add(c.value);
  }
  IntegralResult res;
  res.value = tv.get();
  res.error_estimate = te.get();
  res.evals = evals;
  res.truncation_tail_bound = std::abs(tt.get());
  res.converged = converged;
  if (!converged && spec.strict)
  {
    char msg[128];
    std::snprintf(msg, sizeof msg, "budget exhausted with error %.3g on value %.6g", res.error_estimate, res.value);
    throw Error(Errc::ToleranceNotMet, msg);
  }
  return res;
}

IntegralResult integrate_1d(const std::function<double(double)>& f, double a, double b,
                            const QuadratureSpec& spec, double tail_scale, std::vector<double> breaks) {
  if (!(a < b)) throw Error(Errc::InvalidParameter, "integrate_1d needs a < b");
  std::vector<double> pts;
  for (double x : breaks)
    if (x > a && x < b && std::isfinite(x)) pts.push_back(x);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (std::isinf(a) && std::isinf(b) && pts.empty()) pts.push_back(0.0);
  std::vector<double> knots;
  knots.push_back(a);
  knots.insert(knots.end(), pts.begin(), pts.end());
  knots.push_back(b);
  std::vector<Region> regions;
  for (size_t i = 0; i + 1 < knots.size(); ++i) regions.push_back(Region{{Interval{knots[i], knots[i + 1]}}});
  ScalarFn g = [&f](const double* x) { return f(x[0]); };
  return integrate_regions(regions, g, spec, tail_scale);
}

// ---------------------------------------------------------------------------

namespace {

// Graded knots on [0, inf): 0, s, 4s, 16s, R, inf.
std::vector<Interval> graded_halfline(double s, double R, bool with_tail) {
  std::vector<double> k = {0.0};
  for (double m : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0})
    if (m * s < R) k.push_back(m * s);
  k.push_back(R);
  std::vector<Interval> out;
  for (size_t i = 0; i + 1 < k.size(); ++i) out.push_back({k[i], k[i + 1]});
  if (with_tail) out.push_back({R, kInf});
  return out;
}

std::vector<Interval> graded_line(const std::vector<double>& centres, double s, double R, bool with_tail) {
  std::vector<double> c = centres.empty() ? std::vector<double>{0.0} : centres;
  std::sort(c.begin(), c.end());
  const double lo = c.front() - R, hi = c.back() + R;
  std::vector<double> k = {lo, hi};
  for (double x : c)
    for (double m : {0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0})
      for (double sg : {-1.0, 1.0}) {
        const double v = x + sg * m * s;
        if (v > lo && v < hi) k.push_back(v);
      }
  std::sort(k.begin(), k.end());
  std::vector<double> kk;
  for (double v : k)
    if (kk.empty() || v - kk.back() > 1e-12 * std::max(1.0, std::abs(v))) kk.push_back(v);
  std::vector<Interval> out;
  if (with_tail) out.push_back({-kInf, lo});
  for (size_t i = 0; i + 1 < kk.size(); ++i) out.push_back({kk[i], kk[i + 1]});
  if (with_tail) out.push_back({hi, kInf});
  return out;
}

std::vector<Region> product(const std::vector<std::vector<Interval>>& axes) {
  std::vector<Region> out = {Region{}};
  for (const auto& choices : axes) {
    std::vector<Region> next;
    for (const Region& r : out)
      for (const Interval& iv : choices) {
        Region q = r;
        q.axes.push_back(iv);
        next.push_back(q);
      }
    out.swap(next);
  }
  return out;
}

void check_symmetry(const ReducedIntegrand& in, Reduction red) {
  const int N = in.N;
  const double s = in.scale;
  auto close = [](double a, double b) {
    const double m = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= 1e-8 * m + 1e-300;
  };
  auto fail = [&](const std::string& what) {
    throw Error(Errc::SymmetryMismatch, "integrand is not invariant under " + what);
  };
  const bool boundary = red == Reduction::boundary_radial1 || red == Reduction::boundary_axial2;
  const std::vector<double> y1s = in.y1_breaks.empty() ? std::vector<double>{0.0} : in.y1_breaks;
  for (double a : {0.37, 1.3, 3.1}) {
    for (double b : {0.4, 2.2}) {
      const double yN = boundary ? 0.0 : b * s;
      if (red == Reduction::radial2 || red == Reduction::boundary_radial1) {
        const double rho = a * s;
        Point p(N), q(N);
        p[0] = rho;
        p[N - 1] = q[N - 1] = yN;
        const double c = rho / std::sqrt(N - 1.0);
        for (int i = 0; i + 1 < N; ++i) q[i] = (i % 2 ? -c : c);
        if (!close(in.f(p), in.f(q))) fail("rotations of ybar");
      } else {
        for (double y1c : y1s) {
          const double y1 = y1c + (a - 1.0) * s, rho = b * s;
          Point p(N), q(N);
          p[0] = q[0] = y1;
          p[1] = rho;
          p[N - 1] = q[N - 1] = boundary ? 0.0 : a * s;
          const double c = rho / std::sqrt(N - 2.0);
          for (int i = 1; i + 1 < N; ++i) q[i] = (i % 2 ? c : -c);
          if (!close(in.f(p), in.f(q))) fail("rotations of (y_2, ..., y_{N-1})");
        }
      }
    }
  }
}

double truncated_tail_bound(const ReducedIntegrand& in, Reduction red, double R) {
  const int N = in.N;
  const bool boundary = red == Reduction::boundary_radial1 || red == Reduction::boundary_axial2;
  const int dim = boundary ? N - 1 : N;
  const double p = in.decay_power > 0.0 ? in.decay_power : N + 2.0;
  if (p <= dim) return kInf;
  double c0 = 0.0;
  if (!in.y1_breaks.empty()) {
    for (double b : in.y1_breaks) c0 = std::max(c0, std::abs(b));
  }
  const double Rs = R * (1.0 + 1e-12);
  double cmax = 0.0;
  for (int i = 0; i <= 16; ++i) {
    const double psi = 0.5 * std::numbers::pi * i / 16.0;
    Point q(N);
    q[0] = c0 + Rs * std::cos(psi);
    if (boundary)
      q[1] = Rs * std::sin(psi);
    else
      q[N - 1] = Rs * std::sin(psi);
    cmax = std::max(cmax, std::abs(in.f(q)) * std::pow(R, p));
  }
  const double area = boundary ? sphere_area(N - 1) : 0.5 * sphere_area(N);
  return cmax * area * std::pow(R, dim - p) / (p - dim);
}

}  // namespace

IntegralResult integrate_reduced(const ReducedIntegrand& in, Reduction red, const QuadratureSpec& spec,
                                 Exec exec) {
  check_spec(spec);
  const int N = in.N;
  if (N < 4 || N > kMaxDim) throw Error(Errc::InvalidParameter, "reduced integrals need 4 <= N <= 16");
  if (!(in.scale > 0.0)) throw Error(Errc::InvalidParameter, "integrand scale must be positive");
  if (!in.f) throw Error(Errc::InvalidParameter, "missing integrand");
  if (in.check_symmetry) check_symmetry(in, red);

  const double s = in.scale;
  const double R = spec.truncation_radius * s;
  const bool tails = spec.tail_mode == TailMode::mapped;
  std::vector<Region> regions;
  ScalarFn g;
  const auto& f = in.f;

  switch (red) {
    case Reduction::radial2: {
      const double w = sphere_area(N - 1);
      auto t_axis = graded_halfline(s, R, tails);
      std::vector<Interval> psi = {{0.0, 0.25 * std::numbers::pi}, {0.25 * std::numbers::pi, 0.5 * std::numbers::pi}};
      regions = product({t_axis, psi});
      g = [f, N, w](const double* x) {
        const double t = x[0], rho = t * std::cos(x[1]);
        Point p(N);
        p[0] = rho;
        p[N - 1] = t * std::sin(x[1]);
        const double v = f(p);
        return v == 0.0 ? 0.0 : v * w * std::pow(rho, N - 2) * t;
      };
      break;
    }
    case Reduction::axial3:
    case Reduction::bipolar3: {
      if (red == Reduction::bipolar3 && in.y1_breaks.size() != 2)
        throw Error(Errc::InvalidParameter, "bipolar3 needs the two centres as y1_breaks");
      const double w = sphere_area(N - 2);
      regions = product({graded_line(in.y1_breaks, s, R, tails), graded_halfline(s, R, tails),
                         graded_halfline(s, R, tails)});
      g = [f, N, w](const double* x) {
        Point p(N);
        p[0] = x[0];
        p[1] = x[1];
        p[N - 1] = x[2];
        const double v = f(p);
        return v == 0.0 ? 0.0 : v * w * std::pow(x[1], N - 3);
      };
      break;
    }
    case Reduction::boundary_radial1: {
      const double w = sphere_area(N - 1);
      regions = product({graded_halfline(s, R, tails)});
      g = [f, N, w](const double* x) {
        Point p(N);
        p[0] = x[0];
        const double v = f(p);
        return v == 0.0 ? 0.0 : v * w * std::pow(x[0], N - 2);
      };
      break;
    }
    case Reduction::boundary_axial2: {
      const double w = sphere_area(N - 2);
      regions = product({graded_line(in.y1_breaks, s, R, tails), graded_halfline(s, R, tails)});
      g = [f, N, w](const double* x) {
        Point p(N);
        p[0] = x[0];
        p[1] = x[1];
        const double v = f(p);
        return v == 0.0 ? 0.0 : v * w * std::pow(x[1], N - 3);
      };
      break;
    }
  }
  IntegralResult res = integrate_regions(regions, g, spec, R, exec);
  if (!tails) {
    res.truncation_tail_bound = truncated_tail_bound(in, red, R);
    res.error_estimate += res.truncation_tail_bound;
  }
  return res;
}

// ---------------------------------------------------------------------------

double I_integral(double alpha, double mexp) {
  if (!(alpha > -1.0) || !(alpha + 1.0 < 2.0 * mexp))
    throw Error(Errc::DivergentIntegral, "I_m^alpha needs -1 < alpha and alpha + 1 < 2m");
  const double a = 0.5 * (alpha + 1.0);
  return 0.5 * beta_fn(a, mexp - a);
}

double I_integral_quadrature(double alpha, double mexp) {
  if (!(alpha > -1.0) || !(alpha + 1.0 < 2.0 * mexp))
    throw Error(Errc::DivergentIntegral, "I_m^alpha needs -1 < alpha and alpha + 1 < 2m");
  QuadratureSpec q;
  q.rel_tol = 1e-13;
  q.abs_tol = 1e-300;
  auto f = [alpha, mexp](double r) { return std::pow(r, alpha) * std::pow(1.0 + r * r, -mexp); };
  return integrate_1d(f, 0.0, kInf, q, 1.0, {0.5, 1.0, 2.0, 8.0}).value;
}

double phi_integral_quadrature(double mexp, double Dfrak) {
  if (!(Dfrak > 1.0)) throw Error(Errc::NonPhysicalD, "phi_m needs Dfrak > 1");
  if (!(mexp > 0.5)) throw Error(Errc::DivergentIntegral, "phi_m needs m > 1/2");
  // t = cosh x turns the endpoint singularity into a smooth exponential tail.
  const double x0 = std::acosh(Dfrak);
  const double e = 1.0 - 2.0 * mexp;
  QuadratureSpec q;
  q.rel_tol = 1e-13;
  q.abs_tol = 1e-300;
  auto f = [e](double x) { return std::exp(e * std::log(std::sinh(x))); };
  const double s = 1.0 / (2.0 * mexp - 1.0);
  return integrate_1d(f, x0, kInf, q, s, {x0 + s, x0 + 4.0 * s}).value;
}

double phi_integral(double mexp, double Dfrak) {
  if (!(Dfrak > 1.0)) throw Error(Errc::NonPhysicalD, "phi_m needs Dfrak > 1");
  if (!(mexp > 0.5)) throw Error(Errc::DivergentIntegral, "phi_m needs m > 1/2");
  if (mexp == 1.5) return Dfrak / std::sqrt(Dfrak * Dfrak - 1.0) - 1.0;
  return phi_integral_quadrature(mexp, Dfrak);
}

}  // namespace lsr
