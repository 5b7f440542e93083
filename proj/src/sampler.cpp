#include <cmath>
#include <numbers>
#include <random>

#include "lsr/error.hpp"
#include "lsr/quad.hpp"

namespace lsr {

MixtureSampler::MixtureSampler(int dim, std::vector<Point> centers, double scale, double tail, bool halfspace)
    : dim_(dim), centers_(std::move(centers)), s_(scale), a_(tail), half_(halfspace) {
  if (dim_ < 1 || dim_ > kMaxDim) throw Error(Errc::InvalidParameter, "sampler dimension out of range");
  if (centers_.empty()) throw Error(Errc::InvalidParameter, "sampler needs at least one centre");
  if (!(s_ > 0.0) || !(a_ > 0.0)) throw Error(Errc::InvalidParameter, "sampler scale and tail must be positive");
  for (const Point& c : centers_) {
    if (c.dim() != dim_) throw Error(Errc::InvalidParameter, "sampler centre has the wrong dimension");
    if (half_ && c.last() != 0.0)
      throw Error(Errc::InvalidParameter, "half-space sampler centres must lie on the boundary");
  }
  norm_ = dim_ * std::pow(s_, a_) / sphere_area(dim_) * (half_ ? 2.0 : 1.0);
}

double MixtureSampler::density(const Point& x) const {
  if (half_ && x.last() < 0.0) return 0.0;
  const double sa = std::pow(s_, a_);
  const double e = -(dim_ / a_ + 1.0);
  double acc = 0.0;
  for (const Point& c : centers_) acc += std::pow(sa + std::pow(dist(x, c), a_), e);
  return norm_ * acc / static_cast<double>(centers_.size());
}

Point MixtureSampler::sample(double u_pick, double u_radius, const double* gaussians) const {
  const size_t k = centers_.size();
  size_t idx = static_cast<size_t>(u_pick * static_cast<double>(k));
  if (idx >= k) idx = k - 1;
  const double v = std::pow(u_radius, a_ / dim_);
  const double t = s_ * std::pow(v / (1.0 - v), 1.0 / a_);
  double nrm = 0.0;
  for (int i = 0; i < dim_; ++i) nrm += gaussians[i] * gaussians[i];
  nrm = std::sqrt(nrm);
  Point x = centers_[idx];
  for (int i = 0; i < dim_; ++i) x[i] += t * gaussians[i] / nrm;
  if (half_) x[dim_ - 1] = std::abs(x[dim_ - 1]);
  return x;
}

namespace {

constexpr std::int64_t kBlock = 4096;

struct Moments {
  std::int64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;
  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  void merge(const Moments& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double nt = static_cast<double>(n + o.n);
    const double d = o.mean - mean;
    mean += d * static_cast<double>(o.n) / nt;
    m2 += o.m2 + d * d * static_cast<double>(n) * static_cast<double>(o.n) / nt;
    n += o.n;
  }
};

// Uniform on the open interval (0,1).
double open_uniform(std::mt19937_64& g) { return (static_cast<double>(g() >> 11) + 0.5) * 0x1.0p-53; }

}  // namespace

IntegralResult integrate_mc(const std::function<double(const Point&)>& f, const MixtureSampler& sampler,
                            const McSpec& spec, Exec exec) {
  if (spec.samples <= 1) throw Error(Errc::InvalidParameter, "Monte Carlo needs at least two samples");
  const std::int64_t nblocks = (spec.samples + kBlock - 1) / kBlock;
  std::vector<Moments> blocks(static_cast<size_t>(nblocks));
  const int d = sampler.dim();
  for_each_index(nblocks, exec, [&](std::int64_t b) {
    std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32), 0x6c73u};
    std::mt19937_64 gen(seq);
    const std::int64_t lo = b * kBlock, hi = std::min(spec.samples, lo + kBlock);
    Moments m;
    double gauss[kMaxDim + 1];
    for (std::int64_t i = lo; i < hi; ++i) {
      const double up = open_uniform(gen);
      const double ur = open_uniform(gen);
      for (int j = 0; j < d; j += 2) {
        const double r = std::sqrt(-2.0 * std::log(open_uniform(gen)));
        const double th = 2.0 * std::numbers::pi * open_uniform(gen);
        gauss[j] = r * std::cos(th);
        gauss[j + 1] = r * std::sin(th);
      }
      const Point x = sampler.sample(up, ur, gauss);
      const double q = sampler.density(x);
      m.add(q > 0.0 ? f(x) / q : 0.0);
    }
    blocks[static_cast<size_t>(b)] = m;
  });
  Moments all;
  for (const Moments& m : blocks) all.merge(m);
  IntegralResult r;
  r.value = all.mean;
  const double var = all.n > 1 ? all.m2 / static_cast<double>(all.n - 1) : 0.0;
  r.error_estimate = std::sqrt(var / static_cast<double>(all.n));
  r.evals = all.n;
  r.converged = true;
  return r;
}

}  // namespace lsr
