#include "lsr/point.hpp"

#include <algorithm>
#include <stdexcept>

namespace lsr {

Point::Point(int dim) : dim_(dim) {
  if (dim < 0 || dim > kMaxDim) throw std::out_of_range("Point dimension out of range");
}

Point::Point(std::initializer_list<double> xs) : dim_(static_cast<int>(xs.size())) {
  if (dim_ > kMaxDim) throw std::out_of_range("Point dimension out of range");
  std::copy(xs.begin(), xs.end(), x_.begin());
}

Point Point::from_span(std::span<const double> xs) {
  Point p(static_cast<int>(xs.size()));
  std::copy(xs.begin(), xs.end(), p.x_.begin());
  return p;
}

bool Point::operator==(const Point& o) const noexcept {
  if (dim_ != o.dim_) return false;
  for (int i = 0; i < dim_; ++i)
    if (x_[i] != o.x_[i]) return false;
  return true;
}

double dot(const Point& a, const Point& b) noexcept {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

double norm_sq(const Point& a) noexcept { return dot(a, a); }

double dist_sq(const Point& a, const Point& b) noexcept {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double tangential_norm(const Point& a) noexcept {
  double s = 0.0;
  for (int i = 0; i + 1 < a.dim(); ++i) s += a[i] * a[i];
  return std::sqrt(s);
}

}  // namespace lsr
