#pragma once

#include <array>
#include <cmath>
#include <initializer_list>
#include <span>

namespace lsr {

inline constexpr int kMaxDim = 16;

// Fixed-capacity coordinate vector; no heap traffic in sampling loops.
class Point {
 public:
  Point() = default;
  explicit Point(int dim);
  Point(std::initializer_list<double> xs);
  static Point from_span(std::span<const double> xs);

  int dim() const noexcept { return dim_; }
  double& operator[](int i) noexcept { return x_[i]; }
  double operator[](int i) const noexcept { return x_[i]; }
  double last() const noexcept { return x_[dim_ - 1]; }
  bool on_boundary() const noexcept { return x_[dim_ - 1] == 0.0; }
  std::span<const double> coords() const noexcept { return {x_.data(), static_cast<size_t>(dim_)}; }
  std::span<double> coords() noexcept { return {x_.data(), static_cast<size_t>(dim_)}; }

  bool operator==(const Point& o) const noexcept;

 private:
  std::array<double, kMaxDim> x_{};
  int dim_ = 0;
};

double dot(const Point& a, const Point& b) noexcept;
double norm_sq(const Point& a) noexcept;
inline double norm(const Point& a) noexcept { return std::sqrt(norm_sq(a)); }
double dist_sq(const Point& a, const Point& b) noexcept;
inline double dist(const Point& a, const Point& b) noexcept { return std::sqrt(dist_sq(a, b)); }
// |ybar| for a point whose last coordinate is the normal direction.
double tangential_norm(const Point& a) noexcept;

}  // namespace lsr
