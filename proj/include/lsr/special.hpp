#pragma once

namespace lsr {

// |S^{d-1}| = 2 pi^{d/2} / Gamma(d/2).
double sphere_area(int d);
// Volume of the unit ball in R^d.
double unit_ball_volume(int d);
double beta_fn(double a, double b);

}  // namespace lsr
