#pragma once

#include <cstddef>

namespace hilbert {

inline constexpr double kPi = 3.14159265358979323846;

/// Volume of the unit ball in R^d, pi^(d/2) / Gamma(d/2 + 1).
double unit_ball_volume(std::size_t d);

/// Surface area of the unit sphere in R^d, d * V_d.
double unit_sphere_area(std::size_t d);

}  // namespace hilbert
