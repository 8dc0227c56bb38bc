#include "hilbert/constants.hpp"

#include <cmath>

#include "hilbert/errors.hpp"

namespace hilbert {

double unit_ball_volume(std::size_t d) {
    if (d == 0) throw InvalidArgument("dimension must be >= 1");
    const double h = 0.5 * static_cast<double>(d);
    return std::exp(h * std::log(kPi) - std::lgamma(h + 1.0));
}

double unit_sphere_area(std::size_t d) { return static_cast<double>(d) * unit_ball_volume(d); }

}  // namespace hilbert
