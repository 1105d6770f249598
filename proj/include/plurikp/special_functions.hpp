#ifndef PLURIKP_SPECIAL_FUNCTIONS_HPP
#define PLURIKP_SPECIAL_FUNCTIONS_HPP

// Real dilogarithm and the functions λ, Λ entering the discrete 3-form.

#include <numbers>

namespace plurikp {

inline constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

/// The golden constant a = (1 - √5)/2, root of a² - a - 1 = 0.
inline constexpr double kGolden = 1.0 - std::numbers::phi;

/// Li₂(z) = -∫₀^z log(1-x)/x dx for real z ≤ 1. Throws InvalidArgument for
/// z > 1 or non-finite z.
double dilog(double z);

/// λ(z) = -∫₀^z log|1-x|/x dx, defined for every finite z.
double lambda_fn(double z);

/// Λ(z) = λ(z) - λ(1/z); throws InvalidArgument for z = 0.
double big_lambda(double z);

}  // namespace plurikp

#endif  // PLURIKP_SPECIAL_FUNCTIONS_HPP
