#include "plurikp/special_functions.hpp"

#include <array>
#include <cmath>
#include <string>

#include "plurikp/errors.hpp"

namespace plurikp {

namespace {

// B_{2k} / (2k+1)! for k = 1..13; the series in u = -log(1-z) is
//   Li₂(z) = u - u²/4 + Σ_k B_{2k} u^{2k+1} / (2k+1)!
constexpr std::array<double, 13> kBernoulliTerms = {
    2.7777777777777777777777777777778e-2,   -2.7777777777777777777777777777778e-4,
    4.7241118669690098261526832955404e-6,   -9.1857730746619635508524397413300e-8,
    1.8978869988970999072009173019300e-9,   -4.0647616451442255268059093862900e-11,
    8.9216910204564525552179873167500e-13,  -1.9939295860721075687236443477900e-14,
    4.5189800296199181916504765528600e-16,  -1.0356517612181247014483411542200e-17,
    2.3952186210261867457402837430000e-19,  -5.5817858743250093362830745056300e-21,
    1.3091507554183212858123073991900e-22,
};

// Li₂ on [-1, 1/2], where |u| ≤ log 2 and the series converges geometrically
// with ratio (u/2π)².
double dilog_series(double z) {
  const double u = -std::log1p(-z);
  const double u2 = u * u;
  double sum = 0.0;
  double power = u * u2;
  for (double c : kBernoulliTerms) {
    const double term = c * power;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(u)) break;
    power *= u2;
  }
  return u - 0.25 * u2 + sum;
}

void require_finite(double z, const char* what) {
  if (!std::isfinite(z)) throw InvalidArgument(std::string(what) + ": non-finite argument");
}

}  // namespace

double dilog(double z) {
  require_finite(z, "dilog");
  if (z > 1.0) throw InvalidArgument("dilog: z = " + std::to_string(z) + " > 1 is outside the real branch");
  if (z == 1.0) return kPi2 / 6.0;
  if (z > 0.5) {
    // Euler reflection.
    return kPi2 / 6.0 - std::log(z) * std::log1p(-z) - dilog_series(1.0 - z);
  }
  if (z >= -1.0) return dilog_series(z);
  // Inversion for z < -1.
  const double l = std::log(-z);
  return -kPi2 / 6.0 - 0.5 * l * l - dilog_series(1.0 / z);
}

double lambda_fn(double z) {
  require_finite(z, "lambda");
  if (z <= 1.0) return dilog(z);
  const double l = std::log(z);
  return -dilog(1.0 / z) - 0.5 * l * l + kPi2 / 3.0;
}

double big_lambda(double z) {
  require_finite(z, "Lambda");
  if (z == 0.0) throw InvalidArgument("Lambda: pole at z = 0");
  return lambda_fn(z) - lambda_fn(1.0 / z);
}

}  // namespace plurikp
