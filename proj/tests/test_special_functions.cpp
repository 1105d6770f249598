#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "plurikp/errors.hpp"
#include "plurikp/special_functions.hpp"

using namespace plurikp;

namespace {

// λ(z) = -∫₀^z log|1-x|/x dx by tanh-sinh quadrature, split at the
// logarithmic singularity x = 1.
double lambda_quadrature(double z) {
  boost::math::quadrature::tanh_sinh<double> q;
  auto f = [](double x) { return x == 0.0 ? -1.0 : std::log(std::abs(1.0 - x)) / x; };
  if (z <= 1.0) return z >= 0 ? -q.integrate(f, 0.0, z) : q.integrate(f, z, 0.0);
  return -(q.integrate(f, 0.0, 1.0) + q.integrate(f, 1.0, z));
}

}  // namespace

TEST_CASE("golden constant") {
  CHECK(kGolden * kGolden - kGolden - 1.0 == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(kGolden < 0);
}

TEST_CASE("dilog special values") {
  const double a = kGolden, l = std::log(-a);
  CHECK(std::abs(dilog(a * a) - (kPi2 / 15 - l * l)) <= 1e-11);
  CHECK(std::abs(dilog(-a) - (kPi2 / 10 - l * l)) <= 1e-11);
  CHECK(std::abs(dilog(a) - (-kPi2 / 15 + 0.5 * l * l)) <= 1e-11);
  CHECK(std::abs(dilog(1 / a) - (-kPi2 / 10 - l * l)) <= 1e-11);
  CHECK(dilog(0.0) == 0.0);
  CHECK(std::abs(dilog(1.0) - kPi2 / 6) <= 1e-14);
  CHECK(std::abs(dilog(-1.0) + kPi2 / 12) <= 1e-14);
  CHECK(std::abs(dilog(0.5) - (kPi2 / 12 - 0.5 * std::log(2.0) * std::log(2.0))) <= 1e-14);
}

TEST_CASE("dilog domain") {
  CHECK_THROWS_AS(dilog(1.5), InvalidArgument);
  CHECK_THROWS_AS(dilog(std::nan("")), InvalidArgument);
}

TEST_CASE("lambda agrees with quadrature") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  for (int t = 0; t < 200; ++t) {
    const double z = u(rng);
    if (std::abs(z - 1.0) < 1e-3) continue;
    CAPTURE(z);
    CHECK(std::abs(lambda_fn(z) - lambda_quadrature(z)) <= 1e-10 * std::max(1.0, std::abs(lambda_fn(z))));
  }
  for (double z : {-100.0, -1e-8, 1e-8, 0.999, 1.001, 2.0, 50.0}) {
    CAPTURE(z);
    CHECK(std::abs(lambda_fn(z) - lambda_quadrature(z)) <= 1e-9 * std::max(1.0, std::abs(lambda_fn(z))));
  }
}

TEST_CASE("lambda equals the real part of Li2") {
  for (double z : {-3.0, -0.4, 0.2, 0.9})
    CHECK(std::abs(lambda_fn(z) - dilog(z)) <= 1e-14);
  CHECK(std::abs(lambda_fn(1.0) - kPi2 / 6) <= 1e-14);
}

TEST_CASE("Lambda is odd under inversion") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int t = 0; t < 200; ++t) {
    const double z = u(rng);
    if (z == 0.0) continue;
    CHECK(std::abs(big_lambda(z) + big_lambda(1.0 / z)) <= 1e-13);
  }
  CHECK_THROWS_AS(big_lambda(0.0), InvalidArgument);
}

TEST_CASE("golden octahedron value") {
  const double a = kGolden;
  const double value = 0.5 * (big_lambda(a * a) + big_lambda(-1.0 / a) + big_lambda(1.0 / a));
  CHECK(std::abs(value + kPi2 / 20) <= 1e-12);
}

TEST_CASE("lambda derivative is -log|1-z|/z") {
  for (double z : {-2.5, -0.3, 0.4, 0.8, 1.7, 4.0}) {
    const double h = 1e-6;
    const double fd = (lambda_fn(z + h) - lambda_fn(z - h)) / (2 * h);
    CHECK(std::abs(fd + std::log(std::abs(1 - z)) / z) <= 1e-7);
  }
}
