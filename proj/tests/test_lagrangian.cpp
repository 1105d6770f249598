#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "plurikp/cell_complex.hpp"
#include "plurikp/dkp_system.hpp"
#include "plurikp/errors.hpp"
#include "plurikp/lagrangian.hpp"
#include "plurikp/special_functions.hpp"

using namespace plurikp;

namespace {

Point unit_sum(std::size_t coords, std::initializer_list<int> dirs) {
  std::vector<int> c(coords, 0);
  for (int d : dirs) c[static_cast<std::size_t>(d)] += 1;
  return Point(std::move(c));
}

const OrientedCell kOct = OrientedCell::parse("+oct[0 1 2 3]@(0,0,0,0)");

Field random_oct_field(Rng& rng) {
  Field f(Lattice::RootA, 4);
  for (const auto& p : octahedral_points(kOct)) f.set(p, random_value(rng));
  return f;
}

// The 3-form on [i j k l] for an arbitrary ordering of the four directions.
double form_by_hand(const Field& f, int i, int j, int k, int l) {
  auto x = [&](int a, int b) { return f.at(unit_sum(4, {a, b})); };
  return 0.5 * (big_lambda(x(i, j) * x(k, l) / (x(i, k) * x(j, l))) +
                big_lambda(x(i, k) * x(j, l) / (x(i, l) * x(j, k))) +
                big_lambda(-x(i, l) * x(j, k) / (x(i, j) * x(k, l))));
}

double fd_derivative(const Field& f, const Chain& manifold, const Point& v, double h = 1e-6) {
  Field up = f, down = f;
  up.set(v, f.at(v) + h);
  down.set(v, f.at(v) - h);
  return (action(up, manifold) - action(down, manifold)) / (2 * h);
}

}  // namespace

TEST_CASE("three_form matches the written formula") {
  Rng rng(1);
  for (int t = 0; t < 100; ++t) {
    const Field f = random_oct_field(rng);
    CHECK(three_form(f, kOct) == doctest::Approx(form_by_hand(f, 0, 1, 2, 3)).epsilon(1e-12));
    CHECK(three_form(f, kOct.negated()) == doctest::Approx(-form_by_hand(f, 0, 1, 2, 3)).epsilon(1e-12));
  }
}

TEST_CASE("three_form flips sign under a cyclic shift of the indices") {
  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    const Field f = random_oct_field(rng);
    CHECK(form_by_hand(f, 1, 2, 3, 0) == doctest::Approx(-form_by_hand(f, 0, 1, 2, 3)).epsilon(1e-10));
  }
}

TEST_CASE("three_form vanishes on tetrahedra and rejects other cells") {
  Field f(Lattice::RootA, 4);
  CHECK(three_form(f, OrientedCell::parse("+btet[0 1 2 3]@(0,0,0,0)")) == 0.0);
  CHECK(three_form(f, OrientedCell::parse("-wtet[0 1 2 3]@(0,0,0,0)")) == 0.0);
  CHECK_THROWS_AS(three_form(f, OrientedCell::parse("+bambo[0 1 2 3 4]@(0,0,0,0,0)")), InvalidArgument);
}

TEST_CASE("golden octahedron and closure values") {
  for (const char* text : {"+bambo[0 1 2 3 4]@(0,0,0,0,0)", "+wambo[0 1 2 3 4]@(0,0,0,0,0)"}) {
    const auto cell = OrientedCell::parse(text);
    const Field g = golden_field(cell, Branch::Dkp);
    for (const auto& oct : system_on_4cell(cell)) CHECK(std::abs(three_form(g, oct) + kPi2 / 20) <= 1e-10);
    CHECK(std::abs(exterior_derivative(g, cell) + kPi2 / 4) <= 1e-9);
    CHECK(std::abs(exterior_derivative(g.inverted(), cell) - kPi2 / 4) <= 1e-9);
    CHECK(std::abs(exterior_derivative(g, cell.negated()) - kPi2 / 4) <= 1e-9);
    for (const auto& v : vertices(cell)) {
      CHECK(corner_E(g, cell, v).value == doctest::Approx(-1.0).epsilon(1e-12));
      CHECK(corner_E(g.inverted(), cell, v).value == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("corner residual is the partial derivative of the 4-cell action") {
  Rng rng(3);
  for (const char* text : {"+bsimp[0 1 2 3 4]@(0,0,0,0,0)", "+bambo[0 1 2 3 4]@(0,0,0,0,0)",
                           "-bambo[0 1 2 3 4]@(0,0,0,0,0)", "+wambo[0 1 2 3 4]@(0,0,0,0,0)",
                           "-wambo[0 1 2 3 4]@(1,0,0,0,-1)", "+wsimp[0 1 2 3 4]@(0,0,0,0,0)",
                           "+cube4[0 1 2 3]@(0,0,0,0)", "-cube4[0 1 2 3]@(0,0,0,0)"}) {
    CAPTURE(text);
    const auto cell = OrientedCell::parse(text);
    const Chain bd = facets(cell);
    for (int t = 0; t < 50; ++t) {
      const Field f = random_cell_field(cell, rng, kGradientMargin);
      for (const auto& v : vertices(cell)) {
        CAPTURE(v.str());
        CHECK(std::abs(corner_residual(f, cell, v) - fd_derivative(f, bd, v)) <= 1e-6);
      }
    }
  }
}

TEST_CASE("corner equations exist where the action depends on the vertex") {
  const auto cube = OrientedCell::parse("+cube4[0 1 2 3]@(0,0,0,0)");
  CHECK_FALSE(has_corner_equation(cube, Point::zero(4)));
  CHECK_FALSE(has_corner_equation(cube, Point({1, 1, 1, 1})));
  CHECK(has_corner_equation(cube, Point({1, 0, 0, 0})));
  CHECK(corner_residual(Field(Lattice::Cubic, 4), cube, Point::zero(4)) == 0.0);
  CHECK_FALSE(has_corner_equation(OrientedCell::parse("+bsimp[0 1 2 3 4]@(0,0,0,0,0)"), Point({1, 0, 0, 0, 0})));
  CHECK_THROWS_AS(corner_E(Field(Lattice::Cubic, 4), cube, Point::zero(4)), InvalidArgument);
}

TEST_CASE("negative orientation inverts E but keeps the factors") {
  Rng rng(4);
  const auto cell = OrientedCell::parse("+bambo[0 1 2 3 4]@(0,0,0,0,0)");
  const Field f = random_cell_field(cell, rng);
  for (const auto& v : vertices(cell)) {
    const auto a = corner_E(f, cell, v), b = corner_E(f, cell.negated(), v);
    CHECK(a.value * b.value == doctest::Approx(1.0));
    CHECK(a.factors == b.factors);
  }
}

TEST_CASE("cube action is the signed sum of its lifted ambo halves") {
  Rng rng(5);
  const auto cube = OrientedCell::parse("+cube4[0 1 2 3]@(0,0,0,0)");
  const Chain roots = cube_as_root_cells(cube);
  for (int t = 0; t < 50; ++t) {
    const Field f = random_cell_field(cube, rng);
    const Field lifted = lift_field(f);
    double sum = 0;
    for (const auto& [c, coef] : roots.terms())
      if (c.kind() == CellKind::BlackAmbo4 || c.kind() == CellKind::WhiteAmbo4)
        sum += static_cast<double>(coef) * exterior_derivative(lifted, c);
    CHECK(exterior_derivative(f, cube) == doctest::Approx(sum).epsilon(1e-10));
  }
}

TEST_CASE("singular corner data is reported") {
  // x_ij x_kl = x_ik x_jl makes the first quotient's denominator vanish.
  const auto cell = OrientedCell::parse("+bambo[0 1 2 3 4]@(0,0,0,0,0)");
  Field f(Lattice::RootA, 5);
  for (const auto& v : vertices(cell)) f.set(v, 1.0);
  CHECK_THROWS_AS(corner_E(f, cell, unit_sum(5, {0, 1})), SingularError);
}
