#include "plurikp/lagrangian.hpp"

#include <algorithm>
#include <cmath>

#include "plurikp/dkp_system.hpp"
#include "plurikp/errors.hpp"
#include "plurikp/special_functions.hpp"

namespace plurikp {

namespace {

// Relative size below which a denominator or numerator counts as zero.
constexpr double kSingularGuard = 1e-12;

double quotient(double num_a, double num_b, double den_a, double den_b) {
  const double num = num_a + num_b, den = den_a + den_b;
  const double scale = std::abs(num_a) + std::abs(num_b) + std::abs(den_a) + std::abs(den_b);
  if (std::abs(den) < kSingularGuard * scale) throw SingularError("corner quotient with vanishing denominator");
  if (std::abs(num) < kSingularGuard * scale) throw SingularError("corner quotient with vanishing numerator");
  return num / den;
}

int mod5(int v) { return ((v % 5) + 5) % 5; }

// E_ij with (i j k l m) = cyclic shift by r of the positions.
template <class X>
double template_ij(X x, int r) {
  const int i = r, j = mod5(r + 1), k = mod5(r + 2), l = mod5(r + 3), m = mod5(r + 4);
  return quotient(x(i, j) * x(k, l), x(i, l) * x(j, k), x(i, j) * x(k, l), -x(i, k) * x(j, l)) *
         quotient(x(i, j) * x(k, m), -x(i, k) * x(j, m), x(i, j) * x(k, m), x(i, m) * x(j, k)) *
         quotient(x(i, j) * x(l, m), x(i, m) * x(j, l), x(i, j) * x(l, m), -x(i, l) * x(j, m));
}

template <class X>
double template_ik(X x, int r) {
  const int i = r, j = mod5(r + 1), k = mod5(r + 2), l = mod5(r + 3), m = mod5(r + 4);
  return quotient(x(i, k) * x(j, l), -x(i, j) * x(k, l), x(i, k) * x(j, l), -x(i, l) * x(j, k)) *
         quotient(x(i, k) * x(j, m), -x(i, m) * x(j, k), x(i, k) * x(j, m), -x(i, j) * x(k, m)) *
         quotient(x(i, k) * x(l, m), -x(i, l) * x(k, m), x(i, k) * x(l, m), x(i, m) * x(k, l));
}

template <class X>
double template_ijk(X x, int r) {
  const int i = r, j = mod5(r + 1), k = mod5(r + 2), l = mod5(r + 3), m = mod5(r + 4);
  return quotient(x(i, j, k) * x(k, l, m), x(i, k, m) * x(j, k, l), x(i, j, k) * x(k, l, m),
                  -x(i, k, l) * x(j, k, m)) *
         quotient(x(i, j, k) * x(j, l, m), -x(i, j, l) * x(j, k, m), x(i, j, k) * x(j, l, m),
                  x(i, j, m) * x(j, k, l)) *
         quotient(x(i, j, k) * x(i, l, m), x(i, j, m) * x(i, k, l), x(i, j, k) * x(i, l, m),
                  -x(i, j, l) * x(i, k, m));
}

template <class X>
double template_ijl(X x, int r) {
  const int i = r, j = mod5(r + 1), k = mod5(r + 2), l = mod5(r + 3), m = mod5(r + 4);
  return quotient(x(i, j, l) * x(k, l, m), -x(i, k, l) * x(j, l, m), x(i, j, l) * x(k, l, m),
                  x(i, l, m) * x(j, k, l)) *
         quotient(x(i, j, l) * x(j, k, m), -x(i, j, m) * x(j, k, l), x(i, j, l) * x(j, k, m),
                  -x(i, j, k) * x(j, l, m)) *
         quotient(x(i, j, l) * x(i, k, m), -x(i, j, k) * x(i, l, m), x(i, j, l) * x(i, k, m),
                  -x(i, j, m) * x(i, k, l));
}

// Positions (into the index list) at which `vertex` exceeds the base.
std::vector<int> raised_positions(const OrientedCell& cell, const Point& vertex) {
  std::vector<int> out;
  const auto& idx = cell.indices();
  for (std::size_t p = 0; p < idx.size(); ++p)
    if (vertex[idx[p]] != cell.base()[idx[p]]) out.push_back(static_cast<int>(p));
  return out;
}

// Template value of a positively oriented ambo cell at its vertex.
double ambo_template(const Field& field, const OrientedCell& ambo, const Point& vertex) {
  const auto& idx = ambo.indices();
  const Point& base = ambo.base();
  auto raised = raised_positions(ambo, vertex);
  if (ambo.kind() == CellKind::BlackAmbo4) {
    auto x = [&](int a, int b) { return field.at(base.shifted(idx[a]).shifted(idx[b])); };
    const int p = raised[0], q = raised[1];
    if (mod5(q - p) == 1) return template_ij(x, p);
    if (mod5(p - q) == 1) return template_ij(x, q);
    if (mod5(q - p) == 2) return template_ik(x, p);
    return template_ik(x, q);
  }
  auto x = [&](int a, int b, int c) { return field.at(base.shifted(idx[a]).shifted(idx[b]).shifted(idx[c])); };
  // Complementary pair (c, d) of the triple.
  std::vector<int> comp;
  for (int t = 0; t < 5; ++t)
    if (std::find(raised.begin(), raised.end(), t) == raised.end()) comp.push_back(t);
  const int c = comp[0], d = comp[1];
  // {r, r+1, r+2} has complement {r+3, r+4}; {r, r+1, r+3} has {r+2, r+4}.
  if (mod5(d - c) == 1) return template_ijk(x, mod5(c + 2));
  if (mod5(c - d) == 1) return template_ijk(x, mod5(d + 2));
  if (mod5(d - c) == 2) return template_ijl(x, mod5(c - 2));
  return template_ijl(x, mod5(d - 2));
}

bool is_cube_extreme(const OrientedCell& cube4, const Point& vertex) {
  const auto raised = raised_positions(cube4, vertex);
  return raised.empty() || raised.size() == 4;
}

}  // namespace

double three_form(const Field& field, const OrientedCell& cell3) {
  switch (cell3.kind()) {
    case CellKind::BlackTetrahedron:
    case CellKind::WhiteTetrahedron:
      return 0.0;
    case CellKind::Octahedron:
    case CellKind::Cube3:
      break;
    default:
      throw InvalidArgument("no 3-form on " + cell3.str());
  }
  const auto v = octahedral_values(field, cell3);
  const double u1 = v[0] * v[5], u2 = v[1] * v[4], u3 = v[2] * v[3];
  return cell3.sign() * 0.5 * (big_lambda(u1 / u2) + big_lambda(u2 / u3) + big_lambda(-u3 / u1));
}

double action(const Field& field, const Chain& manifold) {
  double sum = 0.0;
  for (const auto& [cell, coef] : manifold.terms()) sum += static_cast<double>(coef) * three_form(field, cell);
  return sum;
}

double exterior_derivative(const Field& field, const OrientedCell& cell4) {
  if (dimension_of(cell4.kind()) != 4) throw InvalidArgument("exterior derivative needs a 4-cell, got " + cell4.str());
  return action(field, facets(cell4));
}

bool has_corner_equation(const OrientedCell& cell4, const Point& vertex) {
  if (!contains_vertex(cell4, vertex)) return false;
  switch (cell4.kind()) {
    case CellKind::BlackAmbo4:
    case CellKind::WhiteAmbo4:
      return true;
    case CellKind::Cube4:
      return !is_cube_extreme(cell4, vertex);
    default:
      return false;
  }
}

CornerQuantity corner_E(const Field& field, const OrientedCell& cell4, const Point& vertex) {
  if (!has_corner_equation(cell4, vertex))
    throw InvalidArgument("no corner equation of " + cell4.str() + " at " + vertex.str());
  CornerQuantity out{cell4, vertex, 1.0, {}};
  if (cell4.kind() == CellKind::Cube4) {
    const Field lifted = lift_field(field);
    const Point up = lift_point(0, vertex, 0);
    const Chain cells = cube_as_root_cells(cell4);
    for (const auto& [cell, coef] : cells.terms()) {
      if (cell.kind() != CellKind::BlackAmbo4 && cell.kind() != CellKind::WhiteAmbo4) continue;
      if (!contains_vertex(cell, up)) continue;
      const double e = ambo_template(lifted, cell, up);
      out.factors.push_back(e);
      out.value *= coef > 0 ? e : 1.0 / e;
    }
    return out;
  }
  const double e = ambo_template(field, cell4, vertex);
  out.factors.push_back(e);
  out.value = cell4.sign() > 0 ? e : 1.0 / e;
  return out;
}

double corner_residual(const Field& field, const OrientedCell& cell4, const Point& vertex) {
  if (!contains_vertex(cell4, vertex)) throw InvalidArgument(vertex.str() + " is not a vertex of " + cell4.str());
  if (!has_corner_equation(cell4, vertex)) return 0.0;
  const double e = corner_E(field, cell4, vertex).value;
  return std::log(std::abs(e)) / field.at(vertex);
}

}  // namespace plurikp
