#ifndef PLURIKP_LAGRANGIAN_HPP
#define PLURIKP_LAGRANGIAN_HPP

// The discrete 3-form, actions, exterior derivatives on 4-cells and the
// corner quantities E whose logarithms are the action's partial derivatives.

#include <vector>

#include "plurikp/cell_complex.hpp"
#include "plurikp/field.hpp"

namespace plurikp {

/// ½(Λ(x_ij x_kl / x_ik x_jl) + Λ(x_ik x_jl / x_il x_jk) + Λ(-x_il x_jk / x_ij x_kl))
/// times the cell's sign; 0 on tetrahedra. Cube3 cells use their inscribed
/// octahedron.
double three_form(const Field& field, const OrientedCell& cell3);

/// Signed sum of three_form over a chain of 3-cells.
double action(const Field& field, const Chain& manifold);

/// Action of the boundary of a 4-cell.
double exterior_derivative(const Field& field, const OrientedCell& cell4);

struct CornerQuantity {
  OrientedCell cell4;
  Point vertex;
  /// The quantity with (1/x) log|value| = ∂S/∂x at the vertex.
  double value = 0.0;
  /// The template quotients the value is built from: one for ambo corners and
  /// cube singles/triples, two (lower, upper) for cube doubles. A negatively
  /// oriented cell inverts `value` but not the factors.
  std::vector<double> factors;
};

/// False for 4-simplices (E ≡ 1 formally) and for the vertices x and x_jklm
/// of a 4D cube.
bool has_corner_equation(const OrientedCell& cell4, const Point& vertex);

/// Throws InvalidArgument if the vertex has no corner equation and
/// SingularError near a zero denominator or numerator.
CornerQuantity corner_E(const Field& field, const OrientedCell& cell4, const Point& vertex);

/// (1/x) log|E|; 0 where there is no corner equation but the vertex lies in
/// the cell (the action does not depend on it).
double corner_residual(const Field& field, const OrientedCell& cell4, const Point& vertex);

}  // namespace plurikp

#endif  // PLURIKP_LAGRANGIAN_HPP
