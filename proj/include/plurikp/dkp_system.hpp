#ifndef PLURIKP_DKP_SYSTEM_HPP
#define PLURIKP_DKP_SYSTEM_HPP

// The dKP equation x_ij x_kl - x_ik x_jl + x_il x_jk = 0 on octahedra and
// 3D cubes, its image dKP⁻ under x ↦ 1/x, the systems carried by 4-cells,
// initial value problems, golden constant solutions and random sampling.

#include <array>
#include <random>
#include <vector>

#include "plurikp/cell_complex.hpp"
#include "plurikp/field.hpp"

namespace plurikp {

enum class Branch { Dkp, DkpMinus };

const char* branch_name(Branch branch);

using Rng = std::mt19937_64;

/// Vertex of a 4-ambo-simplex labelled by a pair of index positions
/// 0 ≤ p < q ≤ 4: base + e_p + e_q on a black cell, and base + e_S with S the
/// complementary triple on a white cell. In this labelling both cells carry
/// the same five equations.
Point ambo_vertex(const OrientedCell& ambo, int p, int q);
/// Vertex base + Σ e_idx[b] over the set bits b of `mask` (bit 0 = j).
Point cube_vertex(const OrientedCell& cube4, unsigned mask);

/// The six points of an octahedron [ijkl] in the order
/// (ij, ik, il, jk, jl, kl), or of the inscribed octahedron of a cube {jkl}
/// in the order (j, k, l, jk, jl, kl).
std::array<Point, 6> octahedral_points(const OrientedCell& cell);
std::array<double, 6> octahedral_values(const Field& field, const OrientedCell& cell);

/// x_ij x_kl - x_ik x_jl + x_il x_jk (orientation independent).
double dkp_residual(const Field& field, const OrientedCell& cell);
/// x_ik x_il x_jk x_jl - x_ij x_il x_jk x_kl + x_ij x_ik x_jl x_kl, which is
/// (∏ values) · dkp_residual of the inverted field.
double dkp_minus_residual(const Field& field, const OrientedCell& cell);
/// |residual| / Σ|monomials|.
double dkp_relative_residual(const Field& field, const OrientedCell& cell);
double dkp_minus_relative_residual(const Field& field, const OrientedCell& cell);
double relative_residual(const Field& field, const OrientedCell& cell, Branch branch);

/// Octahedral supports of the equations on a 4-ambo-simplex (5) or 4D cube
/// (8), signed as facets.
std::vector<OrientedCell> system_on_4cell(const OrientedCell& cell4);

/// Value at `unknown` making the dKP residual of `cell` vanish; the other
/// five values are read from `field`.
double solve_octahedron(const Field& field, const OrientedCell& cell, const Point& unknown);

/// The seven prescribed vertices x_il, x_im, x_jl, x_jm, x_kl, x_km, x_lm of a
/// black 4-ambo-simplex, or their complementary triples on a white one.
std::vector<Point> ambo_initial_points(const OrientedCell& ambo);
/// Completes seven initial values to the dKP solution on all ten vertices.
Field solve_ambo_ivp(const OrientedCell& ambo, const Field& initial);

/// The nine prescribed vertices of a 4D cube {jklm}:
/// x_l, x_m, x_jl, x_jm, x_kl, x_km, x_lm, x_jkl, x_jkm.
std::vector<Point> cube_initial_points(const OrientedCell& cube4);
/// The fourteen vertices the cube action depends on (all but x and x_jklm).
std::vector<Point> cube_active_points(const OrientedCell& cube4);
/// Completes nine initial values to the dKP solution on the fourteen active
/// vertices of the cube.
Field solve_cube_ivp(const OrientedCell& cube4, const Field& initial);

/// Constant solution on a 4-ambo-simplex: a on the 5-cycle neighbours
/// (x_ij, x_jk, x_kl, x_lm, x_im), -1 elsewhere; a⁻¹ instead of a for dKP⁻.
Field golden_field(const OrientedCell& ambo, Branch branch);
/// The golden black and white solutions glued into a 4D cube through P_0.
Field golden_cube_field(const OrientedCell& cube4, Branch branch);

/// Jacobian rank of the eight cube equations at a solution, with the
/// vertices eliminated by the completion and the ones left free.
struct CubeRankProbe {
  int rank = 0;
  std::vector<Point> determined;
  std::vector<Point> free;
};
CubeRankProbe probe_cube_initial_set(const OrientedCell& cube4, Rng& rng);

// ---- sampling ----

/// Rejection margin for random solutions: smallest admissible relative gap
/// of a 3-form argument from 1 (and of any value from 0).
inline constexpr double kSolutionMargin = 1e-6;

/// Tighter margin for fields used in finite-difference gradient checks: the
/// gradient of Λ is log-singular at 1, so central differences need room.
inline constexpr double kGradientMargin = 1e-3;

/// Uniform magnitude in [0.5, 2] with a random sign.
double random_value(Rng& rng);

/// min over the three 3-form arguments u/v of |u - v| / Σ|monomials|.
double octahedron_conditioning(const Field& field, const OrientedCell& cell);
/// Minimum octahedron conditioning over every octahedron a 4-cell's action or
/// corner quantities depend on (1 for 4-simplices).
double cell_conditioning(const Field& field, const OrientedCell& cell4);

/// Random values on every vertex of `cell4`, resampled until
/// cell_conditioning ≥ margin.
Field random_cell_field(const OrientedCell& cell4, Rng& rng, double margin = kSolutionMargin);
/// Random seven-point data completed to a solution of the requested branch.
Field random_ambo_solution(const OrientedCell& ambo, Branch branch, Rng& rng,
                           double margin = kSolutionMargin);
/// Random nine-point data completed to a solution of the requested branch.
Field random_cube_solution(const OrientedCell& cube4, Branch branch, Rng& rng,
                           double margin = kSolutionMargin);

}  // namespace plurikp

#endif  // PLURIKP_DKP_SYSTEM_HPP
