#include "plurikp/dkp_system.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "plurikp/errors.hpp"
#include "plurikp/special_functions.hpp"

namespace plurikp {

namespace {

bool is_ambo(CellKind kind) { return kind == CellKind::BlackAmbo4 || kind == CellKind::WhiteAmbo4; }

void require_ambo(const OrientedCell& cell) {
  if (!is_ambo(cell.kind())) throw InvalidArgument("expected a 4-ambo-simplex, got " + cell.str());
}

void require_cube4(const OrientedCell& cell) {
  if (cell.kind() != CellKind::Cube4) throw InvalidArgument("expected a 4D cube, got " + cell.str());
}

// Partner of octahedral slot k in the monomial it belongs to, and the sign of
// that monomial in v0 v5 - v1 v4 + v2 v3.
constexpr int kPartner[6] = {5, 4, 3, 2, 1, 0};
constexpr int kMonomialSign[6] = {1, -1, 1, 1, -1, 1};

// Cube masks with bit 0 = j, 1 = k, 2 = l, 3 = m.
constexpr unsigned J = 1, K = 2, L = 4, M = 8;
constexpr unsigned kCubeInitialMasks[9] = {L, M, J | L, J | M, K | L, K | M, L | M, J | K | L, J | K | M};
// Vertices the completion solves for, in the order it solves them.
constexpr unsigned kCubeSolvedMasks[5] = {J, K, J | K, K | L | M, J | L | M};

}  // namespace

const char* branch_name(Branch branch) { return branch == Branch::Dkp ? "dKP" : "dKPminus"; }

Point ambo_vertex(const OrientedCell& ambo, int p, int q) {
  require_ambo(ambo);
  if (p < 0 || q > 4 || p >= q) throw InvalidArgument("ambo pair positions must satisfy 0 <= p < q <= 4");
  const auto& idx = ambo.indices();
  Point out = ambo.base();
  if (ambo.kind() == CellKind::BlackAmbo4) return out.shifted(idx[p]).shifted(idx[q]);
  for (int r = 0; r < 5; ++r)
    if (r != p && r != q) out = out.shifted(idx[r]);
  return out;
}

Point cube_vertex(const OrientedCell& cube4, unsigned mask) {
  require_cube4(cube4);
  Point out = cube4.base();
  for (unsigned b = 0; b < 4; ++b)
    if (mask & (1u << b)) out = out.shifted(cube4.indices()[b]);
  return out;
}

std::array<Point, 6> octahedral_points(const OrientedCell& cell) {
  const auto& idx = cell.indices();
  const Point& b = cell.base();
  if (cell.kind() == CellKind::Octahedron) {
    const int i = idx[0], j = idx[1], k = idx[2], l = idx[3];
    return {b.shifted(i).shifted(j), b.shifted(i).shifted(k), b.shifted(i).shifted(l),
            b.shifted(j).shifted(k), b.shifted(j).shifted(l), b.shifted(k).shifted(l)};
  }
  if (cell.kind() == CellKind::Cube3) {
    const int j = idx[0], k = idx[1], l = idx[2];
    return {b.shifted(j), b.shifted(k), b.shifted(l),
            b.shifted(j).shifted(k), b.shifted(j).shifted(l), b.shifted(k).shifted(l)};
  }
  throw InvalidArgument("no octahedral equation on " + cell.str());
}

std::array<double, 6> octahedral_values(const Field& field, const OrientedCell& cell) {
  const auto pts = octahedral_points(cell);
  std::array<double, 6> v{};
  for (std::size_t k = 0; k < 6; ++k) v[k] = field.at(pts[k]);
  return v;
}

double dkp_residual(const Field& field, const OrientedCell& cell) {
  const auto v = octahedral_values(field, cell);
  return v[0] * v[5] - v[1] * v[4] + v[2] * v[3];
}

double dkp_minus_residual(const Field& field, const OrientedCell& cell) {
  const auto v = octahedral_values(field, cell);
  return v[1] * v[2] * v[3] * v[4] - v[0] * v[2] * v[3] * v[5] + v[0] * v[1] * v[4] * v[5];
}

double dkp_relative_residual(const Field& field, const OrientedCell& cell) {
  const auto v = octahedral_values(field, cell);
  const double a = v[0] * v[5], b = v[1] * v[4], c = v[2] * v[3];
  return std::abs(a - b + c) / (std::abs(a) + std::abs(b) + std::abs(c));
}

double dkp_minus_relative_residual(const Field& field, const OrientedCell& cell) {
  const auto v = octahedral_values(field, cell);
  const double a = v[1] * v[2] * v[3] * v[4], b = v[0] * v[2] * v[3] * v[5], c = v[0] * v[1] * v[4] * v[5];
  return std::abs(a - b + c) / (std::abs(a) + std::abs(b) + std::abs(c));
}

double relative_residual(const Field& field, const OrientedCell& cell, Branch branch) {
  return branch == Branch::Dkp ? dkp_relative_residual(field, cell) : dkp_minus_relative_residual(field, cell);
}

std::vector<OrientedCell> system_on_4cell(const OrientedCell& cell4) {
  if (!is_ambo(cell4.kind()) && cell4.kind() != CellKind::Cube4)
    throw InvalidArgument("no dKP system on " + cell4.str());
  std::vector<OrientedCell> out;
  const Chain all = facets(cell4);
  for (const auto& [facet, coef] : all.terms())
    if (facet.kind() == CellKind::Octahedron || facet.kind() == CellKind::Cube3)
      out.push_back(facet.with_sign(coef > 0 ? 1 : -1));
  return out;
}

double solve_octahedron(const Field& field, const OrientedCell& cell, const Point& unknown) {
  const auto pts = octahedral_points(cell);
  const auto slot = std::find(pts.begin(), pts.end(), unknown);
  if (slot == pts.end()) throw InvalidArgument(unknown.str() + " is not a vertex of " + cell.str());
  const int k = static_cast<int>(slot - pts.begin());
  double rest = 0.0;
  for (int t : {0, 1, 2}) {
    if (t == k || kPartner[t] == k) continue;
    rest += kMonomialSign[t] * field.at(pts[t]) * field.at(pts[kPartner[t]]);
  }
  const double coefficient = kMonomialSign[k] * field.at(pts[kPartner[k]]);
  if (coefficient == 0.0) throw SingularError("zero coefficient solving " + cell.str());
  const double value = -rest / coefficient;
  if (value == 0.0 || !std::isfinite(value))
    throw SingularError("solving " + cell.str() + " for " + unknown.str() + " gives a singular value");
  return value;
}

std::vector<Point> ambo_initial_points(const OrientedCell& ambo) {
  require_ambo(ambo);
  return {ambo_vertex(ambo, 0, 3), ambo_vertex(ambo, 0, 4), ambo_vertex(ambo, 1, 3), ambo_vertex(ambo, 1, 4),
          ambo_vertex(ambo, 2, 3), ambo_vertex(ambo, 2, 4), ambo_vertex(ambo, 3, 4)};
}

namespace {

// The three substitution formulas, on any pair labelling x(p, q).
template <class Get>
std::array<double, 3> ambo_completion(Get x) {
  const double lm = x(3, 4);
  if (lm == 0.0) throw SingularError("ambo completion divides by x_lm = 0");
  return {(x(0, 3) * x(1, 4) - x(0, 4) * x(1, 3)) / lm,   // x_ij
          (x(1, 3) * x(2, 4) - x(1, 4) * x(2, 3)) / lm,   // x_jk
          (x(0, 3) * x(2, 4) - x(0, 4) * x(2, 3)) / lm};  // x_ik
}

void set_solved(Field& field, const Point& point, double value) {
  if (value == 0.0 || !std::isfinite(value))
    throw SingularError("completion produces a singular value at " + point.str());
  field.set(point, value);
}

}  // namespace

Field solve_ambo_ivp(const OrientedCell& ambo, const Field& initial) {
  require_ambo(ambo);
  Field out = initial;
  const auto solved = ambo_completion([&](int p, int q) { return initial.at(ambo_vertex(ambo, p, q)); });
  set_solved(out, ambo_vertex(ambo, 0, 1), solved[0]);
  set_solved(out, ambo_vertex(ambo, 1, 2), solved[1]);
  set_solved(out, ambo_vertex(ambo, 0, 2), solved[2]);
  return out;
}

std::vector<Point> cube_initial_points(const OrientedCell& cube4) {
  std::vector<Point> out;
  for (unsigned mask : kCubeInitialMasks) out.push_back(cube_vertex(cube4, mask));
  return out;
}

std::vector<Point> cube_active_points(const OrientedCell& cube4) {
  std::vector<Point> out;
  for (unsigned mask = 1; mask < 15; ++mask) out.push_back(cube_vertex(cube4, mask));
  return out;
}

namespace {

// Cube vertex labelled by a pair of positions of the lifted black ambo
// (position 0 is the inserted direction): (0, q) is a single, (p, q) a double.
Point cube_pair_vertex(const OrientedCell& cube4, int p, int q) {
  const unsigned mask = (p == 0 ? 0u : 1u << (p - 1)) | (1u << (q - 1));
  return cube_vertex(cube4, mask);
}

OrientedCell cube_facet(const OrientedCell& cube4, unsigned shift_mask, std::vector<int> positions) {
  std::vector<int> idx;
  for (int p : positions) idx.push_back(cube4.indices()[p]);
  return OrientedCell::make(CellKind::Cube3, cube_vertex(cube4, shift_mask), idx);
}

}  // namespace

Field solve_cube_ivp(const OrientedCell& cube4, const Field& initial) {
  require_cube4(cube4);
  Field out = initial;
  const auto solved = ambo_completion([&](int p, int q) { return initial.at(cube_pair_vertex(cube4, p, q)); });
  set_solved(out, cube_vertex(cube4, J), solved[0]);
  set_solved(out, cube_vertex(cube4, J | K), solved[1]);
  set_solved(out, cube_vertex(cube4, K), solved[2]);
  // Triple-index values from the shifted facets T_k{jlm} and T_j{klm}.
  const Point klm = cube_vertex(cube4, K | L | M);
  set_solved(out, klm, solve_octahedron(out, cube_facet(cube4, K, {0, 2, 3}), klm));
  const Point jlm = cube_vertex(cube4, J | L | M);
  set_solved(out, jlm, solve_octahedron(out, cube_facet(cube4, J, {1, 2, 3}), jlm));
  return out;
}

Field golden_field(const OrientedCell& ambo, Branch branch) {
  require_ambo(ambo);
  const double a = branch == Branch::Dkp ? kGolden : 1.0 / kGolden;
  Field out(Lattice::RootA, ambo.base().size());
  for (int p = 0; p < 5; ++p)
    for (int q = p + 1; q < 5; ++q) {
      const bool neighbours = q - p == 1 || (p == 0 && q == 4);
      out.set(ambo_vertex(ambo, p, q), neighbours ? a : -1.0);
    }
  return out;
}

Field golden_cube_field(const OrientedCell& cube4, Branch branch) {
  require_cube4(cube4);
  // Singles and doubles carry the golden black pattern on the lifted cycle
  // (i j k l m); the triple data x_jkl = -1, x_jkm = a fix the white half.
  Field initial(Lattice::Cubic, cube4.base().size());
  const double a = kGolden;
  for (int p = 0; p < 5; ++p)
    for (int q = p + 1; q < 5; ++q) {
      const bool neighbours = q - p == 1 || (p == 0 && q == 4);
      initial.set(cube_pair_vertex(cube4, p, q), neighbours ? a : -1.0);
    }
  initial.set(cube_vertex(cube4, J | K | L), -1.0);
  initial.set(cube_vertex(cube4, J | K | M), a);
  Field solved = solve_cube_ivp(cube4, initial);
  return branch == Branch::Dkp ? solved : solved.inverted();
}

CubeRankProbe probe_cube_initial_set(const OrientedCell& cube4, Rng& rng) {
  require_cube4(cube4);
  const Field field = random_cube_solution(cube4, Branch::Dkp, rng);
  const auto active = cube_active_points(cube4);
  const auto system = system_on_4cell(cube4);
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(system.size()),
                                              static_cast<Eigen::Index>(active.size()));
  for (std::size_t r = 0; r < system.size(); ++r) {
    const auto pts = octahedral_points(system[r]);
    for (int k = 0; k < 6; ++k) {
      const auto col = std::find(active.begin(), active.end(), pts[k]) - active.begin();
      jac(static_cast<Eigen::Index>(r), col) += kMonomialSign[k] * field.at(pts[kPartner[k]]);
    }
  }
  auto rank_of = [](const Eigen::MatrixXd& m) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    lu.setThreshold(1e-9);
    return static_cast<int>(lu.rank());
  };
  CubeRankProbe out;
  out.rank = rank_of(jac);

  // Greedy pivots, preferring the vertices the completion solves for.
  std::vector<std::size_t> order;
  for (unsigned mask : kCubeSolvedMasks) order.push_back(mask - 1);
  for (std::size_t c = 0; c < active.size(); ++c)
    if (std::find(order.begin(), order.end(), c) == order.end()) order.push_back(c);
  std::vector<Eigen::Index> chosen;
  for (std::size_t c : order) {
    Eigen::MatrixXd sub(jac.rows(), static_cast<Eigen::Index>(chosen.size() + 1));
    for (std::size_t t = 0; t < chosen.size(); ++t) sub.col(static_cast<Eigen::Index>(t)) = jac.col(chosen[t]);
    sub.col(static_cast<Eigen::Index>(chosen.size())) = jac.col(static_cast<Eigen::Index>(c));
    if (rank_of(sub) > static_cast<int>(chosen.size())) {
      chosen.push_back(static_cast<Eigen::Index>(c));
      out.determined.push_back(active[c]);
    } else {
      out.free.push_back(active[c]);
    }
  }
  std::sort(out.determined.begin(), out.determined.end());
  std::sort(out.free.begin(), out.free.end());
  return out;
}

double random_value(Rng& rng) {
  std::uniform_real_distribution<double> magnitude(0.5, 2.0);
  std::bernoulli_distribution negative(0.5);
  const double v = magnitude(rng);
  return negative(rng) ? -v : v;
}

double octahedron_conditioning(const Field& field, const OrientedCell& cell) {
  const auto v = octahedral_values(field, cell);
  const double u1 = v[0] * v[5], u2 = v[1] * v[4], u3 = v[2] * v[3];
  const double scale = std::abs(u1) + std::abs(u2) + std::abs(u3);
  return std::min({std::abs(u1 - u2), std::abs(u2 - u3), std::abs(u1 + u3)}) / scale;
}

double cell_conditioning(const Field& field, const OrientedCell& cell4) {
  double worst = 1.0;
  if (cell4.kind() == CellKind::Cube4) {
    const Field lifted = lift_field(field);
    const Chain cells = cube_as_root_cells(cell4);
    for (const auto& [cell, coef] : cells.terms())
      if (is_ambo(cell.kind())) worst = std::min(worst, cell_conditioning(lifted, cell));
    return worst;
  }
  if (!is_ambo(cell4.kind())) return worst;
  for (const auto& oct : system_on_4cell(cell4)) worst = std::min(worst, octahedron_conditioning(field, oct));
  return worst;
}

namespace {

constexpr int kMaxDraws = 10000;

template <class Draw>
Field sample(const OrientedCell& cell4, double margin, Draw draw) {
  for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
    try {
      Field f = draw();
      if (cell_conditioning(f, cell4) >= margin) return f;
    } catch (const SingularError&) {
      // resample
    }
  }
  throw SingularError("no admissible sample on " + cell4.str() + " after " + std::to_string(kMaxDraws) + " draws");
}

}  // namespace

Field random_cell_field(const OrientedCell& cell4, Rng& rng, double margin) {
  return sample(cell4, margin, [&] {
    Field f(lattice_of(cell4.kind()), cell4.base().size());
    for (const auto& v : vertices(cell4)) f.set(v, random_value(rng));
    return f;
  });
}

Field random_ambo_solution(const OrientedCell& ambo, Branch branch, Rng& rng, double margin) {
  require_ambo(ambo);
  return sample(ambo, margin, [&] {
    Field initial(Lattice::RootA, ambo.base().size());
    for (const auto& p : ambo_initial_points(ambo)) initial.set(p, random_value(rng));
    Field f = solve_ambo_ivp(ambo, initial);
    return branch == Branch::Dkp ? f : f.inverted();
  });
}

Field random_cube_solution(const OrientedCell& cube4, Branch branch, Rng& rng, double margin) {
  require_cube4(cube4);
  return sample(cube4, margin, [&] {
    Field initial(Lattice::Cubic, cube4.base().size());
    for (const auto& p : cube_initial_points(cube4)) initial.set(p, random_value(rng));
    Field f = solve_cube_ivp(cube4, initial);
    return branch == Branch::Dkp ? f : f.inverted();
  });
}

}  // namespace plurikp
