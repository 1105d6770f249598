#ifndef PLURIKP_CELL_COMPLEX_HPP
#define PLURIKP_CELL_COMPLEX_HPP

// Exact integer combinatorics of the root lattice Q(A_N) and the cubic
// lattice Z^N: points, oriented cells, facets, chains, 4D corners, flowers
// and the decomposition of flowers into 4D corners.
//
// Points of Q(A_N) are stored as (N+1)-tuples. The vertices of a cell are
// base + e_S for the index subsets S of its level, so every cell lives in a
// single layer {n_0 + ... + n_N = const}.

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace plurikp {

inline constexpr int kDefaultMaxDimension = 10;

enum class Lattice { RootA, Cubic };

const char* lattice_name(Lattice lattice);

class Point {
 public:
  Point() = default;
  explicit Point(std::vector<int> coords) : coords_(std::move(coords)) {}
  Point(std::initializer_list<int> coords) : coords_(coords) {}

  static Point zero(std::size_t size) { return Point(std::vector<int>(size, 0)); }

  std::size_t size() const { return coords_.size(); }
  int operator[](std::size_t k) const { return coords_[k]; }
  std::span<const int> coords() const { return coords_; }

  /// Coordinate sum; constant on every cell of Q(A_N).
  int layer() const;

  Point shifted(int direction, int amount = 1) const;
  /// Appends `extra` zero coordinates (embedding into a larger lattice).
  Point padded(std::size_t extra) const;

  std::string str() const;

  friend auto operator<=>(const Point&, const Point&) = default;
  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<int> coords_;
};

enum class CellKind {
  BlackTriangle,
  WhiteTriangle,
  BlackTetrahedron,
  Octahedron,
  WhiteTetrahedron,
  BlackSimplex4,
  BlackAmbo4,
  WhiteAmbo4,
  WhiteSimplex4,
  Square,
  Cube3,
  Cube4,
};

Lattice lattice_of(CellKind kind);
int dimension_of(CellKind kind);
/// Number of unit vectors summed per vertex for Q(A_N) kinds (P(level, dim));
/// 0 for cubic kinds.
int level_of(CellKind kind);
std::size_t index_count(CellKind kind);
const char* kind_token(CellKind kind);
std::optional<CellKind> kind_from_token(std::string_view token);

/// Oriented lattice cell in canonical form: indices strictly increasing,
/// permutation parity folded into `sign`, all shifts folded into `base`.
class OrientedCell {
 public:
  /// Canonicalizes an arbitrary index order; throws InvalidArgument on
  /// repeated indices, wrong index count or out-of-range directions.
  static OrientedCell make(CellKind kind, Point base, std::vector<int> indices, int sign = 1);

  CellKind kind() const { return kind_; }
  const Point& base() const { return base_; }
  const std::vector<int>& indices() const { return indices_; }
  int sign() const { return sign_; }

  OrientedCell negated() const;
  OrientedCell with_sign(int sign) const;
  OrientedCell positive() const { return with_sign(1); }
  OrientedCell shifted(int direction, int amount = 1) const;
  OrientedCell padded(std::size_t extra) const;

  /// `<sign><kind>[i j k ...]@(c0,c1,...)`
  std::string str() const;
  static OrientedCell parse(std::string_view text);

  friend auto operator<=>(const OrientedCell&, const OrientedCell&) = default;
  friend bool operator==(const OrientedCell&, const OrientedCell&) = default;

 private:
  OrientedCell(CellKind kind, Point base, std::vector<int> indices, int sign)
      : kind_(kind), base_(std::move(base)), indices_(std::move(indices)), sign_(sign) {}

  CellKind kind_{CellKind::Octahedron};
  Point base_;
  std::vector<int> indices_;
  int sign_{1};
};

/// Integer formal sum of oriented cells. Keys are stored positively oriented;
/// zero coefficients are never stored.
class Chain {
 public:
  Chain() = default;
  explicit Chain(const OrientedCell& cell) { add(cell); }

  void add(const OrientedCell& cell, long coefficient = 1);
  void add(const Chain& other, long factor = 1);

  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  long coefficient(const OrientedCell& cell) const;
  const std::map<OrientedCell, long>& terms() const { return terms_; }

  /// One oriented cell per unit of coefficient.
  std::vector<OrientedCell> cells() const;

  Chain operator-() const;
  Chain& operator+=(const Chain& other) { add(other); return *this; }
  Chain& operator-=(const Chain& other) { add(other, -1); return *this; }
  friend Chain operator+(Chain a, const Chain& b) { return a += b; }
  friend Chain operator-(Chain a, const Chain& b) { return a -= b; }
  friend bool operator==(const Chain&, const Chain&) = default;

  std::string str() const;

 private:
  std::map<OrientedCell, long> terms_;
};

std::vector<Point> vertices(const OrientedCell& cell);
bool contains_vertex(const OrientedCell& cell, const Point& point);

/// Signed facets of a 3-cell or 4-cell (orientation recipe: alternate signs
/// ending with "+" on the last index, delete one index).
Chain facets(const OrientedCell& cell);
/// Linear extension of `facets` to chains.
Chain boundary(const Chain& chain);

/// All facets of `cell4` adjacent to `center`.
Chain corner(const OrientedCell& cell4, const Point& center);

/// Sub-chain of the cells of `manifold` containing `vertex`; throws
/// InvalidArgument if `vertex` is not interior.
Chain flower(const Chain& manifold, const Point& vertex);

/// True if no 2-cell containing `vertex` survives in the boundary of `chain`.
bool is_interior(const Chain& chain, const Point& vertex);

struct CornerTerm {
  OrientedCell cell;
  Point center;

  friend bool operator==(const CornerTerm&, const CornerTerm&) = default;
};

/// Writes a flower as a sum of 4D corners in the lattice enlarged by two
/// auxiliary directions (Q(A_N)) or one (Z^N). Returned corners live on
/// padded points; their chain sum equals the padded flower exactly.
std::vector<CornerTerm> decompose_flower(const Chain& flower, const Point& vertex);

/// Chain sum of the corners.
Chain corner_sum(const std::vector<CornerTerm>& corners);

/// Drops coordinate `direction` (the map P_i from Q(A_N) to Z^N).
Point project_point(int direction, const Point& point);
/// Inverse of project_point on the layer `layer`.
Point lift_point(int direction, const Point& point, int layer);
/// Projected vertex set of a Q(A_N) cell; every index must exceed `direction`.
std::vector<Point> project_cell(int direction, const OrientedCell& cell);

/// The four Q(A_N) 4-cells -T_i⌊⌊ijklm⌋⌋, ⌊ijklm⌋, -T_ī⌈ijklm⌉ and
/// T_īT_ī⌈⌈ijklm⌉⌉ glued into a 4D cube, with i = 0 the inserted direction.
/// Cube vertices v are lifted by lift_point(0, v, 0).
Chain cube_as_root_cells(const OrientedCell& cube4);

/// Lifts a Cube3 to its inscribed octahedron [ijkl] (i = 0 inserted).
OrientedCell cube_as_octahedron(const OrientedCell& cube3);

/// The full star of `center` in a 3D sublattice spanned by `directions`:
/// 4 black tetrahedra, 6 octahedra and 4 white tetrahedra for Q(A_N)
/// (four directions), or 8 cubes for Z^N (three directions).
Chain standard_flower(Lattice lattice, std::span<const int> directions, const Point& center);

}  // namespace plurikp

#endif  // PLURIKP_CELL_COMPLEX_HPP
