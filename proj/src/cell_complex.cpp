#include "plurikp/cell_complex.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <numeric>
#include <sstream>

#include "plurikp/errors.hpp"

namespace plurikp {

namespace {

struct KindInfo {
  CellKind kind;
  Lattice lattice;
  int dimension;
  int level;
  const char* token;
};

constexpr KindInfo kKinds[] = {
    {CellKind::BlackTriangle, Lattice::RootA, 2, 1, "btri"},
    {CellKind::WhiteTriangle, Lattice::RootA, 2, 2, "wtri"},
    {CellKind::BlackTetrahedron, Lattice::RootA, 3, 1, "btet"},
    {CellKind::Octahedron, Lattice::RootA, 3, 2, "oct"},
    {CellKind::WhiteTetrahedron, Lattice::RootA, 3, 3, "wtet"},
    {CellKind::BlackSimplex4, Lattice::RootA, 4, 1, "bsimp"},
    {CellKind::BlackAmbo4, Lattice::RootA, 4, 2, "bambo"},
    {CellKind::WhiteAmbo4, Lattice::RootA, 4, 3, "wambo"},
    {CellKind::WhiteSimplex4, Lattice::RootA, 4, 4, "wsimp"},
    {CellKind::Square, Lattice::Cubic, 2, 0, "square"},
    {CellKind::Cube3, Lattice::Cubic, 3, 0, "cube3"},
    {CellKind::Cube4, Lattice::Cubic, 4, 0, "cube4"},
};

const KindInfo& info(CellKind kind) {
  for (const auto& k : kKinds)
    if (k.kind == kind) return k;
  throw InvalidArgument("unknown cell kind");
}

CellKind root_kind(int level, int dimension) {
  for (const auto& k : kKinds)
    if (k.lattice == Lattice::RootA && k.level == level && k.dimension == dimension) return k.kind;
  throw InvalidArgument("no Q(A_N) cell of level " + std::to_string(level) + " and dimension " +
                        std::to_string(dimension));
}

CellKind cubic_kind(int dimension) {
  switch (dimension) {
    case 2: return CellKind::Square;
    case 3: return CellKind::Cube3;
    case 4: return CellKind::Cube4;
    default: throw InvalidArgument("no cubic cell of dimension " + std::to_string(dimension));
  }
}

std::vector<int> without(const std::vector<int>& indices, std::size_t position) {
  std::vector<int> out;
  out.reserve(indices.size() - 1);
  for (std::size_t k = 0; k < indices.size(); ++k)
    if (k != position) out.push_back(indices[k]);
  return out;
}

// Sign the orientation recipe puts in front of the facet obtained by deleting
// position p: "+" on the last index, alternating towards the first.
int recipe_sign(std::size_t count, std::size_t position) {
  return ((count - 1 - position) % 2 == 0) ? 1 : -1;
}

}  // namespace

const char* lattice_name(Lattice lattice) {
  return lattice == Lattice::RootA ? "qan" : "cubic";
}

int Point::layer() const { return std::accumulate(coords_.begin(), coords_.end(), 0); }

Point Point::shifted(int direction, int amount) const {
  if (direction < 0 || static_cast<std::size_t>(direction) >= coords_.size())
    throw InvalidArgument("shift direction " + std::to_string(direction) + " outside point " + str());
  auto c = coords_;
  c[direction] += amount;
  return Point(std::move(c));
}

Point Point::padded(std::size_t extra) const {
  auto c = coords_;
  c.resize(c.size() + extra, 0);
  return Point(std::move(c));
}

std::string Point::str() const {
  std::string out = "(";
  for (std::size_t k = 0; k < coords_.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(coords_[k]);
  }
  return out + ")";
}

Lattice lattice_of(CellKind kind) { return info(kind).lattice; }
int dimension_of(CellKind kind) { return info(kind).dimension; }
int level_of(CellKind kind) { return info(kind).level; }
const char* kind_token(CellKind kind) { return info(kind).token; }

std::size_t index_count(CellKind kind) {
  const auto& k = info(kind);
  return static_cast<std::size_t>(k.lattice == Lattice::RootA ? k.dimension + 1 : k.dimension);
}

std::optional<CellKind> kind_from_token(std::string_view token) {
  for (const auto& k : kKinds)
    if (token == k.token) return k.kind;
  return std::nullopt;
}

OrientedCell OrientedCell::make(CellKind kind, Point base, std::vector<int> indices, int sign) {
  if (sign != 1 && sign != -1) throw InvalidArgument("cell sign must be +1 or -1");
  if (indices.size() != index_count(kind))
    throw InvalidArgument(std::string(kind_token(kind)) + " needs " +
                          std::to_string(index_count(kind)) + " indices");
  for (int idx : indices)
    if (idx < 0 || static_cast<std::size_t>(idx) >= base.size())
      throw InvalidArgument("index " + std::to_string(idx) + " outside a " +
                            std::to_string(base.size()) + "-coordinate lattice");
  // Insertion sort; every transposition flips the orientation.
  for (std::size_t a = 1; a < indices.size(); ++a) {
    for (std::size_t b = a; b > 0 && indices[b - 1] > indices[b]; --b) {
      std::swap(indices[b - 1], indices[b]);
      sign = -sign;
    }
  }
  if (std::adjacent_find(indices.begin(), indices.end()) != indices.end())
    throw InvalidArgument("repeated index in cell");
  return OrientedCell(kind, std::move(base), std::move(indices), sign);
}

OrientedCell OrientedCell::negated() const { return with_sign(-sign_); }

OrientedCell OrientedCell::with_sign(int sign) const {
  OrientedCell c = *this;
  c.sign_ = sign;
  return c;
}

OrientedCell OrientedCell::shifted(int direction, int amount) const {
  OrientedCell c = *this;
  c.base_ = base_.shifted(direction, amount);
  return c;
}

OrientedCell OrientedCell::padded(std::size_t extra) const {
  OrientedCell c = *this;
  c.base_ = base_.padded(extra);
  return c;
}

std::string OrientedCell::str() const {
  std::string out = sign_ > 0 ? "+" : "-";
  out += kind_token(kind_);
  out += '[';
  for (std::size_t k = 0; k < indices_.size(); ++k) {
    if (k) out += ' ';
    out += std::to_string(indices_[k]);
  }
  out += "]@";
  return out + base_.str();
}

namespace {

std::vector<int> parse_ints(std::string_view text, char separator, std::string_view whole) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == separator)) ++pos;
    if (pos >= text.size()) break;
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
    if (ec != std::errc()) throw FormatError("bad integer in cell text '" + std::string(whole) + "'");
    pos = static_cast<std::size_t>(ptr - text.data());
    if (pos < text.size() && text[pos] != ' ' && text[pos] != separator)
      throw FormatError("unexpected character in cell text '" + std::string(whole) + "'");
    out.push_back(value);
  }
  return out;
}

}  // namespace

OrientedCell OrientedCell::parse(std::string_view text) {
  const std::string_view whole = text;
  auto fail = [&](const char* what) {
    return FormatError(std::string(what) + " in cell text '" + std::string(whole) + "'");
  };
  if (text.empty() || (text[0] != '+' && text[0] != '-')) throw fail("missing sign");
  const int sign = text[0] == '+' ? 1 : -1;
  text.remove_prefix(1);
  const auto open = text.find('[');
  const auto close = text.find(']');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open)
    throw fail("missing index brackets");
  const auto kind = kind_from_token(text.substr(0, open));
  if (!kind) throw fail("unknown kind");
  auto indices = parse_ints(text.substr(open + 1, close - open - 1), ' ', whole);
  auto rest = text.substr(close + 1);
  if (rest.size() < 3 || rest[0] != '@' || rest[1] != '(' || rest.back() != ')')
    throw fail("missing base point");
  auto coords = parse_ints(rest.substr(2, rest.size() - 3), ',', whole);
  if (coords.empty()) throw fail("empty base point");
  try {
    return make(*kind, Point(std::move(coords)), std::move(indices), sign);
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string(e.what()) + " in cell text '" + std::string(whole) + "'");
  }
}

void Chain::add(const OrientedCell& cell, long coefficient) {
  if (coefficient == 0) return;
  const auto key = cell.positive();
  const long delta = coefficient * cell.sign();
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, delta);
  } else if ((it->second += delta) == 0) {
    terms_.erase(it);
  }
}

void Chain::add(const Chain& other, long factor) {
  for (const auto& [cell, coef] : other.terms_) add(cell, coef * factor);
}

long Chain::coefficient(const OrientedCell& cell) const {
  auto it = terms_.find(cell.positive());
  return it == terms_.end() ? 0 : it->second * cell.sign();
}

std::vector<OrientedCell> Chain::cells() const {
  std::vector<OrientedCell> out;
  for (const auto& [cell, coef] : terms_) {
    const auto oriented = cell.with_sign(coef > 0 ? 1 : -1);
    for (long k = 0; k < std::labs(coef); ++k) out.push_back(oriented);
  }
  return out;
}

Chain Chain::operator-() const {
  Chain out;
  out.add(*this, -1);
  return out;
}

std::string Chain::str() const {
  std::ostringstream out;
  for (const auto& [cell, coef] : terms_) out << coef << ' ' << cell.str() << '\n';
  return out.str();
}

std::vector<Point> vertices(const OrientedCell& cell) {
  const auto& idx = cell.indices();
  const int level = level_of(cell.kind());
  const bool cubic = lattice_of(cell.kind()) == Lattice::Cubic;
  std::vector<Point> out;
  const unsigned n = static_cast<unsigned>(idx.size());
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (!cubic && std::popcount(mask) != level) continue;
    std::vector<int> c(cell.base().coords().begin(), cell.base().coords().end());
    for (unsigned b = 0; b < n; ++b)
      if (mask & (1u << b)) ++c[idx[b]];
    out.emplace_back(std::move(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool contains_vertex(const OrientedCell& cell, const Point& point) {
  const auto& base = cell.base();
  if (point.size() != base.size()) return false;
  const auto& idx = cell.indices();
  int ones = 0;
  for (std::size_t c = 0; c < point.size(); ++c) {
    const int d = point[c] - base[c];
    if (d == 0) continue;
    if (d != 1 || !std::binary_search(idx.begin(), idx.end(), static_cast<int>(c))) return false;
    ++ones;
  }
  return lattice_of(cell.kind()) == Lattice::Cubic || ones == level_of(cell.kind());
}

Chain facets(const OrientedCell& cell) {
  const int dim = dimension_of(cell.kind());
  if (dim < 3)
    throw InvalidArgument(std::string("facets of ") + kind_token(cell.kind()) + " are not supported");
  const auto& idx = cell.indices();
  Chain out;
  if (lattice_of(cell.kind()) == Lattice::RootA) {
    // P(k,d) has the facets T_deleted P(k-1,d-1) and P(k,d-1).
    const int level = level_of(cell.kind());
    for (std::size_t p = 0; p < idx.size(); ++p) {
      const int s = recipe_sign(idx.size(), p) * cell.sign();
      const auto rest = without(idx, p);
      if (level - 1 >= 1)
        out.add(OrientedCell::make(root_kind(level - 1, dim - 1), cell.base().shifted(idx[p]), rest, s));
      if (level <= dim - 1)
        out.add(OrientedCell::make(root_kind(level, dim - 1), cell.base(), rest, s));
    }
  } else {
    const CellKind sub = cubic_kind(dim - 1);
    for (std::size_t p = 0; p < idx.size(); ++p) {
      const int s = recipe_sign(idx.size(), p) * cell.sign();
      const auto rest = without(idx, p);
      out.add(OrientedCell::make(sub, cell.base(), rest, s));
      out.add(OrientedCell::make(sub, cell.base().shifted(idx[p]), rest, -s));
    }
  }
  return out;
}

Chain boundary(const Chain& chain) {
  Chain out;
  for (const auto& [cell, coef] : chain.terms()) out.add(facets(cell), coef);
  return out;
}

Chain corner(const OrientedCell& cell4, const Point& center) {
  if (dimension_of(cell4.kind()) != 4) throw InvalidArgument("corner needs a 4-cell, got " + cell4.str());
  if (!contains_vertex(cell4, center))
    throw InvalidArgument(center.str() + " is not a vertex of " + cell4.str());
  Chain out;
  const Chain all = facets(cell4);
  for (const auto& [facet, coef] : all.terms())
    if (contains_vertex(facet, center)) out.add(facet, coef);
  return out;
}

bool is_interior(const Chain& chain, const Point& vertex) {
  const Chain faces = boundary(chain);
  for (const auto& [face, coef] : faces.terms())
    if (contains_vertex(face, vertex)) return false;
  return true;
}

Chain flower(const Chain& manifold, const Point& vertex) {
  Chain out;
  for (const auto& [cell, coef] : manifold.terms()) {
    if (dimension_of(cell.kind()) != 3) throw InvalidArgument("manifold cell " + cell.str() + " is not a 3-cell");
    if (contains_vertex(cell, vertex)) out.add(cell, coef);
  }
  if (out.empty()) throw InvalidArgument(vertex.str() + " is not a vertex of the manifold");
  if (!is_interior(out, vertex)) throw InvalidArgument(vertex.str() + " is not an interior vertex");
  return out;
}

Chain corner_sum(const std::vector<CornerTerm>& corners) {
  Chain out;
  for (const auto& c : corners) out.add(corner(c.cell, c.center));
  return out;
}

namespace {

std::vector<int> with_index(std::vector<int> indices, int extra) {
  indices.push_back(extra);
  return indices;
}

void push_corner(std::vector<CornerTerm>& out, const OrientedCell& cell, long coefficient, const Point& center) {
  const auto oriented = cell.with_sign(coefficient > 0 ? 1 : -1);
  for (long k = 0; k < std::labs(coefficient); ++k) out.push_back({oriented, center});
}

}  // namespace

std::vector<CornerTerm> decompose_flower(const Chain& flower_chain, const Point& vertex) {
  if (flower_chain.empty()) throw InvalidArgument("empty flower");
  const Lattice lattice = lattice_of(flower_chain.terms().begin()->first.kind());
  for (const auto& [cell, coef] : flower_chain.terms()) {
    if (lattice_of(cell.kind()) != lattice || dimension_of(cell.kind()) != 3)
      throw InvalidArgument("flower cell " + cell.str() + " is not a 3-cell of one lattice");
    if (!contains_vertex(cell, vertex)) throw InvalidArgument("flower cell " + cell.str() + " misses the center");
  }
  if (!is_interior(flower_chain, vertex)) throw InvalidArgument("not a flower: " + vertex.str() + " is not interior");

  const int aux = static_cast<int>(vertex.size());  // first auxiliary direction
  const std::size_t extra = lattice == Lattice::RootA ? 2 : 1;
  const Point center = vertex.padded(extra);
  Chain target;
  for (const auto& [cell, coef] : flower_chain.terms()) target.add(cell.padded(extra), coef);

  std::vector<CornerTerm> out;
  for (const auto& [cell, coef] : target.terms()) {
    CellKind up{};
    switch (cell.kind()) {
      case CellKind::BlackTetrahedron: up = CellKind::BlackSimplex4; break;
      case CellKind::Octahedron: up = CellKind::BlackAmbo4; break;
      case CellKind::WhiteTetrahedron: up = CellKind::WhiteAmbo4; break;
      case CellKind::Cube3: up = CellKind::Cube4; break;
      default: throw InvalidArgument("unexpected cell " + cell.str());
    }
    push_corner(out, OrientedCell::make(up, cell.base(), with_index(cell.indices(), aux)), coef, center);
  }

  if (lattice == Lattice::RootA) {
    // Remaining white tetrahedra ±⌈ijkM⌉ are absorbed by ∓T_L̄⌈⌈ijkML⌉⌉.
    const int second = aux + 1;
    const Chain residual = corner_sum(out) - target;
    for (const auto& [cell, coef] : residual.terms()) {
      const auto& idx = cell.indices();
      if (cell.kind() != CellKind::WhiteTetrahedron || idx.back() != aux) continue;
      const auto simplex = OrientedCell::make(CellKind::WhiteSimplex4, cell.base().shifted(second, -1),
                                              with_index(idx, second));
      push_corner(out, simplex, -coef, center);
    }
  }

  const Chain leftover = corner_sum(out) - target;
  if (!leftover.empty())
    throw ContractViolation("flower decomposition left a residual chain:\n" + leftover.str());
  return out;
}

Point project_point(int direction, const Point& point) {
  if (direction < 0 || static_cast<std::size_t>(direction) >= point.size())
    throw InvalidArgument("projection direction outside point " + point.str());
  std::vector<int> c(point.coords().begin(), point.coords().end());
  c.erase(c.begin() + direction);
  return Point(std::move(c));
}

Point lift_point(int direction, const Point& point, int layer) {
  if (direction < 0 || static_cast<std::size_t>(direction) > point.size())
    throw InvalidArgument("lift direction outside point " + point.str());
  std::vector<int> c(point.coords().begin(), point.coords().end());
  c.insert(c.begin() + direction, layer - point.layer());
  return Point(std::move(c));
}

std::vector<Point> project_cell(int direction, const OrientedCell& cell) {
  if (lattice_of(cell.kind()) != Lattice::RootA) throw InvalidArgument("projection needs a Q(A_N) cell");
  for (int idx : cell.indices())
    if (idx <= direction)
      throw InvalidArgument("projection direction must be below every index of " + cell.str());
  std::vector<Point> out;
  for (const auto& v : vertices(cell)) out.push_back(project_point(direction, v));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<int> lifted_indices(const OrientedCell& cube) {
  std::vector<int> out{0};
  for (int idx : cube.indices()) out.push_back(idx + 1);
  return out;
}

// Base n of the lifted cells: x_ii = n + 2e_0 sits over the cube base.
Point lifted_anchor(const OrientedCell& cube) {
  return lift_point(0, cube.base(), 0).shifted(0, -2);
}

}  // namespace

Chain cube_as_root_cells(const OrientedCell& cube4) {
  if (cube4.kind() != CellKind::Cube4) throw InvalidArgument("expected a 4D cube, got " + cube4.str());
  const auto idx = lifted_indices(cube4);
  const Point n = lifted_anchor(cube4);
  const int s = cube4.sign();
  Chain out;
  out.add(OrientedCell::make(CellKind::BlackSimplex4, n.shifted(0, 1), idx, -s));
  out.add(OrientedCell::make(CellKind::BlackAmbo4, n, idx, s));
  out.add(OrientedCell::make(CellKind::WhiteAmbo4, n.shifted(0, -1), idx, -s));
  out.add(OrientedCell::make(CellKind::WhiteSimplex4, n.shifted(0, -2), idx, s));
  return out;
}

OrientedCell cube_as_octahedron(const OrientedCell& cube3) {
  if (cube3.kind() != CellKind::Cube3) throw InvalidArgument("expected a 3D cube, got " + cube3.str());
  return OrientedCell::make(CellKind::Octahedron, lifted_anchor(cube3), lifted_indices(cube3), cube3.sign());
}

Chain standard_flower(Lattice lattice, std::span<const int> directions, const Point& center) {
  const std::vector<int> dirs(directions.begin(), directions.end());
  const unsigned n = static_cast<unsigned>(dirs.size());
  Chain out;
  if (lattice == Lattice::RootA) {
    if (n != 4) throw InvalidArgument("a Q(A_3) star needs four directions");
    // Black tetrahedra and white tetrahedra enter with "-", octahedra with "+".
    constexpr CellKind by_level[] = {CellKind::BlackTetrahedron, CellKind::Octahedron, CellKind::WhiteTetrahedron};
    for (unsigned mask = 1; mask < (1u << n) - 1; ++mask) {
      const int level = std::popcount(mask);
      Point base = center;
      for (unsigned b = 0; b < n; ++b)
        if (mask & (1u << b)) base = base.shifted(dirs[b], -1);
      out.add(OrientedCell::make(by_level[level - 1], base, dirs, level == 2 ? 1 : -1));
    }
  } else {
    if (n != 3) throw InvalidArgument("a Z^3 star needs three directions");
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      Point base = center;
      for (unsigned b = 0; b < n; ++b)
        if (mask & (1u << b)) base = base.shifted(dirs[b], -1);
      out.add(OrientedCell::make(CellKind::Cube3, base, dirs));
    }
  }
  return out;
}

}  // namespace plurikp
