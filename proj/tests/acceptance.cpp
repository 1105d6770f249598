// Acceptance gate: one PASS/FAIL line per criterion. With an argument in
// 1..8 only that criterion runs; the exit status is 0 iff all run ones pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "plurikp/cell_complex.hpp"
#include "plurikp/dkp_system.hpp"
#include "plurikp/errors.hpp"
#include "plurikp/lagrangian.hpp"
#include "plurikp/special_functions.hpp"
#include "plurikp/verifier.hpp"

using namespace plurikp;

namespace {

constexpr long kTrials = 1000;
constexpr std::uint64_t kSeed = 20240611;

struct Verdict {
  bool pass = true;
  std::string detail;
};

void note(Verdict& v, const std::string& text) {
  if (!v.detail.empty()) v.detail += "; ";
  v.detail += text;
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::vector<int> iota_dirs(int n) {
  std::vector<int> d(static_cast<std::size_t>(n));
  std::iota(d.begin(), d.end(), 0);
  return d;
}

OrientedCell first_cell(CellKind kind, std::size_t coords) {
  return OrientedCell::make(kind, Point::zero(coords), iota_dirs(static_cast<int>(index_count(kind))));
}

double value_product_sign(const Field& f, const OrientedCell& cell) {
  double s = 1;
  for (const auto& v : vertices(cell)) s *= f.at(v) > 0 ? 1 : -1;
  return s;
}

// ---- 1 ----
Verdict dilog_values() {
  Verdict v;
  const double a = (1 - std::sqrt(5.0)) / 2, l = std::log(-a);
  const struct {
    const char* name;
    double got, want;
  } rows[] = {{"Li2(a^2)", dilog(a * a), kPi2 / 15 - l * l},
              {"Li2(-a)", dilog(-a), kPi2 / 10 - l * l},
              {"Li2(a)", dilog(a), -kPi2 / 15 + 0.5 * l * l},
              {"Li2(1/a)", dilog(1 / a), -kPi2 / 10 - l * l}};
  double worst = 0;
  for (const auto& r : rows) {
    worst = std::max(worst, std::abs(r.got - r.want));
    if (std::abs(r.got - r.want) > 1e-11) {
      v.pass = false;
      note(v, std::string(r.name) + " off by " + num(std::abs(r.got - r.want)));
    }
  }
  note(v, "max deviation " + num(worst));
  return v;
}

// ---- 2 ----
Verdict golden_closure() {
  Verdict v;
  double form_dev = 0, s_dev = 0, inv_dev = 0;
  for (CellKind kind : {CellKind::BlackAmbo4, CellKind::WhiteAmbo4}) {
    const auto cell = first_cell(kind, 5);
    const Field g = golden_field(cell, Branch::Dkp);
    for (const auto& oct : system_on_4cell(cell)) form_dev = std::max(form_dev, std::abs(three_form(g, oct) + kPi2 / 20));
    s_dev = std::max(s_dev, std::abs(exterior_derivative(g, cell) + kPi2 / 4));
    inv_dev = std::max(inv_dev, std::abs(exterior_derivative(g.inverted(), cell) - kPi2 / 4));
  }
  v.pass = form_dev <= 1e-10 && s_dev <= 1e-9 && inv_dev <= 1e-9;
  note(v, "3-form dev " + num(form_dev) + ", S dev " + num(s_dev) + ", inverted S dev " + num(inv_dev));
  return v;
}

// ---- 3 ----
Verdict random_ambo_closure() {
  Verdict v;
  long s_fail = 0, e_fail = 0, resolved_fail = 0;
  double e_dev = 0;
  for (CellKind kind : {CellKind::BlackAmbo4, CellKind::WhiteAmbo4}) {
    const auto cell = first_cell(kind, 5);
    for (long t = 0; t < kTrials; ++t) {
      Rng rng(trial_seed(kSeed, kind_token(kind), t));
      const Field f = random_ambo_solution(cell, Branch::Dkp, rng);
      const Field g = f.inverted();
      for (const auto& p : vertices(cell)) {
        const double ef = corner_E(f, cell, p).value, eg = corner_E(g, cell, p).value;
        const double d = std::max(std::abs(ef + 1), std::abs(eg - 1));
        e_dev = std::max(e_dev, d);
        if (d > 1e-8) ++e_fail;
      }
      const double sf = exterior_derivative(f, cell), sg = exterior_derivative(g, cell);
      if (std::abs(sf + kPi2 / 4) > 1e-8 || std::abs(sg - kPi2 / 4) > 1e-8) ++s_fail;
      // S = -sign(product of the ten values) π²/4, and the inverse flips it.
      const double sign = value_product_sign(f, cell);
      if (std::abs(sf + sign * kPi2 / 4) > 1e-8 || std::abs(sg - sign * kPi2 / 4) > 1e-8) ++resolved_fail;
    }
  }
  v.pass = e_fail == 0 && s_fail == 0;
  note(v, "E max dev " + num(e_dev) + " (" + std::to_string(e_fail) + " bad corners)");
  note(v, std::to_string(s_fail) + "/" + std::to_string(2 * kTrials) + " trials with S != -pi^2/4");
  note(v, "S = -sgn(prod x) pi^2/4 holds in all but " + std::to_string(resolved_fail));
  return v;
}

// ---- 4 ----
Verdict random_cube_closure() {
  Verdict v;
  const auto cell = first_cell(CellKind::Cube4, 4);
  long e_fail = 0, s_fail = 0, corners_seen = 0;
  double e_dev = 0, s_max = 0;
  std::set<long> s_levels;
  for (Branch b : {Branch::Dkp, Branch::DkpMinus}) {
    const double target = b == Branch::Dkp ? -1 : 1;
    for (long t = 0; t < kTrials; ++t) {
      Rng rng(trial_seed(kSeed, std::string("cube") + branch_name(b), t));
      const Field f = random_cube_solution(cell, b, rng);
      long corners = 0;
      for (const auto& p : vertices(cell)) {
        if (!has_corner_equation(cell, p)) continue;
        ++corners;
        for (double e : corner_E(f, cell, p).factors) {
          e_dev = std::max(e_dev, std::abs(e - target));
          if (std::abs(e - target) > 1e-8) ++e_fail;
        }
      }
      corners_seen = std::max(corners_seen, corners);
      const double s = exterior_derivative(f, cell);
      s_max = std::max(s_max, std::abs(s));
      s_levels.insert(std::lround(s / (kPi2 / 4)));
      if (std::abs(s) > 1e-8) ++s_fail;
    }
  }
  v.pass = e_fail == 0 && s_fail == 0 && corners_seen == 14;
  note(v, std::to_string(corners_seen) + " corners, E max dev " + num(e_dev));
  note(v, std::to_string(s_fail) + "/" + std::to_string(2 * kTrials) + " trials with |S| > 1e-8, max |S| " +
              num(s_max));
  std::string levels;
  for (long l : s_levels) levels += (levels.empty() ? "" : ",") + std::to_string(l);
  note(v, "S/(pi^2/4) in {" + levels + "}");
  return v;
}

// ---- 5 ----
double central_difference(const Field& f, const Chain& manifold, const Point& p, double h) {
  Field up = f, down = f;
  up.set(p, f.at(p) + h);
  down.set(p, f.at(p) - h);
  return (action(up, manifold) - action(down, manifold)) / (2 * h);
}

Verdict gradient_identity() {
  Verdict v;
  for (CellKind kind : {CellKind::BlackSimplex4, CellKind::BlackAmbo4, CellKind::WhiteAmbo4,
                        CellKind::WhiteSimplex4, CellKind::Cube4}) {
    const std::size_t coords = lattice_of(kind) == Lattice::RootA ? 5 : 4;
    double worst = 0;
    long bad = 0;
    for (long t = 0; t < kTrials; ++t) {
      Rng rng(trial_seed(kSeed, std::string("grad") + kind_token(kind), t));
      const auto cell = first_cell(kind, coords).with_sign(t % 2 ? -1 : 1);
      const Field f = random_cell_field(cell, rng, kGradientMargin);
      const Chain bd = facets(cell);
      for (const auto& p : vertices(cell)) {
        const double d = std::abs(corner_residual(f, cell, p) - central_difference(f, bd, p, 1e-6));
        worst = std::max(worst, d);
        if (d > 1e-6) ++bad;
      }
    }
    if (bad) v.pass = false;
    note(v, std::string(kind_token(kind)) + " max " + num(worst));
  }
  return v;
}

// ---- 6 ----
struct Flower {
  std::string name;
  Chain chain;
  Point center;
};

std::vector<Flower> criterion_flowers() {
  std::vector<Flower> out;
  for (CellKind kind : {CellKind::BlackSimplex4, CellKind::BlackAmbo4, CellKind::WhiteAmbo4,
                        CellKind::WhiteSimplex4, CellKind::Cube4}) {
    const auto cell = first_cell(kind, lattice_of(kind) == Lattice::RootA ? 5 : 4);
    for (const auto& p : vertices(cell)) out.push_back({std::string("corner ") + cell.str() + " at " + p.str(), corner(cell, p), p});
  }
  const std::vector<int> four = iota_dirs(4), three = iota_dirs(3);
  out.push_back({"Q(A_3) star", standard_flower(Lattice::RootA, four, Point::zero(4)), Point::zero(4)});
  out.push_back({"Z^3 star", standard_flower(Lattice::Cubic, three, Point::zero(3)), Point::zero(3)});
  return out;
}

Chain chain_of(std::initializer_list<const char*> cells) {
  Chain c;
  for (const char* text : cells) c.add(OrientedCell::parse(text));
  return c;
}

Verdict combinatorial_exactness() {
  Verdict v;
  long cells = 0, dd_bad = 0;
  for (int n = 3; n <= 6; ++n) {
    const std::size_t root = static_cast<std::size_t>(n + 1), cubic = static_cast<std::size_t>(n);
    for (CellKind kind : {CellKind::BlackSimplex4, CellKind::BlackAmbo4, CellKind::WhiteAmbo4, CellKind::WhiteSimplex4,
                          CellKind::Cube4}) {
      const std::size_t coords = lattice_of(kind) == Lattice::RootA ? root : cubic;
      const std::size_t k = index_count(kind);
      if (k > coords) continue;  // N = 3 holds no 4-cells
      std::vector<bool> pick(coords, false);
      std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
      do {
        std::vector<int> dirs;
        for (std::size_t c = 0; c < coords; ++c)
          if (pick[c]) dirs.push_back(static_cast<int>(c));
        Point base = Point::zero(coords).shifted(0, n - 3);
        ++cells;
        if (!boundary(facets(OrientedCell::make(kind, base, dirs))).empty()) ++dd_bad;
      } while (std::prev_permutation(pick.begin(), pick.end()));
    }
  }
  note(v, "ddS=0 on " + std::to_string(cells - dd_bad) + "/" + std::to_string(cells) + " cells");
  if (dd_bad) v.pass = false;

  // Facet tables with (i j k l m) = (0 1 2 3 4).
  const std::pair<const char*, Chain> tables[] = {
      {"+bsimp[0 1 2 3 4]@(0,0,0,0,0)",
       chain_of({"+btet[0 1 2 3]@(0,0,0,0,0)", "-btet[0 1 2 4]@(0,0,0,0,0)", "+btet[0 1 3 4]@(0,0,0,0,0)",
                 "-btet[0 2 3 4]@(0,0,0,0,0)", "+btet[1 2 3 4]@(0,0,0,0,0)"})},
      {"+bambo[0 1 2 3 4]@(0,0,0,0,0)",
       chain_of({"+btet[0 1 2 3]@(0,0,0,0,1)", "-btet[0 1 2 4]@(0,0,0,1,0)", "+btet[0 1 3 4]@(0,0,1,0,0)",
                 "-btet[0 2 3 4]@(0,1,0,0,0)", "+btet[1 2 3 4]@(1,0,0,0,0)", "+oct[0 1 2 3]@(0,0,0,0,0)",
                 "-oct[0 1 2 4]@(0,0,0,0,0)", "+oct[0 1 3 4]@(0,0,0,0,0)", "-oct[0 2 3 4]@(0,0,0,0,0)",
                 "+oct[1 2 3 4]@(0,0,0,0,0)"})},
      {"+wambo[0 1 2 3 4]@(0,0,0,0,0)",
       chain_of({"+oct[0 1 2 3]@(0,0,0,0,1)", "-oct[0 1 2 4]@(0,0,0,1,0)", "+oct[0 1 3 4]@(0,0,1,0,0)",
                 "-oct[0 2 3 4]@(0,1,0,0,0)", "+oct[1 2 3 4]@(1,0,0,0,0)", "+wtet[0 1 2 3]@(0,0,0,0,0)",
                 "-wtet[0 1 2 4]@(0,0,0,0,0)", "+wtet[0 1 3 4]@(0,0,0,0,0)", "-wtet[0 2 3 4]@(0,0,0,0,0)",
                 "+wtet[1 2 3 4]@(0,0,0,0,0)"})},
      {"+wsimp[0 1 2 3 4]@(0,0,0,0,0)",
       chain_of({"+wtet[0 1 2 3]@(0,0,0,0,1)", "-wtet[0 1 2 4]@(0,0,0,1,0)", "+wtet[0 1 3 4]@(0,0,1,0,0)",
                 "-wtet[0 2 3 4]@(0,1,0,0,0)", "+wtet[1 2 3 4]@(1,0,0,0,0)"})},
      {"+oct[0 1 2 3]@(0,0,0,0)",
       chain_of({"+btri[0 1 2]@(0,0,0,1)", "-btri[0 1 3]@(0,0,1,0)", "+btri[0 2 3]@(0,1,0,0)", "-btri[1 2 3]@(1,0,0,0)",
                 "+wtri[0 1 2]@(0,0,0,0)", "-wtri[0 1 3]@(0,0,0,0)", "+wtri[0 2 3]@(0,0,0,0)",
                 "-wtri[1 2 3]@(0,0,0,0)"})},
      {"+cube4[0 1 2 3]@(0,0,0,0)",
       chain_of({"+cube3[0 1 2]@(0,0,0,0)", "-cube3[0 1 3]@(0,0,0,0)", "+cube3[0 2 3]@(0,0,0,0)",
                 "-cube3[1 2 3]@(0,0,0,0)", "-cube3[0 1 2]@(0,0,0,1)", "+cube3[0 1 3]@(0,0,1,0)",
                 "-cube3[0 2 3]@(0,1,0,0)", "+cube3[1 2 3]@(1,0,0,0)"})},
  };
  long table_bad = 0;
  for (const auto& [cell, want] : tables)
    if (!(facets(OrientedCell::parse(cell)) == want)) {
      ++table_bad;
      note(v, std::string("facets of ") + cell + " differ from the table");
    }
  if (table_bad) v.pass = false;

  long flowers = 0, dec_bad = 0;
  for (const auto& fl : criterion_flowers()) {
    ++flowers;
    try {
      const auto corners = decompose_flower(fl.chain, fl.center);
      const std::size_t extra = corners.front().center.size() - fl.center.size();
      Chain padded;
      for (const auto& [c, coef] : fl.chain.terms()) padded.add(c.padded(extra), coef);
      if (!(corner_sum(corners) == padded)) {
        ++dec_bad;
        note(v, "decomposition of " + fl.name + " is not exact");
      }
    } catch (const Error& e) {
      ++dec_bad;
      note(v, fl.name + ": " + e.what());
    }
  }
  if (dec_bad) v.pass = false;
  note(v, std::to_string(flowers - dec_bad) + "/" + std::to_string(flowers) + " flowers decompose exactly");
  return v;
}

// ---- 7 ----
// Pads the flower field and fills the auxiliary corner vertices with random
// values, redrawing until every corner cell is well conditioned.
Field extend_field(const Field& base, const std::vector<CornerTerm>& corners, std::size_t extra, Rng& rng) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Field f = base.padded(extra);
    for (const auto& t : corners)
      for (const auto& p : vertices(t.cell))
        if (!f.contains(p)) f.set(p, random_value(rng));
    bool ok = true;
    for (const auto& t : corners) ok = ok && cell_conditioning(f, t.cell) >= kGradientMargin;
    if (ok) return f;
  }
  throw SingularError("no well-conditioned extension found");
}

Verdict euler_lagrange() {
  Verdict v;
  double worst = 0;
  long bad = 0, runs = 0;
  for (const auto& fl : criterion_flowers()) {
    const auto corners = decompose_flower(fl.chain, fl.center);
    const std::size_t extra = corners.front().center.size() - fl.center.size();
    const long count = fl.name.find("star") != std::string::npos ? 100 : 10;
    for (long t = 0; t < count; ++t) {
      Rng rng(trial_seed(kSeed, "el " + fl.name, t));
      const Field f = random_flower_field(fl.chain, fl.center, rng);
      const Field ext = extend_field(f, corners, extra, rng);
      double sum = 0;
      for (const auto& c : corners) sum += corner_residual(ext, c.cell, c.center);
      const double fd = central_difference(f, fl.chain, fl.center, 1e-6);
      const double d = std::abs(fd - sum);
      worst = std::max(worst, d);
      ++runs;
      if (d > 1e-6) {
        ++bad;
        if (bad <= 3) note(v, fl.name + " off by " + num(d));
      }
    }
  }
  v.pass = bad == 0;
  note(v, std::to_string(runs) + " fields, max |FD - sum| " + num(worst));
  return v;
}

// ---- 8 ----
Verdict negative_control() {
  Verdict v;
  long wrong = 0;
  for (CellKind kind : {CellKind::BlackAmbo4, CellKind::WhiteAmbo4, CellKind::Cube4}) {
    const auto cell = first_cell(kind, lattice_of(kind) == Lattice::RootA ? 5 : 4);
    for (long t = 0; t < kTrials; ++t) {
      Rng rng(trial_seed(kSeed, std::string("neg") + kind_token(kind), t));
      const Field f = random_cell_field(cell, rng);
      try {
        if (classify_branch(f, cell).branch != BranchKind::Neither) ++wrong;
      } catch (const InconclusiveError&) {
        ++wrong;
      }
    }
  }
  v.pass = wrong == 0;
  note(v, std::to_string(3 * kTrials - wrong) + "/" + std::to_string(3 * kTrials) + " classified neither");
  return v;
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Verdict()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "dilogarithm special values", 1, dilog_values},
      {2, "golden closure", 1, golden_closure},
      {3, "random ambo closure", 10, random_ambo_closure},
      {4, "random cube closure", 10, random_cube_closure},
      {5, "gradient identity", 30, gradient_identity},
      {6, "combinatorial exactness", 5, combinatorial_exactness},
      {7, "Euler-Lagrange decomposition", 10, euler_lagrange},
      {8, "negative control", 5, negative_control},
  };
  int only = 0;
  if (argc > 1) {
    only = std::atoi(argv[1]);
    if (only < 1 || only > 8) {
      std::fprintf(stderr, "usage: %s [1-8]\n", argv[0]);
      return 2;
    }
  }
  bool ok = true;
  for (const auto& c : all) {
    if (only && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.pass = false;
      note(v, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_s) {
      v.pass = false;
      note(v, "over the " + num(c.budget_s) + " s budget");
    }
    std::printf("%s criterion %d (%s) %.2fs: %s\n", v.pass ? "PASS" : "FAIL", c.id, c.name, secs, v.detail.c_str());
    std::fflush(stdout);
    ok = ok && v.pass;
  }
  return ok ? 0 : 1;
}
