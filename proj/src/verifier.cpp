#include "plurikp/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include <Eigen/Dense>

#include "plurikp/errors.hpp"
#include "plurikp/special_functions.hpp"

namespace plurikp {

namespace {

bool is_ambo(CellKind kind) { return kind == CellKind::BlackAmbo4 || kind == CellKind::WhiteAmbo4; }

std::vector<Point> corner_vertices(const OrientedCell& cell4) {
  if (cell4.kind() == CellKind::Cube4) return cube_active_points(cell4);
  return vertices(cell4);
}

int product_sign(const Field& field, const OrientedCell& cell) {
  int sign = 1;
  for (const auto& v : vertices(cell))
    if (field.at(v) < 0) sign = -sign;
  return sign;
}

}  // namespace

const char* branch_kind_name(BranchKind kind) {
  switch (kind) {
    case BranchKind::Dkp: return "dKP";
    case BranchKind::DkpMinus: return "dKPminus";
    default: return "neither";
  }
}

BranchReport classify_branch(const Field& field, const OrientedCell& cell4, double tolerance) {
  if (!is_ambo(cell4.kind()) && cell4.kind() != CellKind::Cube4)
    throw InvalidArgument("no corner system to classify on " + cell4.str());
  BranchReport out;
  for (const auto& v : corner_vertices(cell4)) {
    auto q = corner_E(field, cell4, v);
    for (double e : q.factors) {
      out.max_dev_dkp = std::max(out.max_dev_dkp, std::abs(e + 1.0));
      out.max_dev_dkp_minus = std::max(out.max_dev_dkp_minus, std::abs(e - 1.0));
    }
    out.corners.push_back(std::move(q));
  }
  for (const auto& oct : system_on_4cell(cell4)) {
    out.max_dkp_residual = std::max(out.max_dkp_residual, dkp_relative_residual(field, oct));
    out.max_dkp_minus_residual = std::max(out.max_dkp_minus_residual, dkp_minus_relative_residual(field, oct));
  }
  if (out.max_dev_dkp <= tolerance) {
    out.branch = BranchKind::Dkp;
  } else if (out.max_dev_dkp_minus <= tolerance) {
    out.branch = BranchKind::DkpMinus;
  } else if (out.max_dev_dkp > kNeitherGap && out.max_dev_dkp_minus > kNeitherGap) {
    out.branch = BranchKind::Neither;
  } else {
    std::ostringstream msg;
    msg << "branch of " << cell4.str() << " inconclusive: max|E+1| = " << out.max_dev_dkp
        << ", max|E-1| = " << out.max_dev_dkp_minus;
    throw InconclusiveError(msg.str());
  }
  const bool dkp_system = out.max_dkp_residual <= kEquivalenceTolerance;
  const bool dkp_minus_system = out.max_dkp_minus_residual <= kEquivalenceTolerance;
  out.equivalence_holds =
      (out.branch == BranchKind::Dkp) == dkp_system && (out.branch == BranchKind::DkpMinus) == dkp_minus_system;
  return out;
}

CheckRecord make_record(std::string id, std::string params, double observed, double expected, double tolerance,
                        std::uint64_t seed) {
  CheckRecord r;
  r.id = std::move(id);
  r.params = std::move(params);
  r.observed = observed;
  r.expected = expected;
  r.tolerance = tolerance;
  r.pass = std::abs(observed - expected) <= tolerance;
  r.seed = seed;
  r.failures = r.pass ? 0 : 1;
  return r;
}

double claimed_closure_constant(const OrientedCell& cell4, BranchKind branch) {
  if (branch == BranchKind::Neither) throw InvalidArgument("no closure constant for a non-solution");
  if (cell4.kind() == CellKind::Cube4) return 0.0;
  if (!is_ambo(cell4.kind())) return 0.0;
  const double value = branch == BranchKind::Dkp ? -kPi2 / 4.0 : kPi2 / 4.0;
  return cell4.sign() * value;
}

double sign_resolved_closure_constant(const Field& field, const OrientedCell& cell4, BranchKind branch) {
  if (branch == BranchKind::Neither) throw InvalidArgument("no closure constant for a non-solution");
  if (cell4.kind() == CellKind::Cube4) {
    const Field lifted = lift_field(field);
    const Chain cells = cube_as_root_cells(cell4);
    double sum = 0.0;
    for (const auto& [cell, coef] : cells.terms())
      if (is_ambo(cell.kind()))
        sum += static_cast<double>(coef) * sign_resolved_closure_constant(lifted, cell, branch);
    return sum;
  }
  return product_sign(field, cell4) * claimed_closure_constant(cell4, branch);
}

namespace {

std::string cell_params(const OrientedCell& cell4, BranchKind branch) {
  return "cell=" + cell4.str() + ";branch=" + branch_kind_name(branch);
}

}  // namespace

CheckRecord check_closure(const Field& field, const OrientedCell& cell4, double tolerance) {
  const auto report = classify_branch(field, cell4);
  if (report.branch == BranchKind::Neither)
    throw InvalidArgument("closure is not claimed: field on " + cell4.str() + " solves neither branch");
  return make_record("closure", cell_params(cell4, report.branch), exterior_derivative(field, cell4),
                     claimed_closure_constant(cell4, report.branch), tolerance);
}

CheckRecord check_closure_sign_resolved(const Field& field, const OrientedCell& cell4, double tolerance) {
  const auto report = classify_branch(field, cell4);
  if (report.branch == BranchKind::Neither)
    throw InvalidArgument("closure is not claimed: field on " + cell4.str() + " solves neither branch");
  return make_record("closure_sign_resolved", cell_params(cell4, report.branch), exterior_derivative(field, cell4),
                     sign_resolved_closure_constant(field, cell4, report.branch), tolerance);
}

double action_derivative(const Field& field, const Chain& manifold, const Point& vertex, double step) {
  const double x = field.at(vertex);
  Field plus = field, minus = field;
  plus.set(vertex, x + step);
  minus.set(vertex, x - step);
  return (action(plus, manifold) - action(minus, manifold)) / (2.0 * step);
}

namespace {

constexpr int kMaxDraws = 10000;

std::vector<Point> vertices_of(const Chain& chain) {
  std::vector<Point> out;
  for (const auto& [cell, coef] : chain.terms())
    for (auto& v : vertices(cell)) out.push_back(std::move(v));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double chain_conditioning(const Field& field, const Chain& chain) {
  double worst = 1.0;
  for (const auto& [cell, coef] : chain.terms())
    if (cell.kind() == CellKind::Octahedron || cell.kind() == CellKind::Cube3)
      worst = std::min(worst, octahedron_conditioning(field, cell));
  return worst;
}

Lattice chain_lattice(const Chain& chain) {
  if (chain.empty()) throw InvalidArgument("empty chain");
  return lattice_of(chain.terms().begin()->first.kind());
}

// Extends `field` (given on the flower) to every vertex of the corner cells,
// resampling the extension until all corner cells are conditioned.
Field extend_to_corners(const Field& field, const std::vector<CornerTerm>& corners, std::size_t extra, Rng& rng,
                        double margin) {
  std::vector<Point> needed;
  for (const auto& c : corners)
    for (auto& v : vertices(c.cell)) needed.push_back(std::move(v));
  std::sort(needed.begin(), needed.end());
  needed.erase(std::unique(needed.begin(), needed.end()), needed.end());
  const Field base = field.padded(extra);
  for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
    Field out = base;
    for (const auto& p : needed)
      if (!out.contains(p)) out.set(p, random_value(rng));
    bool ok = true;
    for (const auto& c : corners)
      if (cell_conditioning(out, c.cell) < margin) { ok = false; break; }
    if (ok) return out;
  }
  throw SingularError("no admissible extension of the flower field");
}

}  // namespace

Field random_flower_field(const Chain& flower, const Point& vertex, Rng& rng, double margin) {
  (void)vertex;
  const Lattice lattice = chain_lattice(flower);
  const auto points = vertices_of(flower);
  for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
    Field f(lattice, points.front().size());
    for (const auto& p : points) f.set(p, random_value(rng));
    if (chain_conditioning(f, flower) >= margin) return f;
  }
  throw SingularError("no admissible random field on the flower");
}

CheckRecord check_euler_lagrange_sum(const Chain& manifold, const Point& vertex, const Field& field,
                                     std::uint64_t seed, double tolerance) {
  const Chain petals = flower(manifold, vertex);
  const auto corners = decompose_flower(petals, vertex);
  const std::size_t extra = chain_lattice(petals) == Lattice::RootA ? 2 : 1;
  Rng rng(seed);
  const Field extended = extend_to_corners(field, corners, extra, rng, kGradientMargin);
  const Point center = vertex.padded(extra);
  double analytic = 0.0;
  for (const auto& c : corners) analytic += corner_residual(extended, c.cell, center);
  const double numeric = action_derivative(field, petals, vertex);
  std::ostringstream params;
  params << "lattice=" << lattice_name(chain_lattice(petals)) << ";cells=" << petals.size()
         << ";corners=" << corners.size() << ";center=" << vertex.str();
  return make_record("euler_lagrange", params.str(), numeric, analytic, tolerance, seed);
}

int corner_system_rank(const Field& field, const OrientedCell& cell4) {
  std::vector<Point> pts;
  for (const auto& v : corner_vertices(cell4))
    if (has_corner_equation(cell4, v)) pts.push_back(v);
  const auto n = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXd jac(n, n);
  const double h = 1e-6;
  for (Eigen::Index c = 0; c < n; ++c) {
    Field plus = field, minus = field;
    const double x = field.at(pts[c]);
    plus.set(pts[c], x + h);
    minus.set(pts[c], x - h);
    for (Eigen::Index r = 0; r < n; ++r)
      jac(r, c) = (corner_residual(plus, cell4, pts[r]) - corner_residual(minus, cell4, pts[r])) / (2 * h);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s[k] > 1e-5 * s[0]) ++rank;
  return rank;
}

// ---- suite ----

std::map<std::string, double> default_tolerances() {
  return {
      {"dilog", 1e-11},        {"golden_form", 1e-10}, {"golden_closure", 1e-9},   {"corner", 1e-8},
      {"closure", 1e-8},       {"gradient", 1e-6},     {"euler_lagrange", 1e-6},   {"ivp_residual", 1e-10},
      {"negative_control", 0}, {"combinatorics", 0},   {"equivalence", 0},
  };
}

void SuiteConfig::validate() const {
  if (dimension < 3 || dimension > kDefaultMaxDimension)
    throw InvalidArgument("dimension N = " + std::to_string(dimension) + " outside [3, " +
                          std::to_string(kDefaultMaxDimension) + "]");
  if (trials < 1) throw InvalidArgument("trials must be at least 1");
  const auto known = default_tolerances();
  for (const auto& [key, value] : tolerances) {
    if (!known.count(key)) throw InvalidArgument("unknown tolerance '" + key + "'");
    if (!(value >= 0.0)) throw InvalidArgument("tolerance '" + key + "' must be non-negative");
  }
}

double SuiteConfig::tol(const std::string& key) const {
  auto it = tolerances.find(key);
  if (it != tolerances.end()) return it->second;
  return default_tolerances().at(key);
}

std::uint64_t trial_seed(std::uint64_t seed, const std::string& check, long trial) {
  // FNV-1a over the check id, mixed with the seed and trial by splitmix64.
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : check) {
    h ^= c;
    h *= 1099511628211ull;
  }
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(seed) ^ h) ^ static_cast<std::uint64_t>(trial));
}

unsigned worker_count(unsigned requested) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PLURIKP_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) n = std::min(n, static_cast<unsigned>(cap));
  }
  return std::max(1u, n);
}


namespace {

struct Outcome {
  double observed = 0.0;
  double expected = 0.0;
  bool pass = true;
};
using Outcomes = std::vector<Outcome>;

struct SubCheck {
  std::string id;
  double tolerance;
};

template <class Fn>
std::vector<Outcomes> parallel_trials(long trials, unsigned threads, Fn fn) {
  std::vector<Outcomes> out(static_cast<std::size_t>(trials));
  std::atomic<long> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (long t = next++; t < trials; t = next++) {
      try {
        out[static_cast<std::size_t>(t)] = fn(t);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const unsigned n = std::min<unsigned>(threads, static_cast<unsigned>(std::max<long>(1, trials)));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < n; ++k) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

class SuiteBuilder {
 public:
  explicit SuiteBuilder(const SuiteConfig& config) : config_(config), threads_(worker_count(config.threads)) {}

  const SuiteConfig& config() const { return config_; }

  // Runs `fn` over `count` seeded trials; fn returns one Outcome per
  // sub-check. Each sub-check becomes one record holding its worst trial and
  // the number of failing trials.
  template <class Fn>
  void trials(const std::vector<SubCheck>& checks, const std::string& params, long count, Fn fn) {
    const std::string key = checks.front().id + "|" + params;
    const auto outcomes = parallel_trials(count, threads_, [&](long t) {
      Rng rng(trial_seed(config_.seed, key, t));
      Outcomes o = fn(rng);
      if (o.size() != checks.size()) throw ContractViolation("trial returned the wrong number of outcomes");
      return o;
    });
    for (std::size_t j = 0; j < checks.size(); ++j) {
      long worst = 0, failures = 0;
      double worst_dev = -1.0;
      for (long t = 0; t < count; ++t) {
        const auto& o = outcomes[static_cast<std::size_t>(t)][j];
        const double dev = std::abs(o.observed - o.expected);
        const bool ok = o.pass && dev <= checks[j].tolerance;
        if (!ok) ++failures;
        if (std::isnan(dev) || dev > worst_dev) {
          worst_dev = std::isnan(dev) ? std::numeric_limits<double>::infinity() : dev;
          worst = t;
        }
      }
      const auto& w = outcomes[static_cast<std::size_t>(worst)][j];
      CheckRecord r = make_record(checks[j].id, params, w.observed, w.expected, checks[j].tolerance,
                                  trial_seed(config_.seed, key, worst));
      r.trials = count;
      r.failures = failures;
      r.pass = failures == 0;
      add(std::move(r));
    }
  }

  void add(CheckRecord r) {
    const double dev = std::abs(r.observed - r.expected);
    auto& m = result_.summary.max_residuals[r.id];
    m = std::max(m, dev);
    result_.records.push_back(std::move(r));
  }

  void data(const std::string& key, double value) { result_.summary.data[key] = value; }

  SuiteResult finish() {
    auto& s = result_.summary;
    s.checks = static_cast<long>(result_.records.size());
    s.passed = std::count_if(result_.records.begin(), result_.records.end(), [](const auto& r) { return r.pass; });
    s.failed = s.checks - s.passed;
    return std::move(result_);
  }

 private:
  const SuiteConfig& config_;
  unsigned threads_;
  SuiteResult result_;
};

OrientedCell random_cell(CellKind kind, std::size_t coords, Rng& rng, bool random_orientation = false) {
  std::vector<int> dirs(coords);
  std::iota(dirs.begin(), dirs.end(), 0);
  std::shuffle(dirs.begin(), dirs.end(), rng);
  dirs.resize(index_count(kind));
  int sign = 1;
  if (random_orientation && std::bernoulli_distribution(0.5)(rng)) sign = -1;
  return OrientedCell::make(kind, Point::zero(coords), dirs, sign);
}

OrientedCell first_cell(CellKind kind, std::size_t coords) {
  std::vector<int> dirs(index_count(kind));
  std::iota(dirs.begin(), dirs.end(), 0);
  return OrientedCell::make(kind, Point::zero(coords), dirs);
}

std::vector<CellKind> four_cell_kinds(Lattice lattice) {
  if (lattice == Lattice::Cubic) return {CellKind::Cube4};
  return {CellKind::BlackSimplex4, CellKind::BlackAmbo4, CellKind::WhiteAmbo4, CellKind::WhiteSimplex4};
}

std::vector<CellKind> system_kinds(Lattice lattice) {
  if (lattice == Lattice::Cubic) return {CellKind::Cube4};
  return {CellKind::BlackAmbo4, CellKind::WhiteAmbo4};
}

std::string params_of(const SuiteConfig& c, const std::string& extra) {
  return std::string("lattice=") + lattice_name(c.lattice) + ";N=" + std::to_string(c.dimension) +
         (extra.empty() ? "" : ";" + extra);
}

// Coordinates used for 4-cell checks: Q(A_N) and Z^N hold 4-cells only from
// N = 4 on, so N = 3 runs them in dimension 4.
std::size_t cell_coords(const SuiteConfig& c) {
  const int n = std::max(c.dimension, 4);
  return static_cast<std::size_t>(c.lattice == Lattice::RootA ? n + 1 : n);
}

std::size_t lattice_coords(const SuiteConfig& c) {
  return static_cast<std::size_t>(c.lattice == Lattice::RootA ? c.dimension + 1 : c.dimension);
}

void dilog_checks(SuiteBuilder& s) {
  const double a = kGolden;
  const double l = std::log(-a);
  const double tol = s.config().tol("dilog");
  const std::string p = "a=(1-sqrt5)/2";
  s.add(make_record("dilog.Li2(a^2)", p, dilog(a * a), kPi2 / 15 - l * l, tol));
  s.add(make_record("dilog.Li2(-a)", p, dilog(-a), kPi2 / 10 - l * l, tol));
  s.add(make_record("dilog.Li2(a)", p, dilog(a), -kPi2 / 15 + 0.5 * l * l, tol));
  s.add(make_record("dilog.Li2(1/a)", p, dilog(1 / a), -kPi2 / 10 - l * l, tol));
}

BranchKind to_kind(Branch b) { return b == Branch::Dkp ? BranchKind::Dkp : BranchKind::DkpMinus; }

double branch_mismatch(const Field& f, const OrientedCell& cell, BranchKind want) {
  try {
    const auto r = classify_branch(f, cell);
    return r.branch == want && r.equivalence_holds ? 0.0 : 1.0;
  } catch (const InconclusiveError&) {
    return 1.0;
  }
}

void golden_checks(SuiteBuilder& s) {
  const auto& cfg = s.config();
  const std::size_t coords = cell_coords(cfg);
  if (cfg.lattice == Lattice::RootA) {
    for (CellKind kind : system_kinds(cfg.lattice)) {
      const auto cell = first_cell(kind, coords);
      for (Branch b : {Branch::Dkp, Branch::DkpMinus}) {
        const Field g = golden_field(cell, b);
        const std::string p = params_of(cfg, std::string("cell=") + cell.str() + ";branch=" + branch_name(b));
        const double sign = b == Branch::Dkp ? 1.0 : -1.0;
        for (const auto& oct : system_on_4cell(cell))
          s.add(make_record("golden.three_form", p + ";facet=" + oct.str(), three_form(g, oct),
                            -sign * kPi2 / 20, cfg.tol("golden_form")));
        s.add(make_record("golden.closure", p, exterior_derivative(g, cell), -sign * kPi2 / 4,
                          cfg.tol("golden_closure")));
        s.add(make_record("golden.branch", p, branch_mismatch(g, cell, to_kind(b)), 0.0, cfg.tol("equivalence")));
      }
    }
  } else {
    const auto cell = first_cell(CellKind::Cube4, coords);
    for (Branch b : {Branch::Dkp, Branch::DkpMinus}) {
      const Field g = golden_cube_field(cell, b);
      const std::string p = params_of(cfg, std::string("cell=") + cell.str() + ";branch=" + branch_name(b));
      s.add(make_record("golden.closure", p, exterior_derivative(g, cell), 0.0, cfg.tol("golden_closure")));
      s.add(make_record("golden.branch", p, branch_mismatch(g, cell, to_kind(b)), 0.0, cfg.tol("equivalence")));
    }
  }
}

void solution_checks(SuiteBuilder& s) {
  const auto& cfg = s.config();
  const std::size_t coords = cell_coords(cfg);
  const std::vector<SubCheck> checks = {
      {"ivp_residual", cfg.tol("ivp_residual")}, {"corner", cfg.tol("corner")},
      {"equivalence", cfg.tol("equivalence")},   {"closure", cfg.tol("closure")},
      {"closure_sign_resolved", cfg.tol("closure")},
  };
  for (CellKind kind : system_kinds(cfg.lattice)) {
    for (Branch b : {Branch::Dkp, Branch::DkpMinus}) {
      const std::string p = params_of(cfg, std::string("cell=") + kind_token(kind) + ";branch=" + branch_name(b));
      const double target = b == Branch::Dkp ? -1.0 : 1.0;
      s.trials(checks, p, cfg.trials, [&](Rng& rng) {
        const OrientedCell cell = random_cell(kind, coords, rng);
        const Field f = kind == CellKind::Cube4 ? random_cube_solution(cell, b, rng) : random_ambo_solution(cell, b, rng);
        Outcomes o(checks.size());
        double residual = 0.0;
        for (const auto& oct : system_on_4cell(cell)) residual = std::max(residual, relative_residual(f, oct, b));
        o[0] = {residual, 0.0, true};
        double worst = -1.0;
        for (const auto& v : corner_vertices(cell))
          for (double e : corner_E(f, cell, v).factors)
            if (std::abs(e - target) > worst) {
              worst = std::abs(e - target);
              o[1] = {e, target, true};
            }
        o[2] = {branch_mismatch(f, cell, to_kind(b)), 0.0, true};
        const double action_value = exterior_derivative(f, cell);
        o[3] = {action_value, claimed_closure_constant(cell, to_kind(b)), true};
        o[4] = {action_value, sign_resolved_closure_constant(f, cell, to_kind(b)), true};
        return o;
      });
    }
  }
}

void gradient_checks(SuiteBuilder& s) {
  const auto& cfg = s.config();
  const std::size_t coords = cell_coords(cfg);
  for (CellKind kind : four_cell_kinds(cfg.lattice)) {
    const std::string p = params_of(cfg, std::string("cell=") + kind_token(kind) + ";step=1e-6");
    s.trials({{"gradient", cfg.tol("gradient")}}, p, cfg.trials, [&](Rng& rng) {
      const OrientedCell cell = random_cell(kind, coords, rng, true);
      const Field f = random_cell_field(cell, rng, kGradientMargin);
      const Chain boundary_chain = facets(cell);
      Outcome worst{0.0, 0.0, true};
      for (const auto& v : vertices(cell)) {
        const double fd = action_derivative(f, boundary_chain, v);
        const double analytic = corner_residual(f, cell, v);
        if (std::abs(fd - analytic) > std::abs(worst.observed - worst.expected)) worst = {analytic, fd, true};
      }
      return Outcomes{worst};
    });
  }
}

void negative_control(SuiteBuilder& s) {
  const auto& cfg = s.config();
  const std::size_t coords = cell_coords(cfg);
  for (CellKind kind : system_kinds(cfg.lattice)) {
    const std::string p = params_of(cfg, std::string("cell=") + kind_token(kind));
    s.trials({{"negative_control", cfg.tol("negative_control")}}, p, cfg.trials, [&](Rng& rng) {
      const OrientedCell cell = random_cell(kind, coords, rng);
      const Field f = random_cell_field(cell, rng);
      return Outcomes{{branch_mismatch(f, cell, BranchKind::Neither), 0.0, true}};
    });
  }
}

struct NamedFlower {
  std::string name;
  Chain chain;
  Point center;
};

std::vector<NamedFlower> test_flowers(const SuiteConfig& cfg) {
  std::vector<NamedFlower> out;
  const std::size_t coords = lattice_coords(cfg);
  if (cfg.lattice == Lattice::RootA) {
    const int dirs[] = {0, 1, 2, 3};
    out.push_back({"standard_star", standard_flower(Lattice::RootA, dirs, Point::zero(coords)), Point::zero(coords)});
  } else {
    const int dirs[] = {0, 1, 2};
    out.push_back({"standard_star", standard_flower(Lattice::Cubic, dirs, Point::zero(coords)), Point::zero(coords)});
  }
  for (CellKind kind : four_cell_kinds(cfg.lattice)) {
    const auto cell = first_cell(kind, cell_coords(cfg));
    for (const auto& v : vertices(cell))
      out.push_back({std::string("corner:") + cell.str() + "@" + v.str(), corner(cell, v), v});
  }
  return out;
}

void combinatorial_checks(SuiteBuilder& s) {
  const auto& cfg = s.config();
  const std::size_t coords = cell_coords(cfg);
  long cells = 0, nonzero = 0;
  for (CellKind kind : four_cell_kinds(cfg.lattice)) {
    const std::size_t k = index_count(kind);
    std::vector<bool> pick(coords, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
    do {
      std::vector<int> dirs;
      for (std::size_t c = 0; c < coords; ++c)
        if (pick[c]) dirs.push_back(static_cast<int>(c));
      ++cells;
      if (!boundary(facets(OrientedCell::make(kind, Point::zero(coords), dirs))).empty()) ++nonzero;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  auto dd = make_record("boundary_squared", params_of(cfg, "cells=" + std::to_string(cells)),
                        static_cast<double>(nonzero), 0.0, cfg.tol("combinatorics"));
  dd.trials = cells;
  dd.failures = nonzero;
  s.add(dd);

  long flowers = 0, bad = 0;
  for (const auto& fl : test_flowers(cfg)) {
    ++flowers;
    try {
      const auto corners = decompose_flower(fl.chain, fl.center);
      const std::size_t extra = cfg.lattice == Lattice::RootA ? 2 : 1;
      Chain padded;
      for (const auto& [cell, coef] : fl.chain.terms()) padded.add(cell.padded(extra), coef);
      if (!(corner_sum(corners) == padded)) ++bad;
    } catch (const Error&) {
      ++bad;
    }
  }
  auto dec = make_record("decompose_exact", params_of(cfg, "flowers=" + std::to_string(flowers)),
                         static_cast<double>(bad), 0.0, cfg.tol("combinatorics"));
  dec.trials = flowers;
  dec.failures = bad;
  s.add(dec);
}

void euler_lagrange_checks(SuiteBuilder& s) {
  const auto& cfg = s.config();
  for (const auto& fl : test_flowers(cfg)) {
    const bool standard = fl.name == "standard_star";
    const long count = std::max<long>(1, cfg.trials / (standard ? 10 : 100));
    s.trials({{"euler_lagrange", cfg.tol("euler_lagrange")}}, params_of(cfg, "flower=" + fl.name), count,
             [&](Rng& rng) {
               const Field f = random_flower_field(fl.chain, fl.center, rng);
               const auto r = check_euler_lagrange_sum(fl.chain, fl.center, f, rng(), cfg.tol("euler_lagrange"));
               return Outcomes{{r.observed, r.expected, true}};
             });
  }
}

void rank_data(SuiteBuilder& s) {
  const auto& cfg = s.config();
  Rng rng(trial_seed(cfg.seed, "rank", 0));
  const std::size_t coords = cell_coords(cfg);
  if (cfg.lattice == Lattice::Cubic) {
    const auto cell = first_cell(CellKind::Cube4, coords);
    const auto probe = probe_cube_initial_set(cell, rng);
    s.data("cube_equation_rank", probe.rank);
    s.data("cube_free_vertices", static_cast<double>(probe.free.size()));
    auto frozen = cube_initial_points(cell);
    std::sort(frozen.begin(), frozen.end());
    s.add(make_record("cube_initial_set", params_of(cfg, "expected_free=9"),
                      probe.free == frozen ? 0.0 : 1.0, 0.0, cfg.tol("combinatorics")));
    s.data("corner_rank.cube4", corner_system_rank(random_cube_solution(cell, Branch::Dkp, rng), cell));
  } else {
    for (CellKind kind : system_kinds(cfg.lattice)) {
      const auto cell = first_cell(kind, coords);
      s.data(std::string("corner_rank.") + kind_token(kind),
             corner_system_rank(random_ambo_solution(cell, Branch::Dkp, rng), cell));
    }
  }
}

}  // namespace

SuiteResult run_suite(const SuiteConfig& config) {
  config.validate();
  SuiteBuilder s(config);
  s.data("cell_dimension", static_cast<double>(std::max(config.dimension, 4)));
  dilog_checks(s);
  golden_checks(s);
  combinatorial_checks(s);
  solution_checks(s);
  gradient_checks(s);
  negative_control(s);
  euler_lagrange_checks(s);
  rank_data(s);
  return s.finish();
}

}  // namespace plurikp
