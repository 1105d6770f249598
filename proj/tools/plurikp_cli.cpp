#include <algorithm>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "plurikp/cell_complex.hpp"
#include "plurikp/dkp_system.hpp"
#include "plurikp/errors.hpp"
#include "plurikp/io.hpp"
#include "plurikp/lagrangian.hpp"
#include "plurikp/special_functions.hpp"
#include "plurikp/verifier.hpp"

namespace {

using namespace plurikp;

enum Exit { kOk = 0, kCheckFailure = 1, kUsage = 2, kSingular = 3, kIo = 4 };

// Pulls "--tol.<check>=<val>" and "--tol.<check> <val>" out of argv before
// CLI11 sees it.
std::map<std::string, double> take_tolerances(std::vector<std::string>& args) {
  std::map<std::string, double> out;
  std::vector<std::string> rest;
  for (std::size_t k = 0; k < args.size(); ++k) {
    const std::string& a = args[k];
    if (a.rfind("--tol.", 0) != 0) {
      rest.push_back(a);
      continue;
    }
    std::string key = a.substr(6), value;
    if (const auto eq = key.find('='); eq != std::string::npos) {
      value = key.substr(eq + 1);
      key.resize(eq);
    } else if (k + 1 < args.size()) {
      value = args[++k];
    } else {
      throw InvalidArgument("missing value for --tol." + key);
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (key.empty() || used != value.size()) throw InvalidArgument("bad tolerance '" + a + "'");
    out[key] = v;
  }
  args = std::move(rest);
  return out;
}

Lattice lattice_from(const std::string& name) { return name == "cubic" ? Lattice::Cubic : Lattice::RootA; }

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int cmd_verify(const SuiteConfig& config, const std::string& out) {
  config.validate();
  const SuiteResult result = run_suite(config);
  for (const auto& r : result.records) {
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.id << " [" << r.params << "] observed=" << fmt_double(r.observed)
              << " expected=" << fmt_double(r.expected) << " tol=" << r.tolerance;
    if (r.trials > 1) std::cout << " failures=" << r.failures << "/" << r.trials;
    std::cout << "\n";
  }
  for (const auto& [k, v] : result.summary.data) std::cout << "data " << k << " = " << v << "\n";
  std::cout << "summary: " << result.summary.passed << "/" << result.summary.checks << " checks passed\n";
  write_report(out, result, config);
  std::cout << "report: " << out << "\n";
  return result.all_pass() ? kOk : kCheckFailure;
}

// The cell spanned by the input points: base at the coordinatewise minimum,
// indices where the points differ from it.
OrientedCell cell_of_points(CellKind kind, const Field& field) {
  if (field.size() == 0) throw InvalidArgument("input field is empty");
  const std::size_t n = field.coordinates();
  std::vector<int> lo(n), hi(n);
  bool first = true;
  for (const auto& [p, v] : field.values()) {
    for (std::size_t c = 0; c < n; ++c) {
      lo[c] = first ? p[c] : std::min(lo[c], p[c]);
      hi[c] = first ? p[c] : std::max(hi[c], p[c]);
    }
    first = false;
  }
  std::vector<int> dirs;
  for (std::size_t c = 0; c < n; ++c) {
    if (hi[c] - lo[c] > 1) throw InvalidArgument("input points do not fit in one cell");
    if (hi[c] != lo[c]) dirs.push_back(static_cast<int>(c));
  }
  if (dirs.size() != index_count(kind))
    throw InvalidArgument("input points span " + std::to_string(dirs.size()) + " directions, " +
                          kind_token(kind) + " needs " + std::to_string(index_count(kind)));
  return OrientedCell::make(kind, Point(std::move(lo)), std::move(dirs));
}

int cmd_solve(const std::string& kind_name, const std::string& in, const std::string& out,
              const std::string& branch_name_in) {
  CellKind kind;
  if (kind_name == "ambo-black") kind = CellKind::BlackAmbo4;
  else if (kind_name == "ambo-white") kind = CellKind::WhiteAmbo4;
  else if (kind_name == "cube4") kind = CellKind::Cube4;
  else throw InvalidArgument("unknown kind '" + kind_name + "'");
  const Branch branch = branch_name_in == "dkp-minus" ? Branch::DkpMinus : Branch::Dkp;

  const Field initial = read_field(in);
  if (lattice_of(kind) != initial.lattice())
    throw InvalidArgument(std::string("kind ") + kind_name + " needs a " + lattice_name(lattice_of(kind)) + " field");
  const OrientedCell cell = cell_of_points(kind, initial);
  auto wanted = kind == CellKind::Cube4 ? cube_initial_points(cell) : ambo_initial_points(cell);
  std::sort(wanted.begin(), wanted.end());
  std::vector<Point> given;
  for (const auto& [p, v] : initial.values()) given.push_back(p);
  if (given != wanted) {
    std::string list;
    for (const auto& p : wanted) list += " " + p.str();
    throw InvalidArgument("input must prescribe exactly the initial vertices of " + cell.str() + ":" + list);
  }

  // dKP⁻ solutions are pointwise inverses of dKP solutions.
  const Field seed = branch == Branch::Dkp ? initial : initial.inverted();
  Field solved = kind == CellKind::Cube4 ? solve_cube_ivp(cell, seed) : solve_ambo_ivp(cell, seed);
  if (branch == Branch::DkpMinus) solved = solved.inverted();

  const BranchReport report = classify_branch(solved, cell);
  const double s = exterior_derivative(solved, cell);
  write_field(out, solved);
  std::cout << "cell: " << cell.str() << "\n"
            << "branch: " << branch_kind_name(report.branch) << "\n"
            << "S: " << fmt_double(s) << "\n"
            << "output: " << out << "\n";
  return kOk;
}

Point parse_vertex(const std::string& text) {
  std::string body = text;
  if (!body.empty() && body.front() == '(') body.erase(0, 1);
  if (!body.empty() && body.back() == ')') body.pop_back();
  std::vector<int> coords;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    const auto comma = std::min(body.find(',', pos), body.size());
    const std::string part = body.substr(pos, comma - pos);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (part.empty() || used != part.size()) throw InvalidArgument("bad vertex '" + text + "'");
    coords.push_back(v);
    pos = comma + 1;
  }
  return Point(std::move(coords));
}

int cmd_decompose(const std::string& in, const std::string& vertex_text, const std::string& out) {
  const Chain flower_chain = read_chain(in);
  const Point vertex = parse_vertex(vertex_text);
  const auto corners = decompose_flower(flower_chain, vertex);
  const std::size_t extra = corners.empty() ? 0 : corners.front().center.size() - vertex.size();
  Chain padded;
  for (const auto& [cell, coef] : flower_chain.terms()) padded.add(cell.padded(extra), coef);
  const Chain residual = corner_sum(corners) - padded;
  if (!residual.empty()) throw ContractViolation("corner sum differs from the flower: " + residual.str());

  std::string text;
  for (const auto& c : corners) text += c.cell.str() + " center=" + c.center.str() + "\n";
  std::cout << text << "corners: " << corners.size() << "\nresidual chain: empty\n";
  if (!out.empty()) write_text_atomic(out, text);
  return kOk;
}

int cmd_dilog_test(double tol) {
  const double a = kGolden, l = std::log(-a);
  struct Row {
    const char* name;
    double observed, expected;
  };
  const Row rows[] = {
      {"Li2(a^2)", dilog(a * a), kPi2 / 15 - l * l},
      {"Li2(-a)", dilog(-a), kPi2 / 10 - l * l},
      {"Li2(a)", dilog(a), -kPi2 / 15 + 0.5 * l * l},
      {"Li2(1/a)", dilog(1 / a), -kPi2 / 10 - l * l},
  };
  bool ok = true;
  std::cout << "a = (1-sqrt5)/2 = " << fmt_double(a) << "\n";
  for (const auto& r : rows) {
    const double diff = std::abs(r.observed - r.expected);
    ok = ok && diff <= tol;
    std::cout << (diff <= tol ? "PASS " : "FAIL ") << r.name << " computed=" << fmt_double(r.observed)
              << " closed_form=" << fmt_double(r.expected) << " diff=" << diff << "\n";
  }
  return ok ? kOk : kCheckFailure;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const auto tolerances = take_tolerances(args);
  std::reverse(args.begin(), args.end());

  CLI::App app{"Pluri-Lagrangian checks for the discrete KP equation"};
  app.require_subcommand(1);

  std::string lattice = "qan", out;
  int dim = 4;
  long trials = 1000;
  std::uint64_t seed = 0;
  auto* verify = app.add_subcommand("verify", "run the verification suite and write a JSON report");
  verify->add_option("--lattice", lattice, "qan or cubic")->check(CLI::IsMember({"qan", "cubic"}));
  verify->add_option("--dim", dim, "lattice dimension N (>= 3)");
  verify->add_option("--trials", trials, "random trials per check");
  verify->add_option("--seed", seed, "suite seed");
  verify->add_option("--out", out, "report path")->default_val("plurikp-report.json");

  std::string kind, in, field_out, branch = "dkp";
  auto* solve = app.add_subcommand("solve", "complete initial values on one 4-cell");
  solve->add_option("kind", kind, "ambo-black, ambo-white or cube4")
      ->required()
      ->check(CLI::IsMember({"ambo-black", "ambo-white", "cube4"}));
  solve->add_option("input", in, "field file with the initial values")->required();
  solve->add_option("output", field_out, "completed field file");
  solve->add_option("--out", field_out, "completed field file");
  solve->add_option("--branch", branch, "dkp or dkp-minus")->check(CLI::IsMember({"dkp", "dkp-minus"}));

  std::string flower_file, vertex;
  auto* decompose = app.add_subcommand("decompose", "write a flower as a sum of 4D corners");
  decompose->add_option("flower", flower_file, "chain file")->required();
  decompose->add_option("vertex", vertex, "center, e.g. 0,0,0,0")->required();
  decompose->add_option("--out", out, "also write the corner list here");

  auto* dilog_test = app.add_subcommand("dilog-test", "print dilogarithm special values");

  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  if (*verify) {
    SuiteConfig config;
    config.lattice = lattice_from(lattice);
    config.dimension = dim;
    config.trials = trials;
    config.seed = seed;
    for (const auto& [k, v] : tolerances) {
      if (!config.tolerances.count(k)) throw InvalidArgument("unknown tolerance key '" + k + "'");
      config.tolerances[k] = v;
    }
    return cmd_verify(config, out);
  }
  if (!tolerances.empty() && !(*dilog_test && tolerances.size() == 1 && tolerances.count("dilog")))
    throw InvalidArgument("--tol.* applies to verify (and --tol.dilog to dilog-test)");
  if (*solve) {
    if (field_out.empty()) throw InvalidArgument("solve needs an output field file");
    return cmd_solve(kind, in, field_out, branch);
  }
  if (*decompose) return cmd_decompose(flower_file, vertex, out);
  const auto t = tolerances.find("dilog");
  return cmd_dilog_test(t == tolerances.end() ? default_tolerances().at("dilog") : t->second);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const plurikp::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const plurikp::SingularError& e) {
    std::cerr << "singular data: " << e.what() << "\n";
    return kSingular;
  } catch (const plurikp::FormatError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kIo;
  } catch (const plurikp::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kIo;
  } catch (const plurikp::Error& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return kCheckFailure;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kCheckFailure;
  }
}
