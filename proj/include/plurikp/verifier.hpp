#ifndef PLURIKP_VERIFIER_HPP
#define PLURIKP_VERIFIER_HPP

// Branch classification, closure and Euler-Lagrange checks, and the seeded
// parallel suite that aggregates them into CheckRecords.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "plurikp/cell_complex.hpp"
#include "plurikp/dkp_system.hpp"
#include "plurikp/field.hpp"
#include "plurikp/lagrangian.hpp"

namespace plurikp {

enum class BranchKind { Dkp, DkpMinus, Neither };

const char* branch_kind_name(BranchKind kind);

struct BranchReport {
  BranchKind branch = BranchKind::Neither;
  std::vector<CornerQuantity> corners;
  /// max |E + 1| and max |E - 1| over every corner factor.
  double max_dev_dkp = 0.0;
  double max_dev_dkp_minus = 0.0;
  /// Largest relative residual of the cell's dKP and dKP⁻ systems.
  double max_dkp_residual = 0.0;
  double max_dkp_minus_residual = 0.0;
  /// Classification agrees with the residual systems (dKP iff the dKP
  /// residuals vanish, likewise for dKP⁻).
  bool equivalence_holds = true;
};

inline constexpr double kClassifyTolerance = 1e-7;
inline constexpr double kNeitherGap = 1e-3;
inline constexpr double kEquivalenceTolerance = 1e-9;

/// Throws InvalidArgument for 4-simplices and InconclusiveError when the
/// largest deviation falls between `tolerance` and kNeitherGap.
BranchReport classify_branch(const Field& field, const OrientedCell& cell4, double tolerance = kClassifyTolerance);

struct CheckRecord {
  std::string id;
  std::string params;
  double observed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::uint64_t seed = 0;
  /// Aggregated checks: number of trials and of failing trials.
  long trials = 1;
  long failures = 0;
};

CheckRecord make_record(std::string id, std::string params, double observed, double expected, double tolerance,
                        std::uint64_t seed = 0);

/// The closure constant claimed for a classified solution: -π²/4 on dKP and
/// +π²/4 on dKP⁻ for ambo cells (times the orientation), 0 on 4D cubes.
double claimed_closure_constant(const OrientedCell& cell4, BranchKind branch);

/// The value the action actually takes on a solution: the claimed constant
/// of an ambo cell times the sign of the product of its ten values; on a 4D
/// cube the difference of its two ambo halves.
double sign_resolved_closure_constant(const Field& field, const OrientedCell& cell4, BranchKind branch);

/// Throws InvalidArgument when the field classifies as neither branch.
CheckRecord check_closure(const Field& field, const OrientedCell& cell4, double tolerance = 1e-8);
CheckRecord check_closure_sign_resolved(const Field& field, const OrientedCell& cell4, double tolerance = 1e-8);

inline constexpr double kFiniteDifferenceStep = 1e-6;

/// Central difference of the action of `manifold` with respect to the value
/// at `vertex`.
double action_derivative(const Field& field, const Chain& manifold, const Point& vertex,
                         double step = kFiniteDifferenceStep);

/// Random values on the vertices of a flower, resampled until every cell of
/// its corner decomposition is conditioned to `margin` after extension.
Field random_flower_field(const Chain& flower, const Point& vertex, Rng& rng, double margin = kGradientMargin);

/// Compares the finite-difference derivative of the flower action at
/// `vertex` with the sum of corner residuals of decompose_flower, after
/// extending `field` to the auxiliary vertices with seeded random values.
CheckRecord check_euler_lagrange_sum(const Chain& manifold, const Point& vertex, const Field& field,
                                     std::uint64_t seed, double tolerance = 1e-6);

/// Numeric rank of the Jacobian of the corner residuals of an ambo cell or
/// 4D cube at a field (recorded as data).
int corner_system_rank(const Field& field, const OrientedCell& cell4);

// ---- suite ----

/// Defaults for every tolerance the suite uses, keyed by check name.
std::map<std::string, double> default_tolerances();

struct SuiteConfig {
  Lattice lattice = Lattice::RootA;
  int dimension = 4;
  long trials = 1000;
  std::uint64_t seed = 0;
  std::map<std::string, double> tolerances = default_tolerances();
  unsigned threads = 0;  // 0: hardware concurrency

  /// Throws InvalidArgument on N outside [3, kDefaultMaxDimension], trials < 1,
  /// unknown tolerance keys or negative tolerances.
  void validate() const;
  double tol(const std::string& key) const;
};

struct SuiteSummary {
  long checks = 0;
  long passed = 0;
  long failed = 0;
  std::map<std::string, double> max_residuals;
  std::map<std::string, double> data;
};

struct SuiteResult {
  std::vector<CheckRecord> records;
  SuiteSummary summary;
  bool all_pass() const { return summary.failed == 0; }
};

/// Deterministic per-trial seed derived from the suite seed, a check id and
/// the trial index.
std::uint64_t trial_seed(std::uint64_t seed, const std::string& check, long trial);

SuiteResult run_suite(const SuiteConfig& config);

/// Worker count honouring the PLURIKP_THREADS cap.
unsigned worker_count(unsigned requested);

}  // namespace plurikp

#endif  // PLURIKP_VERIFIER_HPP
