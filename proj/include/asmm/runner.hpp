#ifndef ASMM_RUNNER_HPP_
#define ASMM_RUNNER_HPP_

#include <functional>
#include <string>
#include <vector>

#include "asmm/corpus.hpp"
#include "asmm/mixed.hpp"
#include "asmm/models.hpp"
#include "asmm/transform.hpp"

namespace asmm {

/// Worker count: ASMM_THREADS when set, hardware concurrency otherwise.
unsigned worker_count();

/// Runs fn(i) for i in [0, n) on a small worker pool. Exceptions
/// propagate; results must be written to pre-sized slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

// ---------------------------------------------------------------------------

/// Does some behavior of the set satisfy the outcome? A UB behavior set
/// satisfies everything; the UB predicate only matches a UB set.
bool outcome_in_behaviors(const BehaviorSet& set, const OutcomePredicate& o);

struct ExpectationResult {
  Expectation expectation;
  bool observed = false;  // outcome ∈ behaviors
  bool pass = false;      // observed == allowed
};

struct RunReport {
  std::string name;
  std::vector<std::pair<ModelId, BehaviorSet>> per_model;
  std::vector<ExpectationResult> expectations;
  bool pass = true;
  bool overflow = false;
  double seconds = 0;
};

struct RunOptions {
  std::vector<ModelId> models;  // empty: the models named by expectations
  std::optional<ValueDomain> values;  // overrides the test's domain
  std::size_t step_bound = 10000;
};

RunReport run_test(const LitmusTest& t, const RunOptions& opts);

BehaviorOptions behavior_options(const LitmusTest& t, const RunOptions& opts);

// --- whole-program checks (shared by CLI and the acceptance suite) -----------

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Thm-style compilation check for one test under one scheme.
CheckResult check_compilation_entry(const LitmusTest& t, Scheme s,
                                    const RunOptions& opts);

/// Transfer equivalences over every target candidate execution of
/// compile(p, s); also reports the weaker-than implication (every
/// Ex86-consistent mixed graph is RC11Ext-consistent).
struct TransferSummary {
  std::size_t candidates = 0;
  std::size_t discrepancies = 0;
  std::size_t weaker_than_violations = 0;
  std::string detail;
  bool pass() const { return discrepancies == 0 && weaker_than_violations == 0; }
};

TransferSummary check_transfer_entry(const LitmusTest& t, Scheme s,
                                     const RunOptions& opts);

/// DRF check: races of SC-consistent executions must all be sc-sc; when
/// they are, behaviors(RC11Ext) must equal behaviors(SC) on final
/// memories.
struct DrfReport {
  bool applicable = true;  // RMW-free precondition
  bool data_race_free = false;
  std::vector<std::string> race_witnesses;
  bool behaviors_equal = false;
  bool pass = false;
  std::string detail;
};

DrfReport check_drf_entry(const LitmusTest& t, const RunOptions& opts);

/// Transformation sweep over a test: all applicable strengthenings,
/// deorderings, merges, promotions, and NITIA/fence sequentializations
/// must preserve behavior inclusion.
struct TransformSweep {
  std::size_t applied = 0;
  std::vector<std::string> failures;
  bool pass() const { return failures.empty(); }
};

TransformSweep check_transform_sweep(const LitmusTest& t,
                                     const RunOptions& opts);

std::string report_to_json(const std::vector<RunReport>& reports);

}  // namespace asmm

#endif  // ASMM_RUNNER_HPP_
