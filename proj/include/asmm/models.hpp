#ifndef ASMM_MODELS_HPP_
#define ASMM_MODELS_HPP_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "asmm/opsem.hpp"

namespace asmm {

// ---------------------------------------------------------------------------
// Derived relations
// ---------------------------------------------------------------------------

struct DerivedRelations {
  Relation po, rf, mo, rb;
  Relation sw, hb, eco;
  Relation scb, psc_base, psc_fence, psc;
  Relation po_rc, ppo_asm;  // RC11Ext only
  Relation ppo, ob;         // Ex86 only
};

/// Computes the derived relations for the given model. hb/eco follow the
/// model's own definition (full rf for RC11; po-restricted hb and external
/// rf for RC11Ext); they are never mixed.
DerivedRelations derive_relations(const CandidateExecution& x, ModelId model);

/// The synchronizes-with composite, with mode ranges read under the
/// extended access-mode order (so sf fences may head an sw edge).
Relation sw_relation(const CandidateExecution& x, ModelId model);

// ---------------------------------------------------------------------------
// Consistency verdicts
// ---------------------------------------------------------------------------

struct AxiomViolation {
  std::string axiom;
  /// For acyclicity axioms: a genuine cycle; for irreflexivity axioms: a
  /// single event a with (a,a) in the axiom's relation.
  std::vector<EventId> witness;
};

struct Verdict {
  bool consistent = true;
  std::vector<AxiomViolation> violations;

  std::vector<std::string> violated_axioms() const {
    std::vector<std::string> names;
    for (const auto& v : violations) names.push_back(v.axiom);
    return names;
  }
};

/// The relation whose irreflexivity/acyclicity the named axiom asserts,
/// recomputed from scratch. Used to re-validate witnesses.
std::optional<Relation> axiom_relation(const CandidateExecution& x,
                                       ModelId model,
                                       const std::string& axiom);

/// True when every violation's witness is a genuine cycle (or reflexive
/// edge) in the recomputed axiom relation.
bool validate_verdict(const CandidateExecution& x, ModelId model,
                      const Verdict& v);

Verdict sc_consistent(const CandidateExecution& x);
Verdict rc11_consistent(const CandidateExecution& x);     // RC11 labels only
Verdict ex86_consistent(const CandidateExecution& x);     // Ex86 labels only
Verdict rc11ext_consistent(const CandidateExecution& x);  // mixed allowed

Verdict consistent(const CandidateExecution& x, ModelId model);

/// Label-set preconditions. Init events are exempt.
bool all_rc11_labels(const ExecutionGraph& g);
bool all_ex86_labels(const ExecutionGraph& g);

// ---------------------------------------------------------------------------
// Races, final states, behaviors
// ---------------------------------------------------------------------------

/// Unordered pairs (a,b), canonically a < b, that race with respect to hb:
/// distinct, same location, at least one in W ∪ RMW-s, unrelated by
/// hb⁺ ∪ (hb⁺)⁻¹.
std::vector<EventPair> races(const CandidateExecution& x, const Relation& hb);

using FinalMemory = std::map<Loc, Value>;

/// Partial map: ℓ is in the domain iff some non-init write or successful
/// RMW to ℓ exists; the value is that of the mo-maximal such event.
FinalMemory final_state(const CandidateExecution& x);

struct Behavior {
  FinalMemory memory;
  std::map<ThreadId, RegState> registers;

  friend bool operator==(const Behavior&, const Behavior&) = default;
  friend auto operator<=>(const Behavior&, const Behavior&) = default;
};

struct BehaviorSet {
  bool ub = false;  // absorbing: racy-na executions make everything allowed
  std::set<Behavior> behaviors;
  bool overflow = false;

  std::size_t graphs = 0;
  std::size_t candidates = 0;
  std::size_t consistent = 0;

  std::set<FinalMemory> memories() const {
    std::set<FinalMemory> out;
    for (const auto& b : behaviors) out.insert(b.memory);
    return out;
  }
};

struct BehaviorOptions {
  ValueDomain values = {0, 1};
  std::size_t step_bound = 10000;
};

/// Enumerates complete graphs × rf × mo, keeps the model-consistent ones,
/// and (for RC11/RC11Ext) scans every reachable prefix graph for a
/// consistent execution with an hb-race involving an na access, in which
/// case the result is UB.
BehaviorSet behaviors(const Program& p, ModelId model,
                      const BehaviorOptions& opts);

}  // namespace asmm

#endif  // ASMM_MODELS_HPP_
