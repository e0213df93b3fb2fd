#ifndef ASMM_OPSEM_HPP_
#define ASMM_OPSEM_HPP_

#include <map>
#include <set>
#include <vector>

#include "asmm/lang.hpp"
#include "asmm/relalg.hpp"

namespace asmm {

// ---------------------------------------------------------------------------
// Execution graphs
// ---------------------------------------------------------------------------

struct ExecutionGraph {
  /// Event set and label map; Init events carry W(na, ℓ, 0).
  std::map<EventId, Label> events;

  EventSet event_set() const;
  bool has(const EventId& e) const { return events.count(e) != 0; }
  const Label& label(const EventId& e) const { return events.at(e); }

  std::optional<Loc> loc_of(const EventId& e) const;
  std::set<ThreadId> thread_ids() const;
  /// Events of one thread, in index order.
  std::vector<EventId> thread_events(ThreadId tid) const;

  friend bool operator==(const ExecutionGraph&, const ExecutionGraph&) = default;
  friend auto operator<=>(const ExecutionGraph&, const ExecutionGraph&) = default;
};

/// Init before every thread event; same-thread events ordered by index.
Relation program_order(const ExecutionGraph& g);

/// Execution graph extended with reads-from and per-location modification
/// order, plus the final register state each thread reached.
struct CandidateExecution {
  ExecutionGraph graph;
  Relation rf;
  Relation mo;
  std::map<ThreadId, RegState> final_regs;

  std::optional<Loc> loc_of(const EventId& e) const { return graph.loc_of(e); }
};

// ---------------------------------------------------------------------------
// Pool reduction
// ---------------------------------------------------------------------------

struct Thread {
  RegState reg_st;
  std::int64_t ev_counter = 0;
  CmdPtr next_cmd;
};

using Pool = std::map<ThreadId, Thread>;

Pool initial_pool(const Program& p);
ExecutionGraph initial_graph(const Program& p);

using ValueDomain = std::set<Value>;

/// One successor per applicable rule instance. Reads (and failed RMWs)
/// branch over the value domain; everything else is deterministic.
/// Terminating threads have their final register state recorded.
std::vector<std::pair<Pool, ExecutionGraph>> pool_step(
    const Pool& pool, const ExecutionGraph& g, const ValueDomain& values,
    std::map<ThreadId, RegState>* final_regs = nullptr);

enum class ExplorationOrder { DFS, BFS };

struct EnumerationResult {
  /// Graphs of runs that reduced the pool to ∅, deduplicated.
  std::vector<ExecutionGraph> complete;
  /// Final register states, keyed by complete-graph position.
  std::vector<std::map<ThreadId, RegState>> complete_regs;
  /// Every reachable graph (prefixes of runs), deduplicated. Only filled
  /// when requested.
  std::vector<ExecutionGraph> prefixes;
  bool overflow = false;
  std::size_t states_explored = 0;
};

struct EnumerationOptions {
  ValueDomain values = {0, 1};
  std::size_t step_bound = 10000;
  bool collect_prefixes = false;
  ExplorationOrder order = ExplorationOrder::DFS;
};

EnumerationResult enumerate_graphs(const Program& p,
                                   const EnumerationOptions& opts);

// ---------------------------------------------------------------------------
// Candidate extensions
// ---------------------------------------------------------------------------

/// All rf relations satisfying the candidate invariants: functional and
/// surjective onto R ∪ RMW, same location, value match. A read with no
/// matching write yields zero candidates.
std::vector<Relation> enumerate_rf(const ExecutionGraph& g);

/// All mo relations: per location, every permutation of the non-init
/// writes, with Init ℓ first.
std::vector<Relation> enumerate_mo(const ExecutionGraph& g);

/// rf × mo product for a complete graph.
std::vector<CandidateExecution> enumerate_candidates(
    const ExecutionGraph& g, const std::map<ThreadId, RegState>& final_regs);

}  // namespace asmm

#endif  // ASMM_OPSEM_HPP_
