#ifndef ASMM_MIXED_HPP_
#define ASMM_MIXED_HPP_

#include <stdexcept>
#include <string>
#include <vector>

#include "asmm/compile.hpp"

namespace asmm {

/// Node kinds of a mixed execution graph; each kind fixes how many target
/// events a node holds (2 for W-WMF/W-SFW, 3 for W-SFWMF, 0 for F-⊥).
/// The *-alt kinds belong to the alternative compilation scheme.
enum class NodeKind {
  Init,
  W_WMF,      // sc write        -> w; mfence
  W_W,        // na/rlx/rel/tso  -> w
  W_NT,       // nt write        -> movnt
  RMW_RMW_S,  // successful rmw  -> rmw
  RMW_RMW_F,  // failed rmw      -> rmw
  F_MF,       // sc fence        -> mfence
  F_SF,       // sf fence        -> sfence
  F_Bot,      // weaker fences   -> (erased)
  R_R,        // read            -> r
  W_SFWMF,    // alt: sc write   -> sfence; w; mfence
  W_SFW,      // alt: rel write  -> sfence; w
  W_NT_Alt,   // alt: rlx/nt     -> movnt
  F_SF_Alt,   // alt: sf/rel/acqrel -> sfence
};

const char* to_string(NodeKind k);

struct MixedNode {
  NodeKind kind = NodeKind::Init;
  /// Node identity: the source event the node carries.
  EventId id;
  Label source_label;
  /// Target events in emission order, with their labels.
  std::vector<std::pair<EventId, Label>> targets;
};

struct MixedGraph {
  Scheme scheme = Scheme::Standard;
  std::map<EventId, MixedNode> nodes;  // keyed by node id
  Relation rf, mo;                     // node-level relations
};

struct MixedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Simulation {
  MixedGraph mixed;
  CandidateExecution source;
};

/// Replays p's pool reduction in lockstep with the per-thread event stream
/// of a complete candidate execution of compile(p, s), grouping target
/// events into mixed nodes. Throws MixedError when the target stream does
/// not partition into legal node kinds.
Simulation build_simulation(const Program& p, Scheme s,
                            const CandidateExecution& target);

CandidateExecution project_source(const MixedGraph& m);
CandidateExecution project_target(const MixedGraph& m);

Verdict mixed_ex86_consistent(const MixedGraph& m);
Verdict mixed_rc11ext_consistent(const MixedGraph& m);

struct TransferReport {
  bool ok = true;
  bool mixed_rc11ext = false, source_rc11ext = false;
  bool mixed_ex86 = false, target_ex86 = false;
  std::string detail;
};

/// Checks both Transfer equivalences:
/// mixed RC11Ext-consistency ⇔ RC11Ext-consistency of the source
/// projection, and mixed Ex86-consistency ⇔ Ex86-consistency of the
/// target projection.
TransferReport transfer_check(const MixedGraph& m);

/// Order-preserving per-thread renumbering, for comparing executions that
/// agree up to event identities.
CandidateExecution canonicalize_execution(const CandidateExecution& x);

}  // namespace asmm

#endif  // ASMM_MIXED_HPP_
