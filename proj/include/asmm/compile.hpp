#ifndef ASMM_COMPILE_HPP_
#define ASMM_COMPILE_HPP_

#include <set>

#include "asmm/models.hpp"

namespace asmm {

/// The two compilation schemes to Ex86: the standard fence-after-sc-write
/// scheme, and the alternative one mapping rlx writes to non-temporal
/// stores at the price of store fences before rel/sc writes and for
/// rel/acqrel fences.
enum class Scheme { Standard, Alternative };

const char* to_string(Scheme s);

CmdPtr compile_cmd(const CmdPtr& c, Scheme s);

/// Structure-preserving: control flow, the thread map, and expressions are
/// unchanged; only memory commands are rewritten.
Program compile(const Program& p, Scheme s);

struct InclusionReport {
  bool holds = false;
  bool source_ub = false;
  bool inconclusive = false;  // an enumeration overflowed
  std::set<FinalMemory> extra_behaviors;   // target-only final memories
  std::vector<std::string> extra_described;  // target-only behaviors, printed
  std::size_t bound_used = 0;
  BehaviorSet source;
  BehaviorSet target;
};

/// behaviors(Ex86, compile(p)) ⊆ behaviors(RC11Ext, p), as final-memory
/// sets; a UB source admits everything.
InclusionReport check_compilation(const Program& p, Scheme s,
                                  const BehaviorOptions& opts);

/// Generic behavior-inclusion check under one model (used for program
/// transformations): behaviors(model, transformed) ⊆ behaviors(model,
/// original). With compare_registers, behaviors also carry final register
/// values, matched by name over the registers the two programs share and
/// that belong to a single thread in each (transformations may move
/// commands between threads or introduce fresh scratch registers).
InclusionReport check_inclusion(const Program& original,
                                const Program& transformed, ModelId model,
                                const BehaviorOptions& opts,
                                bool compare_registers = false);

}  // namespace asmm

#endif  // ASMM_COMPILE_HPP_
