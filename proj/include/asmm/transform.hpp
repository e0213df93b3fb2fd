#ifndef ASMM_TRANSFORM_HPP_
#define ASMM_TRANSFORM_HPP_

#include <optional>
#include <string>
#include <vector>

#include "asmm/compile.hpp"

namespace asmm {

/// A concrete command site: thread id plus the path of child indices from
/// the thread body (Seq/If/While children are s1=0, s2=1).
struct Site {
  ThreadId tid = 0;
  std::vector<int> path;

  std::string to_string() const;
};

struct TransformError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- strengthening ----------------------------------------------------------

/// Replaces the mode of the plain command at `site` with the stronger
/// mode md2 (md_old ⊑ md2, md2 legal for the command kind).
Program strengthen(const Program& p, const Site& site, Mode md2);

/// All legal (site, stronger-mode) pairs of a program.
std::vector<std::pair<Site, Mode>> enumerate_strengthenings(const Program& p);

// --- deordering --------------------------------------------------------------

/// The deorderable-pairs table: both plain RC11 memory commands, distinct
/// statically-known locations (when both have one), mode side conditions
/// per table cell.
bool deorderable(const CmdPtr& c1, const CmdPtr& c2);

/// Thread tid's body must be exactly a pair of deorderable commands; they
/// are split into two threads (tid keeps the first, a fresh thread id gets
/// the second).
Program deorder(const Program& p, ThreadId tid);

/// Threads whose body is a deorderable pair.
std::vector<ThreadId> enumerate_deorderings(const Program& p);

// --- merging -----------------------------------------------------------------

/// The mergeable-pairs table, at command level. Returns the replacement
/// (which may bind the eliminated command's register via a register move)
/// or nullopt when the pair matches no row.
std::optional<CmdPtr> mergeable(const CmdPtr& c1, const CmdPtr& c2);

/// Merges the adjacent pair whose first element is at `site`.
Program merge(const Program& p, const Site& site);

std::vector<Site> enumerate_merges(const Program& p);

// --- register promotion --------------------------------------------------------

/// Replaces accesses to loc (which must be used only by thread tid and
/// never through an inline-assembly RMW) with moves on a fresh register.
Program promote_register(const Program& p, Loc loc, ThreadId tid);

/// Locations eligible for promotion, with their owning thread.
std::vector<std::pair<Loc, ThreadId>> enumerate_promotions(const Program& p);

// --- sequentialization ----------------------------------------------------------

/// The two syntactic non-interference conditions making two-thread
/// sequentialization sound; RMWs are ignored on both sides. Dynamic
/// (non-literal) addresses make the answer conservatively false.
bool nitia_check(const Program& p, ThreadId t1, ThreadId t2,
                 std::string* why = nullptr);

enum class SeqKind { NITIA, Fence, Plain };

/// Merges threads t1 and t2 into one. `interleaving` picks, per step,
/// which thread contributes its next top-level command (true = t1); it is
/// padded with the remaining commands. SeqFence ignores it and emits
/// t1; F[sc]; t2. SeqPlain performs no side-condition check (it exists to
/// exhibit the unsoundness of unfenced sequentialization).
Program sequentialize(const Program& p, SeqKind kind, ThreadId t1, ThreadId t2,
                      const std::vector<bool>& interleaving = {});

// --- soundness ----------------------------------------------------------------

struct TransformDescr {
  std::string name;
  Program transformed;
};

/// behaviors(RC11Ext, transformed) ⊆ behaviors(RC11Ext, original) as
/// final-memory sets, with UB absorption.
InclusionReport check_transform_sound(const Program& original,
                                      const Program& transformed,
                                      const BehaviorOptions& opts);

}  // namespace asmm

#endif  // ASMM_TRANSFORM_HPP_
