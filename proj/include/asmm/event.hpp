#ifndef ASMM_EVENT_HPP_
#define ASMM_EVENT_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>

namespace asmm {

using Value = std::uint64_t;
using Loc = std::uint64_t;
using ThreadId = std::int32_t;

/// Access modes. The partial order over them is defined in mode.hpp;
/// plain x86 accesses carry tso, non-temporal stores nt, store fences sf.
enum class Mode : std::uint8_t { na, rlx, rel, acq, acqrel, sc, nt, sf, tso };

const char* to_string(Mode m);

/// A node of an execution graph: either the initialization event of a
/// location, or the idx-th event emitted by thread tid.
struct EventId {
  static constexpr ThreadId kInitTid = -1;

  ThreadId tid = 0;
  std::int64_t idx = 0;

  static EventId init(Loc loc) {
    return EventId{kInitTid, static_cast<std::int64_t>(loc)};
  }
  static EventId thread(ThreadId tid, std::int64_t idx) {
    return EventId{tid, idx};
  }

  bool is_init() const { return tid == kInitTid; }
  Loc init_loc() const { return static_cast<Loc>(idx); }

  friend bool operator==(const EventId&, const EventId&) = default;
  friend auto operator<=>(const EventId&, const EventId&) = default;
};

std::string to_string(const EventId& e);

enum class LabelKind : std::uint8_t { Read, Write, Fence, Rmw };

/// Memory-action label. For reads, `value` is the value read; for writes,
/// the value written. An Rmw label carries the value read in `value` and
/// the value written in `rmw_written`; a failed Rmw has no written value.
struct Label {
  LabelKind kind = LabelKind::Fence;
  Mode mode = Mode::sc;
  Loc loc = 0;
  Value value = 0;
  std::optional<Value> rmw_written;

  static Label read(Mode md, Loc l, Value v) {
    return Label{LabelKind::Read, md, l, v, std::nullopt};
  }
  static Label write(Mode md, Loc l, Value v) {
    return Label{LabelKind::Write, md, l, v, std::nullopt};
  }
  static Label fence(Mode md) {
    return Label{LabelKind::Fence, md, 0, 0, std::nullopt};
  }
  static Label rmw_success(Mode md, Loc l, Value read, Value written) {
    return Label{LabelKind::Rmw, md, l, read, written};
  }
  static Label rmw_fail(Mode md, Loc l, Value read) {
    return Label{LabelKind::Rmw, md, l, read, std::nullopt};
  }

  bool is_read() const { return kind == LabelKind::Read; }
  bool is_write() const { return kind == LabelKind::Write; }
  bool is_fence() const { return kind == LabelKind::Fence; }
  bool is_rmw() const { return kind == LabelKind::Rmw; }
  bool is_rmw_success() const { return is_rmw() && rmw_written.has_value(); }
  bool is_rmw_fail() const { return is_rmw() && !rmw_written.has_value(); }

  /// W ∪ RMW-s: events that put a value into memory.
  bool writes_memory() const { return is_write() || is_rmw_success(); }
  /// R ∪ RMW: events that take a value from memory.
  bool reads_memory() const { return is_read() || is_rmw(); }
  bool has_loc() const { return kind != LabelKind::Fence; }

  Value value_written() const { return is_write() ? value : *rmw_written; }
  Value value_read() const { return value; }

  friend bool operator==(const Label&, const Label&) = default;
  friend auto operator<=>(const Label&, const Label&) = default;
};

std::string to_string(const Label& l);

}  // namespace asmm

#endif  // ASMM_EVENT_HPP_
