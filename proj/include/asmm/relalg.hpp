#ifndef ASMM_RELALG_HPP_
#define ASMM_RELALG_HPP_

#include <functional>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "asmm/event.hpp"

namespace asmm {

using EventSet = std::set<EventId>;
using EventPair = std::pair<EventId, EventId>;

/// Finite binary relation over event identifiers, with the usual
/// relation algebra (composition, closures, restrictions, splits).
/// All operations are pure: they return fresh relations.
class Relation {
 public:
  Relation() = default;
  explicit Relation(std::set<EventPair> pairs) : pairs_(std::move(pairs)) {}
  Relation(std::initializer_list<EventPair> pairs) : pairs_(pairs) {}

  const std::set<EventPair>& pairs() const { return pairs_; }
  bool contains(const EventId& a, const EventId& b) const {
    return pairs_.count({a, b}) != 0;
  }
  bool empty() const { return pairs_.empty(); }
  std::size_t size() const { return pairs_.size(); }

  void insert(const EventId& a, const EventId& b) { pairs_.insert({a, b}); }

  /// Events appearing on either side of some pair.
  EventSet field() const;

  Relation unite(const Relation& other) const;
  Relation minus(const Relation& other) const;
  Relation intersect(const Relation& other) const;
  Relation inverse() const;

  /// Keeps pairs whose endpoints both satisfy the predicates.
  Relation filter(const std::function<bool(const EventId&)>& src,
                  const std::function<bool(const EventId&)>& dst) const;
  Relation filter_pairs(
      const std::function<bool(const EventId&, const EventId&)>& keep) const;

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  std::set<EventPair> pairs_;
};

Relation compose(const Relation& r1, const Relation& r2);

/// [S]: the smallest reflexive relation on a set.
Relation identity_on(const EventSet& s);

Relation inverse(const Relation& r);

/// R? over an explicit carrier (the paper leaves the carrier implicit).
Relation reflexive_closure(const Relation& r, const EventSet& carrier);

/// R⁺, computed to a fixed point over the finite field of r.
Relation transitive_closure(const Relation& r);

/// R* over an explicit carrier.
Relation refl_trans_closure(const Relation& r, const EventSet& carrier);

/// Splits r into (internal, external) components: a pair is internal when
/// both endpoints are thread events of the same thread. Init events have
/// no thread, so pairs touching Init are external.
std::pair<Relation, Relation> split_internal_external(const Relation& r);

Relation internal_part(const Relation& r);
Relation external_part(const Relation& r);

using LocOf = std::function<std::optional<Loc>(const EventId&)>;

/// R|loc: pairs whose endpoints have equal, defined locations.
Relation restrict_same_loc(const Relation& r, const LocOf& loc_of);
/// R|≠loc: the set difference R ∖ R|loc.
Relation restrict_diff_loc(const Relation& r, const LocOf& loc_of);
/// R|ℓ: pairs whose endpoints both access ℓ.
Relation restrict_at_loc(const Relation& r, Loc loc, const LocOf& loc_of);

bool is_irreflexive(const Relation& r);
bool is_acyclic(const Relation& r);

/// A cycle witness: events c0 → c1 → ... → ck → c0 with consecutive pairs
/// (and the wrap-around pair) in r. Empty when r is acyclic. A self-loop
/// yields a one-element cycle.
std::optional<std::vector<EventId>> find_cycle(const Relation& r);

/// A reflexive witness: some a with (a,a) ∈ r.
std::optional<EventId> find_reflexive(const Relation& r);

}  // namespace asmm

#endif  // ASMM_RELALG_HPP_
