#include "asmm/relalg.hpp"

#include <algorithm>
#include <map>

namespace asmm {

EventSet Relation::field() const {
  EventSet s;
  for (const auto& [a, b] : pairs_) {
    s.insert(a);
    s.insert(b);
  }
  return s;
}

Relation Relation::unite(const Relation& other) const {
  std::set<EventPair> out = pairs_;
  out.insert(other.pairs_.begin(), other.pairs_.end());
  return Relation(std::move(out));
}

Relation Relation::minus(const Relation& other) const {
  std::set<EventPair> out;
  for (const auto& p : pairs_)
    if (!other.pairs_.count(p)) out.insert(p);
  return Relation(std::move(out));
}

Relation Relation::intersect(const Relation& other) const {
  std::set<EventPair> out;
  for (const auto& p : pairs_)
    if (other.pairs_.count(p)) out.insert(p);
  return Relation(std::move(out));
}

Relation Relation::inverse() const {
  std::set<EventPair> out;
  for (const auto& [a, b] : pairs_) out.insert({b, a});
  return Relation(std::move(out));
}

Relation Relation::filter(const std::function<bool(const EventId&)>& src,
                          const std::function<bool(const EventId&)>& dst) const {
  std::set<EventPair> out;
  for (const auto& p : pairs_)
    if (src(p.first) && dst(p.second)) out.insert(p);
  return Relation(std::move(out));
}

Relation Relation::filter_pairs(
    const std::function<bool(const EventId&, const EventId&)>& keep) const {
  std::set<EventPair> out;
  for (const auto& p : pairs_)
    if (keep(p.first, p.second)) out.insert(p);
  return Relation(std::move(out));
}

Relation compose(const Relation& r1, const Relation& r2) {
  std::map<EventId, std::vector<EventId>> succ;
  for (const auto& [b, c] : r2.pairs()) succ[b].push_back(c);
  std::set<EventPair> out;
  for (const auto& [a, b] : r1.pairs()) {
    auto it = succ.find(b);
    if (it == succ.end()) continue;
    for (const auto& c : it->second) out.insert({a, c});
  }
  return Relation(std::move(out));
}

Relation identity_on(const EventSet& s) {
  std::set<EventPair> out;
  for (const auto& e : s) out.insert({e, e});
  return Relation(std::move(out));
}

Relation inverse(const Relation& r) { return r.inverse(); }

Relation reflexive_closure(const Relation& r, const EventSet& carrier) {
  return r.unite(identity_on(carrier));
}

Relation transitive_closure(const Relation& r) {
  std::map<EventId, std::set<EventId>> succ;
  for (const auto& [a, b] : r.pairs()) succ[a].insert(b);
  // Per-source DFS over the finite field.
  std::set<EventPair> out;
  for (const auto& [a, _] : succ) {
    std::vector<EventId> stack(succ[a].begin(), succ[a].end());
    std::set<EventId> reached;
    while (!stack.empty()) {
      EventId b = stack.back();
      stack.pop_back();
      if (!reached.insert(b).second) continue;
      auto it = succ.find(b);
      if (it != succ.end())
        for (const auto& c : it->second)
          if (!reached.count(c)) stack.push_back(c);
    }
    for (const auto& b : reached) out.insert({a, b});
  }
  return Relation(std::move(out));
}

Relation refl_trans_closure(const Relation& r, const EventSet& carrier) {
  return reflexive_closure(transitive_closure(r), carrier);
}

std::pair<Relation, Relation> split_internal_external(const Relation& r) {
  std::set<EventPair> in, ex;
  for (const auto& p : r.pairs()) {
    bool internal = !p.first.is_init() && !p.second.is_init() &&
                    p.first.tid == p.second.tid;
    (internal ? in : ex).insert(p);
  }
  return {Relation(std::move(in)), Relation(std::move(ex))};
}

Relation internal_part(const Relation& r) {
  return split_internal_external(r).first;
}

Relation external_part(const Relation& r) {
  return split_internal_external(r).second;
}

Relation restrict_same_loc(const Relation& r, const LocOf& loc_of) {
  return r.filter_pairs([&](const EventId& a, const EventId& b) {
    auto la = loc_of(a), lb = loc_of(b);
    return la && lb && *la == *lb;
  });
}

Relation restrict_diff_loc(const Relation& r, const LocOf& loc_of) {
  return r.minus(restrict_same_loc(r, loc_of));
}

Relation restrict_at_loc(const Relation& r, Loc loc, const LocOf& loc_of) {
  return r.filter_pairs([&](const EventId& a, const EventId& b) {
    auto la = loc_of(a), lb = loc_of(b);
    return la && lb && *la == loc && *lb == loc;
  });
}

bool is_irreflexive(const Relation& r) {
  for (const auto& [a, b] : r.pairs())
    if (a == b) return false;
  return true;
}

namespace {

enum class Color { White, Gray, Black };

bool cycle_dfs(const EventId& v,
               const std::map<EventId, std::vector<EventId>>& succ,
               std::map<EventId, Color>& color, std::vector<EventId>& path,
               std::vector<EventId>& cycle) {
  color[v] = Color::Gray;
  path.push_back(v);
  auto it = succ.find(v);
  if (it != succ.end()) {
    for (const auto& w : it->second) {
      Color c = color.count(w) ? color[w] : Color::White;
      if (c == Color::Gray) {
        auto start = std::find(path.begin(), path.end(), w);
        cycle.assign(start, path.end());
        return true;
      }
      if (c == Color::White && cycle_dfs(w, succ, color, path, cycle))
        return true;
    }
  }
  path.pop_back();
  color[v] = Color::Black;
  return false;
}

}  // namespace

std::optional<std::vector<EventId>> find_cycle(const Relation& r) {
  std::map<EventId, std::vector<EventId>> succ;
  for (const auto& [a, b] : r.pairs()) succ[a].push_back(b);
  std::map<EventId, Color> color;
  std::vector<EventId> path, cycle;
  for (const auto& [a, _] : succ) {
    Color c = color.count(a) ? color[a] : Color::White;
    if (c == Color::White && cycle_dfs(a, succ, color, path, cycle))
      return cycle;
  }
  return std::nullopt;
}

std::optional<EventId> find_reflexive(const Relation& r) {
  for (const auto& [a, b] : r.pairs())
    if (a == b) return a;
  return std::nullopt;
}

bool is_acyclic(const Relation& r) { return !find_cycle(r).has_value(); }

}  // namespace asmm
