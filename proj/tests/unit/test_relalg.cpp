#include <doctest.h>

#include <random>

#include "asmm/relalg.hpp"

using namespace asmm;

namespace {

EventId ev(int tid, int idx) { return EventId::thread(tid, idx); }

Relation random_relation(std::mt19937& rng, int nevents, double density) {
  Relation r;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int i = 0; i < nevents; ++i)
    for (int j = 0; j < nevents; ++j)
      if (coin(rng) < density) r.insert(ev(0, i), ev(0, j));
  return r;
}

EventSet carrier_of(int nevents) {
  EventSet s;
  for (int i = 0; i < nevents; ++i) s.insert(ev(0, i));
  return s;
}

}  // namespace

TEST_CASE("compose: definitional examples") {
  EventId a = ev(0, 0), b = ev(0, 1), c = ev(0, 2);
  CHECK(compose(Relation{{a, b}}, Relation{{b, c}}) == Relation{{a, c}});
  CHECK(compose(Relation{}, Relation{{a, b}}) == Relation{});
  CHECK(compose(Relation{{a, b}}, Relation{}) == Relation{});
  // {(a,b),(b,a)} ; {(a,b)} -> {(b,b)}: only pairs through a survive.
  CHECK(compose(Relation{{a, b}, {b, a}}, Relation{{a, b}}) ==
        Relation{{b, b}});
}

TEST_CASE("identity_on") {
  EventId a = ev(0, 0), b = ev(0, 1);
  CHECK(identity_on({a, b}) == Relation{{a, a}, {b, b}});
  CHECK(identity_on({}) == Relation{});
  CHECK(identity_on({a}) == Relation{{a, a}});
}

TEST_CASE("inverse and closures") {
  EventId a = ev(0, 0), b = ev(0, 1), c = ev(0, 2);
  CHECK(inverse(Relation{{a, b}}) == Relation{{b, a}});
  CHECK(transitive_closure(Relation{{a, b}, {b, c}}) ==
        Relation{{a, b}, {b, c}, {a, c}});
  // The carrier must be supplied for the reflexive part.
  CHECK(refl_trans_closure(Relation{}, {a}) == Relation{{a, a}});
}

TEST_CASE("internal/external split") {
  EventId t10 = ev(1, 0), t11 = ev(1, 1), t20 = ev(2, 0);
  EventId init = EventId::init(0);

  auto [in1, ex1] = split_internal_external(Relation{{t10, t11}});
  CHECK(in1 == Relation{{t10, t11}});
  CHECK(ex1.empty());

  auto [in2, ex2] = split_internal_external(Relation{{t10, t20}});
  CHECK(in2.empty());
  CHECK(ex2 == Relation{{t10, t20}});

  // Init events have no thread: init-to-read pairs are external, so reads
  // of initial values flow through external rf.
  auto [in3, ex3] = split_internal_external(Relation{{init, t10}});
  CHECK(in3.empty());
  CHECK(ex3 == Relation{{init, t10}});
}

TEST_CASE("location restrictions") {
  EventId wx = ev(0, 0), rx = ev(1, 0), ry = ev(1, 1), wy = ev(2, 0);
  auto loc_of = [&](const EventId& e) -> std::optional<Loc> {
    if (e == wx || e == rx) return 0;
    if (e == ry || e == wy) return 1;
    return std::nullopt;  // fences
  };
  Relation r{{wx, rx}, {wx, ry}};
  CHECK(restrict_same_loc(r, loc_of) == Relation{{wx, rx}});
  CHECK(restrict_diff_loc(r, loc_of) == Relation{{wx, ry}});
  CHECK(restrict_at_loc(Relation{{wx, rx}, {wy, ry}}, 0, loc_of) ==
        Relation{{wx, rx}});
}

TEST_CASE("irreflexivity and acyclicity") {
  EventId a = ev(0, 0), b = ev(0, 1), c = ev(0, 2);
  CHECK(!is_acyclic(Relation{{a, b}, {b, a}}));
  CHECK(is_irreflexive(Relation{}));
  CHECK(!is_acyclic(Relation{{a, b}, {b, c}, {c, a}}));
  CHECK(is_acyclic(Relation{{a, b}, {b, c}, {a, c}}));
  CHECK(!is_irreflexive(Relation{{a, a}}));
}

TEST_CASE("cycle witnesses are genuine") {
  std::mt19937 rng(7);
  for (int i = 0; i < 500; ++i) {
    Relation r = random_relation(rng, 6, 0.2);
    auto cycle = find_cycle(r);
    if (!cycle) {
      CHECK(is_irreflexive(transitive_closure(r)));
      continue;
    }
    REQUIRE(!cycle->empty());
    for (std::size_t k = 0; k < cycle->size(); ++k)
      CHECK(r.contains((*cycle)[k], (*cycle)[(k + 1) % cycle->size()]));
  }
}

TEST_CASE("algebra laws on random relations") {
  std::mt19937 rng(11);
  int cases = 0;
  for (int i = 0; i < 1500; ++i) {
    int n = 3 + static_cast<int>(rng() % 6);  // up to 8 events
    Relation r1 = random_relation(rng, n, 0.25);
    Relation r2 = random_relation(rng, n, 0.25);
    Relation r3 = random_relation(rng, n, 0.25);
    EventSet carrier = carrier_of(n);

    // Associativity of composition.
    CHECK(compose(compose(r1, r2), r3) == compose(r1, compose(r2, r3)));
    // identity_on(full carrier) is neutral.
    CHECK(compose(identity_on(carrier), r1) == r1);
    CHECK(compose(r1, identity_on(carrier)) == r1);
    // Transitive closure is idempotent...
    Relation tc = transitive_closure(r1);
    CHECK(transitive_closure(tc) == tc);
    // ... and monotone.
    Relation u = r1.unite(r2);
    for (const auto& pr : tc.pairs())
      CHECK(transitive_closure(u).contains(pr.first, pr.second));
    // Split parts are disjoint and partition the input.
    auto [internal, external] = split_internal_external(r1);
    CHECK(internal.intersect(external).empty());
    CHECK(internal.unite(external) == r1);
    // acyc(r) iff irr(r+).
    CHECK(is_acyclic(r1) == is_irreflexive(tc));
    cases += 8;
  }
  MESSAGE("relalg randomized checks: ", cases);
  CHECK(cases >= 10000);
}
