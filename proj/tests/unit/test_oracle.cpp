#include <doctest.h>

#include <random>

#include "asmm/corpus.hpp"
#include "helpers.hpp"
#include "sc_oracle.hpp"

using namespace asmm;
using namespace asmm::testing;

namespace {

bool is_loop_free(const CmdPtr& c) {
  if (!c) return true;
  if (c->kind == Cmd::Kind::While) return false;
  return is_loop_free(c->s1) && is_loop_free(c->s2);
}

bool is_loop_free(const Program& p) {
  for (const auto& [_, body] : p.threads)
    if (!is_loop_free(body)) return false;
  return true;
}

}  // namespace

TEST_CASE("brute-force interleavings equal the axiomatic SC behaviors") {
  for (const auto& entry : corpus()) {
    REQUIRE(is_loop_free(entry.test.program));
    BehaviorOptions opts;
    opts.values = value_domain(entry.test);
    BehaviorSet axiomatic = behaviors(entry.test.program, ModelId::SC, opts);
    std::set<Behavior> oracle =
        sc_interleaving_behaviors(entry.test.program);
    INFO("test ", entry.name);
    CHECK(axiomatic.behaviors == oracle);
  }
}

TEST_CASE("oracle agreement on random loop-free programs") {
  std::mt19937 rng(4242);
  for (int i = 0; i < 120; ++i) {
    Program p = random_program(rng, ProgKind::Mixed);
    BehaviorOptions opts;
    BehaviorSet axiomatic = behaviors(p, ModelId::SC, opts);
    std::set<Behavior> oracle = sc_interleaving_behaviors(p);
    CHECK(axiomatic.behaviors == oracle);
  }
}
