#include <doctest.h>

#include "asmm/corpus.hpp"
#include "asmm/parser.hpp"
#include "asmm/transform.hpp"
#include "helpers.hpp"

using namespace asmm;
using namespace asmm::testing;

namespace {

Program parse_prog(const std::string& body) {
  return parse_litmus("test t\n" + body).program;
}

CmdPtr read(Mode m, const char* r, int loc) {
  return Cmd::make_read(m, r, Expr::make_loc(loc));
}
CmdPtr write(Mode m, int loc, Value v) {
  return Cmd::make_write(m, Expr::make_loc(loc), Expr::make_num(v));
}
CmdPtr rmw(Mode m, const char* r, int loc, Value e, Value n) {
  return Cmd::make_rmw(m, r, Expr::make_loc(loc), Expr::make_num(e),
                       Expr::make_num(n));
}
CmdPtr fence(Mode m) { return Cmd::make_fence(m); }

}  // namespace

TEST_CASE("strengthen") {
  Program p = parse_prog("thread 0:\n  a := R[rlx] [x]\n");
  Program q = strengthen(p, Site{0, {}}, Mode::acq);
  CHECK(q.threads.at(0)->mode == Mode::acq);

  Program pna = parse_prog("thread 0:\n  W[na] [x] 1\n");
  CHECK(strengthen(pna, Site{0, {}}, Mode::rlx).threads.at(0)->mode ==
        Mode::rlx);

  // asm commands carry no strengthenable surface mode.
  Program pasm = parse_prog("thread 0:\n  asm movnt [x] 1\n");
  CHECK_THROWS_AS(strengthen(pasm, Site{0, {}}, Mode::rlx), TransformError);

  // Non-comparable or illegal targets are rejected.
  Program pr = parse_prog("thread 0:\n  a := R[acq] [x]\n");
  CHECK_THROWS_AS(strengthen(pr, Site{0, {}}, Mode::rel), TransformError);
  CHECK_THROWS_AS(strengthen(pr, Site{0, {}}, Mode::tso), TransformError);
}

TEST_CASE("deorderable: table cells") {
  // R-R requires md1 ⊑ rlx.
  CHECK(deorderable(read(Mode::rlx, "a", 0), read(Mode::rlx, "b", 1)));
  CHECK(!deorderable(read(Mode::acq, "a", 0), read(Mode::rlx, "b", 1)));
  // W-R requires both non-sc.
  CHECK(!deorderable(write(Mode::sc, 0, 1), read(Mode::sc, "a", 1)));
  CHECK(deorderable(write(Mode::rel, 0, 1), read(Mode::acq, "a", 1)));
  // W-W requires md2 ⊑ rlx.
  CHECK(deorderable(write(Mode::rel, 0, 1), write(Mode::rlx, 1, 1)));
  CHECK(!deorderable(write(Mode::rlx, 0, 1), write(Mode::rel, 1, 1)));
  // R-W needs both ⊑ rlx and one na.
  CHECK(deorderable(read(Mode::na, "a", 0), write(Mode::rlx, 1, 1)));
  CHECK(!deorderable(read(Mode::rlx, "a", 0), write(Mode::rlx, 1, 1)));
  // RMW rows.
  CHECK(deorderable(rmw(Mode::rlx, "a", 0, 0, 1), read(Mode::rlx, "b", 1)));
  CHECK(!deorderable(rmw(Mode::acq, "a", 0, 0, 1), read(Mode::rlx, "b", 1)));
  CHECK(!deorderable(rmw(Mode::rlx, "a", 0, 0, 1), rmw(Mode::rlx, "b", 1, 0, 1)));
  CHECK(deorderable(rmw(Mode::acqrel, "a", 0, 0, 1), fence(Mode::acq)));
  // Fence rows: only rel fences move.
  CHECK(deorderable(fence(Mode::rel), read(Mode::rlx, "a", 0)));
  CHECK(deorderable(fence(Mode::rel), write(Mode::rel, 0, 1)));
  CHECK(!deorderable(fence(Mode::rel), write(Mode::rlx, 0, 1)));
  CHECK(deorderable(fence(Mode::rel), fence(Mode::acq)));
  CHECK(!deorderable(fence(Mode::acqrel), read(Mode::rlx, "a", 0)));
  // Same location blocks deordering; asm commands are not in the table.
  CHECK(!deorderable(read(Mode::rlx, "a", 0), read(Mode::rlx, "b", 0)));
  CHECK(!deorderable(Cmd::make_asm_read("a", Expr::make_loc(0)),
                     read(Mode::rlx, "b", 1)));
}

TEST_CASE("deorder: thread splitting and soundness") {
  Program p = parse_prog(
      "thread 0:\n  a := R[rlx] [x];\n  b := R[rlx] [y]\n"
      "thread 1:\n  W[rel] [x] 1;\n  W[rel] [y] 1\n");
  REQUIRE(enumerate_deorderings(p) == std::vector<ThreadId>{0});
  Program q = deorder(p, 0);
  CHECK(q.threads.size() == 3);
  CHECK(q.threads.at(0)->kind == Cmd::Kind::Read);
  CHECK(q.threads.at(2)->kind == Cmd::Kind::Read);

  BehaviorOptions opts;
  CHECK(check_transform_sound(p, q, opts).holds);
}

TEST_CASE("mergeable rows") {
  // W;W same mode, same location.
  auto ww = mergeable(write(Mode::rlx, 0, 1), write(Mode::rlx, 0, 0));
  REQUIRE(ww);
  CHECK((*ww)->kind == Cmd::Kind::Write);
  CHECK(eval_expr((*ww)->arg1, {}) == 0);
  CHECK(!mergeable(write(Mode::rlx, 0, 1), write(Mode::rel, 0, 0)));
  CHECK(!mergeable(write(Mode::rlx, 0, 1), write(Mode::rlx, 1, 0)));

  // W^sc;R^sc keeps the write and binds the register.
  auto wr = mergeable(write(Mode::sc, 0, 1), read(Mode::sc, "a", 0));
  REQUIRE(wr);
  CHECK((*wr)->s1->kind == Cmd::Kind::Write);
  CHECK((*wr)->s2->kind == Cmd::Kind::Assign);

  // W^md;R^acq.
  CHECK(mergeable(write(Mode::rlx, 0, 1), read(Mode::acq, "a", 0)));
  CHECK(!mergeable(write(Mode::rlx, 0, 1), read(Mode::rlx, "a", 0)));

  // F;F.
  auto ff = mergeable(fence(Mode::sc), fence(Mode::sc));
  REQUIRE(ff);
  CHECK((*ff)->kind == Cmd::Kind::Fence);
  CHECK(!mergeable(fence(Mode::sc), fence(Mode::acq)));

  // R;R.
  CHECK(mergeable(read(Mode::rlx, "a", 0), read(Mode::rlx, "b", 0)));

  // RMW;RMW chains through the written value.
  CHECK(mergeable(rmw(Mode::rlx, "a", 0, 0, 1), rmw(Mode::rlx, "b", 0, 1, 0)));
  CHECK(!mergeable(rmw(Mode::rlx, "a", 0, 0, 1), rmw(Mode::rlx, "b", 0, 0, 1)));
}

TEST_CASE("merge soundness on programs") {
  BehaviorOptions opts;
  // Overwritten write.
  Program p1 = parse_prog(
      "thread 0:\n  W[rlx] [x] 1;\n  W[rlx] [x] 0\n"
      "thread 1:\n  a := R[rlx] [x]\n");
  auto sites1 = enumerate_merges(p1);
  REQUIRE(sites1.size() == 1);
  CHECK(check_transform_sound(p1, merge(p1, sites1[0]), opts).holds);

  // Read-after-write.
  Program p2 = parse_prog(
      "thread 0:\n  W[sc] [x] 1;\n  a := R[sc] [x]\n"
      "thread 1:\n  W[sc] [x] 0\n");
  auto sites2 = enumerate_merges(p2);
  REQUIRE(!sites2.empty());
  CHECK(check_transform_sound(p2, merge(p2, sites2[0]), opts).holds);

  // Repeated read.
  Program p3 = parse_prog(
      "thread 0:\n  a := R[rlx] [x];\n  b := R[rlx] [x]\n"
      "thread 1:\n  W[rlx] [x] 1\n");
  auto sites3 = enumerate_merges(p3);
  REQUIRE(!sites3.empty());
  CHECK(check_transform_sound(p3, merge(p3, sites3[0]), opts).holds);
}

TEST_CASE("register promotion") {
  // Thread-local location with plain accesses promotes.
  Program p = parse_prog(
      "thread 0:\n  W[rlx] [z] 1;\n  a := R[rlx] [z];\n  W[rel] [y] 1\n"
      "thread 1:\n  b := R[acq] [y]\n");
  Loc z = 0;
  Program q = promote_register(p, z, 0);
  CHECK(!q.locations().count(z));
  BehaviorOptions opts;
  CHECK(check_transform_sound(p, q, opts).holds);
  // The promoted read must still see the promoted write's value.
  bool a_is_one = false;
  for (const auto& b : behaviors(q, ModelId::RC11Ext, opts).behaviors)
    a_is_one |= b.registers.at(0).get("a") == 1;
  CHECK(a_is_one);

  // Shared locations are rejected.
  Program shared = parse_prog(
      "thread 0:\n  W[rlx] [z] 1\nthread 1:\n  a := R[rlx] [z]\n");
  CHECK_THROWS_AS(promote_register(shared, 0, 0), TransformError);

  // Locations accessed through an inline-assembly RMW are rejected.
  const Program& cx = corpus_entry("PROMOTE-RMW").test.program;
  Loc zloc = parse_litmus(corpus_entry("PROMOTE-RMW").text).loc_names.at("z");
  CHECK_THROWS_AS(promote_register(cx, zloc, 0), TransformError);
  CHECK(enumerate_promotions(cx).empty());

  // Plain RC11 RMWs on a local location may be promoted.
  Program prmw = parse_prog(
      "thread 0:\n  W[rlx] [z] 1;\n  a := RMW[rlx] [z] 1 0;\n  W[rel] [y] 1\n"
      "thread 1:\n  b := R[acq] [y]\n");
  Program qrmw = promote_register(prmw, 0, 0);
  CHECK(check_transform_sound(prmw, qrmw, opts).holds);
}

TEST_CASE("promoting away an x86 rmw barrier would change verdicts") {
  // The mechanism behind the promotion side condition: with the asm rmw in
  // place the weak outcome is forbidden; replacing it by register moves
  // (done here by hand) makes the weak outcome appear.
  const Program& orig = corpus_entry("PROMOTE-RMW").test.program;
  BehaviorOptions opts;
  BehaviorSet before = behaviors(orig, ModelId::RC11Ext, opts);
  for (const auto& b : before.behaviors) {
    bool weak = b.registers.at(1).get("b") == 1 && b.registers.at(1).get("c") == 0;
    CHECK(!weak);
  }

  Program hand = parse_litmus(R"(test hand
thread 0:
  asm movnt [x] 1;
  d := 0;
  a := d;
  d := 1;
  W[rel] [y] 1
thread 1:
  b := R[acq] [y];
  c := R[rlx] [x]
)").program;
  bool weak_after = false;
  for (const auto& b : behaviors(hand, ModelId::RC11Ext, opts).behaviors)
    weak_after |= b.registers.at(1).get("b") == 1 &&
                  b.registers.at(1).get("c") == 0;
  CHECK(weak_after);
}

TEST_CASE("nitia_check") {
  // Fig 7 upper: thread 1 plain-reads x, thread 0 asm-writes x.
  const Program& fig7 = corpus_entry("FIG7-UPPER").test.program;
  CHECK(!nitia_check(fig7, 0, 1));
  // Threads 1 and 2 interact only through plain accesses.
  CHECK(nitia_check(fig7, 1, 2));

  // Disjoint locations always pass.
  Program disj = parse_prog(
      "thread 0:\n  asm mov [x] 1\nthread 1:\n  a := asm mov [y]\n");
  CHECK(nitia_check(disj, 0, 1));

  // RMWs are ignored by both conditions.
  Program rmws = parse_prog(
      "thread 0:\n  a := asm rmw [x] 0 1\nthread 1:\n  b := asm rmw [x] 0 1\n");
  CHECK(nitia_check(rmws, 0, 1));
}

TEST_CASE("sequentialization: fig 7 counterexamples and sound variants") {
  BehaviorOptions opts;
  for (const char* name : {"FIG7-UPPER", "FIG7-LOWER"}) {
    const Program& p = corpus_entry(name).test.program;
    // Plain sequentialization introduces the weak behavior: inclusion must
    // FAIL. (This failing check is the expected result.)
    Program merged = sequentialize(p, SeqKind::Plain, 0, 1);
    InclusionReport plain = check_transform_sound(p, merged, opts);
    CHECK(!plain.holds);
    // Inserting an sc fence keeps it sound.
    Program fenced = sequentialize(p, SeqKind::Fence, 0, 1);
    CHECK(check_transform_sound(p, fenced, opts).holds);
    // The NITIA refinement rejects these thread pairs outright.
    CHECK_THROWS_AS(sequentialize(p, SeqKind::NITIA, 0, 1), TransformError);
  }

  // A NITIA-satisfying pair sequentializes soundly.
  Program disj = parse_prog(
      "thread 0:\n  asm mov [x] 1;\n  a := asm mov [x]\n"
      "thread 1:\n  W[rlx] [y] 1;\n  b := R[rlx] [y]\n"
      "thread 2:\n  c := R[rlx] [x]\n");
  REQUIRE(nitia_check(disj, 0, 1));
  Program seq = sequentialize(disj, SeqKind::NITIA, 0, 1);
  CHECK(seq.threads.size() == 2);
  CHECK(check_transform_sound(disj, seq, opts).holds);

  // Interleavings other than plain concatenation.
  Program inter = sequentialize(disj, SeqKind::NITIA, 0, 1,
                                {true, false, true, false});
  CHECK(check_transform_sound(disj, inter, opts).holds);
}

TEST_CASE("strengthening sweep is sound on the corpus (spot checks)") {
  BehaviorOptions opts;
  for (const char* name : {"MP-NT", "MP-RLX", "CATCHFIRE-NA"}) {
    const Program& p = corpus_entry(name).test.program;
    for (const auto& [site, md] : enumerate_strengthenings(p)) {
      INFO(name, ": ", site.to_string(), " -> ", to_string(md));
      CHECK(check_transform_sound(p, strengthen(p, site, md), opts).holds);
    }
  }
}
