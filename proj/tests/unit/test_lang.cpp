#include <doctest.h>

#include <random>

#include "asmm/parser.hpp"
#include "asmm/printer.hpp"
#include "helpers.hpp"

using namespace asmm;
using namespace asmm::testing;

TEST_CASE("mode order: pinned facts") {
  CHECK(mode_leq(Mode::nt, Mode::rlx));
  CHECK(!mode_leq(Mode::tso, Mode::sc));
  CHECK(!mode_leq(Mode::sc, Mode::tso));
  CHECK(!mode_leq(Mode::na, Mode::nt));
  CHECK(!mode_leq(Mode::nt, Mode::na));
  for (Mode m : kAllModes) CHECK(mode_leq(m, m));

  // Derived orderings: rel below sf (so store fences can head sw edges),
  // sf below sc, every non-sc access mode below tso.
  CHECK(mode_leq(Mode::rel, Mode::sf));
  CHECK(mode_leq(Mode::sf, Mode::sc));
  for (Mode m : {Mode::na, Mode::nt, Mode::rlx, Mode::rel, Mode::acq,
                 Mode::acqrel})
    CHECK(mode_leq(m, Mode::tso));
}

TEST_CASE("mode order is a partial order (exhaustive)") {
  int checks = 0;
  for (Mode a : kAllModes) {
    CHECK(mode_leq(a, a));
    for (Mode b : kAllModes) {
      if (mode_leq(a, b) && mode_leq(b, a)) CHECK(a == b);
      for (Mode c : kAllModes) {
        if (mode_leq(a, b) && mode_leq(b, c)) CHECK(mode_leq(a, c));
        ++checks;
      }
    }
  }
  CHECK(checks == 9 * 9 * 9);
}

TEST_CASE("eval_expr") {
  RegState phi;
  CHECK(eval_expr(Expr::make_plus(Expr::make_num(2), Expr::make_num(3)), phi) ==
        5);
  phi.set("r", 7);
  CHECK(eval_expr(Expr::make_reg("r"), phi) == 7);
  // Subtraction saturates at zero.
  CHECK(eval_expr(Expr::make_sub(Expr::make_num(1), Expr::make_num(2)), phi) ==
        0);
  CHECK(eval_expr(Expr::make_times(Expr::make_num(3), Expr::make_reg("r")),
                  phi) == 21);
}

TEST_CASE("parse_litmus: MP-NT source") {
  LitmusTest t = parse_litmus(R"(test MP-NT
thread 0:
  asm movnt [x] 1;
  W[rel] [y] 1
thread 1:
  a := R[acq] [y];
  b := R[rlx] [x]
expect rc11ext allowed: a=1 /\ b=0
)");
  CHECK(t.name == "MP-NT");
  REQUIRE(t.program.threads.size() == 2);
  const CmdPtr& t0 = t.program.threads.at(0);
  REQUIRE(t0->kind == Cmd::Kind::Seq);
  CHECK(t0->s1->kind == Cmd::Kind::AsmNtWrite);
  CHECK(t0->s2->kind == Cmd::Kind::Write);
  CHECK(t0->s2->mode == Mode::rel);
  const CmdPtr& t1 = t.program.threads.at(1);
  CHECK(t1->s1->kind == Cmd::Kind::Read);
  CHECK(t1->s1->mode == Mode::acq);
  CHECK(t1->s2->mode == Mode::rlx);
  REQUIRE(t.expectations.size() == 1);
  CHECK(t.expectations[0].model == ModelId::RC11Ext);
  CHECK(t.expectations[0].allowed);
  CHECK(t.expectations[0].outcome.atoms.size() == 2);
}

TEST_CASE("parse_litmus: mode legality enforced") {
  CHECK_THROWS_AS(parse_litmus("test bad\nthread 0:\n  W[acq] [x] 1\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_litmus("test bad\nthread 0:\n  a := R[rel] [x]\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_litmus("test bad\nthread 0:\n  F[na]\n"), ParseError);
  CHECK_THROWS_AS(
      parse_litmus("test bad\nthread 0:\n  a := RMW[na] [x] 0 1\n"),
      ParseError);
}

TEST_CASE("parse_litmus: skip thread and errors") {
  LitmusTest t = parse_litmus("test t\nthread 0:\n  skip\n");
  CHECK(t.program.threads.at(0)->kind == Cmd::Kind::Skip);

  CHECK_THROWS_AS(parse_litmus("test t\nthread 0:\n  W[rlx] [x]\n"),
                  ParseError);  // missing value
  CHECK_THROWS_AS(parse_litmus("thread 0:\n  skip\n"), ParseError);
  // Outcome predicates must name program registers or locations.
  CHECK_THROWS_AS(
      parse_litmus("test t\nthread 0:\n  skip\nexpect sc allowed: q=1\n"),
      ParseError);
}

TEST_CASE("classify_program") {
  LitmusTest mixed = parse_litmus(
      "test m\nthread 0:\n  asm movnt [x] 1;\n  W[rel] [y] 1\n");
  CHECK(classify_program(mixed.program) == ProgramClass::mixed);

  LitmusTest rc11 = parse_litmus(
      "test r\nthread 0:\n  W[sc] [x] 1;\n  a := R[sc] [y]\n");
  CHECK(classify_program(rc11.program) == ProgramClass::pure_rc11);

  LitmusTest asm_only = parse_litmus(
      "test a\nthread 0:\n  asm mov [x] 1;\n  asm mfence;\n  b := asm mov [y]\n");
  CHECK(classify_program(asm_only.program) == ProgramClass::pure_asm);

  // Control flow and skip stay neutral.
  LitmusTest ctrl = parse_litmus(
      "test c\nthread 0:\n  a := asm mov [x];\n  if a {\n    skip\n  }\n");
  CHECK(classify_program(ctrl.program) == ProgramClass::pure_asm);
}

TEST_CASE("value_domain defaults to literals plus zero") {
  LitmusTest t = parse_litmus("test v\nthread 0:\n  W[rlx] [x] 2\n");
  CHECK(value_domain(t) == std::set<Value>{0, 2});
  LitmusTest h = parse_litmus(
      "test v\nvalues 0, 1, 3\nthread 0:\n  W[rlx] [x] 2\n");
  CHECK(value_domain(h) == std::set<Value>{0, 1, 3});
}

TEST_CASE("printer/parser round trip") {
  std::mt19937 rng(2024);
  int cases = 0;
  for (int i = 0; i < 2000; ++i) {
    LitmusTest t = random_litmus(rng);
    std::string text = print_litmus(t);
    LitmusTest back;
    REQUIRE_NOTHROW(back = parse_litmus(text));
    // parse ∘ print is the identity on ASTs...
    CHECK(program_equal(t.program, back.program));
    // ... and print ∘ parse is idempotent on text.
    CHECK(print_litmus(back) == text);
    ++cases;
  }
  MESSAGE("round-trip cases: ", cases);
}
