#include "asmm/corpus.hpp"

#include <stdexcept>

#include "asmm/parser.hpp"

namespace asmm {

namespace {

CorpusEntry entry(std::string name, std::string note, std::string text,
                  std::optional<bool> drf = std::nullopt) {
  CorpusEntry e;
  e.name = std::move(name);
  e.note = std::move(note);
  e.text = std::move(text);
  e.test = parse_litmus(e.text);
  e.drf = drf;
  return e;
}

std::vector<CorpusEntry> build_corpus() {
  std::vector<CorpusEntry> c;

  c.push_back(entry("MP-NT", "message passing with a non-temporal first store",
                    R"(test MP-NT
thread 0:
  asm movnt [x] 1;
  W[rel] [y] 1
thread 1:
  a := R[acq] [y];
  b := R[rlx] [x]
expect rc11ext allowed: a=1 /\ b=0
)"));

  c.push_back(entry("MP-NT-SF",
                    "message passing, non-temporal store fenced by sfence",
                    R"(test MP-NT-SF
thread 0:
  asm movnt [x] 1;
  asm sfence;
  W[rel] [y] 1
thread 1:
  a := R[acq] [y];
  b := R[rlx] [x]
expect rc11ext forbidden: a=1 /\ b=0
)"));

  c.push_back(entry("IRIW",
                    "independent reads of independent writes, rel/acq/rlx",
                    R"(test IRIW
thread 0:
  W[rel] [x] 1
thread 1:
  a := R[acq] [x];
  b := R[rlx] [y]
thread 2:
  c := R[acq] [y];
  d := R[rlx] [x]
thread 3:
  W[rel] [y] 1
expect rc11 allowed: a=1 /\ b=0 /\ c=1 /\ d=0
expect rc11ext allowed: a=1 /\ b=0 /\ c=1 /\ d=0
)"));

  c.push_back(entry("IRIW-TSO",
                    "IRIW with the leading reads strengthened to plain x86 reads",
                    R"(test IRIW-TSO
thread 0:
  W[rel] [x] 1
thread 1:
  a := asm mov [x];
  b := R[rlx] [y]
thread 2:
  c := asm mov [y];
  d := R[rlx] [x]
thread 3:
  W[rel] [y] 1
expect rc11ext forbidden: a=1 /\ b=0 /\ c=1 /\ d=0
)"));

  c.push_back(entry("IRIW-TSO-2",
                    "one x86 read only; the weak outcome must stay allowed so "
                    "reordering the all-relaxed thread stays sound",
                    R"(test IRIW-TSO-2
thread 0:
  W[rlx] [x] 1
thread 1:
  a := asm mov [x];
  b := R[rlx] [y]
thread 2:
  c := R[rlx] [y];
  d := R[rlx] [x]
thread 3:
  W[rlx] [y] 1
expect rc11ext allowed: a=1 /\ b=0 /\ c=1 /\ d=0
)"));

  c.push_back(entry("MP-NT-RELF",
                    "release fence between movnt and the flag write is erased "
                    "on x86, so it cannot fence the non-temporal store",
                    R"(test MP-NT-RELF
thread 0:
  asm movnt [x] 1;
  F[rel];
  W[rlx] [y] 1
thread 1:
  a := R[acq] [y];
  b := R[rlx] [x]
expect rc11ext allowed: a=1 /\ b=0
)"));

  c.push_back(entry("MP-NT-SFENCE",
                    "a store fence heads release-acquire synchronization",
                    R"(test MP-NT-SFENCE
thread 0:
  asm movnt [x] 1;
  asm sfence;
  W[rlx] [y] 1
thread 1:
  a := R[acq] [y];
  b := R[rlx] [x]
expect rc11ext forbidden: a=1 /\ b=0
)"));

  c.push_back(entry("MP-NA-GUARD",
                    "guarded message passing with a non-atomic first store",
                    R"(test MP-NA-GUARD
thread 0:
  W[na] [x] 1;
  W[rel] [y] 1
thread 1:
  a := R[acq] [y];
  if a {
    b := R[rlx] [x]
  }
expect rc11ext forbidden: a=1 /\ b=0
)"));

  c.push_back(entry("MP-NT-GUARD",
                    "guarded message passing with a non-temporal first store",
                    R"(test MP-NT-GUARD
thread 0:
  asm movnt [x] 1;
  W[rel] [y] 1
thread 1:
  a := R[acq] [y];
  if a {
    b := R[rlx] [x]
  }
expect rc11ext allowed: a=1 /\ b=0
)"));

  c.push_back(entry("CATCHFIRE-NA",
                    "unguarded non-atomic write races with a relaxed read",
                    R"(test CATCHFIRE-NA
thread 0:
  W[na] [x] 1
thread 1:
  a := R[rlx] [x];
  b := R[rlx] [y]
expect rc11ext allowed: UB
)",
                    false));

  c.push_back(entry("CATCHFIRE-NT",
                    "a racy non-temporal store does not catch fire",
                    R"(test CATCHFIRE-NT
thread 0:
  asm movnt [x] 1
thread 1:
  a := R[rlx] [x];
  b := R[rlx] [y]
expect rc11ext forbidden: b=1
)"));

  c.push_back(entry("Z6U-TSO",
                    "plain x86 accesses can be stronger than sc accesses here",
                    R"(test Z6U-TSO
thread 0:
  asm mov [x] 1;
  W[rel] [y] 1
thread 1:
  a := asm mov [y];
  b := R[rlx] [z]
thread 2:
  W[sc] [z] 1;
  F[sc];
  c := R[rlx] [x]
expect rc11ext forbidden: a=1 /\ b=0 /\ c=0
)"));

  c.push_back(entry("Z6U-SC", "the sc-access variant keeps the outcome allowed",
                    R"(test Z6U-SC
thread 0:
  W[sc] [x] 1;
  W[rel] [y] 1
thread 1:
  a := R[sc] [y];
  b := R[rlx] [z]
thread 2:
  W[sc] [z] 1;
  F[sc];
  c := R[rlx] [x]
expect rc11ext allowed: a=1 /\ b=0 /\ c=0
)"));

  c.push_back(entry("SB-SC", "store buffering with sc accesses only",
                    R"(test SB-SC
thread 0:
  W[sc] [x] 1;
  a := R[sc] [y]
thread 1:
  W[sc] [y] 1;
  b := R[sc] [x]
expect rc11ext forbidden: a=0 /\ b=0
expect rc11 forbidden: a=0 /\ b=0
expect sc forbidden: a=0 /\ b=0
)",
                    true));

  c.push_back(entry("FIG7-UPPER",
                    "three-thread original: sequentialization bait, mixed",
                    R"(test FIG7-UPPER
thread 0:
  asm movnt [x] 1
thread 1:
  a := R[rlx] [x];
  W[rel] [y] 1
thread 2:
  b := R[acq] [y];
  c := R[rlx] [x]
expect rc11ext forbidden: a=1 /\ b=1 /\ c=0
)"));

  c.push_back(entry("FIG7-UPPER-SEQ",
                    "two-thread merged version: the weak outcome appears",
                    R"(test FIG7-UPPER-SEQ
thread 0:
  asm movnt [x] 1;
  a := R[rlx] [x];
  W[rel] [y] 1
thread 1:
  b := R[acq] [y];
  c := R[rlx] [x]
expect rc11ext allowed: a=1 /\ b=1 /\ c=0
)"));

  c.push_back(entry("FIG7-LOWER",
                    "three-thread original: sequentialization bait, pure x86",
                    R"(test FIG7-LOWER
thread 0:
  asm mov [x] 1
thread 1:
  a := asm mov [x];
  b := asm mov [y]
thread 2:
  asm mov [y] 1;
  asm mfence;
  c := asm mov [x]
expect rc11ext forbidden: a=1 /\ b=0 /\ c=0
expect ex86 forbidden: a=1 /\ b=0 /\ c=0
)"));

  c.push_back(entry("FIG7-LOWER-SEQ",
                    "two-thread merged version: the weak outcome appears",
                    R"(test FIG7-LOWER-SEQ
thread 0:
  asm mov [x] 1;
  a := asm mov [x];
  b := asm mov [y]
thread 1:
  asm mov [y] 1;
  asm mfence;
  c := asm mov [x]
expect rc11ext allowed: a=1 /\ b=0 /\ c=0
expect ex86 allowed: a=1 /\ b=0 /\ c=0
)"));

  c.push_back(entry("MP-NT-READ",
                    "a read interposed between movnt and the release write; "
                    "internal rf must not enter eco",
                    R"(test MP-NT-READ
thread 0:
  asm movnt [x] 1;
  a := R[rlx] [x];
  W[rel] [y] 1
thread 1:
  b := R[acq] [y];
  c := R[rlx] [x]
expect rc11ext allowed: a=1 /\ b=1 /\ c=0
)"));

  c.push_back(entry("MP-RLX",
                    "relaxed first write restores the message-passing guarantee",
                    R"(test MP-RLX
thread 0:
  W[rlx] [x] 1;
  W[rel] [y] 1
thread 1:
  a := R[acq] [y];
  b := R[rlx] [x]
expect rc11ext forbidden: a=1 /\ b=0
expect rc11 forbidden: a=1 /\ b=0
)"));

  c.push_back(entry("PROMOTE-RMW",
                    "thread-local location accessed via an x86 rmw; the rmw "
                    "acts as a barrier and must not be promoted away",
                    R"(test PROMOTE-RMW
thread 0:
  asm movnt [x] 1;
  a := asm rmw [z] 0 1;
  W[rel] [y] 1
thread 1:
  b := R[acq] [y];
  c := R[rlx] [x]
expect rc11ext forbidden: b=1 /\ c=0
)"));

  c.push_back(entry("DRF-MP", "race-free guarded message passing (sc flag)",
                    R"(test DRF-MP
thread 0:
  W[rlx] [x] 1;
  W[sc] [y] 1
thread 1:
  a := R[sc] [y];
  if a {
    b := R[rlx] [x]
  }
expect rc11ext forbidden: a=1 /\ b=0
expect sc forbidden: a=1 /\ b=0
expect rc11ext allowed: a=1 /\ b=1
)",
                    true));

  c.push_back(entry("DRF-HANDOFF",
                    "race-free two-location handoff behind one sc flag",
                    R"(test DRF-HANDOFF
thread 0:
  W[rlx] [d1] 1;
  W[rlx] [d2] 1;
  W[sc] [f] 1
thread 1:
  a := R[sc] [f];
  if a {
    b := R[rlx] [d1];
    c := R[rlx] [d2]
  }
expect rc11ext forbidden: a=1 /\ b=0
expect rc11ext forbidden: a=1 /\ c=0
expect rc11ext allowed: a=1 /\ b=1 /\ c=1
)",
                    true));

  return c;
}

}  // namespace

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> c = build_corpus();
  return c;
}

const CorpusEntry& corpus_entry(const std::string& name) {
  for (const auto& e : corpus())
    if (e.name == name) return e;
  throw std::out_of_range("no corpus entry named " + name);
}

}  // namespace asmm
