#include "asmm/models.hpp"

#include <cassert>
#include <stdexcept>

namespace asmm {

namespace {

using Pred = std::function<bool(const Label&)>;

EventSet set_of(const ExecutionGraph& g, const Pred& pred) {
  EventSet s;
  for (const auto& [e, l] : g.events)
    if (pred(l)) s.insert(e);
  return s;
}

LocOf loc_of_fn(const ExecutionGraph& g) {
  return [&g](const EventId& e) { return g.loc_of(e); };
}

Relation seq(const Relation& a, const Relation& b) { return compose(a, b); }

// [S];R;[T]
Relation bracket(const EventSet& s, const Relation& r, const EventSet& t) {
  return compose(identity_on(s), compose(r, identity_on(t)));
}

}  // namespace

Relation sw_relation(const CandidateExecution& x, ModelId model) {
  if (model != ModelId::RC11 && model != ModelId::RC11Ext)
    throw std::invalid_argument("sw is defined for RC11 and RC11Ext only");
  const ExecutionGraph& g = x.graph;
  EventSet carrier = g.event_set();
  Relation po = program_order(g);

  auto geq = [](Mode lo) {
    return [lo](const Label& l) { return mode_leq(lo, l.mode); };
  };
  EventSet e_rel = set_of(g, geq(Mode::rel));
  EventSet e_acq = set_of(g, geq(Mode::acq));
  // Release heads and acquire tails range over all memory writers/readers,
  // so rf chains may start at an RMW and end at one.
  EventSet w_rlx = set_of(g, [](const Label& l) {
    return l.writes_memory() && mode_leq(Mode::rlx, l.mode);
  });
  EventSet r_rlx = set_of(g, [](const Label& l) {
    return l.reads_memory() && mode_leq(Mode::rlx, l.mode);
  });
  EventSet fences = set_of(g, [](const Label& l) { return l.is_fence(); });

  Relation fpo_opt =
      reflexive_closure(seq(identity_on(fences), po), carrier);
  Relation pof_opt =
      reflexive_closure(seq(po, identity_on(fences)), carrier);
  Relation rf_plus = transitive_closure(x.rf);

  Relation sw = identity_on(e_rel);
  sw = seq(sw, fpo_opt);
  sw = seq(sw, identity_on(w_rlx));
  sw = seq(sw, rf_plus);
  sw = seq(sw, identity_on(r_rlx));
  sw = seq(sw, pof_opt);
  sw = seq(sw, identity_on(e_acq));
  return sw;
}

namespace {

// psc over a given hb/eco (shared between RC11 and RC11Ext).
void fill_psc(const CandidateExecution& x, DerivedRelations* d) {
  const ExecutionGraph& g = x.graph;
  EventSet carrier = g.event_set();
  LocOf locs = loc_of_fn(g);

  EventSet e_sc = set_of(g, [](const Label& l) { return l.mode == Mode::sc; });
  EventSet f_sc = set_of(g, [](const Label& l) {
    return l.is_fence() && l.mode == Mode::sc;
  });

  Relation po_neq = restrict_diff_loc(d->po, locs);
  d->scb = d->po.unite(seq(po_neq, seq(d->hb, po_neq)))
               .unite(restrict_same_loc(d->hb, locs))
               .unite(d->mo)
               .unite(d->rb);

  Relation hb_opt = reflexive_closure(d->hb, carrier);
  Relation left = identity_on(e_sc).unite(seq(identity_on(f_sc), hb_opt));
  Relation right = identity_on(e_sc).unite(seq(hb_opt, identity_on(f_sc)));
  d->psc_base = seq(left, seq(d->scb, right));

  Relation hb_eco_hb = d->hb.unite(seq(d->hb, seq(d->eco, d->hb)));
  d->psc_fence =
      seq(identity_on(f_sc), seq(hb_eco_hb, identity_on(f_sc)));
  d->psc = d->psc_base.unite(d->psc_fence);
}

}  // namespace

DerivedRelations derive_relations(const CandidateExecution& x, ModelId model) {
  const ExecutionGraph& g = x.graph;
  DerivedRelations d;
  d.po = program_order(g);
  d.rf = x.rf;
  d.mo = x.mo;
  d.rb = seq(x.rf.inverse(), x.mo).minus(identity_on(g.event_set()));

  LocOf locs = loc_of_fn(g);

  switch (model) {
    case ModelId::SC:
      break;

    case ModelId::RC11: {
      d.sw = sw_relation(x, model);
      d.hb = transitive_closure(d.po.unite(d.sw));
      d.eco = transitive_closure(d.rf.unite(d.mo).unite(d.rb));
      fill_psc(x, &d);
      break;
    }

    case ModelId::RC11Ext: {
      EventSet w_nt = set_of(g, [](const Label& l) {
        return l.is_write() && l.mode == Mode::nt;
      });
      EventSet not_nt_w;
      for (const auto& e : g.event_set())
        if (!w_nt.count(e)) not_nt_w.insert(e);
      EventSet rmw_tso = set_of(g, [](const Label& l) {
        return l.is_rmw() && l.mode == Mode::tso;
      });
      EventSet f_sfup = set_of(g, [](const Label& l) {
        return l.is_fence() && mode_leq(Mode::sf, l.mode);
      });
      EventSet writes = set_of(g, [](const Label& l) { return l.is_write(); });

      Relation barrier = identity_on(rmw_tso).unite(identity_on(f_sfup));
      d.po_rc = seq(identity_on(not_nt_w), d.po)
                    .unite(seq(d.po, barrier))
                    .unite(seq(restrict_same_loc(d.po, locs),
                               identity_on(writes)));

      EventSet r_tso = set_of(g, [](const Label& l) {
        return l.is_read() && l.mode == Mode::tso;
      });
      EventSet f_sc = set_of(g, [](const Label& l) {
        return l.is_fence() && l.mode == Mode::sc;
      });
      EventSet w_tso = set_of(g, [](const Label& l) {
        return l.is_write() && l.mode == Mode::tso;
      });
      EventSet reads = set_of(g, [](const Label& l) { return l.is_read(); });
      EventSet not_r;
      for (const auto& e : g.event_set())
        if (!reads.count(e)) not_r.insert(e);
      EventSet not_r_not_ntw;
      for (const auto& e : not_r)
        if (!w_nt.count(e)) not_r_not_ntw.insert(e);

      d.ppo_asm =
          seq(d.po, barrier)
              .unite(seq(identity_on(r_tso), d.po))
              .unite(seq(identity_on(rmw_tso), d.po))
              .unite(seq(identity_on(f_sc), d.po))
              .unite(bracket(f_sfup, d.po, not_r))
              .unite(bracket(w_tso, d.po, not_r_not_ntw))
              .unite(bracket(not_r_not_ntw, d.po, w_tso));

      d.sw = sw_relation(x, model);
      d.hb = transitive_closure(d.po_rc.unite(d.sw));
      d.eco =
          transitive_closure(external_part(d.rf).unite(d.mo).unite(d.rb));
      fill_psc(x, &d);
      break;
    }

    case ModelId::Ex86: {
      EventSet reads = set_of(g, [](const Label& l) {
        return l.is_read() && l.mode == Mode::tso;
      });
      EventSet rmws = set_of(g, [](const Label& l) { return l.is_rmw(); });
      EventSet mf = set_of(g, [](const Label& l) {
        return l.is_fence() && l.mode == Mode::sc;
      });
      EventSet sf = set_of(g, [](const Label& l) {
        return l.is_fence() && l.mode == Mode::sf;
      });
      EventSet w = set_of(g, [](const Label& l) {
        return l.is_write() && l.mode == Mode::tso;
      });
      EventSet nt = set_of(g, [](const Label& l) {
        return l.is_write() && l.mode == Mode::nt;
      });
      EventSet w_nt;
      for (const auto& e : w) w_nt.insert(e);
      for (const auto& e : nt) w_nt.insert(e);
      EventSet not_r;
      for (const auto& e : g.event_set())
        if (!reads.count(e)) not_r.insert(e);

      Relation fenced = identity_on(rmws).unite(identity_on(mf)).unite(
          identity_on(sf));
      d.ppo = seq(d.po, fenced)
                  .unite(seq(identity_on(reads), d.po))
                  .unite(seq(identity_on(rmws), d.po))
                  .unite(seq(identity_on(mf), d.po))
                  .unite(bracket(sf, d.po, not_r))
                  .unite(bracket(w, d.po, w))
                  .unite(bracket(w_nt, restrict_same_loc(d.po, locs), w_nt));
      d.ob = d.ppo.unite(external_part(d.rf))
                 .unite(external_part(d.mo))
                 .unite(external_part(d.rb));
      break;
    }
  }
  return d;
}

// --- label preconditions -------------------------------------------------------

bool all_rc11_labels(const ExecutionGraph& g) {
  for (const auto& [e, l] : g.events) {
    if (e.is_init()) continue;
    if (!is_rc11_mode(l.mode)) return false;
  }
  return true;
}

bool all_ex86_labels(const ExecutionGraph& g) {
  for (const auto& [e, l] : g.events) {
    if (e.is_init()) continue;
    switch (l.kind) {
      case LabelKind::Read:
      case LabelKind::Rmw:
        if (l.mode != Mode::tso) return false;
        break;
      case LabelKind::Write:
        if (l.mode != Mode::tso && l.mode != Mode::nt) return false;
        break;
      case LabelKind::Fence:
        if (l.mode != Mode::sc && l.mode != Mode::sf) return false;
        break;
    }
  }
  return true;
}

// --- verdicts --------------------------------------------------------------------

namespace {

struct Axiom {
  std::string name;
  Relation rel;
  bool irreflexivity;  // irr(rel) vs acyc(rel)
};

std::vector<Axiom> model_axioms(const CandidateExecution& x, ModelId model) {
  DerivedRelations d = derive_relations(x, model);
  const ExecutionGraph& g = x.graph;
  EventSet carrier = g.event_set();

  std::vector<Axiom> axioms;
  switch (model) {
    case ModelId::SC:
      axioms.push_back(
          {"sc-coherence", d.po.unite(d.rf).unite(d.mo).unite(d.rb), false});
      break;

    case ModelId::RC11: {
      Relation eco_opt = reflexive_closure(d.eco, carrier);
      axioms.push_back({"coherence", seq(d.hb, eco_opt), true});
      axioms.push_back({"sc", d.psc, false});
      axioms.push_back({"atomicity", seq(d.rb, d.mo), true});
      axioms.push_back({"no-thin-air", d.po.unite(d.rf), false});
      break;
    }

    case ModelId::RC11Ext: {
      Relation eco_opt = reflexive_closure(d.eco, carrier);
      EventSet w_nt = set_of(g, [](const Label& l) {
        return l.is_write() && l.mode == Mode::nt;
      });
      axioms.push_back({"coherence-1", seq(d.hb, eco_opt), true});
      axioms.push_back({"coherence-2", d.ppo_asm.unite(d.eco), false});
      axioms.push_back({"coherence-3",
                        seq(identity_on(w_nt), seq(d.po, d.rb.unite(d.mo))),
                        true});
      axioms.push_back({"atomicity", seq(d.rb, d.mo), true});
      axioms.push_back({"sc", d.psc, false});
      axioms.push_back({"no-thin-air", d.po.unite(d.rf), false});
      break;
    }

    case ModelId::Ex86: {
      Relation internal = internal_part(d.rf)
                              .unite(internal_part(d.mo))
                              .unite(internal_part(d.rb));
      axioms.push_back({"internal", seq(d.po, internal), true});
      axioms.push_back({"external", d.ob, false});
      break;
    }
  }
  return axioms;
}

Verdict check_axioms(const CandidateExecution& x, ModelId model) {
  Verdict v;
  for (auto& ax : model_axioms(x, model)) {
    if (ax.irreflexivity) {
      if (auto e = find_reflexive(ax.rel)) {
        v.consistent = false;
        v.violations.push_back({ax.name, {*e}});
      }
    } else {
      if (auto cycle = find_cycle(ax.rel)) {
        v.consistent = false;
        v.violations.push_back({ax.name, *cycle});
      }
    }
  }
  return v;
}

}  // namespace

std::optional<Relation> axiom_relation(const CandidateExecution& x,
                                       ModelId model,
                                       const std::string& axiom) {
  for (auto& ax : model_axioms(x, model))
    if (ax.name == axiom) return ax.rel;
  return std::nullopt;
}

bool validate_verdict(const CandidateExecution& x, ModelId model,
                      const Verdict& v) {
  for (const auto& viol : v.violations) {
    auto rel = axiom_relation(x, model, viol.axiom);
    if (!rel) return false;
    const auto& c = viol.witness;
    if (c.empty()) return false;
    for (std::size_t i = 0; i < c.size(); ++i)
      if (!rel->contains(c[i], c[(i + 1) % c.size()])) return false;
  }
  return true;
}

Verdict sc_consistent(const CandidateExecution& x) {
  return check_axioms(x, ModelId::SC);
}

Verdict rc11_consistent(const CandidateExecution& x) {
  if (!all_rc11_labels(x.graph))
    throw std::invalid_argument("rc11_consistent: graph has non-RC11 labels");
  return check_axioms(x, ModelId::RC11);
}

Verdict ex86_consistent(const CandidateExecution& x) {
  if (!all_ex86_labels(x.graph))
    throw std::invalid_argument("ex86_consistent: graph has non-Ex86 labels");
  return check_axioms(x, ModelId::Ex86);
}

Verdict rc11ext_consistent(const CandidateExecution& x) {
  return check_axioms(x, ModelId::RC11Ext);
}

Verdict consistent(const CandidateExecution& x, ModelId model) {
  switch (model) {
    case ModelId::SC: return sc_consistent(x);
    case ModelId::RC11: return rc11_consistent(x);
    case ModelId::Ex86: return ex86_consistent(x);
    case ModelId::RC11Ext: return rc11ext_consistent(x);
  }
  return {};
}

// --- races, final states, behaviors ---------------------------------------------

std::vector<EventPair> races(const CandidateExecution& x, const Relation& hb) {
  const ExecutionGraph& g = x.graph;
  Relation closed = transitive_closure(hb);
  std::vector<EventPair> out;
  std::vector<std::pair<EventId, Label>> evs(g.events.begin(), g.events.end());
  for (std::size_t i = 0; i < evs.size(); ++i) {
    for (std::size_t j = i + 1; j < evs.size(); ++j) {
      const auto& [a, la] = evs[i];
      const auto& [b, lb] = evs[j];
      if (!la.has_loc() || !lb.has_loc() || la.loc != lb.loc) continue;
      if (!la.writes_memory() && !lb.writes_memory()) continue;
      if (closed.contains(a, b) || closed.contains(b, a)) continue;
      out.push_back({a, b});
    }
  }
  return out;
}

FinalMemory final_state(const CandidateExecution& x) {
  FinalMemory mem;
  std::map<Loc, std::vector<EventId>> writers;
  for (const auto& [e, l] : x.graph.events)
    if (l.writes_memory() && !e.is_init()) writers[l.loc].push_back(e);
  for (const auto& [loc, ws] : writers) {
    // mo-maximal: the writer with no mo-successor at this location.
    for (const auto& w : ws) {
      bool maximal = true;
      for (const auto& w2 : ws)
        if (!(w2 == w) && x.mo.contains(w, w2)) maximal = false;
      if (maximal) {
        mem[loc] = x.graph.label(w).value_written();
        break;
      }
    }
  }
  return mem;
}

BehaviorSet behaviors(const Program& p, ModelId model,
                      const BehaviorOptions& opts) {
  bool catch_fire = model == ModelId::RC11 || model == ModelId::RC11Ext;

  EnumerationOptions eopts;
  eopts.values = opts.values;
  eopts.step_bound = opts.step_bound;
  eopts.collect_prefixes = catch_fire;
  EnumerationResult enumerated = enumerate_graphs(p, eopts);

  BehaviorSet out;
  out.overflow = enumerated.overflow;
  out.graphs = enumerated.complete.size();

  for (std::size_t i = 0; i < enumerated.complete.size(); ++i) {
    for (const auto& x : enumerate_candidates(enumerated.complete[i],
                                              enumerated.complete_regs[i])) {
      ++out.candidates;
      if (!consistent(x, model).consistent) continue;
      ++out.consistent;
      out.behaviors.insert(Behavior{final_state(x), x.final_regs});
    }
  }

  if (catch_fire) {
    for (const auto& g : enumerated.prefixes) {
      if (out.ub) break;
      for (const auto& x : enumerate_candidates(g, {})) {
        if (!consistent(x, model).consistent) continue;
        Relation hb = derive_relations(x, model).hb;
        for (const auto& [a, b] : races(x, hb)) {
          Mode ma = x.graph.label(a).mode, mb = x.graph.label(b).mode;
          if (ma == Mode::na || mb == Mode::na) {
            out.ub = true;
            break;
          }
        }
        if (out.ub) break;
      }
    }
  }
  return out;
}

}  // namespace asmm
