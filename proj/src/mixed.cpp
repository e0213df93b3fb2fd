#include "asmm/mixed.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace asmm {

const char* to_string(NodeKind k) {
  switch (k) {
    case NodeKind::Init: return "Init";
    case NodeKind::W_WMF: return "W-WMF";
    case NodeKind::W_W: return "W-W";
    case NodeKind::W_NT: return "W-NT";
    case NodeKind::RMW_RMW_S: return "RMW-RMW-S";
    case NodeKind::RMW_RMW_F: return "RMW-RMW-F";
    case NodeKind::F_MF: return "F-MF";
    case NodeKind::F_SF: return "F-SF";
    case NodeKind::F_Bot: return "F-bot";
    case NodeKind::R_R: return "R-R";
    case NodeKind::W_SFWMF: return "W-SFWMF";
    case NodeKind::W_SFW: return "W-SFW";
    case NodeKind::W_NT_Alt: return "W-NT-alt";
    case NodeKind::F_SF_Alt: return "F-SF-alt";
  }
  return "?";
}

// --- simulation ------------------------------------------------------------------

namespace {

[[noreturn]] void malformed(ThreadId tid, const std::string& what) {
  throw MixedError("malformed target stream in thread " + std::to_string(tid) +
                   ": " + what);
}

struct ThreadReplay {
  ThreadId tid;
  const CandidateExecution* target;
  std::vector<EventId> tevents;  // target events of this thread, in order
  std::size_t tpos = 0;
  std::int64_t src_idx = 0;
  RegState phi;
  std::vector<MixedNode> nodes;

  const Label& peek_label() const {
    if (tpos >= tevents.size()) malformed(tid, "target stream exhausted");
    return target->graph.label(tevents[tpos]);
  }

  std::pair<EventId, Label> take(LabelKind kind, Mode mode) {
    const Label& l = peek_label();
    if (l.kind != kind || l.mode != mode) {
      Label want;
      want.kind = kind;
      want.mode = mode;
      malformed(tid, "expected " + to_string(want) + ", found " + to_string(l));
    }
    EventId e = tevents[tpos++];
    return {e, l};
  }

  void emit(NodeKind kind, Label src,
            std::vector<std::pair<EventId, Label>> targets) {
    MixedNode n;
    n.kind = kind;
    n.id = EventId::thread(tid, src_idx++);
    n.source_label = src;
    n.targets = std::move(targets);
    nodes.push_back(std::move(n));
  }
};

// Consumes the target events of one memory command and appends the node.
void replay_memory_cmd(const Cmd& c, Scheme s, ThreadReplay& tr) {
  auto loc = [&] { return eval_expr(c.addr, tr.phi); };

  switch (c.kind) {
    case Cmd::Kind::Read:
    case Cmd::Kind::AsmRead: {
      Loc l = loc();
      auto [e, tl] = tr.take(LabelKind::Read, Mode::tso);
      if (tl.loc != l) malformed(tr.tid, "read location mismatch");
      Mode md = c.kind == Cmd::Kind::Read ? c.mode : Mode::tso;
      tr.phi.set(c.reg, tl.value);
      tr.emit(NodeKind::R_R, Label::read(md, l, tl.value), {{e, tl}});
      return;
    }
    case Cmd::Kind::Write: {
      Loc l = loc();
      Value v = eval_expr(c.arg1, tr.phi);
      if (c.mode == Mode::sc) {
        std::vector<std::pair<EventId, Label>> ts;
        if (s == Scheme::Alternative)
          ts.push_back(tr.take(LabelKind::Fence, Mode::sf));
        auto w = tr.take(LabelKind::Write, Mode::tso);
        if (w.second.loc != l || w.second.value != v)
          malformed(tr.tid, "write mismatch");
        ts.push_back(w);
        ts.push_back(tr.take(LabelKind::Fence, Mode::sc));
        tr.emit(s == Scheme::Alternative ? NodeKind::W_SFWMF : NodeKind::W_WMF,
                Label::write(Mode::sc, l, v), std::move(ts));
        return;
      }
      if (s == Scheme::Alternative && c.mode == Mode::rel) {
        auto sf = tr.take(LabelKind::Fence, Mode::sf);
        auto w = tr.take(LabelKind::Write, Mode::tso);
        if (w.second.loc != l || w.second.value != v)
          malformed(tr.tid, "write mismatch");
        tr.emit(NodeKind::W_SFW, Label::write(Mode::rel, l, v), {sf, w});
        return;
      }
      if (s == Scheme::Alternative && c.mode == Mode::rlx) {
        auto w = tr.take(LabelKind::Write, Mode::nt);
        if (w.second.loc != l || w.second.value != v)
          malformed(tr.tid, "write mismatch");
        tr.emit(NodeKind::W_NT_Alt, Label::write(Mode::rlx, l, v), {w});
        return;
      }
      auto w = tr.take(LabelKind::Write, Mode::tso);
      if (w.second.loc != l || w.second.value != v)
        malformed(tr.tid, "write mismatch");
      tr.emit(NodeKind::W_W, Label::write(c.mode, l, v), {w});
      return;
    }
    case Cmd::Kind::AsmWrite: {
      Loc l = loc();
      Value v = eval_expr(c.arg1, tr.phi);
      auto w = tr.take(LabelKind::Write, Mode::tso);
      if (w.second.loc != l || w.second.value != v)
        malformed(tr.tid, "write mismatch");
      tr.emit(NodeKind::W_W, Label::write(Mode::tso, l, v), {w});
      return;
    }
    case Cmd::Kind::AsmNtWrite: {
      Loc l = loc();
      Value v = eval_expr(c.arg1, tr.phi);
      auto w = tr.take(LabelKind::Write, Mode::nt);
      if (w.second.loc != l || w.second.value != v)
        malformed(tr.tid, "non-temporal write mismatch");
      tr.emit(s == Scheme::Alternative ? NodeKind::W_NT_Alt : NodeKind::W_NT,
              Label::write(Mode::nt, l, v), {w});
      return;
    }
    case Cmd::Kind::Rmw:
    case Cmd::Kind::AsmRmw: {
      Loc l = loc();
      Value expected = eval_expr(c.arg1, tr.phi);
      Value newval = eval_expr(c.arg2, tr.phi);
      auto [e, tl] = tr.take(LabelKind::Rmw, Mode::tso);
      if (tl.loc != l) malformed(tr.tid, "rmw location mismatch");
      Mode md = c.kind == Cmd::Kind::Rmw ? c.mode : Mode::tso;
      Label src;
      if (tl.is_rmw_success()) {
        if (tl.value != expected || *tl.rmw_written != newval)
          malformed(tr.tid, "rmw value mismatch");
        src = Label::rmw_success(md, l, expected, newval);
      } else {
        if (tl.value == expected) malformed(tr.tid, "failed rmw read expected");
        src = Label::rmw_fail(md, l, tl.value);
      }
      tr.phi.set(c.reg, tl.value);
      tr.emit(tl.is_rmw_success() ? NodeKind::RMW_RMW_S : NodeKind::RMW_RMW_F,
              src, {{e, tl}});
      return;
    }
    case Cmd::Kind::Fence: {
      if (c.mode == Mode::sc) {
        auto mf = tr.take(LabelKind::Fence, Mode::sc);
        tr.emit(NodeKind::F_MF, Label::fence(Mode::sc), {mf});
        return;
      }
      if (s == Scheme::Alternative &&
          (c.mode == Mode::rel || c.mode == Mode::acqrel)) {
        auto sf = tr.take(LabelKind::Fence, Mode::sf);
        tr.emit(NodeKind::F_SF_Alt, Label::fence(c.mode), {sf});
        return;
      }
      tr.emit(NodeKind::F_Bot, Label::fence(c.mode), {});
      return;
    }
    case Cmd::Kind::AsmMfence: {
      auto mf = tr.take(LabelKind::Fence, Mode::sc);
      tr.emit(NodeKind::F_MF, Label::fence(Mode::sc), {mf});
      return;
    }
    case Cmd::Kind::AsmSfence: {
      auto sf = tr.take(LabelKind::Fence, Mode::sf);
      tr.emit(s == Scheme::Alternative ? NodeKind::F_SF_Alt : NodeKind::F_SF,
              Label::fence(Mode::sf), {sf});
      return;
    }
    default:
      assert(false && "not a memory command");
  }
}

void replay_thread(const CmdPtr& body, Scheme s, ThreadReplay& tr) {
  CmdPtr next = Cmd::make_seq(body, Cmd::make_skip());
  for (;;) {
    if (next->kind == Cmd::Kind::Skip) break;
    assert(next->kind == Cmd::Kind::Seq);
    CmdPtr head = next->s1;
    CmdPtr tail = next->s2;
    switch (head->kind) {
      case Cmd::Kind::Skip:
        next = tail;
        break;
      case Cmd::Kind::Seq:
        next = Cmd::make_seq(head->s1, Cmd::make_seq(head->s2, tail));
        break;
      case Cmd::Kind::If:
        next = eval_expr(head->arg1, tr.phi) != 0 ? Cmd::make_seq(head->s1, tail)
                                                  : tail;
        break;
      case Cmd::Kind::While:
        next = Cmd::make_seq(
            Cmd::make_if(head->arg1,
                         Cmd::make_seq(head->s1,
                                       Cmd::make_while(head->arg1, head->s1))),
            tail);
        break;
      case Cmd::Kind::Assign:
        tr.phi.set(head->reg, eval_expr(head->arg1, tr.phi));
        next = tail;
        break;
      default:
        replay_memory_cmd(*head, s, tr);
        next = tail;
        break;
    }
  }
  if (tr.tpos != tr.tevents.size())
    malformed(tr.tid, "unconsumed target events");
}

}  // namespace

Simulation build_simulation(const Program& p, Scheme s,
                            const CandidateExecution& target) {
  MixedGraph m;
  m.scheme = s;

  std::map<EventId, EventId> node_of;  // target memory event -> node id
  for (const auto& [e, l] : target.graph.events) {
    if (e.is_init()) {
      MixedNode n;
      n.kind = NodeKind::Init;
      n.id = e;
      n.source_label = l;
      n.targets = {{e, l}};
      m.nodes[e] = n;
      node_of[e] = e;
    }
  }

  CandidateExecution source;
  for (Loc l : p.locations())
    source.graph.events[EventId::init(l)] = Label::write(Mode::na, l, 0);

  for (const auto& [tid, body] : p.threads) {
    ThreadReplay tr;
    tr.tid = tid;
    tr.target = &target;
    tr.tevents = target.graph.thread_events(tid);
    replay_thread(body, s, tr);
    for (auto& n : tr.nodes) {
      for (const auto& [te, tl] : n.targets)
        if (tl.has_loc()) node_of[te] = n.id;
      source.graph.events[n.id] = n.source_label;
      m.nodes[n.id] = std::move(n);
    }
    source.final_regs[tid] = tr.phi;
  }

  for (const auto& [w, r] : target.rf.pairs())
    m.rf.insert(node_of.at(w), node_of.at(r));
  for (const auto& [a, b] : target.mo.pairs())
    m.mo.insert(node_of.at(a), node_of.at(b));

  source.rf = m.rf;
  source.mo = m.mo;

  Simulation sim;
  sim.source = std::move(source);
  sim.mixed = std::move(m);
  return sim;
}

// --- projections ----------------------------------------------------------------

namespace {

// The unique target event of a node that accesses memory.
std::optional<EventId> target_access(const MixedNode& n) {
  for (const auto& [e, l] : n.targets)
    if (l.has_loc()) return e;
  return std::nullopt;
}

}  // namespace

CandidateExecution project_source(const MixedGraph& m) {
  CandidateExecution x;
  for (const auto& [id, n] : m.nodes) x.graph.events[id] = n.source_label;
  x.rf = m.rf;
  x.mo = m.mo;
  return x;
}

CandidateExecution project_target(const MixedGraph& m) {
  CandidateExecution x;
  for (const auto& [id, n] : m.nodes)
    for (const auto& [te, tl] : n.targets) x.graph.events[te] = tl;
  for (const auto& [a, b] : m.rf.pairs())
    x.rf.insert(*target_access(m.nodes.at(a)), *target_access(m.nodes.at(b)));
  for (const auto& [a, b] : m.mo.pairs())
    x.mo.insert(*target_access(m.nodes.at(a)), *target_access(m.nodes.at(b)));
  return x;
}

CandidateExecution canonicalize_execution(const CandidateExecution& x) {
  std::map<EventId, EventId> rename;
  std::map<ThreadId, std::int64_t> counter;
  for (const auto& [e, _] : x.graph.events) {
    if (e.is_init())
      rename[e] = e;
    else
      rename[e] = EventId::thread(e.tid, counter[e.tid]++);
  }
  CandidateExecution out;
  for (const auto& [e, l] : x.graph.events) out.graph.events[rename[e]] = l;
  for (const auto& [a, b] : x.rf.pairs()) out.rf.insert(rename[a], rename[b]);
  for (const auto& [a, b] : x.mo.pairs()) out.mo.insert(rename[a], rename[b]);
  out.final_regs = x.final_regs;
  return out;
}

// --- mixed consistency ----------------------------------------------------------

namespace {

using KindPred = std::function<bool(const MixedNode&)>;

Relation bracket(const EventSet& s, const Relation& r, const EventSet& t) {
  return compose(identity_on(s), compose(r, identity_on(t)));
}

EventSet nodes_of(const MixedGraph& m, const KindPred& pred) {
  EventSet s;
  for (const auto& [id, n] : m.nodes)
    if (n.kind != NodeKind::Init && pred(n)) s.insert(id);
  return s;
}

bool kind_in(const MixedNode& n, std::initializer_list<NodeKind> ks) {
  for (NodeKind k : ks)
    if (n.kind == k) return true;
  return false;
}

Relation node_po(const MixedGraph& m) {
  Relation po;
  std::vector<EventId> inits, rest;
  for (const auto& [id, _] : m.nodes)
    (id.is_init() ? inits : rest).push_back(id);
  for (const auto& i : inits)
    for (const auto& t : rest) po.insert(i, t);
  for (const auto& a : rest)
    for (const auto& b : rest)
      if (a.tid == b.tid && a.idx < b.idx) po.insert(a, b);
  return po;
}

Relation node_po_loc(const MixedGraph& m, const Relation& po) {
  return po.filter_pairs([&](const EventId& a, const EventId& b) {
    const Label& la = m.nodes.at(a).source_label;
    const Label& lb = m.nodes.at(b).source_label;
    return la.has_loc() && lb.has_loc() && la.loc == lb.loc;
  });
}

Relation mixed_ppo(const MixedGraph& m, const Relation& po) {
  bool alt = m.scheme == Scheme::Alternative;

  EventSet not_bot = nodes_of(m, [](const MixedNode& n) {
    return n.kind != NodeKind::F_Bot;
  });
  EventSet reads = nodes_of(m, [](const MixedNode& n) {
    return n.kind == NodeKind::R_R;
  });
  EventSet rmws = nodes_of(m, [](const MixedNode& n) {
    return kind_in(n, {NodeKind::RMW_RMW_S, NodeKind::RMW_RMW_F});
  });
  EventSet mf = nodes_of(m, [](const MixedNode& n) {
    return n.kind == NodeKind::F_MF;
  });
  EventSet sf = nodes_of(m, [alt = alt](const MixedNode& n) {
    return n.kind == (alt ? NodeKind::F_SF_Alt : NodeKind::F_SF);
  });
  EventSet w_all = nodes_of(m, [alt = alt](const MixedNode& n) {
    return alt ? kind_in(n, {NodeKind::W_W, NodeKind::W_SFWMF, NodeKind::W_SFW,
                             NodeKind::W_NT_Alt})
               : kind_in(n, {NodeKind::W_W, NodeKind::W_WMF, NodeKind::W_NT});
  });
  // Write nodes whose target access is not a non-temporal store.
  EventSet w_not_nt = nodes_of(m, [alt = alt](const MixedNode& n) {
    return alt ? kind_in(n, {NodeKind::W_W, NodeKind::W_SFWMF, NodeKind::W_SFW})
               : kind_in(n, {NodeKind::W_W, NodeKind::W_WMF});
  });

  EventSet not_bot_not_r;
  for (const auto& e : not_bot)
    if (!reads.count(e)) not_bot_not_r.insert(e);

  EventSet all_nodes;
  for (const auto& [id, _] : m.nodes) all_nodes.insert(id);

  Relation ppo;
  if (!alt) {
    EventSet wwmf = nodes_of(m, [](const MixedNode& n) {
      return n.kind == NodeKind::W_WMF;
    });
    EventSet fenced = rmws;
    for (const auto& e : mf) fenced.insert(e);
    for (const auto& e : sf) fenced.insert(e);
    EventSet heads = reads;
    for (const auto& e : rmws) heads.insert(e);
    for (const auto& e : mf) heads.insert(e);

    Relation po_opt = reflexive_closure(po, all_nodes);
    ppo = bracket(not_bot, po, fenced)
              .unite(bracket(heads, po, not_bot))
              .unite(compose(identity_on(not_bot),
                             compose(po_opt,
                                     compose(identity_on(wwmf),
                                             compose(po, identity_on(not_bot))))))
              .unite(bracket(sf, po, not_bot_not_r))
              .unite(bracket(w_not_nt, po, w_not_nt))
              .unite(bracket(w_all, node_po_loc(m, po), w_all));
  } else {
    EventSet wsfwmf = nodes_of(m, [](const MixedNode& n) {
      return n.kind == NodeKind::W_SFWMF;
    });
    EventSet wsfw = nodes_of(m, [](const MixedNode& n) {
      return n.kind == NodeKind::W_SFW;
    });
    EventSet fenced = rmws;
    for (const auto& e : mf) fenced.insert(e);
    for (const auto& e : sf) fenced.insert(e);
    for (const auto& e : wsfwmf) fenced.insert(e);
    EventSet heads = reads;
    for (const auto& e : rmws) heads.insert(e);
    for (const auto& e : mf) heads.insert(e);
    for (const auto& e : wsfwmf) heads.insert(e);

    Relation po_opt = reflexive_closure(po, all_nodes);
    ppo = bracket(not_bot, po, fenced)
              .unite(bracket(heads, po, not_bot))
              .unite(compose(identity_on(not_bot),
                             compose(po,
                                     compose(identity_on(wsfw),
                                             compose(po_opt,
                                                     identity_on(not_bot_not_r))))))
              .unite(bracket(sf, po, not_bot_not_r))
              .unite(bracket(w_not_nt, po, w_not_nt))
              .unite(bracket(w_all, node_po_loc(m, po), w_all));
  }
  return ppo;
}

}  // namespace

Verdict mixed_ex86_consistent(const MixedGraph& m) {
  Relation po = node_po(m);
  Relation rb =
      compose(m.rf.inverse(), m.mo).minus(identity_on([&] {
        EventSet all;
        for (const auto& [id, _] : m.nodes) all.insert(id);
        return all;
      }()));

  Verdict v;
  Relation internal = internal_part(m.rf)
                          .unite(internal_part(m.mo))
                          .unite(internal_part(rb));
  Relation internal_axiom = compose(po, internal);
  if (auto e = find_reflexive(internal_axiom)) {
    v.consistent = false;
    v.violations.push_back({"internal", {*e}});
  }

  Relation ob = mixed_ppo(m, po)
                    .unite(external_part(m.rf))
                    .unite(external_part(m.mo))
                    .unite(external_part(rb));
  if (auto cycle = find_cycle(ob)) {
    v.consistent = false;
    v.violations.push_back({"external", *cycle});
  }
  return v;
}

Verdict mixed_rc11ext_consistent(const MixedGraph& m) {
  // Every node carries exactly one source event, so the node-level axioms
  // coincide with the source-model axioms evaluated over node identities.
  return rc11ext_consistent(project_source(m));
}

TransferReport transfer_check(const MixedGraph& m) {
  TransferReport rep;
  rep.mixed_rc11ext = mixed_rc11ext_consistent(m).consistent;
  rep.source_rc11ext = rc11ext_consistent(project_source(m)).consistent;
  Verdict mixed_tgt = mixed_ex86_consistent(m);
  Verdict proj_tgt = ex86_consistent(canonicalize_execution(project_target(m)));
  rep.mixed_ex86 = mixed_tgt.consistent;
  rep.target_ex86 = proj_tgt.consistent;
  rep.ok = rep.mixed_rc11ext == rep.source_rc11ext &&
           rep.mixed_ex86 == rep.target_ex86;
  if (!rep.ok) {
    std::ostringstream os;
    os << "transfer mismatch:";
    if (rep.mixed_rc11ext != rep.source_rc11ext)
      os << " rc11ext(mixed)=" << rep.mixed_rc11ext
         << " rc11ext(source)=" << rep.source_rc11ext;
    if (rep.mixed_ex86 != rep.target_ex86) {
      os << " ex86(mixed)=" << rep.mixed_ex86
         << " ex86(target)=" << rep.target_ex86 << " axioms:";
      for (const auto& viol :
           (rep.mixed_ex86 ? proj_tgt : mixed_tgt).violations)
        os << " " << viol.axiom;
    }
    rep.detail = os.str();
  }
  return rep;
}

}  // namespace asmm
