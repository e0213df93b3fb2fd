#include "asmm/opsem.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <sstream>

namespace asmm {

// --- graphs ------------------------------------------------------------------

EventSet ExecutionGraph::event_set() const {
  EventSet s;
  for (const auto& [e, _] : events) s.insert(e);
  return s;
}

std::optional<Loc> ExecutionGraph::loc_of(const EventId& e) const {
  const Label& l = events.at(e);
  if (!l.has_loc()) return std::nullopt;
  return l.loc;
}

std::set<ThreadId> ExecutionGraph::thread_ids() const {
  std::set<ThreadId> tids;
  for (const auto& [e, _] : events)
    if (!e.is_init()) tids.insert(e.tid);
  return tids;
}

std::vector<EventId> ExecutionGraph::thread_events(ThreadId tid) const {
  std::vector<EventId> out;
  for (const auto& [e, _] : events)
    if (!e.is_init() && e.tid == tid) out.push_back(e);
  return out;  // map order is already (tid, idx)
}

Relation program_order(const ExecutionGraph& g) {
  Relation po;
  std::vector<EventId> inits, threads;
  for (const auto& [e, _] : g.events)
    (e.is_init() ? inits : threads).push_back(e);
  for (const auto& i : inits)
    for (const auto& t : threads) po.insert(i, t);
  for (const auto& a : threads)
    for (const auto& b : threads)
      if (a.tid == b.tid && a.idx < b.idx) po.insert(a, b);
  return po;
}

// --- pool reduction ----------------------------------------------------------

Pool initial_pool(const Program& p) {
  Pool pool;
  for (const auto& [tid, cmd] : p.threads) {
    Thread t;
    t.next_cmd = Cmd::make_seq(cmd, Cmd::make_skip());
    pool[tid] = std::move(t);
  }
  return pool;
}

ExecutionGraph initial_graph(const Program& p) {
  ExecutionGraph g;
  for (Loc l : p.locations())
    g.events[EventId::init(l)] = Label::write(Mode::na, l, 0);
  return g;
}

namespace {

struct Emit {
  Label label;
  RegState phi;  // post-state
};

// The label(s) a memory command can emit under register state phi, with
// reads and failed RMWs branching over the value domain.
std::vector<Emit> emit_options(const Cmd& c, const RegState& phi,
                               const ValueDomain& values) {
  std::vector<Emit> out;
  auto read_like = [&](Mode md) {
    Loc l = eval_expr(c.addr, phi);
    for (Value n : values) {
      RegState phi2 = phi;
      phi2.set(c.reg, n);
      out.push_back({Label::read(md, l, n), phi2});
    }
  };
  auto write_like = [&](Mode md) {
    Loc l = eval_expr(c.addr, phi);
    Value n = eval_expr(c.arg1, phi);
    out.push_back({Label::write(md, l, n), phi});
  };
  auto rmw_like = [&](Mode md) {
    Loc l = eval_expr(c.addr, phi);
    Value n = eval_expr(c.arg1, phi);  // expected (read on success)
    Value m = eval_expr(c.arg2, phi);  // written on success
    RegState phi_s = phi;
    phi_s.set(c.reg, n);
    out.push_back({Label::rmw_success(md, l, n, m), phi_s});
    for (Value f : values) {
      if (f == n) continue;
      RegState phi_f = phi;
      phi_f.set(c.reg, f);
      out.push_back({Label::rmw_fail(md, l, f), phi_f});
    }
  };

  switch (c.kind) {
    case Cmd::Kind::Read: read_like(c.mode); break;
    case Cmd::Kind::Write: write_like(c.mode); break;
    case Cmd::Kind::Rmw: rmw_like(c.mode); break;
    case Cmd::Kind::Fence: out.push_back({Label::fence(c.mode), phi}); break;
    case Cmd::Kind::AsmRead: read_like(Mode::tso); break;
    case Cmd::Kind::AsmWrite: write_like(Mode::tso); break;
    case Cmd::Kind::AsmRmw: rmw_like(Mode::tso); break;
    case Cmd::Kind::AsmMfence: out.push_back({Label::fence(Mode::sc), phi}); break;
    case Cmd::Kind::AsmSfence: out.push_back({Label::fence(Mode::sf), phi}); break;
    case Cmd::Kind::AsmNtWrite: write_like(Mode::nt); break;
    default:
      assert(false && "not a memory command");
  }
  return out;
}

}  // namespace

std::vector<std::pair<Pool, ExecutionGraph>> pool_step(
    const Pool& pool, const ExecutionGraph& g, const ValueDomain& values,
    std::map<ThreadId, RegState>* final_regs) {
  std::vector<std::pair<Pool, ExecutionGraph>> out;
  for (const auto& [tid, th] : pool) {
    const CmdPtr& next = th.next_cmd;
    if (next->kind == Cmd::Kind::Skip) {
      // TerminateStep: completed threads are removed.
      Pool p2 = pool;
      p2.erase(tid);
      if (final_regs) (*final_regs)[tid] = th.reg_st;
      out.emplace_back(std::move(p2), g);
      continue;
    }
    if (next->kind != Cmd::Kind::Seq) continue;  // stuck (ill-formed)
    const CmdPtr& head = next->s1;
    const CmdPtr& tail = next->s2;

    auto with_next = [&](CmdPtr nc) {
      Pool p2 = pool;
      p2[tid].next_cmd = std::move(nc);
      return p2;
    };

    switch (head->kind) {
      case Cmd::Kind::Skip: {  // SkipStep
        out.emplace_back(with_next(tail), g);
        break;
      }
      case Cmd::Kind::Seq: {  // SeqStep
        out.emplace_back(
            with_next(Cmd::make_seq(head->s1, Cmd::make_seq(head->s2, tail))),
            g);
        break;
      }
      case Cmd::Kind::If: {  // IfStep
        Value n = eval_expr(head->arg1, th.reg_st);
        out.emplace_back(
            with_next(n != 0 ? Cmd::make_seq(head->s1, tail) : tail), g);
        break;
      }
      case Cmd::Kind::While: {  // WhileStep
        CmdPtr unfolded = Cmd::make_if(
            head->arg1, Cmd::make_seq(head->s1, Cmd::make_while(head->arg1,
                                                                head->s1)));
        out.emplace_back(with_next(Cmd::make_seq(unfolded, tail)), g);
        break;
      }
      case Cmd::Kind::Assign: {  // register move, no event
        Pool p2 = pool;
        p2[tid].reg_st.set(head->reg, eval_expr(head->arg1, th.reg_st));
        p2[tid].next_cmd = tail;
        out.emplace_back(std::move(p2), g);
        break;
      }
      default: {  // memory commands emit an event
        for (const Emit& em : emit_options(*head, th.reg_st, values)) {
          Pool p2 = pool;
          p2[tid].reg_st = em.phi;
          p2[tid].ev_counter = th.ev_counter + 1;
          p2[tid].next_cmd = tail;
          ExecutionGraph g2 = g;
          g2.events[EventId::thread(tid, th.ev_counter)] = em.label;
          out.emplace_back(std::move(p2), std::move(g2));
        }
        break;
      }
    }
  }
  return out;
}

// --- enumeration ---------------------------------------------------------------

namespace {

void encode_expr(const ExprPtr& e, std::ostringstream& os) {
  if (!e) {
    os << "_";
    return;
  }
  switch (e->kind) {
    case Expr::Kind::Num: os << "n" << e->num; break;
    case Expr::Kind::Reg: os << "r" << e->reg; break;
    case Expr::Kind::Loc: os << "l" << e->loc; break;
    case Expr::Kind::Plus: os << "(+"; encode_expr(e->lhs, os);
      encode_expr(e->rhs, os); os << ")"; break;
    case Expr::Kind::Sub: os << "(-"; encode_expr(e->lhs, os);
      encode_expr(e->rhs, os); os << ")"; break;
    case Expr::Kind::Times: os << "(*"; encode_expr(e->lhs, os);
      encode_expr(e->rhs, os); os << ")"; break;
  }
}

void encode_cmd(const CmdPtr& c, std::ostringstream& os) {
  if (!c) {
    os << "_";
    return;
  }
  os << static_cast<int>(c->kind) << "." << static_cast<int>(c->mode) << "."
     << c->reg << ".";
  encode_expr(c->addr, os);
  encode_expr(c->arg1, os);
  encode_expr(c->arg2, os);
  if (c->s1 || c->s2) {
    os << "{";
    encode_cmd(c->s1, os);
    os << "|";
    encode_cmd(c->s2, os);
    os << "}";
  }
}

std::string encode_state(const Pool& pool, const ExecutionGraph& g) {
  std::ostringstream os;
  for (const auto& [tid, th] : pool) {
    os << "T" << tid << "@" << th.ev_counter << "[";
    for (const auto& [r, v] : th.reg_st.regs()) os << r << "=" << v << ",";
    os << "]";
    encode_cmd(th.next_cmd, os);
    os << ";";
  }
  os << "#G";
  for (const auto& [e, l] : g.events)
    os << to_string(e) << ":" << to_string(l) << ";";
  return os.str();
}

struct SearchNode {
  Pool pool;
  ExecutionGraph graph;
  std::map<ThreadId, RegState> final_regs;
  std::size_t budget = 0;
};

}  // namespace

EnumerationResult enumerate_graphs(const Program& p,
                                   const EnumerationOptions& opts) {
  EnumerationResult res;
  std::map<ExecutionGraph, std::map<ThreadId, RegState>> complete;
  std::set<ExecutionGraph> prefixes;
  std::map<std::string, std::size_t> seen;  // state -> best budget seen

  std::deque<SearchNode> frontier;
  frontier.push_back(
      {initial_pool(p), initial_graph(p), {}, opts.step_bound});

  while (!frontier.empty()) {
    SearchNode node;
    if (opts.order == ExplorationOrder::DFS) {
      node = std::move(frontier.back());
      frontier.pop_back();
    } else {
      node = std::move(frontier.front());
      frontier.pop_front();
    }
    ++res.states_explored;

    if (opts.collect_prefixes) prefixes.insert(node.graph);
    if (node.pool.empty()) {
      complete.emplace(node.graph, node.final_regs);
      continue;
    }
    if (node.budget == 0) {
      res.overflow = true;
      continue;
    }

    std::string key = encode_state(node.pool, node.graph);
    auto it = seen.find(key);
    if (it != seen.end() && it->second >= node.budget) continue;
    seen[key] = node.budget;

    for (auto& [pool2, graph2] : pool_step(node.pool, node.graph,
                                           opts.values)) {
      SearchNode succ;
      succ.final_regs = node.final_regs;
      for (const auto& [tid, th] : node.pool)
        if (!pool2.count(tid)) succ.final_regs[tid] = th.reg_st;
      succ.pool = std::move(pool2);
      succ.graph = std::move(graph2);
      succ.budget = node.budget - 1;
      frontier.push_back(std::move(succ));
    }
  }

  for (auto& [g, fr] : complete) {
    res.complete.push_back(g);
    res.complete_regs.push_back(fr);
  }
  res.prefixes.assign(prefixes.begin(), prefixes.end());
  return res;
}

// --- candidate extensions -------------------------------------------------------

std::vector<Relation> enumerate_rf(const ExecutionGraph& g) {
  std::vector<EventId> reads;
  std::vector<std::vector<EventId>> choices;
  for (const auto& [e, l] : g.events) {
    if (!l.reads_memory()) continue;
    std::vector<EventId> writers;
    for (const auto& [w, wl] : g.events) {
      if (w == e || !wl.writes_memory()) continue;
      if (wl.loc == l.loc && wl.value_written() == l.value_read())
        writers.push_back(w);
    }
    if (writers.empty()) return {};  // this graph yields no candidates
    reads.push_back(e);
    choices.push_back(std::move(writers));
  }

  std::vector<Relation> out;
  std::vector<std::size_t> pick(reads.size(), 0);
  for (;;) {
    Relation rf;
    for (std::size_t i = 0; i < reads.size(); ++i)
      rf.insert(choices[i][pick[i]], reads[i]);
    out.push_back(std::move(rf));
    std::size_t i = 0;
    for (; i < reads.size(); ++i) {
      if (++pick[i] < choices[i].size()) break;
      pick[i] = 0;
    }
    if (i == reads.size()) break;
    if (reads.empty()) break;
  }
  return out;
}

namespace {

void total_order(Relation* mo, const std::vector<EventId>& chain) {
  for (std::size_t i = 0; i < chain.size(); ++i)
    for (std::size_t j = i + 1; j < chain.size(); ++j)
      mo->insert(chain[i], chain[j]);
}

}  // namespace

std::vector<Relation> enumerate_mo(const ExecutionGraph& g) {
  std::map<Loc, std::vector<EventId>> writes;     // non-init
  std::map<Loc, EventId> init_for;
  for (const auto& [e, l] : g.events) {
    if (!l.writes_memory()) continue;
    if (e.is_init())
      init_for.emplace(l.loc, e);
    else
      writes[l.loc].push_back(e);
  }

  std::vector<Relation> out{Relation{}};
  for (auto& [loc, ws] : writes) {
    std::sort(ws.begin(), ws.end());
    std::vector<Relation> extended;
    do {
      std::vector<EventId> chain;
      auto init_it = init_for.find(loc);
      if (init_it != init_for.end()) chain.push_back(init_it->second);
      chain.insert(chain.end(), ws.begin(), ws.end());
      Relation per_loc;
      total_order(&per_loc, chain);
      for (const auto& base : out) extended.push_back(base.unite(per_loc));
    } while (std::next_permutation(ws.begin(), ws.end()));
    out = std::move(extended);
  }
  // Locations with an init write but no other writes still contribute the
  // (empty) order; nothing to add.
  return out;
}

std::vector<CandidateExecution> enumerate_candidates(
    const ExecutionGraph& g, const std::map<ThreadId, RegState>& final_regs) {
  std::vector<CandidateExecution> out;
  auto rfs = enumerate_rf(g);
  if (rfs.empty()) return out;
  auto mos = enumerate_mo(g);
  for (const auto& rf : rfs)
    for (const auto& mo : mos)
      out.push_back(CandidateExecution{g, rf, mo, final_regs});
  return out;
}

}  // namespace asmm
