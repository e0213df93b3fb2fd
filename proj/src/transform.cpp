#include "asmm/transform.hpp"

#include <algorithm>
#include <sstream>

namespace asmm {

std::string Site::to_string() const {
  std::ostringstream os;
  os << "t" << tid;
  for (int i : path) os << "." << i;
  return os.str();
}

namespace {

CmdPtr rebuild(const CmdPtr& c, const std::vector<int>& path, std::size_t at,
               const std::function<CmdPtr(const CmdPtr&)>& replace) {
  if (at == path.size()) return replace(c);
  auto next = [&](const CmdPtr& sub) { return rebuild(sub, path, at + 1, replace); };
  auto copy = std::make_shared<Cmd>(*c);
  if (path[at] == 0)
    copy->s1 = next(c->s1 ? c->s1 : throw TransformError("path leaves the AST"));
  else
    copy->s2 = next(c->s2 ? c->s2 : throw TransformError("path leaves the AST"));
  return copy;
}

Program replace_at(const Program& p, const Site& site,
                   const std::function<CmdPtr(const CmdPtr&)>& fn) {
  auto it = p.threads.find(site.tid);
  if (it == p.threads.end()) throw TransformError("no such thread");
  Program out = p;
  out.threads[site.tid] = rebuild(it->second, site.path, 0, fn);
  return out;
}

bool legal_mode_for(Cmd::Kind k, Mode m) {
  switch (k) {
    case Cmd::Kind::Read: return legal_read_mode(m);
    case Cmd::Kind::Write: return legal_write_mode(m);
    case Cmd::Kind::Rmw: return legal_rmw_mode(m);
    case Cmd::Kind::Fence: return legal_fence_mode(m);
    default: return false;
  }
}

}  // namespace

// --- strengthening ---------------------------------------------------------------

Program strengthen(const Program& p, const Site& site, Mode md2) {
  return replace_at(p, site, [&](const CmdPtr& c) -> CmdPtr {
    switch (c->kind) {
      case Cmd::Kind::Read:
      case Cmd::Kind::Write:
      case Cmd::Kind::Rmw:
      case Cmd::Kind::Fence:
        break;
      default:
        throw TransformError(
            "strengthening applies to plain commands with a surface mode");
    }
    if (!mode_leq(c->mode, md2))
      throw TransformError(std::string("mode ") + to_string(md2) +
                           " is not stronger than " + to_string(c->mode));
    if (!legal_mode_for(c->kind, md2))
      throw TransformError(std::string("mode ") + to_string(md2) +
                           " is not legal for this command");
    auto copy = std::make_shared<Cmd>(*c);
    copy->mode = md2;
    return copy;
  });
}

namespace {

void walk_sites(const CmdPtr& c, Site& cur,
                const std::function<void(const Site&, const CmdPtr&)>& fn) {
  fn(cur, c);
  if (c->s1) {
    cur.path.push_back(0);
    walk_sites(c->s1, cur, fn);
    cur.path.pop_back();
  }
  if (c->s2) {
    cur.path.push_back(1);
    walk_sites(c->s2, cur, fn);
    cur.path.pop_back();
  }
}

}  // namespace

std::vector<std::pair<Site, Mode>> enumerate_strengthenings(const Program& p) {
  std::vector<std::pair<Site, Mode>> out;
  for (const auto& [tid, body] : p.threads) {
    Site cur{tid, {}};
    walk_sites(body, cur, [&](const Site& site, const CmdPtr& c) {
      switch (c->kind) {
        case Cmd::Kind::Read:
        case Cmd::Kind::Write:
        case Cmd::Kind::Rmw:
        case Cmd::Kind::Fence:
          for (Mode m : kAllModes)
            if (m != c->mode && mode_leq(c->mode, m) && legal_mode_for(c->kind, m))
              out.emplace_back(site, m);
          break;
        default:
          break;
      }
    });
  }
  return out;
}

// --- deordering ------------------------------------------------------------------

namespace {

std::optional<Loc> static_loc(const CmdPtr& c) {
  if (c->addr && c->addr->kind == Expr::Kind::Loc) return c->addr->loc;
  return std::nullopt;
}

bool plain_memory(const CmdPtr& c) {
  switch (c->kind) {
    case Cmd::Kind::Read:
    case Cmd::Kind::Write:
    case Cmd::Kind::Rmw:
    case Cmd::Kind::Fence:
      return true;
    default:
      return false;
  }
}

}  // namespace

bool deorderable(const CmdPtr& c1, const CmdPtr& c2) {
  if (!plain_memory(c1) || !plain_memory(c2)) return false;
  // Distinct, statically known locations (fences have none).
  if (c1->kind != Cmd::Kind::Fence && c2->kind != Cmd::Kind::Fence) {
    auto l1 = static_loc(c1), l2 = static_loc(c2);
    if (!l1 || !l2 || *l1 == *l2) return false;
  }
  Mode m1 = c1->mode, m2 = c2->mode;
  using K = Cmd::Kind;
  switch (c1->kind) {
    case K::Read:
      switch (c2->kind) {
        case K::Read: return mode_leq(m1, Mode::rlx);
        case K::Write:
          return mode_leq(m1, Mode::rlx) && mode_leq(m2, Mode::rlx) &&
                 (m1 == Mode::na || m2 == Mode::na);
        case K::Rmw: return m1 == Mode::na && mode_leq(m2, Mode::acq);
        case K::Fence: return m1 != Mode::rlx && m2 == Mode::acq;
        default: return false;
      }
    case K::Write:
      switch (c2->kind) {
        case K::Read: return m1 != Mode::sc && m2 != Mode::sc;
        case K::Write: return mode_leq(m2, Mode::rlx);
        case K::Rmw: return mode_leq(m2, Mode::acq);
        case K::Fence: return m2 == Mode::acq;
        default: return false;
      }
    case K::Rmw:
      switch (c2->kind) {
        case K::Read: return mode_leq(m1, Mode::rel);
        case K::Write: return mode_leq(m1, Mode::rel) && m2 == Mode::na;
        case K::Rmw: return false;  // not deorderable
        case K::Fence: return mode_leq(Mode::acq, m1) && m2 == Mode::acq;
        default: return false;
      }
    case K::Fence:
      switch (c2->kind) {
        case K::Read: return m1 == Mode::rel;
        case K::Write: return m1 == Mode::rel && m2 != Mode::rlx;
        case K::Rmw: return m1 == Mode::rel && mode_leq(Mode::rel, m2);
        case K::Fence: return m1 == Mode::rel && m2 == Mode::acq;
        default: return false;
      }
    default:
      return false;
  }
}

Program deorder(const Program& p, ThreadId tid) {
  auto it = p.threads.find(tid);
  if (it == p.threads.end()) throw TransformError("no such thread");
  const CmdPtr& body = it->second;
  if (body->kind != Cmd::Kind::Seq || body->s2->kind == Cmd::Kind::Seq)
    throw TransformError("thread body is not a two-command pair");
  if (!deorderable(body->s1, body->s2))
    throw TransformError("pair is not in the deorderable table");
  Program out = p;
  ThreadId fresh = p.threads.rbegin()->first + 1;
  out.threads[tid] = body->s1;
  out.threads[fresh] = body->s2;
  return out;
}

std::vector<ThreadId> enumerate_deorderings(const Program& p) {
  std::vector<ThreadId> out;
  for (const auto& [tid, body] : p.threads)
    if (body->kind == Cmd::Kind::Seq && body->s2->kind != Cmd::Kind::Seq &&
        deorderable(body->s1, body->s2))
      out.push_back(tid);
  return out;
}

// --- merging ---------------------------------------------------------------------

namespace {

ExprPtr literal_of(const CmdPtr& c, const ExprPtr& e) {
  (void)c;
  if (e && e->kind == Expr::Kind::Num) return e;
  return nullptr;
}

// 1 when a==b, else 0, using saturating subtraction.
ExprPtr eq01(const ExprPtr& a, const ExprPtr& b) {
  ExprPtr diff = Expr::make_plus(Expr::make_sub(a, b), Expr::make_sub(b, a));
  return Expr::make_sub(Expr::make_num(1), diff);
}

}  // namespace

std::optional<CmdPtr> mergeable(const CmdPtr& c1, const CmdPtr& c2) {
  if (!plain_memory(c1) || !plain_memory(c2)) return std::nullopt;
  using K = Cmd::Kind;

  if (c1->kind == K::Fence && c2->kind == K::Fence)
    return c1->mode == c2->mode ? std::optional<CmdPtr>(c1) : std::nullopt;
  if (c1->kind == K::Fence || c2->kind == K::Fence) return std::nullopt;

  auto l1 = static_loc(c1), l2 = static_loc(c2);
  if (!l1 || !l2 || *l1 != *l2) return std::nullopt;

  if (c1->kind == K::Write && c2->kind == K::Write && c1->mode == c2->mode)
    return c2;  // overwritten write elided

  if (c1->kind == K::Read && c2->kind == K::Read && c1->mode == c2->mode)
    return Cmd::make_seq(c1, Cmd::make_assign(c2->reg, Expr::make_reg(c1->reg)));

  // Read-after-write elimination: W^sc;R^sc and W^md;R^acq.
  if (c1->kind == K::Write && c2->kind == K::Read) {
    bool row = (c1->mode == Mode::sc && c2->mode == Mode::sc) ||
               c2->mode == Mode::acq;
    if (!row) return std::nullopt;
    ExprPtr val = literal_of(c1, c1->arg1);
    if (!val) return std::nullopt;  // only literal values are propagated
    return Cmd::make_seq(c1, Cmd::make_assign(c2->reg, val));
  }

  // Write-absorbed-by-RMW: the RMW must read the written literal.
  if (c1->kind == K::Write && c2->kind == K::Rmw) {
    Mode wanted = Mode::na;
    for (Mode m : kAllModes)
      if (is_rc11_mode(m) && mode_leq(Mode::rlx, m) && mode_leq(m, c2->mode) &&
          (wanted == Mode::na || mode_leq(wanted, m)))
        wanted = m;
    if (wanted == Mode::na || c1->mode != wanted) return std::nullopt;
    if (!legal_write_mode(wanted)) return std::nullopt;
    ExprPtr wv = literal_of(c1, c1->arg1);
    ExprPtr expect = literal_of(c2, c2->arg1);
    if (!wv || !expect || wv->num != expect->num) return std::nullopt;
    return Cmd::make_seq(Cmd::make_write(c1->mode, c1->addr, c2->arg2),
                         Cmd::make_assign(c2->reg, expect));
  }

  // Read after an RMW: r2 := r1, upgraded to the written value on success.
  if (c1->kind == K::Rmw && c2->kind == K::Read) {
    Mode wanted = Mode::na;
    for (Mode m : kAllModes)
      if (is_rc11_mode(m) && mode_leq(Mode::rlx, m) && mode_leq(m, c1->mode) &&
          (wanted == Mode::na || mode_leq(wanted, m)))
        wanted = m;
    if (wanted == Mode::na || c2->mode != wanted) return std::nullopt;
    if (!legal_read_mode(wanted)) return std::nullopt;
    ExprPtr expect = literal_of(c1, c1->arg1);
    ExprPtr newv = literal_of(c1, c1->arg2);
    if (!expect || !newv) return std::nullopt;
    CmdPtr fixup = Cmd::make_seq(
        Cmd::make_assign(c2->reg, Expr::make_reg(c1->reg)),
        Cmd::make_if(eq01(Expr::make_reg(c1->reg), expect),
                     Cmd::make_assign(c2->reg, newv)));
    return Cmd::make_seq(c1, fixup);
  }

  // Chained RMWs of the same mode.
  if (c1->kind == K::Rmw && c2->kind == K::Rmw && c1->mode == c2->mode) {
    ExprPtr n1 = literal_of(c1, c1->arg2);
    ExprPtr e2 = literal_of(c2, c2->arg1);
    if (!n1 || !e2 || n1->num != e2->num) return std::nullopt;
    return Cmd::make_seq(
        Cmd::make_rmw(c1->mode, c1->reg, c1->addr, c1->arg1, c2->arg2),
        Cmd::make_assign(c2->reg, n1));
  }

  return std::nullopt;
}

Program merge(const Program& p, const Site& site) {
  return replace_at(p, site, [&](const CmdPtr& c) -> CmdPtr {
    if (c->kind != Cmd::Kind::Seq)
      throw TransformError("merge site must name a sequence");
    CmdPtr first = c->s1;
    CmdPtr second = c->s2;
    CmdPtr rest;
    if (second->kind == Cmd::Kind::Seq) {
      rest = second->s2;
      second = second->s1;
    }
    auto merged = mergeable(first, second);
    if (!merged) throw TransformError("pair is not in the mergeable table");
    return rest ? Cmd::make_seq(*merged, rest) : *merged;
  });
}

std::vector<Site> enumerate_merges(const Program& p) {
  std::vector<Site> out;
  for (const auto& [tid, body] : p.threads) {
    Site cur{tid, {}};
    walk_sites(body, cur, [&](const Site& site, const CmdPtr& c) {
      if (c->kind != Cmd::Kind::Seq) return;
      CmdPtr second =
          c->s2->kind == Cmd::Kind::Seq ? c->s2->s1 : c->s2;
      if (mergeable(c->s1, second)) out.push_back(site);
    });
  }
  return out;
}

// --- register promotion ----------------------------------------------------------

namespace {

void collect_loc_uses(const CmdPtr& c, Loc loc, bool* touches, bool* asm_rmw,
                      bool* dynamic_addr) {
  if (!c) return;
  if (c->is_memory() && c->kind != Cmd::Kind::Fence &&
      c->kind != Cmd::Kind::AsmMfence && c->kind != Cmd::Kind::AsmSfence) {
    auto l = static_loc(c);
    if (!l) *dynamic_addr = true;
    if (l && *l == loc) {
      *touches = true;
      if (c->kind == Cmd::Kind::AsmRmw) *asm_rmw = true;
    }
  }
  collect_loc_uses(c->s1, loc, touches, asm_rmw, dynamic_addr);
  collect_loc_uses(c->s2, loc, touches, asm_rmw, dynamic_addr);
}

CmdPtr promote_in_cmd(const CmdPtr& c, Loc loc, const std::string& rho) {
  if (!c) return c;
  auto l = static_loc(c);
  bool here = l && *l == loc;
  switch (c->kind) {
    case Cmd::Kind::Read:
    case Cmd::Kind::AsmRead:
      if (here) return Cmd::make_assign(c->reg, Expr::make_reg(rho));
      return c;
    case Cmd::Kind::Write:
    case Cmd::Kind::AsmWrite:
    case Cmd::Kind::AsmNtWrite:
      if (here) return Cmd::make_assign(rho, c->arg1);
      return c;
    case Cmd::Kind::Rmw: {
      if (!here) return c;
      // r := rho; if rho == expected { rho := new }, with the success case
      // encoded through saturating arithmetic.
      ExprPtr expect = c->arg1;
      CmdPtr read = Cmd::make_assign(c->reg, Expr::make_reg(rho));
      CmdPtr update = Cmd::make_if(eq01(Expr::make_reg(c->reg), expect),
                                   Cmd::make_assign(rho, c->arg2));
      return Cmd::make_seq(read, update);
    }
    case Cmd::Kind::If:
    case Cmd::Kind::While: {
      auto copy = std::make_shared<Cmd>(*c);
      copy->s1 = promote_in_cmd(c->s1, loc, rho);
      return copy;
    }
    case Cmd::Kind::Seq: {
      auto copy = std::make_shared<Cmd>(*c);
      copy->s1 = promote_in_cmd(c->s1, loc, rho);
      copy->s2 = promote_in_cmd(c->s2, loc, rho);
      return copy;
    }
    default:
      return c;
  }
}

}  // namespace

Program promote_register(const Program& p, Loc loc, ThreadId tid) {
  bool owner_touches = false, owner_asm_rmw = false, dynamic_addr = false;
  for (const auto& [t, body] : p.threads) {
    bool touches = false, asm_rmw = false;
    collect_loc_uses(body, loc, &touches, &asm_rmw, &dynamic_addr);
    if (t == tid) {
      owner_touches = touches;
      owner_asm_rmw = asm_rmw;
    } else if (touches) {
      throw TransformError("location is shared with thread " +
                           std::to_string(t));
    }
  }
  if (dynamic_addr)
    throw TransformError("program has dynamically addressed accesses");
  if (!owner_touches) throw TransformError("thread does not access the location");
  if (owner_asm_rmw)
    throw TransformError(
        "location is accessed through an inline-assembly read-modify-write");

  std::set<std::string> used;
  for (const auto& [_, regs] : p.registers())
    used.insert(regs.begin(), regs.end());
  std::string rho = "p0";
  for (int i = 0; used.count(rho); ++i) rho = "p" + std::to_string(i);

  Program out = p;
  out.threads[tid] = promote_in_cmd(p.threads.at(tid), loc, rho);
  return out;
}

std::vector<std::pair<Loc, ThreadId>> enumerate_promotions(const Program& p) {
  std::vector<std::pair<Loc, ThreadId>> out;
  for (Loc loc : p.locations()) {
    std::optional<ThreadId> owner;
    bool shared = false, asm_rmw = false, dynamic_addr = false;
    for (const auto& [t, body] : p.threads) {
      bool touches = false, rmw = false;
      collect_loc_uses(body, loc, &touches, &rmw, &dynamic_addr);
      if (!touches) continue;
      if (owner) shared = true;
      owner = t;
      asm_rmw |= rmw;
    }
    if (owner && !shared && !asm_rmw && !dynamic_addr)
      out.emplace_back(loc, *owner);
  }
  return out;
}

// --- sequentialization ------------------------------------------------------------

namespace {

struct ThreadLocs {
  std::set<Loc> plain_reads, asm_reads, asm_writes, all_writes;
  bool dynamic_addr = false;
};

void collect_rw_locs(const CmdPtr& c, ThreadLocs* tl) {
  if (!c) return;
  auto note = [&](std::set<Loc>* out) {
    auto l = static_loc(c);
    if (!l)
      tl->dynamic_addr = true;
    else
      out->insert(*l);
  };
  switch (c->kind) {
    case Cmd::Kind::Read: note(&tl->plain_reads); break;
    case Cmd::Kind::AsmRead: note(&tl->asm_reads); break;
    case Cmd::Kind::Write: note(&tl->all_writes); break;
    case Cmd::Kind::AsmWrite:
    case Cmd::Kind::AsmNtWrite:
      note(&tl->asm_writes);
      note(&tl->all_writes);
      break;
    // RMWs can be ignored for the non-interference conditions.
    case Cmd::Kind::Rmw:
    case Cmd::Kind::AsmRmw: break;
    default: break;
  }
  collect_rw_locs(c->s1, tl);
  collect_rw_locs(c->s2, tl);
}

ThreadLocs thread_locs(const CmdPtr& body) {
  ThreadLocs tl;
  collect_rw_locs(body, &tl);
  return tl;
}

bool disjoint(const std::set<Loc>& a, const std::set<Loc>& b) {
  for (Loc l : a)
    if (b.count(l)) return false;
  return true;
}

std::vector<CmdPtr> spine(const CmdPtr& body) {
  std::vector<CmdPtr> out;
  CmdPtr c = body;
  while (c->kind == Cmd::Kind::Seq) {
    out.push_back(c->s1);
    c = c->s2;
  }
  out.push_back(c);
  return out;
}

CmdPtr unspine(const std::vector<CmdPtr>& cmds) {
  if (cmds.empty()) return Cmd::make_skip();
  CmdPtr body = cmds.back();
  for (auto it = cmds.rbegin() + 1; it != cmds.rend(); ++it)
    body = Cmd::make_seq(*it, body);
  return body;
}

}  // namespace

bool nitia_check(const Program& p, ThreadId t1, ThreadId t2,
                 std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  auto it1 = p.threads.find(t1), it2 = p.threads.find(t2);
  if (it1 == p.threads.end() || it2 == p.threads.end())
    return fail("no such thread");
  ThreadLocs a = thread_locs(it1->second), b = thread_locs(it2->second);
  if (a.dynamic_addr || b.dynamic_addr)
    return fail("dynamically computed address; cannot establish disjointness");

  // Plain reads of one thread vs locations the other modifies via asm.
  if (!disjoint(a.plain_reads, b.asm_writes))
    return fail("plain reads overlap inline-assembly writes of the other thread");
  if (!disjoint(b.plain_reads, a.asm_writes))
    return fail("plain reads overlap inline-assembly writes of the other thread");
  // Asm reads of one thread vs all locations the other modifies.
  if (!disjoint(a.asm_reads, b.all_writes))
    return fail("inline-assembly reads overlap writes of the other thread");
  if (!disjoint(b.asm_reads, a.all_writes))
    return fail("inline-assembly reads overlap writes of the other thread");
  return true;
}

Program sequentialize(const Program& p, SeqKind kind, ThreadId t1, ThreadId t2,
                      const std::vector<bool>& interleaving) {
  auto it1 = p.threads.find(t1), it2 = p.threads.find(t2);
  if (it1 == p.threads.end() || it2 == p.threads.end())
    throw TransformError("no such thread");
  if (t1 == t2) throw TransformError("cannot merge a thread with itself");

  // Distinct register namespaces keep the merged thread well-formed.
  auto regs = p.registers();
  for (const auto& r : regs[t1])
    if (regs[t2].count(r))
      throw TransformError("threads share register '" + r + "'");

  if (kind == SeqKind::NITIA) {
    std::string why;
    if (!nitia_check(p, t1, t2, &why))
      throw TransformError("non-interference condition violated: " + why);
  }

  CmdPtr merged;
  if (kind == SeqKind::Fence) {
    merged = Cmd::make_seq(it1->second,
                           Cmd::make_seq(Cmd::make_fence(Mode::sc), it2->second));
  } else {
    std::vector<CmdPtr> s1 = spine(it1->second), s2 = spine(it2->second);
    std::vector<CmdPtr> out;
    std::size_t i = 0, j = 0;
    for (bool first : interleaving) {
      if (first && i < s1.size()) out.push_back(s1[i++]);
      else if (!first && j < s2.size()) out.push_back(s2[j++]);
    }
    while (i < s1.size()) out.push_back(s1[i++]);
    while (j < s2.size()) out.push_back(s2[j++]);
    merged = unspine(out);
  }

  Program out = p;
  out.threads.erase(t2);
  out.threads[t1] = merged;
  return out;
}

InclusionReport check_transform_sound(const Program& original,
                                      const Program& transformed,
                                      const BehaviorOptions& opts) {
  return check_inclusion(original, transformed, ModelId::RC11Ext, opts,
                         /*compare_registers=*/true);
}

}  // namespace asmm
