#include "asmm/lang.hpp"

#include <cassert>
#include <sstream>

namespace asmm {

const char* to_string(Mode m) {
  switch (m) {
    case Mode::na: return "na";
    case Mode::rlx: return "rlx";
    case Mode::rel: return "rel";
    case Mode::acq: return "acq";
    case Mode::acqrel: return "acqrel";
    case Mode::sc: return "sc";
    case Mode::nt: return "nt";
    case Mode::sf: return "sf";
    case Mode::tso: return "tso";
  }
  return "?";
}

std::string to_string(const EventId& e) {
  std::ostringstream os;
  if (e.is_init())
    os << "Init(" << e.init_loc() << ")";
  else
    os << "(" << e.tid << "," << e.idx << ")";
  return os.str();
}

std::string to_string(const Label& l) {
  std::ostringstream os;
  switch (l.kind) {
    case LabelKind::Read:
      os << "R^" << to_string(l.mode) << "(" << l.loc << "," << l.value << ")";
      break;
    case LabelKind::Write:
      os << "W^" << to_string(l.mode) << "(" << l.loc << "," << l.value << ")";
      break;
    case LabelKind::Fence:
      os << "F^" << to_string(l.mode);
      break;
    case LabelKind::Rmw:
      os << "RMW^" << to_string(l.mode) << "(" << l.loc << "," << l.value
         << ",";
      if (l.rmw_written)
        os << *l.rmw_written;
      else
        os << "bot";
      os << ")";
      break;
  }
  return os.str();
}

// --- modes -----------------------------------------------------------------

namespace {

// Reachability over the Hasse edges, closed reflexively-transitively.
// Table computed once.
struct ModeOrder {
  bool leq[9][9] = {};

  ModeOrder() {
    auto idx = [](Mode m) { return static_cast<int>(m); };
    for (int i = 0; i < 9; ++i) leq[i][i] = true;
    auto edge = [&](Mode a, Mode b) { leq[idx(a)][idx(b)] = true; };
    edge(Mode::na, Mode::rlx);
    edge(Mode::nt, Mode::rlx);
    edge(Mode::rlx, Mode::rel);
    edge(Mode::rlx, Mode::acq);
    edge(Mode::rel, Mode::acqrel);
    edge(Mode::acq, Mode::acqrel);
    edge(Mode::acqrel, Mode::sf);
    edge(Mode::sf, Mode::sc);
    edge(Mode::acqrel, Mode::tso);
    // transitive closure
    for (int k = 0; k < 9; ++k)
      for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j)
          if (leq[i][k] && leq[k][j]) leq[i][j] = true;
  }
};

const ModeOrder& mode_order() {
  static ModeOrder mo;
  return mo;
}

}  // namespace

bool mode_leq(Mode m1, Mode m2) {
  return mode_order().leq[static_cast<int>(m1)][static_cast<int>(m2)];
}

bool is_rc11_mode(Mode m) {
  switch (m) {
    case Mode::na:
    case Mode::rlx:
    case Mode::rel:
    case Mode::acq:
    case Mode::acqrel:
    case Mode::sc:
      return true;
    default:
      return false;
  }
}

bool is_asm_mode(Mode m) {
  return m == Mode::nt || m == Mode::sf || m == Mode::tso;
}

bool legal_write_mode(Mode m) {
  return m == Mode::na || m == Mode::rlx || m == Mode::rel || m == Mode::sc;
}

bool legal_read_mode(Mode m) {
  return m == Mode::na || m == Mode::rlx || m == Mode::acq || m == Mode::sc;
}

bool legal_fence_mode(Mode m) {
  return m == Mode::acq || m == Mode::rel || m == Mode::acqrel || m == Mode::sc;
}

bool legal_rmw_mode(Mode m) {
  return m == Mode::rlx || m == Mode::acq || m == Mode::rel ||
         m == Mode::acqrel || m == Mode::sc;
}

// --- expressions -------------------------------------------------------------

ExprPtr Expr::make_num(Value n) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Num;
  e->num = n;
  return e;
}

ExprPtr Expr::make_reg(std::string r) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Reg;
  e->reg = std::move(r);
  return e;
}

ExprPtr Expr::make_loc(Loc l) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Loc;
  e->loc = l;
  return e;
}

namespace {
ExprPtr make_binop(Expr::Kind k, ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->lhs = std::move(a);
  e->rhs = std::move(b);
  return e;
}
}  // namespace

ExprPtr Expr::make_plus(ExprPtr a, ExprPtr b) {
  return make_binop(Kind::Plus, std::move(a), std::move(b));
}
ExprPtr Expr::make_sub(ExprPtr a, ExprPtr b) {
  return make_binop(Kind::Sub, std::move(a), std::move(b));
}
ExprPtr Expr::make_times(ExprPtr a, ExprPtr b) {
  return make_binop(Kind::Times, std::move(a), std::move(b));
}

Value eval_expr(const Expr& e, const RegState& phi) {
  switch (e.kind) {
    case Expr::Kind::Num: return e.num;
    case Expr::Kind::Reg: return phi.get(e.reg);
    case Expr::Kind::Loc: return e.loc;
    case Expr::Kind::Plus: return eval_expr(*e.lhs, phi) + eval_expr(*e.rhs, phi);
    case Expr::Kind::Sub: {
      Value a = eval_expr(*e.lhs, phi), b = eval_expr(*e.rhs, phi);
      return a < b ? 0 : a - b;  // saturating
    }
    case Expr::Kind::Times: return eval_expr(*e.lhs, phi) * eval_expr(*e.rhs, phi);
  }
  return 0;
}

Value eval_expr(const ExprPtr& e, const RegState& phi) {
  return eval_expr(*e, phi);
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Expr::Kind::Num: return a->num == b->num;
    case Expr::Kind::Reg: return a->reg == b->reg;
    case Expr::Kind::Loc: return a->loc == b->loc;
    default:
      return expr_equal(a->lhs, b->lhs) && expr_equal(a->rhs, b->rhs);
  }
}

// --- commands ----------------------------------------------------------------

namespace {
std::shared_ptr<Cmd> blank(Cmd::Kind k) {
  auto c = std::make_shared<Cmd>();
  c->kind = k;
  return c;
}
}  // namespace

CmdPtr Cmd::make_read(Mode md, std::string r, ExprPtr loc) {
  auto c = blank(Kind::Read);
  c->mode = md;
  c->reg = std::move(r);
  c->addr = std::move(loc);
  return c;
}

CmdPtr Cmd::make_write(Mode md, ExprPtr loc, ExprPtr val) {
  auto c = blank(Kind::Write);
  c->mode = md;
  c->addr = std::move(loc);
  c->arg1 = std::move(val);
  return c;
}

CmdPtr Cmd::make_rmw(Mode md, std::string r, ExprPtr loc, ExprPtr expected,
                     ExprPtr newval) {
  auto c = blank(Kind::Rmw);
  c->mode = md;
  c->reg = std::move(r);
  c->addr = std::move(loc);
  c->arg1 = std::move(expected);
  c->arg2 = std::move(newval);
  return c;
}

CmdPtr Cmd::make_fence(Mode md) {
  auto c = blank(Kind::Fence);
  c->mode = md;
  return c;
}

CmdPtr Cmd::make_asm_read(std::string r, ExprPtr loc) {
  auto c = blank(Kind::AsmRead);
  c->reg = std::move(r);
  c->addr = std::move(loc);
  return c;
}

CmdPtr Cmd::make_asm_write(ExprPtr loc, ExprPtr val) {
  auto c = blank(Kind::AsmWrite);
  c->addr = std::move(loc);
  c->arg1 = std::move(val);
  return c;
}

CmdPtr Cmd::make_asm_rmw(std::string r, ExprPtr loc, ExprPtr expected,
                         ExprPtr newval) {
  auto c = blank(Kind::AsmRmw);
  c->reg = std::move(r);
  c->addr = std::move(loc);
  c->arg1 = std::move(expected);
  c->arg2 = std::move(newval);
  return c;
}

CmdPtr Cmd::make_asm_mfence() { return blank(Kind::AsmMfence); }
CmdPtr Cmd::make_asm_sfence() { return blank(Kind::AsmSfence); }

CmdPtr Cmd::make_asm_nt_write(ExprPtr loc, ExprPtr val) {
  auto c = blank(Kind::AsmNtWrite);
  c->addr = std::move(loc);
  c->arg1 = std::move(val);
  return c;
}

CmdPtr Cmd::make_assign(std::string r, ExprPtr e) {
  auto c = blank(Kind::Assign);
  c->reg = std::move(r);
  c->arg1 = std::move(e);
  return c;
}

CmdPtr Cmd::make_if(ExprPtr cond, CmdPtr body) {
  auto c = blank(Kind::If);
  c->arg1 = std::move(cond);
  c->s1 = std::move(body);
  return c;
}

CmdPtr Cmd::make_while(ExprPtr cond, CmdPtr body) {
  auto c = blank(Kind::While);
  c->arg1 = std::move(cond);
  c->s1 = std::move(body);
  return c;
}

CmdPtr Cmd::make_seq(CmdPtr a, CmdPtr b) {
  auto c = blank(Kind::Seq);
  c->s1 = std::move(a);
  c->s2 = std::move(b);
  return c;
}

CmdPtr Cmd::make_skip() { return blank(Kind::Skip); }

// --- program scans -----------------------------------------------------------

namespace {

void scan_expr(const ExprPtr& e, std::set<Loc>* locs, std::set<Value>* lits) {
  if (!e) return;
  switch (e->kind) {
    case Expr::Kind::Num:
      if (lits) lits->insert(e->num);
      break;
    case Expr::Kind::Loc:
      if (locs) locs->insert(e->loc);
      break;
    case Expr::Kind::Reg:
      break;
    default:
      scan_expr(e->lhs, locs, lits);
      scan_expr(e->rhs, locs, lits);
  }
}

void scan_cmd(const CmdPtr& c, std::set<Loc>* locs, std::set<Value>* lits,
              std::set<std::string>* regs) {
  if (!c) return;
  scan_expr(c->addr, locs, lits);
  scan_expr(c->arg1, locs, lits);
  scan_expr(c->arg2, locs, lits);
  if (regs && !c->reg.empty()) regs->insert(c->reg);
  scan_cmd(c->s1, locs, lits, regs);
  scan_cmd(c->s2, locs, lits, regs);
}

}  // namespace

std::set<Loc> Program::locations() const {
  std::set<Loc> locs;
  for (const auto& [_, cmd] : threads) scan_cmd(cmd, &locs, nullptr, nullptr);
  return locs;
}

std::set<Value> Program::literals() const {
  std::set<Value> lits;
  for (const auto& [_, cmd] : threads) scan_cmd(cmd, nullptr, &lits, nullptr);
  return lits;
}

std::map<ThreadId, std::set<std::string>> Program::registers() const {
  std::map<ThreadId, std::set<std::string>> out;
  for (const auto& [tid, cmd] : threads)
    scan_cmd(cmd, nullptr, nullptr, &out[tid]);
  return out;
}

namespace {

void classify_cmd(const CmdPtr& c, bool* any_asm, bool* any_plain) {
  if (!c) return;
  if (c->is_asm()) *any_asm = true;
  if (c->is_memory() && !c->is_asm()) *any_plain = true;
  classify_cmd(c->s1, any_asm, any_plain);
  classify_cmd(c->s2, any_asm, any_plain);
}

}  // namespace

ProgramClass classify_program(const Program& p) {
  bool any_asm = false, any_plain = false;
  for (const auto& [_, cmd] : p.threads) classify_cmd(cmd, &any_asm, &any_plain);
  if (!any_asm) return ProgramClass::pure_rc11;
  if (!any_plain) return ProgramClass::pure_asm;
  return ProgramClass::mixed;
}

const char* to_string(ModelId m) {
  switch (m) {
    case ModelId::SC: return "sc";
    case ModelId::RC11: return "rc11";
    case ModelId::Ex86: return "ex86";
    case ModelId::RC11Ext: return "rc11ext";
  }
  return "?";
}

std::optional<ModelId> model_from_string(const std::string& s) {
  if (s == "sc") return ModelId::SC;
  if (s == "rc11") return ModelId::RC11;
  if (s == "ex86") return ModelId::Ex86;
  if (s == "rc11ext") return ModelId::RC11Ext;
  return std::nullopt;
}

std::set<Value> value_domain(const LitmusTest& t) {
  if (t.domain_hint) return *t.domain_hint;
  std::set<Value> vals = t.program.literals();
  vals.insert(0);
  return vals;
}

}  // namespace asmm
