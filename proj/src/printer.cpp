#include "asmm/printer.hpp"

#include <sstream>

namespace asmm {

namespace {

std::string loc_name(Loc l, const std::map<Loc, std::string>& names) {
  auto it = names.find(l);
  if (it != names.end()) return it->second;
  return "L" + std::to_string(l);
}

int precedence(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::Plus:
    case Expr::Kind::Sub:
      return 1;
    case Expr::Kind::Times:
      return 2;
    default:
      return 3;
  }
}

void print_expr_prec(const ExprPtr& e, const std::map<Loc, std::string>& names,
                     int parent_prec, std::ostringstream& os) {
  int prec = precedence(e->kind);
  bool paren = prec < parent_prec;
  if (paren) os << "(";
  switch (e->kind) {
    case Expr::Kind::Num:
      os << e->num;
      break;
    case Expr::Kind::Reg:
      os << e->reg;
      break;
    case Expr::Kind::Loc:
      os << loc_name(e->loc, names);
      break;
    case Expr::Kind::Plus:
      print_expr_prec(e->lhs, names, prec, os);
      os << " + ";
      print_expr_prec(e->rhs, names, prec + 1, os);
      break;
    case Expr::Kind::Sub:
      print_expr_prec(e->lhs, names, prec, os);
      os << " - ";
      print_expr_prec(e->rhs, names, prec + 1, os);
      break;
    case Expr::Kind::Times:
      print_expr_prec(e->lhs, names, prec, os);
      os << " * ";
      print_expr_prec(e->rhs, names, prec + 1, os);
      break;
  }
  if (paren) os << ")";
}

void print_stmts(const CmdPtr& c, const std::map<Loc, std::string>& names,
                 int indent, std::ostringstream& os);

void print_one(const CmdPtr& c, const std::map<Loc, std::string>& names,
               int indent, std::ostringstream& os) {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  os << pad;
  switch (c->kind) {
    case Cmd::Kind::Read:
      os << c->reg << " := R[" << to_string(c->mode) << "] ["
         << loc_name(c->addr->loc, names) << "]";
      break;
    case Cmd::Kind::Write:
      os << "W[" << to_string(c->mode) << "] [" << loc_name(c->addr->loc, names)
         << "] " << print_expr(c->arg1, names);
      break;
    case Cmd::Kind::Rmw:
      os << c->reg << " := RMW[" << to_string(c->mode) << "] ["
         << loc_name(c->addr->loc, names) << "] " << print_expr(c->arg1, names)
         << " " << print_expr(c->arg2, names);
      break;
    case Cmd::Kind::Fence:
      os << "F[" << to_string(c->mode) << "]";
      break;
    case Cmd::Kind::AsmRead:
      os << c->reg << " := asm mov [" << loc_name(c->addr->loc, names) << "]";
      break;
    case Cmd::Kind::AsmWrite:
      os << "asm mov [" << loc_name(c->addr->loc, names) << "] "
         << print_expr(c->arg1, names);
      break;
    case Cmd::Kind::AsmRmw:
      os << c->reg << " := asm rmw [" << loc_name(c->addr->loc, names) << "] "
         << print_expr(c->arg1, names) << " " << print_expr(c->arg2, names);
      break;
    case Cmd::Kind::AsmMfence:
      os << "asm mfence";
      break;
    case Cmd::Kind::AsmSfence:
      os << "asm sfence";
      break;
    case Cmd::Kind::AsmNtWrite:
      os << "asm movnt [" << loc_name(c->addr->loc, names) << "] "
         << print_expr(c->arg1, names);
      break;
    case Cmd::Kind::Assign:
      os << c->reg << " := " << print_expr(c->arg1, names);
      break;
    case Cmd::Kind::If:
      os << "if " << print_expr(c->arg1, names) << " {\n";
      print_stmts(c->s1, names, indent + 1, os);
      os << "\n" << pad << "}";
      break;
    case Cmd::Kind::While:
      os << "while " << print_expr(c->arg1, names) << " {\n";
      print_stmts(c->s1, names, indent + 1, os);
      os << "\n" << pad << "}";
      break;
    case Cmd::Kind::Skip:
      os << "skip";
      break;
    case Cmd::Kind::Seq:
      break;  // handled by print_stmts
  }
}

void print_stmts(const CmdPtr& c, const std::map<Loc, std::string>& names,
                 int indent, std::ostringstream& os) {
  if (c->kind == Cmd::Kind::Seq) {
    print_stmts(c->s1, names, indent, os);
    os << ";\n";
    print_stmts(c->s2, names, indent, os);
  } else {
    print_one(c, names, indent, os);
  }
}

}  // namespace

std::string print_expr(const ExprPtr& e,
                       const std::map<Loc, std::string>& names) {
  std::ostringstream os;
  print_expr_prec(e, names, 0, os);
  return os.str();
}

std::string print_cmd(const CmdPtr& c, const std::map<Loc, std::string>& names,
                      int indent) {
  std::ostringstream os;
  print_stmts(c, names, indent, os);
  return os.str();
}

std::map<Loc, std::string> invert_loc_names(
    const std::map<std::string, Loc>& loc_names) {
  std::map<Loc, std::string> out;
  for (const auto& [name, loc] : loc_names) out[loc] = name;
  return out;
}

std::string print_program(const Program& p,
                          const std::map<std::string, Loc>& loc_names) {
  auto names = invert_loc_names(loc_names);
  std::ostringstream os;
  for (const auto& [tid, cmd] : p.threads) {
    os << "thread " << tid << ":\n";
    os << print_cmd(cmd, names, 1) << "\n";
  }
  return os.str();
}

std::string print_outcome(const OutcomePredicate& o,
                          const std::map<Loc, std::string>& names) {
  if (o.ub) return "UB";
  std::ostringstream os;
  bool first = true;
  for (const auto& a : o.atoms) {
    if (!first) os << " /\\ ";
    first = false;
    if (a.kind == OutcomePredicate::Atom::Kind::Reg)
      os << a.reg;
    else
      os << loc_name(a.loc, names);
    os << "=" << a.value;
  }
  return os.str();
}

std::string print_litmus(const LitmusTest& t) {
  auto names = invert_loc_names(t.loc_names);
  std::ostringstream os;
  os << "test " << t.name << "\n";
  if (t.domain_hint) {
    os << "values ";
    bool first = true;
    for (Value v : *t.domain_hint) {
      if (!first) os << ", ";
      first = false;
      os << v;
    }
    os << "\n";
  }
  for (const auto& [tid, cmd] : t.program.threads) {
    os << "thread " << tid << ":\n";
    os << print_cmd(cmd, names, 1) << "\n";
  }
  for (const auto& e : t.expectations) {
    os << "expect " << to_string(e.model) << " "
       << (e.allowed ? "allowed" : "forbidden") << ": "
       << print_outcome(e.outcome, names) << "\n";
  }
  return os.str();
}

}  // namespace asmm
