#ifndef ASMM_LANG_HPP_
#define ASMM_LANG_HPP_

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "asmm/event.hpp"
#include "asmm/mode.hpp"

namespace asmm {

// ---------------------------------------------------------------------------
// Expressions
// ---------------------------------------------------------------------------

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Num, Reg, Loc, Plus, Sub, Times };

  Kind kind = Kind::Num;
  Value num = 0;         // Num
  std::string reg;       // Reg
  Loc loc = 0;           // Loc
  ExprPtr lhs, rhs;      // Plus/Sub/Times

  static ExprPtr make_num(Value n);
  static ExprPtr make_reg(std::string r);
  static ExprPtr make_loc(Loc l);
  static ExprPtr make_plus(ExprPtr a, ExprPtr b);
  static ExprPtr make_sub(ExprPtr a, ExprPtr b);
  static ExprPtr make_times(ExprPtr a, ExprPtr b);
};

/// Register state: total via default value 0.
class RegState {
 public:
  Value get(const std::string& r) const {
    auto it = regs_.find(r);
    return it == regs_.end() ? 0 : it->second;
  }
  void set(const std::string& r, Value v) { regs_[r] = v; }
  const std::map<std::string, Value>& regs() const { return regs_; }

  friend bool operator==(const RegState&, const RegState&) = default;
  friend auto operator<=>(const RegState&, const RegState&) = default;

 private:
  std::map<std::string, Value> regs_;
};

/// Arithmetic over naturals; subtraction saturates at 0.
Value eval_expr(const Expr& e, const RegState& phi);
Value eval_expr(const ExprPtr& e, const RegState& phi);

bool expr_equal(const ExprPtr& a, const ExprPtr& b);

// ---------------------------------------------------------------------------
// Commands and programs
// ---------------------------------------------------------------------------

struct Cmd;
using CmdPtr = std::shared_ptr<const Cmd>;

struct Cmd {
  enum class Kind {
    Read,       // r := R[md] [e]
    Write,      // W[md] [e] e'
    Rmw,        // r := RMW[md] [e] e_expected e_new
    Fence,      // F[md]
    AsmRead,    // r := asm mov [e]
    AsmWrite,   // asm mov [e] e'
    AsmRmw,     // r := asm rmw [e] e_expected e_new
    AsmMfence,  // asm mfence
    AsmSfence,  // asm sfence
    AsmNtWrite, // asm movnt [e] e'
    Assign,     // r := e          (register move, no event)
    If,         // if e { s }
    While,      // while e { s }
    Seq,        // s ; s'
    Skip,
  };

  Kind kind = Kind::Skip;
  Mode mode = Mode::rlx;         // Read/Write/Rmw/Fence
  std::string reg;               // Read/Rmw/AsmRead/AsmRmw/Assign
  ExprPtr addr;                  // location expression
  ExprPtr arg1;                  // written value / expected / condition / rhs
  ExprPtr arg2;                  // new value (Rmw)
  CmdPtr s1, s2;                 // If/While body; Seq children

  static CmdPtr make_read(Mode md, std::string r, ExprPtr loc);
  static CmdPtr make_write(Mode md, ExprPtr loc, ExprPtr val);
  static CmdPtr make_rmw(Mode md, std::string r, ExprPtr loc, ExprPtr expected,
                         ExprPtr newval);
  static CmdPtr make_fence(Mode md);
  static CmdPtr make_asm_read(std::string r, ExprPtr loc);
  static CmdPtr make_asm_write(ExprPtr loc, ExprPtr val);
  static CmdPtr make_asm_rmw(std::string r, ExprPtr loc, ExprPtr expected,
                             ExprPtr newval);
  static CmdPtr make_asm_mfence();
  static CmdPtr make_asm_sfence();
  static CmdPtr make_asm_nt_write(ExprPtr loc, ExprPtr val);
  static CmdPtr make_assign(std::string r, ExprPtr e);
  static CmdPtr make_if(ExprPtr cond, CmdPtr body);
  static CmdPtr make_while(ExprPtr cond, CmdPtr body);
  static CmdPtr make_seq(CmdPtr a, CmdPtr b);
  static CmdPtr make_skip();

  bool is_asm() const {
    switch (kind) {
      case Kind::AsmRead:
      case Kind::AsmWrite:
      case Kind::AsmRmw:
      case Kind::AsmMfence:
      case Kind::AsmSfence:
      case Kind::AsmNtWrite:
        return true;
      default:
        return false;
    }
  }
  /// True for commands that emit an event when stepped.
  bool is_memory() const {
    switch (kind) {
      case Kind::Read:
      case Kind::Write:
      case Kind::Rmw:
      case Kind::Fence:
        return true;
      default:
        return is_asm();
    }
  }
};

/// Finite map from thread identifiers to commands.
struct Program {
  std::map<ThreadId, CmdPtr> threads;

  /// Locations denoted by location literals anywhere in the program.
  std::set<Loc> locations() const;
  /// Numeric literals occurring anywhere; the default value domain is
  /// {0} ∪ this set.
  std::set<Value> literals() const;
  /// Registers assigned per thread (by reads, RMWs, and register moves).
  std::map<ThreadId, std::set<std::string>> registers() const;
};

enum class ProgramClass { pure_rc11, pure_asm, mixed };

/// pure_rc11 iff no asm command occurs; pure_asm iff every memory command
/// is an asm command. Control flow, skip, and register moves are allowed
/// in either class.
ProgramClass classify_program(const Program& p);

// ---------------------------------------------------------------------------
// Litmus tests
// ---------------------------------------------------------------------------

enum class ModelId { SC, RC11, Ex86, RC11Ext };

const char* to_string(ModelId m);
std::optional<ModelId> model_from_string(const std::string& s);

/// Conjunction of register/location equalities, or the UB marker.
struct OutcomePredicate {
  struct Atom {
    enum class Kind { Reg, Loc };
    Kind kind = Kind::Reg;
    std::string reg;   // Reg: globally unique register name
    ThreadId tid = 0;  // Reg: owning thread
    Loc loc = 0;       // Loc
    Value value = 0;
  };

  bool ub = false;
  std::vector<Atom> atoms;
};

struct Expectation {
  ModelId model = ModelId::RC11Ext;
  OutcomePredicate outcome;
  bool allowed = true;
};

struct LitmusTest {
  std::string name;
  Program program;
  std::vector<Expectation> expectations;
  std::optional<std::set<Value>> domain_hint;
  /// Location-literal names, for printing and outcome parsing.
  std::map<std::string, Loc> loc_names;
};

/// {0} ∪ numeric literals, or the explicit hint when present.
std::set<Value> value_domain(const LitmusTest& t);

}  // namespace asmm

#endif  // ASMM_LANG_HPP_
