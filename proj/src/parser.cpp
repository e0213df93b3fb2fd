#include "asmm/parser.hpp"

#include <cctype>
#include <optional>
#include <vector>

namespace asmm {

namespace {

struct Token {
  enum class Kind {
    Ident, Number, Punct, End,
  };
  Kind kind = Kind::End;
  std::string text;
  Value num = 0;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, tok_.line, tok_.col);
  }

 private:
  void advance() {
    skip_ws();
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= text_.size()) {
      tok_.kind = Token::Kind::End;
      tok_.text.clear();
      return;
    }
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string s;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_' || text_[pos_] == '-' || text_[pos_] == '.')) {
        s += take();
      }
      tok_.kind = Token::Kind::Ident;
      tok_.text = s;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Value n = 0;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        n = n * 10 + static_cast<Value>(take() - '0');
      }
      tok_.kind = Token::Kind::Number;
      tok_.num = n;
      return;
    }
    // multi-char puncts: ":=", "/\"
    if (c == ':' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
      take(); take();
      tok_.kind = Token::Kind::Punct;
      tok_.text = ":=";
      return;
    }
    if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '\\') {
      take(); take();
      tok_.kind = Token::Kind::Punct;
      tok_.text = "/\\";
      return;
    }
    tok_.kind = Token::Kind::Punct;
    tok_.text = std::string(1, take());
  }

  void skip_ws() {
    for (;;) {
      while (pos_ < text_.size() &&
             std::isspace(static_cast<unsigned char>(text_[pos_])))
        take();
      if (pos_ + 1 < text_.size() && text_[pos_] == '/' &&
          text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') take();
        continue;
      }
      if (pos_ < text_.size() && text_[pos_] == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') take();
        continue;
      }
      break;
    }
  }

  char take() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  LitmusTest parse() {
    expect_ident("test");
    test_.name = expect_any_ident("test name");
    while (lex_.peek().kind != Token::Kind::End) {
      const Token& t = lex_.peek();
      if (t.kind != Token::Kind::Ident)
        lex_.fail("expected 'thread', 'values', or 'expect'");
      if (t.text == "thread") {
        parse_thread();
      } else if (t.text == "values") {
        parse_values();
      } else if (t.text == "expect") {
        parse_expect();
      } else {
        lex_.fail("unexpected '" + t.text + "'");
      }
    }
    if (test_.program.threads.empty())
      lex_.fail("a test needs at least one thread");
    return test_;
  }

 private:
  // -- helpers --

  void expect_punct(const std::string& p) {
    Token t = lex_.next();
    if (t.kind != Token::Kind::Punct || t.text != p)
      throw ParseError("expected '" + p + "'", t.line, t.col);
  }

  void expect_ident(const std::string& kw) {
    Token t = lex_.next();
    if (t.kind != Token::Kind::Ident || t.text != kw)
      throw ParseError("expected '" + kw + "'", t.line, t.col);
  }

  std::string expect_any_ident(const std::string& what) {
    Token t = lex_.next();
    if (t.kind != Token::Kind::Ident)
      throw ParseError("expected " + what, t.line, t.col);
    return t.text;
  }

  Value expect_number() {
    Token t = lex_.next();
    if (t.kind != Token::Kind::Number)
      throw ParseError("expected a number", t.line, t.col);
    return t.num;
  }

  bool peek_punct(const std::string& p) {
    return lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == p;
  }

  bool peek_ident(const std::string& s) {
    return lex_.peek().kind == Token::Kind::Ident && lex_.peek().text == s;
  }

  Mode parse_mode_bracket(bool (*legal)(Mode), const char* what) {
    expect_punct("[");
    Token t = lex_.next();
    if (t.kind != Token::Kind::Ident)
      throw ParseError("expected an access mode", t.line, t.col);
    std::optional<Mode> md;
    for (Mode m : kAllModes)
      if (t.text == to_string(m)) md = m;
    if (!md) throw ParseError("unknown access mode '" + t.text + "'", t.line, t.col);
    if (!legal(*md))
      throw ParseError(std::string("mode '") + to_string(*md) +
                           "' is not legal for " + what,
                       t.line, t.col);
    expect_punct("]");
    return *md;
  }

  Loc loc_for(const std::string& name) {
    auto it = test_.loc_names.find(name);
    if (it != test_.loc_names.end()) return it->second;
    Loc l = static_cast<Loc>(test_.loc_names.size());
    test_.loc_names.emplace(name, l);
    return l;
  }

  ExprPtr parse_loc_bracket() {
    expect_punct("[");
    Token t = lex_.next();
    if (t.kind != Token::Kind::Ident)
      throw ParseError("expected a location name", t.line, t.col);
    ExprPtr e = Expr::make_loc(loc_for(t.text));
    expect_punct("]");
    return e;
  }

  // expr := term (("+"|"-") term)*
  ExprPtr parse_expr() {
    ExprPtr e = parse_term();
    for (;;) {
      if (peek_punct("+")) {
        lex_.next();
        e = Expr::make_plus(e, parse_term());
      } else if (peek_punct("-")) {
        lex_.next();
        e = Expr::make_sub(e, parse_term());
      } else {
        return e;
      }
    }
  }

  ExprPtr parse_term() {
    ExprPtr e = parse_factor();
    while (peek_punct("*")) {
      lex_.next();
      e = Expr::make_times(e, parse_factor());
    }
    return e;
  }

  ExprPtr parse_factor() {
    const Token& t = lex_.peek();
    if (t.kind == Token::Kind::Number) return Expr::make_num(lex_.next().num);
    if (t.kind == Token::Kind::Ident) return Expr::make_reg(lex_.next().text);
    if (t.kind == Token::Kind::Punct && t.text == "(") {
      lex_.next();
      ExprPtr e = parse_expr();
      expect_punct(")");
      return e;
    }
    lex_.fail("expected an expression");
  }

  // -- commands --

  CmdPtr parse_stmt() {
    const Token& t = lex_.peek();
    if (t.kind == Token::Kind::Ident) {
      if (t.text == "W") {
        lex_.next();
        Mode md = parse_mode_bracket(legal_write_mode, "a write");
        ExprPtr loc = parse_loc_bracket();
        return Cmd::make_write(md, loc, parse_expr());
      }
      if (t.text == "F") {
        lex_.next();
        Mode md = parse_mode_bracket(legal_fence_mode, "a fence");
        return Cmd::make_fence(md);
      }
      if (t.text == "asm") {
        lex_.next();
        return parse_asm_stmt();
      }
      if (t.text == "if") {
        lex_.next();
        ExprPtr cond = parse_expr();
        return Cmd::make_if(cond, parse_block());
      }
      if (t.text == "while") {
        lex_.next();
        ExprPtr cond = parse_expr();
        return Cmd::make_while(cond, parse_block());
      }
      if (t.text == "skip") {
        lex_.next();
        return Cmd::make_skip();
      }
      // r := ...
      std::string reg = lex_.next().text;
      expect_punct(":=");
      if (peek_ident("R")) {
        lex_.next();
        Mode md = parse_mode_bracket(legal_read_mode, "a read");
        return Cmd::make_read(md, reg, parse_loc_bracket());
      }
      if (peek_ident("RMW")) {
        lex_.next();
        Mode md = parse_mode_bracket(legal_rmw_mode, "a read-modify-write");
        ExprPtr loc = parse_loc_bracket();
        ExprPtr expected = parse_expr();
        ExprPtr newv = parse_expr();
        return Cmd::make_rmw(md, reg, loc, expected, newv);
      }
      if (peek_ident("asm")) {
        lex_.next();
        return parse_asm_read(reg);
      }
      return Cmd::make_assign(reg, parse_expr());
    }
    lex_.fail("expected a command");
  }

  CmdPtr parse_asm_stmt() {
    Token t = lex_.next();
    if (t.kind != Token::Kind::Ident)
      throw ParseError("expected an asm instruction", t.line, t.col);
    if (t.text == "mov") {
      ExprPtr loc = parse_loc_bracket();
      return Cmd::make_asm_write(loc, parse_expr());
    }
    if (t.text == "movnt") {
      ExprPtr loc = parse_loc_bracket();
      return Cmd::make_asm_nt_write(loc, parse_expr());
    }
    if (t.text == "mfence") return Cmd::make_asm_mfence();
    if (t.text == "sfence") return Cmd::make_asm_sfence();
    throw ParseError("unknown asm instruction '" + t.text + "'", t.line, t.col);
  }

  CmdPtr parse_asm_read(const std::string& reg) {
    Token t = lex_.next();
    if (t.kind != Token::Kind::Ident)
      throw ParseError("expected an asm instruction", t.line, t.col);
    if (t.text == "mov") return Cmd::make_asm_read(reg, parse_loc_bracket());
    if (t.text == "rmw") {
      ExprPtr loc = parse_loc_bracket();
      ExprPtr expected = parse_expr();
      ExprPtr newv = parse_expr();
      return Cmd::make_asm_rmw(reg, loc, expected, newv);
    }
    throw ParseError("unknown asm instruction '" + t.text + "'", t.line, t.col);
  }

  CmdPtr parse_block() {
    expect_punct("{");
    CmdPtr body = parse_stmt_seq([&] { return peek_punct("}"); });
    expect_punct("}");
    return body;
  }

  // stmt (";" stmt)*, right-nested.
  template <class StopFn>
  CmdPtr parse_stmt_seq(StopFn at_end) {
    std::vector<CmdPtr> stmts;
    stmts.push_back(parse_stmt());
    while (peek_punct(";")) {
      lex_.next();
      if (at_end()) break;  // tolerate a trailing ';'
      stmts.push_back(parse_stmt());
    }
    CmdPtr body = stmts.back();
    for (auto it = stmts.rbegin() + 1; it != stmts.rend(); ++it)
      body = Cmd::make_seq(*it, body);
    return body;
  }

  // -- sections --

  void parse_thread() {
    expect_ident("thread");
    Token t = lex_.next();
    if (t.kind != Token::Kind::Number)
      throw ParseError("expected a thread id", t.line, t.col);
    auto tid = static_cast<ThreadId>(t.num);
    if (test_.program.threads.count(tid))
      throw ParseError("duplicate thread " + std::to_string(tid), t.line, t.col);
    expect_punct(":");
    CmdPtr body = parse_stmt_seq([&] {
      return peek_ident("thread") || peek_ident("expect") ||
             peek_ident("values") || lex_.peek().kind == Token::Kind::End;
    });
    test_.program.threads[tid] = body;
  }

  void parse_values() {
    expect_ident("values");
    if (peek_punct(":")) lex_.next();
    std::set<Value> vals;
    vals.insert(expect_number());
    while (peek_punct(",")) {
      lex_.next();
      vals.insert(expect_number());
    }
    test_.domain_hint = vals;
  }

  void parse_expect() {
    Token kw = lex_.next();  // 'expect'
    std::string model_name = expect_any_ident("a model name");
    auto model = model_from_string(model_name);
    if (!model)
      throw ParseError("unknown model '" + model_name + "'", kw.line, kw.col);
    std::string verdict = expect_any_ident("'allowed' or 'forbidden'");
    bool allowed;
    if (verdict == "allowed")
      allowed = true;
    else if (verdict == "forbidden")
      allowed = false;
    else
      throw ParseError("expected 'allowed' or 'forbidden'", kw.line, kw.col);
    expect_punct(":");

    Expectation e;
    e.model = *model;
    e.allowed = allowed;
    if (peek_ident("UB")) {
      lex_.next();
      e.outcome.ub = true;
    } else {
      e.outcome.atoms.push_back(parse_outcome_atom());
      while (peek_punct("/\\")) {
        lex_.next();
        e.outcome.atoms.push_back(parse_outcome_atom());
      }
    }
    test_.expectations.push_back(std::move(e));
  }

  OutcomePredicate::Atom parse_outcome_atom() {
    Token t = lex_.next();
    if (t.kind != Token::Kind::Ident)
      throw ParseError("expected a register or location name", t.line, t.col);
    expect_punct("=");
    Value v = expect_number();

    OutcomePredicate::Atom atom;
    atom.value = v;
    auto locit = test_.loc_names.find(t.text);
    if (locit != test_.loc_names.end()) {
      atom.kind = OutcomePredicate::Atom::Kind::Loc;
      atom.loc = locit->second;
      return atom;
    }
    // A register: must be assigned by exactly one thread.
    auto regs = test_.program.registers();
    std::vector<ThreadId> owners;
    for (const auto& [tid, names] : regs)
      if (names.count(t.text)) owners.push_back(tid);
    if (owners.empty())
      throw ParseError("'" + t.text + "' names no location or register of the program",
                       t.line, t.col);
    if (owners.size() > 1)
      throw ParseError("register '" + t.text + "' is used by several threads",
                       t.line, t.col);
    atom.kind = OutcomePredicate::Atom::Kind::Reg;
    atom.reg = t.text;
    atom.tid = owners.front();
    return atom;
  }

  Lexer lex_;
  LitmusTest test_;
};

}  // namespace

LitmusTest parse_litmus(const std::string& text) {
  return Parser(text).parse();
}

}  // namespace asmm
