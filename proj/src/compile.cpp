#include "asmm/compile.hpp"

namespace asmm {

const char* to_string(Scheme s) {
  return s == Scheme::Standard ? "std" : "alt";
}

CmdPtr compile_cmd(const CmdPtr& c, Scheme s) {
  switch (c->kind) {
    case Cmd::Kind::Write: {
      if (c->mode == Mode::sc) {
        CmdPtr w = Cmd::make_asm_write(c->addr, c->arg1);
        CmdPtr w_mf = Cmd::make_seq(w, Cmd::make_asm_mfence());
        if (s == Scheme::Alternative)
          return Cmd::make_seq(Cmd::make_asm_sfence(), w_mf);
        return w_mf;
      }
      if (s == Scheme::Alternative) {
        if (c->mode == Mode::rel)
          return Cmd::make_seq(Cmd::make_asm_sfence(),
                               Cmd::make_asm_write(c->addr, c->arg1));
        if (c->mode == Mode::rlx)
          return Cmd::make_asm_nt_write(c->addr, c->arg1);
      }
      return Cmd::make_asm_write(c->addr, c->arg1);
    }
    case Cmd::Kind::Read:
      return Cmd::make_asm_read(c->reg, c->addr);
    case Cmd::Kind::Rmw:
      return Cmd::make_asm_rmw(c->reg, c->addr, c->arg1, c->arg2);
    case Cmd::Kind::Fence: {
      if (c->mode == Mode::sc) return Cmd::make_asm_mfence();
      if (s == Scheme::Alternative &&
          (c->mode == Mode::rel || c->mode == Mode::acqrel))
        return Cmd::make_asm_sfence();
      return Cmd::make_skip();
    }
    case Cmd::Kind::Seq:
      return Cmd::make_seq(compile_cmd(c->s1, s), compile_cmd(c->s2, s));
    case Cmd::Kind::If:
      return Cmd::make_if(c->arg1, compile_cmd(c->s1, s));
    case Cmd::Kind::While:
      return Cmd::make_while(c->arg1, compile_cmd(c->s1, s));
    default:
      return c;  // skip, assign, and asm commands map to themselves
  }
}

Program compile(const Program& p, Scheme s) {
  Program out;
  for (const auto& [tid, cmd] : p.threads)
    out.threads[tid] = compile_cmd(cmd, s);
  return out;
}

InclusionReport check_compilation(const Program& p, Scheme s,
                                  const BehaviorOptions& opts) {
  InclusionReport rep;
  rep.bound_used = opts.step_bound;
  rep.source = behaviors(p, ModelId::RC11Ext, opts);
  rep.target = behaviors(compile(p, s), ModelId::Ex86, opts);
  rep.inconclusive = rep.source.overflow || rep.target.overflow;
  rep.source_ub = rep.source.ub;
  if (rep.source_ub) {
    rep.holds = true;
    return rep;
  }
  auto src_mem = rep.source.memories();
  for (const auto& m : rep.target.memories())
    if (!src_mem.count(m)) rep.extra_behaviors.insert(m);
  rep.holds = rep.extra_behaviors.empty();
  return rep;
}

namespace {

// Register names assigned by exactly one thread.
std::set<std::string> unique_register_names(const Program& p) {
  std::map<std::string, int> owners;
  for (const auto& [tid, names] : p.registers()) {
    (void)tid;
    for (const auto& n : names) ++owners[n];
  }
  std::set<std::string> out;
  for (const auto& [n, count] : owners)
    if (count == 1) out.insert(n);
  return out;
}

std::map<std::string, Value> flatten_regs(const Behavior& b,
                                          const std::set<std::string>& names) {
  std::map<std::string, Value> out;
  for (const auto& n : names) out[n] = 0;
  for (const auto& [tid, st] : b.registers) {
    (void)tid;
    for (const auto& [n, v] : st.regs())
      if (names.count(n)) out[n] = v;
  }
  return out;
}

std::string describe_behavior(const FinalMemory& mem,
                              const std::map<std::string, Value>& regs) {
  std::string s;
  for (const auto& [loc, v] : mem)
    s += "L" + std::to_string(loc) + "=" + std::to_string(v) + " ";
  for (const auto& [n, v] : regs) s += n + "=" + std::to_string(v) + " ";
  return s.empty() ? "(empty)" : s;
}

}  // namespace

InclusionReport check_inclusion(const Program& original,
                                const Program& transformed, ModelId model,
                                const BehaviorOptions& opts,
                                bool compare_registers) {
  InclusionReport rep;
  rep.bound_used = opts.step_bound;
  rep.source = behaviors(original, model, opts);
  rep.target = behaviors(transformed, model, opts);
  rep.inconclusive = rep.source.overflow || rep.target.overflow;
  rep.source_ub = rep.source.ub;
  if (rep.source_ub) {
    rep.holds = true;
    return rep;
  }
  if (rep.target.ub) {
    rep.holds = false;
    rep.extra_described.push_back("UB (target only)");
    return rep;
  }

  std::set<std::string> names;
  if (compare_registers) {
    std::set<std::string> a = unique_register_names(original);
    for (const auto& n : unique_register_names(transformed))
      if (a.count(n)) names.insert(n);
  }

  using Obs = std::pair<FinalMemory, std::map<std::string, Value>>;
  std::set<Obs> src;
  for (const auto& b : rep.source.behaviors)
    src.insert({b.memory, flatten_regs(b, names)});
  for (const auto& b : rep.target.behaviors) {
    Obs obs{b.memory, flatten_regs(b, names)};
    if (!src.count(obs)) {
      rep.extra_behaviors.insert(obs.first);
      if (rep.extra_described.size() < 8)
        rep.extra_described.push_back(describe_behavior(obs.first, obs.second));
    }
  }
  rep.holds = rep.extra_behaviors.empty() && rep.extra_described.empty();
  return rep;
}

}  // namespace asmm
