#include "helpers.hpp"

#include "asmm/printer.hpp"

namespace asmm::testing {

std::vector<CandidateExecution> all_candidates(const Program& p,
                                               const ValueDomain& values) {
  EnumerationOptions opts;
  opts.values = values;
  EnumerationResult er = enumerate_graphs(p, opts);
  std::vector<CandidateExecution> out;
  for (std::size_t i = 0; i < er.complete.size(); ++i)
    for (auto& x : enumerate_candidates(er.complete[i], er.complete_regs[i]))
      out.push_back(std::move(x));
  return out;
}

std::vector<CandidateExecution> candidates_with_registers(
    const Program& p, const std::vector<std::pair<std::string, Value>>& regs,
    const ValueDomain& values) {
  std::vector<CandidateExecution> out;
  for (auto& x : all_candidates(p, values)) {
    bool match = true;
    for (const auto& [name, v] : regs) {
      bool found = false;
      for (const auto& [tid, st] : x.final_regs) {
        (void)tid;
        if (st.regs().count(name)) {
          found = true;
          if (st.get(name) != v) match = false;
        }
      }
      if (!found) match = false;
    }
    if (match) out.push_back(std::move(x));
  }
  return out;
}

bool cmd_equal(const CmdPtr& a, const CmdPtr& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind || a->mode != b->mode || a->reg != b->reg)
    return false;
  return expr_equal(a->addr, b->addr) && expr_equal(a->arg1, b->arg1) &&
         expr_equal(a->arg2, b->arg2) && cmd_equal(a->s1, b->s1) &&
         cmd_equal(a->s2, b->s2);
}

bool program_equal(const Program& a, const Program& b) {
  if (a.threads.size() != b.threads.size()) return false;
  for (const auto& [tid, cmd] : a.threads) {
    auto it = b.threads.find(tid);
    if (it == b.threads.end() || !cmd_equal(cmd, it->second)) return false;
  }
  return true;
}

namespace {

int rand_int(std::mt19937& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

ExprPtr loc_expr(int l) { return Expr::make_loc(static_cast<Loc>(l)); }
ExprPtr num_expr(Value v) { return Expr::make_num(v); }

constexpr Mode kWriteModes[] = {Mode::na, Mode::rlx, Mode::rel, Mode::sc};
constexpr Mode kReadModes[] = {Mode::na, Mode::rlx, Mode::acq, Mode::sc};
constexpr Mode kFenceModes[] = {Mode::acq, Mode::rel, Mode::acqrel, Mode::sc};
constexpr Mode kRmwModes[] = {Mode::rlx, Mode::acq, Mode::rel, Mode::acqrel,
                              Mode::sc};

}  // namespace

Program random_program(std::mt19937& rng, ProgKind kind, int max_threads,
                       int max_cmds) {
  Program p;
  int nthreads = rand_int(rng, 1, max_threads);
  int writes_per_loc[3] = {0, 0, 0};
  int reg_counter = 0;

  auto pick_write_loc = [&]() -> std::optional<int> {
    for (int attempt = 0; attempt < 6; ++attempt) {
      int l = rand_int(rng, 0, 2);
      if (writes_per_loc[l] < 3) {
        ++writes_per_loc[l];
        return l;
      }
    }
    return std::nullopt;
  };

  for (int t = 0; t < nthreads; ++t) {
    int ncmds = rand_int(rng, 1, max_cmds);
    std::vector<CmdPtr> cmds;
    for (int i = 0; i < ncmds; ++i) {
      bool asm_cmd = kind == ProgKind::PureAsm ||
                     (kind == ProgKind::Mixed && rand_int(rng, 0, 1) == 1);
      std::string reg = "r" + std::to_string(t) + "_" +
                        std::to_string(reg_counter++);
      int op = rand_int(rng, 0, 9);
      if (asm_cmd) {
        switch (op) {
          case 0: case 1: case 2:
            cmds.push_back(Cmd::make_asm_read(reg, loc_expr(rand_int(rng, 0, 2))));
            break;
          case 3: case 4: case 5: {
            auto l = pick_write_loc();
            if (!l) break;
            if (rand_int(rng, 0, 2) == 0)
              cmds.push_back(Cmd::make_asm_nt_write(loc_expr(*l), num_expr(1)));
            else
              cmds.push_back(Cmd::make_asm_write(loc_expr(*l), num_expr(1)));
            break;
          }
          case 6: {
            auto l = pick_write_loc();
            if (!l) break;
            cmds.push_back(Cmd::make_asm_rmw(reg, loc_expr(*l), num_expr(0),
                                             num_expr(1)));
            break;
          }
          case 7:
            cmds.push_back(Cmd::make_asm_mfence());
            break;
          default:
            cmds.push_back(Cmd::make_asm_sfence());
            break;
        }
      } else {
        switch (op) {
          case 0: case 1: case 2:
            cmds.push_back(Cmd::make_read(
                kReadModes[rand_int(rng, 0, 3)], reg,
                loc_expr(rand_int(rng, 0, 2))));
            break;
          case 3: case 4: case 5: {
            auto l = pick_write_loc();
            if (!l) break;
            cmds.push_back(Cmd::make_write(kWriteModes[rand_int(rng, 0, 3)],
                                           loc_expr(*l), num_expr(1)));
            break;
          }
          case 6: {
            auto l = pick_write_loc();
            if (!l) break;
            cmds.push_back(Cmd::make_rmw(kRmwModes[rand_int(rng, 0, 4)], reg,
                                         loc_expr(*l), num_expr(0),
                                         num_expr(1)));
            break;
          }
          default:
            cmds.push_back(Cmd::make_fence(kFenceModes[rand_int(rng, 0, 3)]));
            break;
        }
      }
    }
    if (cmds.empty()) cmds.push_back(Cmd::make_skip());
    CmdPtr body = cmds.back();
    for (auto it = cmds.rbegin() + 1; it != cmds.rend(); ++it)
      body = Cmd::make_seq(*it, body);
    p.threads[t] = body;
  }
  return p;
}

namespace {

CmdPtr random_stmt(std::mt19937& rng, LitmusTest& t, int tid, int* regs,
                   int depth);

CmdPtr random_seq(std::mt19937& rng, LitmusTest& t, int tid, int* regs,
                  int depth, int len) {
  std::vector<CmdPtr> cmds;
  for (int i = 0; i < len; ++i) cmds.push_back(random_stmt(rng, t, tid, regs, depth));
  CmdPtr body = cmds.back();
  for (auto it = cmds.rbegin() + 1; it != cmds.rend(); ++it)
    body = Cmd::make_seq(*it, body);
  return body;
}

CmdPtr random_stmt(std::mt19937& rng, LitmusTest& t, int tid, int* regs,
                   int depth) {
  const char* locs[] = {"x", "y", "z"};
  auto pick_loc = [&] {
    std::string name = locs[rand_int(rng, 0, 2)];
    auto it = t.loc_names.find(name);
    if (it == t.loc_names.end()) {
      Loc l = static_cast<Loc>(t.loc_names.size());
      t.loc_names[name] = l;
      return Expr::make_loc(l);
    }
    return Expr::make_loc(it->second);
  };
  std::string reg = "q" + std::to_string(tid) + "_" + std::to_string((*regs)++);
  int op = rand_int(rng, 0, depth > 0 ? 11 : 9);
  switch (op) {
    case 0:
      return Cmd::make_read(kReadModes[rand_int(rng, 0, 3)], reg, pick_loc());
    case 1:
      return Cmd::make_write(kWriteModes[rand_int(rng, 0, 3)], pick_loc(),
                             num_expr(rand_int(rng, 0, 1)));
    case 2:
      return Cmd::make_rmw(kRmwModes[rand_int(rng, 0, 4)], reg, pick_loc(),
                           num_expr(0), num_expr(1));
    case 3:
      return Cmd::make_fence(kFenceModes[rand_int(rng, 0, 3)]);
    case 4:
      return Cmd::make_asm_read(reg, pick_loc());
    case 5:
      return Cmd::make_asm_write(pick_loc(), num_expr(1));
    case 6:
      return Cmd::make_asm_nt_write(pick_loc(), num_expr(1));
    case 7:
      return rand_int(rng, 0, 1) ? Cmd::make_asm_mfence()
                                 : Cmd::make_asm_sfence();
    case 8:
      return Cmd::make_assign(
          reg, Expr::make_plus(num_expr(rand_int(rng, 0, 1)),
                               Expr::make_reg(reg)));
    case 9:
      return Cmd::make_skip();
    case 10:
      return Cmd::make_if(Expr::make_reg(reg),
                          random_seq(rng, t, tid, regs, depth - 1,
                                     rand_int(rng, 1, 2)));
    default:
      return Cmd::make_while(num_expr(0),
                             random_seq(rng, t, tid, regs, depth - 1,
                                        rand_int(rng, 1, 2)));
  }
}

}  // namespace

LitmusTest random_litmus(std::mt19937& rng) {
  LitmusTest t;
  t.name = "random-" + std::to_string(rand_int(rng, 0, 999999));
  int nthreads = rand_int(rng, 1, 3);
  int regs = 0;
  for (int tid = 0; tid < nthreads; ++tid)
    t.program.threads[tid] =
        random_seq(rng, t, tid, &regs, 1, rand_int(rng, 1, 4));
  return t;
}

}  // namespace asmm::testing
