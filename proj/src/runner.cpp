#include "asmm/runner.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace asmm {

unsigned worker_count() {
  if (const char* env = std::getenv("ASMM_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return static_cast<unsigned>(n);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  unsigned workers = std::min<std::size_t>(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n || failed.load()) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
          failed.store(true);
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

// ---------------------------------------------------------------------------

namespace {

bool behavior_matches(const Behavior& b, const OutcomePredicate& o) {
  for (const auto& atom : o.atoms) {
    if (atom.kind == OutcomePredicate::Atom::Kind::Reg) {
      auto it = b.registers.find(atom.tid);
      Value v = it == b.registers.end() ? 0 : it->second.get(atom.reg);
      if (v != atom.value) return false;
    } else {
      auto it = b.memory.find(atom.loc);
      Value v = it == b.memory.end() ? 0 : it->second;
      if (v != atom.value) return false;
    }
  }
  return true;
}

}  // namespace

bool outcome_in_behaviors(const BehaviorSet& set, const OutcomePredicate& o) {
  if (o.ub) return set.ub;
  if (set.ub) return true;  // catch-fire admits everything
  for (const auto& b : set.behaviors)
    if (behavior_matches(b, o)) return true;
  return false;
}

BehaviorOptions behavior_options(const LitmusTest& t, const RunOptions& opts) {
  BehaviorOptions bo;
  bo.values = opts.values ? *opts.values : value_domain(t);
  bo.step_bound = opts.step_bound;
  return bo;
}

RunReport run_test(const LitmusTest& t, const RunOptions& opts) {
  auto start = std::chrono::steady_clock::now();
  RunReport rep;
  rep.name = t.name;

  std::vector<ModelId> models = opts.models;
  if (models.empty()) {
    for (const auto& e : t.expectations) {
      bool seen = false;
      for (ModelId m : models) seen |= m == e.model;
      if (!seen) models.push_back(e.model);
    }
  }

  BehaviorOptions bo = behavior_options(t, opts);
  for (ModelId m : models) {
    BehaviorSet bs = behaviors(t.program, m, bo);
    rep.overflow |= bs.overflow;
    rep.per_model.emplace_back(m, std::move(bs));
  }

  for (const auto& e : t.expectations) {
    const BehaviorSet* bs = nullptr;
    for (const auto& [m, s] : rep.per_model)
      if (m == e.model) bs = &s;
    if (!bs) continue;  // expectation for a model not run
    ExpectationResult r;
    r.expectation = e;
    r.observed = outcome_in_behaviors(*bs, e.outcome);
    r.pass = r.observed == e.allowed;
    rep.pass &= r.pass;
    rep.expectations.push_back(std::move(r));
  }

  rep.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return rep;
}

// --- compilation / transfer ----------------------------------------------------

CheckResult check_compilation_entry(const LitmusTest& t, Scheme s,
                                    const RunOptions& opts) {
  CheckResult res;
  res.name = t.name + " [" + to_string(s) + "]";
  InclusionReport rep =
      check_compilation(t.program, s, behavior_options(t, opts));
  res.pass = rep.holds && !rep.inconclusive;
  std::ostringstream os;
  if (rep.inconclusive) os << "inconclusive (bound " << rep.bound_used << ")";
  else if (rep.source_ub) os << "source UB; inclusion trivial";
  else
    os << rep.target.memories().size() << " target / "
       << rep.source.memories().size() << " source memories; "
       << rep.extra_behaviors.size() << " extra";
  res.detail = os.str();
  return res;
}

TransferSummary check_transfer_entry(const LitmusTest& t, Scheme s,
                                     const RunOptions& opts) {
  TransferSummary sum;
  Program target_prog = compile(t.program, s);
  BehaviorOptions bo = behavior_options(t, opts);

  EnumerationOptions eo;
  eo.values = bo.values;
  eo.step_bound = bo.step_bound;
  EnumerationResult er = enumerate_graphs(target_prog, eo);

  std::ostringstream os;
  for (std::size_t i = 0; i < er.complete.size(); ++i) {
    for (const auto& cand :
         enumerate_candidates(er.complete[i], er.complete_regs[i])) {
      ++sum.candidates;
      Simulation sim = build_simulation(t.program, s, cand);
      TransferReport rep = transfer_check(sim.mixed);
      if (!rep.ok) {
        ++sum.discrepancies;
        if (sum.discrepancies == 1) os << rep.detail;
      }
      if (rep.mixed_ex86 && !rep.mixed_rc11ext) {
        ++sum.weaker_than_violations;
        os << " weaker-than violated";
      }
    }
  }
  sum.detail = os.str();
  return sum;
}

// --- DRF ------------------------------------------------------------------------

namespace {

bool has_rmw(const CmdPtr& c) {
  if (!c) return false;
  if (c->kind == Cmd::Kind::Rmw || c->kind == Cmd::Kind::AsmRmw) return true;
  return has_rmw(c->s1) || has_rmw(c->s2);
}

}  // namespace

DrfReport check_drf_entry(const LitmusTest& t, const RunOptions& opts) {
  DrfReport rep;
  for (const auto& [_, body] : t.program.threads)
    if (has_rmw(body)) rep.applicable = false;
  if (!rep.applicable) {
    rep.detail = "program has read-modify-writes; check not applicable";
    return rep;
  }

  BehaviorOptions bo = behavior_options(t, opts);
  EnumerationOptions eo;
  eo.values = bo.values;
  eo.step_bound = bo.step_bound;
  eo.collect_prefixes = true;
  EnumerationResult er = enumerate_graphs(t.program, eo);

  // Every SC-consistent execution of every reachable graph may only race
  // on sc accesses.
  rep.data_race_free = true;
  for (const auto& g : er.prefixes) {
    for (const auto& x : enumerate_candidates(g, {})) {
      if (!sc_consistent(x).consistent) continue;
      Relation hb = derive_relations(x, ModelId::RC11Ext).hb;
      for (const auto& [a, b] : races(x, hb)) {
        Mode ma = x.graph.label(a).mode, mb = x.graph.label(b).mode;
        if (ma != Mode::sc || mb != Mode::sc) {
          rep.data_race_free = false;
          if (rep.race_witnesses.size() < 8)
            rep.race_witnesses.push_back(to_string(a) + " " +
                                         to_string(x.graph.label(a)) + " vs " +
                                         to_string(b) + " " +
                                         to_string(x.graph.label(b)));
        }
      }
    }
  }

  if (!rep.data_race_free) {
    rep.pass = true;  // the check correctly reports the races
    rep.detail = "not data-race free; theorem inapplicable";
    return rep;
  }

  BehaviorSet ext = behaviors(t.program, ModelId::RC11Ext, bo);
  BehaviorSet sc = behaviors(t.program, ModelId::SC, bo);
  rep.behaviors_equal = !ext.ub && ext.memories() == sc.memories();
  rep.pass = rep.behaviors_equal;
  std::ostringstream os;
  os << "data-race free; " << ext.memories().size() << " rc11ext vs "
     << sc.memories().size() << " sc memories"
     << (rep.behaviors_equal ? " (equal)" : " (DIFFER)");
  rep.detail = os.str();
  return rep;
}

// --- transformation sweep ---------------------------------------------------------

TransformSweep check_transform_sweep(const LitmusTest& t,
                                     const RunOptions& opts) {
  TransformSweep sweep;
  BehaviorOptions bo = behavior_options(t, opts);
  const Program& p = t.program;

  auto check = [&](const std::string& what, const Program& transformed) {
    ++sweep.applied;
    InclusionReport rep = check_transform_sound(p, transformed, bo);
    if (!rep.holds || rep.inconclusive)
      sweep.failures.push_back(t.name + ": " + what);
  };

  for (const auto& [site, md] : enumerate_strengthenings(p))
    check("strengthen " + site.to_string() + " to " + to_string(md),
          strengthen(p, site, md));

  for (ThreadId tid : enumerate_deorderings(p))
    check("deorder thread " + std::to_string(tid), deorder(p, tid));

  for (const Site& site : enumerate_merges(p))
    check("merge at " + site.to_string(), merge(p, site));

  for (const auto& [loc, tid] : enumerate_promotions(p))
    check("promote location " + std::to_string(loc),
          promote_register(p, loc, tid));

  std::vector<ThreadId> tids;
  for (const auto& [tid, _] : p.threads) tids.push_back(tid);
  auto regs = p.registers();
  for (std::size_t i = 0; i < tids.size(); ++i) {
    for (std::size_t j = 0; j < tids.size(); ++j) {
      if (i == j) continue;
      bool shared_reg = false;
      for (const auto& r : regs[tids[i]]) shared_reg |= regs[tids[j]].count(r) > 0;
      if (shared_reg) continue;
      if (nitia_check(p, tids[i], tids[j]))
        check("seq-nitia " + std::to_string(tids[i]) + "+" +
                  std::to_string(tids[j]),
              sequentialize(p, SeqKind::NITIA, tids[i], tids[j]));
      check("seq-fence " + std::to_string(tids[i]) + "+" +
                std::to_string(tids[j]),
            sequentialize(p, SeqKind::Fence, tids[i], tids[j]));
    }
  }
  return sweep;
}

// --- JSON -------------------------------------------------------------------------

std::string report_to_json(const std::vector<RunReport>& reports) {
  nlohmann::json root;
  root["schema_version"] = 1;
  nlohmann::json tests = nlohmann::json::array();
  for (const auto& rep : reports) {
    nlohmann::json jt;
    jt["name"] = rep.name;
    jt["pass"] = rep.pass;
    jt["overflow"] = rep.overflow;
    jt["seconds"] = rep.seconds;
    nlohmann::json models = nlohmann::json::array();
    for (const auto& [m, bs] : rep.per_model) {
      nlohmann::json jm;
      jm["model"] = to_string(m);
      jm["ub"] = bs.ub;
      jm["graphs"] = bs.graphs;
      jm["candidates"] = bs.candidates;
      jm["consistent"] = bs.consistent;
      nlohmann::json behs = nlohmann::json::array();
      for (const auto& b : bs.behaviors) {
        nlohmann::json jb;
        for (const auto& [loc, v] : b.memory)
          jb["memory"][std::to_string(loc)] = v;
        for (const auto& [tid, st] : b.registers)
          for (const auto& [r, v] : st.regs())
            jb["registers"][r] = v;
        behs.push_back(jb);
      }
      jm["behaviors"] = behs;
      models.push_back(jm);
    }
    jt["models"] = models;
    nlohmann::json exps = nlohmann::json::array();
    for (const auto& e : rep.expectations) {
      nlohmann::json je;
      je["model"] = to_string(e.expectation.model);
      je["allowed"] = e.expectation.allowed;
      je["observed"] = e.observed;
      je["pass"] = e.pass;
      exps.push_back(je);
    }
    jt["expectations"] = exps;
    tests.push_back(jt);
  }
  root["tests"] = tests;
  return root.dump(2);
}

}  // namespace asmm
