// asmm: a litmus-test checker for C/C++ programs with inline x86 assembly.
//
// Subcommands: run, compare, compile, check-compilation, check-transform,
// check-drf, check-transfer, corpus. Exit codes: 0 pass, 1 expectation or
// check failure, 2 input error, 3 bound overflow.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "asmm/dot.hpp"
#include "asmm/parser.hpp"
#include "asmm/printer.hpp"
#include "asmm/runner.hpp"

namespace {

using namespace asmm;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitOverflow = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

LitmusTest load(const std::string& path) { return parse_litmus(slurp(path)); }

ValueDomain parse_values(const std::string& csv) {
  ValueDomain vals;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) vals.insert(std::stoull(item));
  if (vals.empty()) throw std::runtime_error("empty value domain");
  return vals;
}

std::string outcome_string(const LitmusTest& t, const OutcomePredicate& o) {
  return print_outcome(o, invert_loc_names(t.loc_names));
}

void print_behaviors(const LitmusTest& t, const BehaviorSet& bs) {
  auto names = invert_loc_names(t.loc_names);
  if (bs.ub) {
    std::cout << "    UB (every behavior allowed)\n";
    return;
  }
  for (const auto& b : bs.behaviors) {
    std::cout << "    ";
    bool first = true;
    for (const auto& [loc, v] : b.memory) {
      if (!first) std::cout << " ";
      first = false;
      auto it = names.find(loc);
      std::cout << (it != names.end() ? it->second : "L" + std::to_string(loc))
                << "=" << v;
    }
    for (const auto& [tid, st] : b.registers)
      for (const auto& [r, v] : st.regs()) {
        if (!first) std::cout << " ";
        first = false;
        std::cout << r << "=" << v;
      }
    if (first) std::cout << "(empty)";
    std::cout << "\n";
  }
}

int report_exit(bool pass, bool overflow) {
  if (overflow) return kExitOverflow;
  return pass ? kExitPass : kExitFail;
}

struct CommonOpts {
  std::string values_csv;
  std::size_t bound = 10000;

  RunOptions run_options() const {
    RunOptions o;
    if (!values_csv.empty()) o.values = parse_values(values_csv);
    o.step_bound = bound;
    return o;
  }
};

void emit_dots(const LitmusTest& t, const RunOptions& ropts, ModelId model,
               const std::string& dir, bool violations) {
  std::filesystem::create_directories(dir);
  BehaviorOptions bo = behavior_options(t, ropts);
  EnumerationOptions eo;
  eo.values = bo.values;
  eo.step_bound = bo.step_bound;
  EnumerationResult er = enumerate_graphs(t.program, eo);
  std::size_t n = 0;
  for (std::size_t i = 0; i < er.complete.size(); ++i) {
    for (const auto& x :
         enumerate_candidates(er.complete[i], er.complete_regs[i])) {
      bool ok = consistent(x, model).consistent;
      if (!ok && !violations) continue;
      std::ostringstream name;
      name << t.name << "-" << to_string(model) << "-" << n++
           << (ok ? "" : "-violating");
      std::ofstream out(dir + "/" + name.str() + ".dot");
      out << execution_to_dot(x, model, name.str());
    }
  }
  std::cout << "wrote " << n << " dot files to " << dir << "\n";
}

int cmd_run(const std::vector<std::string>& files, std::string model_name,
            const CommonOpts& common, bool json, const std::string& dot_dir,
            bool dot_violations) {
  RunOptions ropts = common.run_options();
  if (!model_name.empty()) {
    auto m = model_from_string(model_name);
    if (!m) {
      std::cerr << "unknown model: " << model_name << "\n";
      return kExitInput;
    }
    ropts.models = {*m};
  }

  std::vector<RunReport> reports;
  bool pass = true, overflow = false;
  for (const auto& path : files) {
    LitmusTest t = load(path);
    if (!ropts.models.empty() && ropts.models[0] == ModelId::Ex86 &&
        classify_program(t.program) != ProgramClass::pure_asm) {
      std::cerr << t.name << ": the ex86 model applies to pure assembly "
                << "programs only\n";
      return kExitInput;
    }
    RunReport rep = run_test(t, ropts);
    pass &= rep.pass;
    overflow |= rep.overflow;

    if (!json) {
      std::cout << "test " << rep.name << "\n";
      for (const auto& [m, bs] : rep.per_model) {
        std::cout << "  " << to_string(m) << ": " << bs.graphs << " graphs, "
                  << bs.candidates << " candidates, " << bs.consistent
                  << " consistent\n";
        print_behaviors(t, bs);
      }
      for (const auto& e : rep.expectations) {
        std::cout << "  expect " << to_string(e.expectation.model) << " "
                  << (e.expectation.allowed ? "allowed" : "forbidden") << ": "
                  << outcome_string(t, e.expectation.outcome) << " ... "
                  << (e.pass ? "PASS" : "FAIL") << "\n";
      }
    }
    if (!dot_dir.empty()) {
      ModelId m = ropts.models.empty() ? ModelId::RC11Ext : ropts.models[0];
      emit_dots(t, ropts, m, dot_dir, dot_violations);
    }
    reports.push_back(std::move(rep));
  }
  if (json) std::cout << report_to_json(reports) << "\n";
  return report_exit(pass, overflow);
}

int cmd_compare(const std::string& file, const std::string& ma,
                const std::string& mb, const CommonOpts& common) {
  auto a = model_from_string(ma), b = model_from_string(mb);
  if (!a || !b) {
    std::cerr << "unknown model\n";
    return kExitInput;
  }
  LitmusTest t = load(file);
  BehaviorOptions bo = behavior_options(t, common.run_options());
  BehaviorSet sa = behaviors(t.program, *a, bo);
  BehaviorSet sb = behaviors(t.program, *b, bo);
  std::cout << "test " << t.name << ": " << ma << " vs " << mb << "\n";
  std::cout << ma << ":\n";
  print_behaviors(t, sa);
  std::cout << mb << ":\n";
  print_behaviors(t, sb);
  auto in_only = [&](const BehaviorSet& x, const BehaviorSet& y,
                     const std::string& label) {
    if (x.ub && !y.ub) {
      std::cout << label << ": UB only here\n";
      return;
    }
    std::size_t n = 0;
    for (const auto& beh : x.behaviors)
      if (!y.behaviors.count(beh)) ++n;
    std::cout << label << ": " << n << " behavior(s) only here\n";
  };
  in_only(sa, sb, ma);
  in_only(sb, sa, mb);
  return report_exit(true, sa.overflow || sb.overflow);
}

int cmd_compile(const std::string& file, const std::string& scheme_name) {
  LitmusTest t = load(file);
  Scheme s = scheme_name == "alt" ? Scheme::Alternative : Scheme::Standard;
  LitmusTest out = t;
  out.name = t.name + "-" + to_string(s);
  out.program = compile(t.program, s);
  out.expectations.clear();
  std::cout << print_litmus(out);
  return kExitPass;
}

int cmd_check_compilation(const std::string& file,
                          const std::string& scheme_name,
                          const CommonOpts& common) {
  LitmusTest t = load(file);
  RunOptions ropts = common.run_options();
  bool pass = true, overflow = false;
  std::vector<Scheme> schemes;
  if (scheme_name == "std") schemes = {Scheme::Standard};
  else if (scheme_name == "alt") schemes = {Scheme::Alternative};
  else schemes = {Scheme::Standard, Scheme::Alternative};
  for (Scheme s : schemes) {
    CheckResult res = check_compilation_entry(t, s, ropts);
    std::cout << "check-compilation " << res.name << ": "
              << (res.pass ? "PASS" : "FAIL") << " (" << res.detail << ")\n";
    pass &= res.pass;
  }
  return report_exit(pass, overflow);
}

int cmd_check_transfer(const std::string& file, const std::string& scheme_name,
                       const CommonOpts& common) {
  LitmusTest t = load(file);
  RunOptions ropts = common.run_options();
  std::vector<Scheme> schemes;
  if (scheme_name == "std") schemes = {Scheme::Standard};
  else if (scheme_name == "alt") schemes = {Scheme::Alternative};
  else schemes = {Scheme::Standard, Scheme::Alternative};
  bool pass = true;
  for (Scheme s : schemes) {
    TransferSummary sum = check_transfer_entry(t, s, ropts);
    std::cout << "check-transfer " << t.name << " [" << to_string(s) << "]: "
              << (sum.pass() ? "PASS" : "FAIL") << " (" << sum.candidates
              << " candidates, " << sum.discrepancies << " discrepancies, "
              << sum.weaker_than_violations << " weaker-than violations)\n";
    if (!sum.detail.empty()) std::cout << "  " << sum.detail << "\n";
    pass &= sum.pass();
  }
  return pass ? kExitPass : kExitFail;
}

int cmd_check_drf(const std::string& file, const CommonOpts& common) {
  LitmusTest t = load(file);
  DrfReport rep = check_drf_entry(t, common.run_options());
  std::cout << "check-drf " << t.name << ": ";
  if (!rep.applicable) {
    std::cout << "SKIP (" << rep.detail << ")\n";
    return kExitInput;
  }
  std::cout << (rep.pass ? "PASS" : "FAIL") << " (" << rep.detail << ")\n";
  for (const auto& r : rep.race_witnesses) std::cout << "  race: " << r << "\n";
  return rep.pass ? kExitPass : kExitFail;
}

int cmd_check_transform(const std::string& file, const std::string& spec,
                        const CommonOpts& common) {
  LitmusTest t = load(file);
  RunOptions ropts = common.run_options();
  if (spec == "sweep" || spec.empty()) {
    TransformSweep sweep = check_transform_sweep(t, ropts);
    std::cout << "check-transform " << t.name << " sweep: "
              << (sweep.pass() ? "PASS" : "FAIL") << " (" << sweep.applied
              << " transformations)\n";
    for (const auto& f : sweep.failures) std::cout << "  FAIL " << f << "\n";
    return sweep.pass() ? kExitPass : kExitFail;
  }

  // spec forms: seq-plain:T1:T2, seq-fence:T1:T2, seq-nitia:T1:T2,
  // promote:LOC:TID, deorder:TID
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  try {
    Program transformed;
    if (parts[0] == "deorder" && parts.size() == 2) {
      transformed = deorder(t.program, std::stoi(parts[1]));
    } else if (parts[0] == "promote" && parts.size() == 3) {
      transformed =
          promote_register(t.program, std::stoull(parts[1]), std::stoi(parts[2]));
    } else if ((parts[0] == "seq-plain" || parts[0] == "seq-fence" ||
                parts[0] == "seq-nitia") &&
               parts.size() == 3) {
      SeqKind kind = parts[0] == "seq-plain" ? SeqKind::Plain
                     : parts[0] == "seq-fence" ? SeqKind::Fence
                                               : SeqKind::NITIA;
      transformed = sequentialize(t.program, kind, std::stoi(parts[1]),
                                  std::stoi(parts[2]));
    } else {
      std::cerr << "unknown transformation spec: " << spec << "\n";
      return kExitInput;
    }
    InclusionReport rep =
        check_transform_sound(t.program, transformed, behavior_options(t, ropts));
    std::cout << "check-transform " << t.name << " " << spec << ": "
              << (rep.holds ? "sound (inclusion holds)"
                            : "UNSOUND (inclusion fails)")
              << "\n";
    return rep.holds ? kExitPass : kExitFail;
  } catch (const TransformError& e) {
    std::cout << "check-transform " << t.name << " " << spec
              << ": rejected (" << e.what() << ")\n";
    return kExitFail;
  }
}

int cmd_corpus(const CommonOpts& common, bool json) {
  RunOptions ropts = common.run_options();
  const auto& entries = corpus();

  std::vector<RunReport> reports(entries.size());
  std::vector<std::string> check_lines(entries.size());
  std::vector<bool> ok(entries.size(), true);

  parallel_for(entries.size(), [&](std::size_t i) {
    const CorpusEntry& e = entries[i];
    std::ostringstream os;
    RunReport rep = run_test(e.test, ropts);
    bool entry_ok = rep.pass && !rep.overflow;

    for (Scheme s : {Scheme::Standard, Scheme::Alternative}) {
      CheckResult comp = check_compilation_entry(e.test, s, ropts);
      entry_ok &= comp.pass;
      os << "  compilation[" << to_string(s) << "] "
         << (comp.pass ? "PASS" : "FAIL") << "\n";
      TransferSummary trans = check_transfer_entry(e.test, s, ropts);
      entry_ok &= trans.pass();
      os << "  transfer[" << to_string(s) << "] "
         << (trans.pass() ? "PASS" : "FAIL") << " (" << trans.candidates
         << " candidates)\n";
    }

    TransformSweep sweep = check_transform_sweep(e.test, ropts);
    entry_ok &= sweep.pass();
    os << "  transforms " << (sweep.pass() ? "PASS" : "FAIL") << " ("
       << sweep.applied << " applied)\n";

    if (e.drf) {
      DrfReport drf = check_drf_entry(e.test, ropts);
      bool drf_ok = drf.applicable && drf.data_race_free == *e.drf && drf.pass;
      entry_ok &= drf_ok;
      os << "  drf " << (drf_ok ? "PASS" : "FAIL") << " (" << drf.detail
         << ")\n";
    }

    reports[i] = std::move(rep);
    check_lines[i] = os.str();
    ok[i] = entry_ok;
  });

  bool pass = true, overflow = false;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    pass &= ok[i];
    overflow |= reports[i].overflow;
    if (!json) {
      std::cout << (ok[i] ? "PASS " : "FAIL ") << entries[i].name << " ("
                << reports[i].seconds << "s)\n";
      for (const auto& e : reports[i].expectations)
        std::cout << "  expect " << to_string(e.expectation.model) << " "
                  << (e.expectation.allowed ? "allowed" : "forbidden")
                  << " ... " << (e.pass ? "PASS" : "FAIL") << "\n";
      std::cout << check_lines[i];
    }
  }
  if (json) std::cout << report_to_json(reports) << "\n";
  std::cout << (pass ? "CORPUS PASS" : "CORPUS FAIL") << " ("
            << entries.size() << " tests)\n";
  return report_exit(pass, overflow);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"litmus-test checker for C/C++ with inline x86 assembly"};
  app.require_subcommand(1);

  CommonOpts common;

  // run
  auto* run = app.add_subcommand("run", "run litmus tests");
  std::vector<std::string> run_files;
  std::string run_model, run_dot;
  bool run_json = false, run_dot_violations = false;
  run->add_option("files", run_files, "litmus files")->required();
  run->add_option("--model", run_model, "sc|rc11|ex86|rc11ext");
  run->add_option("--values", common.values_csv, "value domain, e.g. 0,1");
  run->add_option("--bound", common.bound, "step bound");
  run->add_flag("--json", run_json, "JSON report");
  run->add_option("--dot", run_dot, "emit DOT files into this directory");
  run->add_flag("--dot-violations", run_dot_violations,
                "also emit violating executions");

  // compare
  auto* cmp = app.add_subcommand("compare", "diff behavior sets of two models");
  std::string cmp_file, cmp_a, cmp_b;
  cmp->add_option("file", cmp_file)->required();
  cmp->add_option("modelA", cmp_a)->required();
  cmp->add_option("modelB", cmp_b)->required();
  cmp->add_option("--values", common.values_csv);
  cmp->add_option("--bound", common.bound);

  // compile
  auto* comp = app.add_subcommand("compile", "emit the compiled program");
  std::string comp_file, comp_scheme = "std";
  comp->add_option("file", comp_file)->required();
  comp->add_option("--scheme", comp_scheme, "std|alt");

  // check-compilation
  auto* ccomp = app.add_subcommand("check-compilation",
                                   "target behaviors included in source");
  std::string ccomp_file, ccomp_scheme = "both";
  ccomp->add_option("file", ccomp_file)->required();
  ccomp->add_option("--scheme", ccomp_scheme, "std|alt|both");
  ccomp->add_option("--values", common.values_csv);
  ccomp->add_option("--bound", common.bound);

  // check-transfer
  auto* ctrans = app.add_subcommand("check-transfer",
                                    "mixed-graph consistency vs projections");
  std::string ctrans_file, ctrans_scheme = "both";
  ctrans->add_option("file", ctrans_file)->required();
  ctrans->add_option("--scheme", ctrans_scheme, "std|alt|both");
  ctrans->add_option("--values", common.values_csv);
  ctrans->add_option("--bound", common.bound);

  // check-drf
  auto* cdrf = app.add_subcommand("check-drf", "data-race-freedom check");
  std::string cdrf_file;
  cdrf->add_option("file", cdrf_file)->required();
  cdrf->add_option("--values", common.values_csv);
  cdrf->add_option("--bound", common.bound);

  // check-transform
  auto* ctf = app.add_subcommand("check-transform",
                                 "behavior inclusion after a transformation");
  std::string ctf_file, ctf_spec = "sweep";
  ctf->add_option("file", ctf_file)->required();
  ctf->add_option("--transform", ctf_spec,
                  "sweep | deorder:TID | promote:LOC:TID | "
                  "seq-{nitia,fence,plain}:T1:T2");
  ctf->add_option("--values", common.values_csv);
  ctf->add_option("--bound", common.bound);

  // corpus
  auto* corp = app.add_subcommand("corpus", "run the built-in corpus");
  bool corp_json = false;
  corp->add_option("--values", common.values_csv);
  corp->add_option("--bound", common.bound);
  corp->add_flag("--json", corp_json);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return cmd_run(run_files, run_model, common, run_json, run_dot,
                     run_dot_violations);
    if (cmp->parsed()) return cmd_compare(cmp_file, cmp_a, cmp_b, common);
    if (comp->parsed()) return cmd_compile(comp_file, comp_scheme);
    if (ccomp->parsed())
      return cmd_check_compilation(ccomp_file, ccomp_scheme, common);
    if (ctrans->parsed())
      return cmd_check_transfer(ctrans_file, ctrans_scheme, common);
    if (cdrf->parsed()) return cmd_check_drf(cdrf_file, common);
    if (ctf->parsed()) return cmd_check_transform(ctf_file, ctf_spec, common);
    if (corp->parsed()) return cmd_corpus(common, corp_json);
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
