// rtlkit: generate formulas, run the DLL family, check and convert proofs.
#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "CLI11.hpp"
#include "rtl/checker.hpp"
#include "rtl/dimacs.hpp"
#include "rtl/generators.hpp"
#include "rtl/proof_io.hpp"
#include "rtl/simulation.hpp"
#include "rtl/solvers.hpp"
#include "rtl/trace.hpp"
#include "rtl/transforms.hpp"

namespace fs = std::filesystem;
using namespace rtl;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRejected = 1;
constexpr int kExitError = 2;
constexpr int kExitSat = 10;
constexpr int kExitUnsat = 20;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path);
}

// The axiom clauses of p, used as the formula when none is given.
Formula axiom_formula(const Proof& p) {
  std::unordered_set<Clause, ClauseHash> seen;
  std::vector<Clause> cs;
  for (const ProofNode& n : p.nodes())
    if (n.rule == Rule::Axiom && seen.insert(n.clause).second) cs.push_back(n.clause);
  return Formula(p.num_vars(), std::move(cs));
}

Assignment parse_assignment(const std::string& spec) {
  Assignment a;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("bad assignment item '" + item + "'");
    long v = 0;
    int b = 0;
    try {
      v = std::stol(item.substr(0, eq));
      b = std::stoi(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("bad assignment item '" + item + "'");
    }
    if (v <= 0 || (b != 0 && b != 1)) throw UsageError("bad assignment item '" + item + "'");
    if (a.assigned(static_cast<Var>(v))) throw UsageError("variable " + std::to_string(v) + " assigned twice");
    a.assign(static_cast<Var>(v), b == 1);
  }
  return a;
}

// ---- generate

struct GenerateArgs {
  std::string family;
  int n = 0, m = 0, k = 3;
  std::uint64_t seed = 0;
};

int cmd_generate(const GenerateArgs& g) {
  Formula f;
  if (g.family == "php") {
    if (g.n < 1) throw UsageError("--n must be at least 1");
    f = generate_php(g.n);
  } else if (g.family == "fphp") {
    if (g.n < 1) throw UsageError("--n must be at least 1");
    f = generate_fphp(g.n);
  } else {
    if (g.n < 1 || g.m < 0 || g.k < 1 || g.k > g.n) throw UsageError("random needs n >= k >= 1 and m >= 0");
    f = generate_random_kcnf(g.n, g.m, g.k, g.seed);
  }
  write_dimacs(std::cout, f);
  return kExitOk;
}

// ---- solve

struct SolveArgs {
  std::string algo = "dll";
  std::string learn = "first-uip";
  std::string heuristic = "smallest";
  bool non_greedy = false;
  int budget = 1;
  std::uint64_t seed = 0;
  std::string proof_out, trace_out, cnf;
};

struct RunResult {
  SolveResult result;
  Proof proof;  // Unsat only
  std::string tag;
};

RunResult run_solver(const Formula& f, const SolveArgs& s) {
  const int budget = s.non_greedy ? s.budget : 0;
  auto h = make_heuristic(s.heuristic, budget);
  if (!h) throw UsageError("unknown heuristic '" + s.heuristic + "'");
  SolverOptions opt;
  opt.non_greedy = s.non_greedy;
  opt.seed = s.seed;
  RunResult r;
  if (s.algo == "dll") {
    r.result = dll(f, Assignment{}, *h, opt);
    r.tag = "regrt";
  } else if (s.algo == "dll-l-up") {
    auto ls = make_strategy(s.learn);
    if (!ls) throw UsageError("unknown learning strategy '" + s.learn + "'");
    r.result = dll_l_up(f, Assignment{}, *h, *ls, opt);
    r.tag = "regwrti";
  } else if (s.algo == "dll-learn") {
    r.result = dll_learn(f, Assignment{}, *h, opt);
    r.tag = "regwrtl";
  } else {
    throw UsageError("unknown algorithm '" + s.algo + "'");
  }
  if (r.result.outcome == Outcome::Unsat) {
    const SearchTrace& t = r.result.trace;
    if (s.algo == "dll")
      r.proof = trace_to_rt(t, f);
    else if (s.algo == "dll-l-up")
      r.proof = trace_to_regwrti(t, f);
    else
      r.proof = trace_to_regwrtl(t, f);
  }
  return r;
}

int cmd_solve(const SolveArgs& s) {
  Formula f = read_dimacs_file(s.cnf);
  RunResult r = run_solver(f, s);
  if (!s.trace_out.empty()) write_file(s.trace_out, serialize_trace(r.result.trace));
  std::cout << "c recursive calls " << r.result.trace.recursive_calls() << "\n";
  if (r.result.outcome == Outcome::Sat) {
    std::cout << "s SATISFIABLE\nv";
    for (Lit l : r.result.model.trail()) std::cout << ' ' << l.to_dimacs();
    std::cout << " 0\n";
    return kExitSat;
  }
  std::cout << "c proof size " << r.proof.size() << "\n";
  std::cout << "s UNSATISFIABLE\n";
  if (!s.proof_out.empty()) write_file(s.proof_out, serialize_proof(r.proof, r.tag));
  return kExitUnsat;
}

// ---- check

struct CheckArgs {
  std::string system;
  bool regular = false, refutation = false;
  long max_lemma = -1;
  std::string proof, cnf;
};

int cmd_check(const CheckArgs& c) {
  ProofFile pf = read_proof_file(c.proof);
  Formula f = read_dimacs_file(c.cnf);
  std::string name = !c.system.empty() ? c.system : (!pf.system.empty() ? pf.system : "any");
  auto sys = SystemDescriptor::from_name(name);
  if (!sys) throw UsageError("unknown proof system '" + name + "'");
  if (c.regular) sys->regular = true;
  if (c.max_lemma >= 0) sys->max_lemma_size = static_cast<std::size_t>(c.max_lemma);
  Verdict v = check_proof(pf.proof, f, *sys, c.refutation);
  for (const Violation& x : v.violations) std::cout << format_violation(x) << "\n";
  std::cout << (v.accepted() ? "s ACCEPTED " : "s REJECTED ") << sys->name() << "\n";
  return v.accepted() ? kExitOk : kExitRejected;
}

// ---- convert

struct ConvertArgs {
  std::string mode, cnf, cnf_out, assign;
  std::string in, out;
};

int cmd_convert(const ConvertArgs& c) {
  ProofFile pf = read_proof_file(c.in);
  const Proof& p = pf.proof;
  Formula f = c.cnf.empty() ? axiom_formula(p) : read_dimacs_file(c.cnf);
  f.raise_num_vars(p.num_vars());
  Proof out;
  std::string tag;
  std::optional<Formula> out_formula;
  if (c.mode == "weaken-elim") {
    out = eliminate_weakening(p, f);
  } else if (c.mode == "rd-to-rti") {
    out = unfold_to_rti(p, f);
    tag = "rti";
  } else if (c.mode == "ve-simulate") {
    out = ve_simulate(p, f);
    tag = "regwrti";
    out_formula = variable_extension(f);
  } else if (c.mode == "restrict") {
    if (c.assign.empty()) throw UsageError("restrict needs --assign");
    Assignment rho = parse_assignment(c.assign);
    out = restrict_proof(p, rho);
    tag = "rtw";
    out_formula = restricted_clause_set(f, rho);
  } else {
    throw UsageError("unknown mode '" + c.mode + "'");
  }
  write_file(c.out, serialize_proof(out, tag));
  if (!c.cnf_out.empty()) {
    if (!out_formula) throw UsageError("--cnf-out is only meaningful for ve-simulate and restrict");
    write_file(c.cnf_out, to_dimacs(*out_formula));
  }
  std::cout << "c input size " << p.size() << "\nc output size " << out.size() << "\n";
  return kExitOk;
}

// ---- bench

struct BenchArgs {
  std::string corpus;
  std::vector<std::string> algos{"dll", "dll-l-up", "dll-learn"};
  std::string learn = "first-uip";
  std::string heuristic = "smallest";
  std::uint64_t seed = 0;
  bool timing = false;
  int threads = 0;
};

struct BenchRow {
  std::string instance, algo, verdict, calls = "-", size = "-", check_ms = "-";
};

int cmd_bench(const BenchArgs& b) {
  if (!fs::is_directory(b.corpus)) throw std::runtime_error("not a directory: " + b.corpus);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(b.corpus))
    if (e.is_regular_file() && e.path().extension() == ".cnf") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const std::string& a : b.algos)
    if (a != "dll" && a != "dll-l-up" && a != "dll-learn") throw UsageError("unknown algorithm '" + a + "'");

  std::vector<Formula> formulas;
  for (const fs::path& p : files) formulas.push_back(read_dimacs_file(p.string()));
  const int jobs = static_cast<int>(files.size() * b.algos.size());
  std::vector<BenchRow> rows(static_cast<std::size_t>(jobs));
  if (b.threads > 0) omp_set_num_threads(b.threads);

#pragma omp parallel for schedule(dynamic)
  for (int j = 0; j < jobs; ++j) {
    const std::size_t fi = static_cast<std::size_t>(j) / b.algos.size();
    BenchRow& row = rows[static_cast<std::size_t>(j)];
    row.instance = files[fi].filename().string();
    row.algo = b.algos[static_cast<std::size_t>(j) % b.algos.size()];
    try {
      SolveArgs s;
      s.algo = row.algo;
      s.learn = b.learn;
      s.heuristic = b.heuristic;
      s.seed = b.seed;
      RunResult r = run_solver(formulas[fi], s);
      row.calls = std::to_string(r.result.trace.recursive_calls());
      if (r.result.outcome == Outcome::Sat) {
        row.verdict = "SAT";
        continue;
      }
      row.size = std::to_string(r.proof.size());
      auto sys = SystemDescriptor::from_name(r.tag);
      auto t0 = std::chrono::steady_clock::now();
      Verdict v = check_proof(r.proof, formulas[fi], *sys, true, Execution::Serial);
      auto t1 = std::chrono::steady_clock::now();
      row.verdict = v.accepted() ? "UNSAT" : "UNSAT-BADPROOF";
      if (b.timing) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", std::chrono::duration<double, std::milli>(t1 - t0).count());
        row.check_ms = buf;
      }
    } catch (const std::exception& e) {
      row.verdict = "ERROR";
    }
  }

  std::cout << "instance\talgo\tverdict\tcalls\tproof_size\tcheck_ms\n";
  for (const BenchRow& r : rows)
    std::cout << r.instance << '\t' << r.algo << '\t' << r.verdict << '\t' << r.calls << '\t' << r.size << '\t'
              << r.check_ms << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resolution proof and DLL toolkit"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Write a DIMACS formula to stdout");
  g->add_option("--family", gen.family, "php, fphp or random")->required()->check(CLI::IsMember({"php", "fphp", "random"}));
  g->add_option("--n", gen.n, "Holes, or variables for random")->required();
  g->add_option("--m", gen.m, "Clauses (random)");
  g->add_option("--k", gen.k, "Clause width (random)");
  g->add_option("--seed", gen.seed, "Random seed");

  SolveArgs sol;
  auto* s = app.add_subcommand("solve", "Run a DLL variant; exit 10 on SAT, 20 on UNSAT");
  s->add_option("--algo", sol.algo, "dll, dll-l-up or dll-learn")->check(CLI::IsMember({"dll", "dll-l-up", "dll-learn"}));
  s->add_option("--learn", sol.learn, "none, trivial, first-uip, decision or all (dll-l-up)");
  s->add_option("--heuristic", sol.heuristic, "smallest, unit or random");
  s->add_flag("--non-greedy", sol.non_greedy, "Allow branching past a conflict");
  s->add_option("--budget", sol.budget, "Levels past a conflict when non-greedy");
  s->add_option("--seed", sol.seed, "Random seed");
  s->add_option("--proof", sol.proof_out, "Write the refutation (.rtp)");
  s->add_option("--trace", sol.trace_out, "Write the search trace (.trc)");
  s->add_option("cnf", sol.cnf, "DIMACS input")->required();

  CheckArgs chk;
  auto* c = app.add_subcommand("check", "Check a proof; exit 0 accepted, 1 rejected");
  c->add_option("--system", chk.system, "rt, rtl, rti, wrt, wrtl, wrti, rtw, rtlw, rd or any, optionally reg-prefixed");
  c->add_flag("--regular", chk.regular, "Require regularity");
  c->add_option("--max-lemma", chk.max_lemma, "Largest lemma width allowed");
  c->add_flag("--refutation", chk.refutation, "Require the final clause to be empty");
  c->add_option("proof", chk.proof, "Proof (.rtp)")->required();
  c->add_option("cnf", chk.cnf, "DIMACS formula")->required();

  ConvertArgs conv;
  auto* v = app.add_subcommand("convert", "Transform a proof");
  v->add_option("--mode", conv.mode, "weaken-elim, rd-to-rti, ve-simulate or restrict")
      ->required()
      ->check(CLI::IsMember({"weaken-elim", "rd-to-rti", "ve-simulate", "restrict"}));
  v->add_option("--cnf", conv.cnf, "Formula of the input proof (default: its axioms)");
  v->add_option("--cnf-out", conv.cnf_out, "Write the target formula (ve-simulate, restrict)");
  v->add_option("--assign", conv.assign, "Restriction, e.g. \"1=0,3=1\"");
  v->add_option("in", conv.in, "Input proof")->required();
  v->add_option("out", conv.out, "Output proof")->required();

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Solve and check a corpus; TSV on stdout");
  b->add_option("corpus", bench.corpus, "Directory of .cnf files")->required();
  b->add_option("--algos", bench.algos, "Algorithms to run")->delimiter(',');
  b->add_option("--learn", bench.learn, "Learning strategy for dll-l-up");
  b->add_option("--heuristic", bench.heuristic, "Branching heuristic");
  b->add_option("--seed", bench.seed, "Random seed");
  b->add_flag("--timing", bench.timing, "Report checker wall time");
  b->add_option("--threads", bench.threads, "Worker threads (0: OpenMP default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*g) return cmd_generate(gen);
    if (*s) return cmd_solve(sol);
    if (*c) return cmd_check(chk);
    if (*v) return cmd_convert(conv);
    if (*b) return cmd_bench(bench);
  } catch (const ParseError& e) {
    std::cerr << "rtlkit: parse error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "rtlkit: " << e.what() << "\n";
  }
  return kExitError;
}
