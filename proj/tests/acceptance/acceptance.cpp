// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on failure.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gen.hpp"
#include "matching.hpp"
#include "oracle.hpp"
#include "rtl/checker.hpp"
#include "rtl/conflict_graph.hpp"
#include "rtl/generators.hpp"
#include "rtl/proof_builder.hpp"
#include "rtl/simulation.hpp"
#include "rtl/solvers.hpp"
#include "rtl/transforms.hpp"

using namespace rtl;
using namespace rtl::testing;

namespace {

// Collects failures for one criterion; keeps the first few messages.
class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (notes_.size() < 5) notes_.push_back(what);
  }
  bool ok() const { return failures_ == 0 && checks_ > 0; }
  int checks() const { return checks_; }
  int failures() const { return failures_; }
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  int checks_ = 0;
  int failures_ = 0;
  std::vector<std::string> notes_;
};

int g_failed = 0;

void report(int id, const std::string& name, const Tally& t, const std::string& extra = {}) {
  if (!t.ok()) ++g_failed;
  std::printf("%s %2d %s: %d checks, %d failed%s%s\n", t.ok() ? "PASS" : "FAIL", id, name.c_str(), t.checks(),
              t.failures(), extra.empty() ? "" : "; ", extra.c_str());
  for (const std::string& n : t.notes()) std::printf("       %s\n", n.c_str());
  std::fflush(stdout);
}

std::string describe(const Verdict& v) { return v.accepted() ? "accepted" : format_violation(v.violations.front()); }

long nvars(const Formula& f) { return static_cast<long>(f.variables().size()); }

const SystemDescriptor kRegRt = SystemDescriptor::rt().with_regular();
const SystemDescriptor kRegWrti = SystemDescriptor::wrti().with_regular();
const SystemDescriptor kRegWrtl = SystemDescriptor::wrtl().with_regular();

// ---- criteria 1 and 2

struct Instance {
  std::string name;
  Formula f;
};

std::vector<Instance> oracle_corpus() {
  std::vector<Instance> out;
  Rng rng(2024);
  for (int i = 0; i < 200; ++i) {
    const int n = 5 + i % 11;
    const double ratio = 3.0 + (i % 7) * 0.4;
    const int m = static_cast<int>(ratio * n + 0.5);
    out.push_back({"random" + std::to_string(i), generate_random_kcnf(n, m, 3, rng())});
  }
  for (int n = 1; n <= 4; ++n) {
    out.push_back({"php" + std::to_string(n), generate_php(n)});
    out.push_back({"fphp" + std::to_string(n), generate_fphp(n)});
  }
  return out;
}

void criteria_oracle_and_certificates() {
  Tally oracle, certs;
  const auto t0 = std::chrono::steady_clock::now();
  int unsat_runs = 0;
  const char* heuristics[] = {"smallest", "unit", "random"};
  const char* strategies[] = {"first-uip", "all", "decision", "trivial", "none"};
  int k = 0;
  for (const Instance& in : oracle_corpus()) {
    const bool truth = brute_force_sat(in.f);
    for (int algo = 0; algo < 3; ++algo, ++k) {
      auto h = make_heuristic(heuristics[k % 3]);
      SolverOptions opt;
      opt.seed = static_cast<std::uint64_t>(k);
      SolveResult r;
      std::string tag = in.name + "/" + std::to_string(algo);
      if (algo == 0) {
        r = dll(in.f, Assignment{}, *h, opt);
      } else if (algo == 1) {
        auto ls = make_strategy(strategies[k % 5]);
        r = dll_l_up(in.f, Assignment{}, *h, *ls, opt);
      } else {
        r = dll_learn(in.f, Assignment{}, *h, opt);
      }
      const bool sat = r.outcome == Outcome::Sat;
      oracle.expect(sat == truth, tag + ": solver says " + (sat ? "SAT" : "UNSAT"));
      if (sat) {
        Assignment total = r.model;
        for (Var v : in.f.variables())
          if (!total.assigned(v)) total.assign(v, false);
        oracle.expect(evaluate(in.f, total), tag + ": model does not satisfy the formula");
        continue;
      }
      ++unsat_runs;
      Verdict v;
      if (algo == 0)
        v = check_proof(trace_to_rt(r.trace, in.f), in.f, kRegRt, true);
      else if (algo == 1)
        v = check_proof(trace_to_regwrti(r.trace, in.f), in.f, kRegWrti, true);
      else
        v = check_proof(trace_to_regwrtl(r.trace, in.f), in.f, kRegWrtl, true);
      certs.expect(v.accepted(), tag + ": " + describe(v));
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  oracle.expect(secs < 60.0, "runtime " + std::to_string(secs) + " s");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f s", secs);
  report(1, "oracle equivalence", oracle, buf);
  report(2, "certificate round trip", certs, std::to_string(unsat_runs) + " refutations");
}

// ---- criteria 3 and 4

// Random UNSAT formulas over 6..10 variables, deterministic.
std::vector<Formula> unsat_corpus(std::uint64_t seed, int count) {
  std::vector<Formula> out{generate_php(2), generate_php(3), generate_fphp(2)};
  Rng rng(seed);
  while (static_cast<int>(out.size()) < count) {
    const int n = 6 + static_cast<int>(rng() % 5);
    Formula f = generate_random_kcnf(n, 6 * n, 3, rng());
    if (!brute_force_sat(f)) out.push_back(std::move(f));
  }
  return out;
}

void criterion_dll_learn() {
  Tally t;
  int k = 0;
  for (const Formula& f : unsat_corpus(31, 50)) {
    const std::string tag = "run " + std::to_string(k);
    auto h = make_heuristic(k % 2 ? "random" : "smallest", 1 + k % 2);
    SolverOptions opt;
    opt.seed = static_cast<std::uint64_t>(k);
    opt.non_greedy = k % 3 == 0;
    ++k;
    auto r = dll_learn(f, Assignment{}, *h, opt);
    if (r.outcome != Outcome::Unsat) {
      t.expect(false, tag + ": not refuted");
      continue;
    }
    Proof p = trace_to_regwrtl(r.trace, f);
    Verdict v = check_proof(p, f, kRegWrtl, true);
    t.expect(v.accepted(), tag + ": " + describe(v));
    t.expect(p.size() == r.trace.recursive_calls() + 1,
             tag + ": size " + std::to_string(p.size()) + " calls " + std::to_string(r.trace.recursive_calls()));
    Schedule s = regwrtl_to_schedule(p, f);
    ScheduledHeuristic sh(s);
    SolverOptions replay;
    replay.non_greedy = true;
    auto back = dll_learn(f, Assignment{}, sh, replay);
    t.expect(back.trace.recursive_calls() == p.size() - 1,
             tag + ": replay made " + std::to_string(back.trace.recursive_calls()) + " calls for size " +
                 std::to_string(p.size()));
  }
  report(3, "DLL-Learn size equals calls + 1", t);
}

void criterion_dll_l_up() {
  Tally t;
  const char* strategies[] = {"first-uip", "all", "decision", "trivial", "none"};
  const char* heuristics[] = {"smallest", "unit", "random"};
  int k = 0;
  long worst_num = 0, worst_den = 1;
  for (const Formula& f : unsat_corpus(37, 50)) {
    const std::string tag = "run " + std::to_string(k);
    auto h = make_heuristic(heuristics[k % 3], k % 4 == 1 ? 1 : 0);
    auto ls = make_strategy(strategies[k % 5]);
    SolverOptions opt;
    opt.seed = static_cast<std::uint64_t>(k);
    opt.non_greedy = k % 4 == 1;
    ++k;
    auto r = dll_l_up(f, Assignment{}, *h, *ls, opt);
    if (r.outcome != Outcome::Unsat) {
      t.expect(false, tag + ": not refuted");
      continue;
    }
    Proof p = trace_to_regwrti(r.trace, f);
    Verdict v = check_proof(p, f, kRegWrti, true);
    t.expect(v.accepted(), tag + ": " + describe(v));
    const long s = r.trace.recursive_calls(), n = nvars(f);
    t.expect(p.size() <= s * n * n,
             tag + ": size " + std::to_string(p.size()) + " > " + std::to_string(s) + "*" + std::to_string(n) + "^2");
    if (p.size() * worst_den > worst_num * std::max(1L, s * n * n)) {
      worst_num = p.size();
      worst_den = std::max(1L, s * n * n);
    }
    Schedule sched = regwrti_to_schedule(p, f);
    ScheduledHeuristic sh(sched);
    ScheduledStrategy ss(sched);
    SolverOptions replay;
    replay.non_greedy = true;
    auto back = dll_l_up(f, Assignment{}, sh, ss, replay);
    t.expect(back.outcome == Outcome::Unsat, tag + ": replay did not refute");
    t.expect(back.trace.recursive_calls() < p.size(), tag + ": replay made " +
                                                          std::to_string(back.trace.recursive_calls()) +
                                                          " calls for size " + std::to_string(p.size()));
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "max size/(s n^2) = %.4f", static_cast<double>(worst_num) / worst_den);
  report(4, "DLL-L-UP size bound and replay", t, buf);
}

// ---- criterion 5

Lit gl(char c, bool negated = false) { return Lit(static_cast<Var>(c - 'a' + 1), negated); }

Clause leaf_clause(const ConflictGraph& g) {
  std::vector<Lit> lits;
  for (int i : g.leaves()) lits.push_back(~g.lit(i));
  return Clause(lits);
}

void check_learnables_proof(Tally& t, const std::string& tag, const ConflictGraph& g, const Decomposition& d) {
  Proof p = derive_learnables_proof(g, d);
  const long n = g.size();
  t.expect(p.size() <= n * n, tag + ": size " + std::to_string(p.size()) + " > " + std::to_string(n * n));
  t.expect(p.final_clause() == leaf_clause(g), tag + ": final clause is not Cc(G)");
  Verdict v = check_proof(p, reason_formula(g), kRegWrti, false);
  t.expect(v.accepted(), tag + ": " + describe(v));
  std::set<Clause> derived;
  for (int id : input_derived_nodes(p)) derived.insert(p.clause(id));
  for (const Clause& c : learnable_clauses(g, d).clauses())
    t.expect(derived.count(c) == 1, tag + ": learnable " + c.to_string() + " not input-derived");
}

void criterion_learnables() {
  Tally t;
  std::ifstream in(data_path("golden.cg"));
  t.expect(in.good(), "golden.cg missing");
  if (in.good()) {
    auto file = parse_conflict_graph(in);
    const ConflictGraph& g = file.graph;
    const Decomposition& d = *file.decomposition;
    std::vector<Clause> listed{Clause{gl('l', true), gl('h')},
                               Clause{gl('l', true), gl('m', true), gl('i')},
                               Clause{gl('h', true), gl('i', true), gl('e')},
                               Clause{gl('f', true), gl('i', true), gl('e')},
                               Clause{gl('f', true), gl('g', true), gl('e')},
                               Clause{gl('e', true)},
                               Clause{gl('b', true), gl('d', true)},
                               Clause{gl('b', true), gl('c', true)}};
    std::sort(listed.begin(), listed.end());
    t.expect(learnable_clauses(g, d).clauses() == listed, "golden graph learnable clauses differ from the listing");
    check_learnables_proof(t, "golden graph", g, d);
  }
  Rng rng(53);
  for (int i = 0; i < 29; ++i) {
    ConflictGraph g = random_conflict_graph(rng, 1 + static_cast<int>(rng() % 4), 1 + static_cast<int>(rng() % 10));
    Decomposition d = random_decomposition(rng, g);
    check_learnables_proof(t, "graph " + std::to_string(i), g, d);
  }
  report(5, "learnables proof size and content", t);
}

// ---- criterion 6

bool dag_regular(const Proof& p, const Formula& f) {
  return check_proof(p, f, SystemDescriptor::rd().with_regular(), false).accepted();
}

void criterion_unfold() {
  Tally t;
  std::vector<ProofInstance> corpus{diamond(), reused_three_times()};
  Rng rng(59);
  while (corpus.size() < 30) corpus.push_back(random_rd(rng, 8, 30, 4 + static_cast<int>(rng() % 12)));
  int regular_inputs = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& [f, p] = corpus[i];
    const std::string tag = "dag " + std::to_string(i);
    DagStats st = dag_stats(p);
    Proof u = unfold_to_rti(p, f);
    const long bound = 2L * st.size * std::max(st.depth, 1);
    t.expect(u.size() < bound, tag + ": size " + std::to_string(u.size()) + " >= " + std::to_string(bound));
    t.expect(u.final_clause() == p.final_clause(), tag + ": final clause changed");
    Verdict v = check_proof(u, f, SystemDescriptor::rti(), u.final_clause().empty());
    t.expect(v.accepted(), tag + ": " + describe(v));
    if (dag_regular(p, f)) {
      ++regular_inputs;
      t.expect(check_regularity(u).empty(), tag + ": regularity lost");
    }
  }
  report(6, "RD to RTI unfolding", t, std::to_string(regular_inputs) + " regular inputs");
}

// ---- criterion 7

void criterion_ve() {
  Tally t;
  std::vector<ProofInstance> corpus{diamond(), reused_three_times()};
  Rng rng(61);
  while (corpus.size() < 20) corpus.push_back(random_rd(rng, 6, 22, 1 + static_cast<int>(rng() % 12)));
  int chains = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& [f, p] = corpus[i];
    const std::string tag = "dag " + std::to_string(i);
    DagStats st = dag_stats(p);
    const long d = static_cast<long>(clause_width(p));
    Proof s = ve_simulate(p, f);
    const long bound = 2L * st.size * (d + 2) + 1;
    t.expect(s.size() <= bound, tag + ": size " + std::to_string(s.size()) + " > " + std::to_string(bound));
    t.expect(s.final_clause() == p.final_clause(), tag + ": final clause changed");
    Formula ve = variable_extension(f);
    Verdict v = check_proof(s, ve, kRegWrti, s.final_clause().empty());
    t.expect(v.accepted(), tag + ": " + describe(v));
    for (const ProofNode& n : p.nodes()) {
      if (n.rule != Rule::Resolution) continue;
      Proof chain = build_input_chain(p.clause(n.left), p.clause(n.right), n.pivot, ve_q(f.num_vars()), ve);
      const long want = 2L * static_cast<long>(n.clause.size()) + 3;
      t.expect(chain.size() == want, tag + ": chain of " + std::to_string(chain.size()) + " nodes for |C| = " +
                                         std::to_string(n.clause.size()));
      ++chains;
    }
  }
  report(7, "variable extension simulation", t, std::to_string(chains) + " chains");
}

// ---- criterion 8

void criterion_weakening() {
  Tally t;
  Rng rng(67);
  std::vector<ProofInstance> corpus;
  // RTLW: random dags encoded with lemmas, with weakenings inserted.
  while (corpus.size() < 25) {
    auto inst = random_rd(rng, 7, 25, 3 + static_cast<int>(rng() % 8));
    Proof w = insert_weakenings(rng, inst.proof, 0.3);
    inst.formula.raise_num_vars(w.num_vars());
    corpus.push_back({inst.formula, w});
  }
  // WRTL: DLL-Learn refutations, some with weakenings inserted.
  int k = 0;
  for (const Formula& f : unsat_corpus(71, 25)) {
    SmallestIndexHeuristic h(1);
    SolverOptions opt;
    opt.non_greedy = k % 2 == 0;
    auto r = dll_learn(f, Assignment{}, h, opt);
    Proof p = trace_to_regwrtl(r.trace, f);
    if (k++ % 3 == 0) p = insert_weakenings(rng, p, 0.2);
    Formula g = f;
    g.raise_num_vars(p.num_vars());
    corpus.push_back({g, p});
  }
  const SystemDescriptor rtl_sys = SystemDescriptor::rtl();
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& [f, p] = corpus[i];
    const std::string tag = "proof " + std::to_string(i);
    Verdict in = check_proof(p, f, SystemDescriptor::any().with_regular(false), false);
    t.expect(in.accepted(), tag + ": input invalid: " + describe(in));
    const bool tree = check_proof(p, f, SystemDescriptor::rtlw(), false).accepted() ||
                      check_proof(p, f, SystemDescriptor::wrtl(), false).accepted();
    const bool regular = check_regularity(p).empty();
    Proof q = eliminate_weakening(p, f);
    t.expect(q.size() <= p.size(), tag + ": size grew");
    t.expect(q.final_clause().subset_of(p.final_clause()), tag + ": final clause not a subset");
    t.expect(!q.uses(Rule::Weakening) && !q.uses(Rule::WResolution), tag + ": weakening left");
    Verdict v = check_proof(q, f, rtl_sys.with_regular(regular), false);
    t.expect(v.accepted(), tag + ": " + describe(v));
    t.expect(!tree || check_proof(q, f, rtl_sys, false).accepted(), tag + ": tree shape lost");
    if (!p.has_lemmas()) t.expect(!q.has_lemmas(), tag + ": lemma introduced");
  }
  report(8, "weakening elimination", t);
}

// ---- criterion 9

Formula leaf_formula(const Proof& p) {
  std::vector<Clause> cs;
  for (const ProofNode& n : p.nodes())
    if (n.is_leaf()) cs.push_back(n.clause);
  return Formula(p.num_vars(), cs);
}

void criterion_input_round_trip() {
  Tally t;
  Rng rng(73);
  for (int i = 0; i < 30; ++i) {
    const std::string tag = "proof " + std::to_string(i);
    auto inst = random_input_proof(rng, 1 + static_cast<int>(rng() % 8), static_cast<int>(rng() % 5));
    Verdict v = check_proof(inst.proof, leaf_formula(inst.proof), kRegRt, false);
    t.expect(v.accepted(), tag + ": " + describe(v));
    auto r = decomposition_from_input_proof(inst.proof, inst.alpha);
    t.expect(validate_decomposition(r.graph, r.decomposition).accepted(), tag + ": invalid decomposition");
    t.expect(r.decomposition.k() == 1, tag + ": not a series decomposition");
    auto learn = learnable_clauses(r.graph, r.decomposition).clauses();
    std::set<Clause> derived;
    for (int id : input_derived_nodes(inst.proof))
      if (!inst.proof[id].is_leaf()) derived.insert(inst.proof.clause(id));
    t.expect(std::set<Clause>(learn.begin(), learn.end()) == derived, tag + ": learnable set differs");
  }
  report(9, "input proof to series decomposition", t);
}

// ---- criterion 10

void criterion_matching_and_lemma_size() {
  Tally t;
  int restrictions = 0;
  for (int n = 1; n <= 5; ++n) {
    std::vector<std::vector<std::pair<int, int>>> matchings{{}};
    for (int i = 1; i <= n + 1; ++i)
      for (int j = 1; j <= n; ++j) {
        matchings.push_back({{i, j}});
        for (int i2 = i + 1; i2 <= n + 1; ++i2)
          for (int j2 = 1; j2 <= n; ++j2)
            if (j2 != j) matchings.push_back({{i, j}, {i2, j2}});
      }
    for (const auto& rho : matchings) {
      const int m = n - static_cast<int>(rho.size());
      const std::string tag = "FPHP_" + std::to_string(n) + " with " + std::to_string(rho.size()) + " pairs";
      auto r = restrict_formula(generate_fphp(n), matching_restriction(n, rho));
      ++restrictions;
      if (m == 0) {
        t.expect(r.zero(), tag + ": restriction is not 0");
        continue;
      }
      auto renamed = r.truth == Truth::Residual ? rename_unmatched(r.residual, n, rho) : std::nullopt;
      t.expect(renamed && canonical_clauses(*renamed) == canonical_clauses(generate_fphp(m)), tag + ": not FPHP_m");
    }
  }
  // A tree using a lemma of width 3 that is not an initial clause.
  Formula f(5, {Clause{pos(1), pos(2), pos(3), pos(4)}, Clause{pos(1), pos(2), pos(3), neg(4)}, Clause{neg(1), pos(5)},
                Clause{neg(1), neg(5)}});
  ProofBuilder b;
  auto wide = b.resolve(b.axiom(f[0]), b.axiom(f[1]), pos(4));
  auto left = b.resolve(wide, b.axiom(f[2]), pos(1));
  auto right = b.resolve(b.lemma(wide), b.axiom(f[3]), pos(1));
  Proof p = b.build(b.resolve(left, right, pos(5)), 5);
  for (std::size_t k = 0; k <= 4; ++k) {
    Verdict v = check_proof(p, f, SystemDescriptor::rtlw(k), false);
    const bool want_reject = k < 3;
    t.expect(v.has(ViolationKind::LemmaTooLarge) == want_reject && v.accepted() == !want_reject,
             "RTLW(" + std::to_string(k) + "): " + describe(v));
  }
  report(10, "matching restriction and RTLW(k) lemma bound", t, std::to_string(restrictions) + " restrictions");
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria{
      criteria_oracle_and_certificates, criterion_dll_learn, criterion_dll_l_up,
      criterion_learnables,             criterion_unfold,    criterion_ve,
      criterion_weakening,              criterion_input_round_trip, criterion_matching_and_lemma_size,
  };
  for (const auto& c : criteria) {
    try {
      c();
    } catch (const std::exception& e) {
      ++g_failed;
      std::printf("FAIL    criterion aborted: %s\n", e.what());
    }
  }
  std::printf("%s: %d criteria failed\n", g_failed ? "FAILED" : "ALL PASSED", g_failed);
  return g_failed ? 1 : 0;
}
