#include <set>

#include "doctest.h"
#include "gen.hpp"
#include "oracle.hpp"
#include "rtl/checker.hpp"
#include "rtl/generators.hpp"
#include "rtl/proof_builder.hpp"
#include "rtl/proof_io.hpp"
#include "rtl/simulation.hpp"

using namespace rtl;
using namespace rtl::testing;

namespace {

Formula unit_pair() { return Formula(1, {Clause{pos(1)}, Clause{neg(1)}}); }

Proof unit_refutation(bool w) {
  ProofBuilder b;
  auto l = b.axiom(Clause{pos(1)}), r = b.axiom(Clause{neg(1)});
  return b.build(w ? b.w_resolve(l, r, pos(1)) : b.resolve(l, r, pos(1)), 1);
}

SolveResult replay_dll(const Formula& f, const Assignment& a, const Schedule& s) {
  ScheduledHeuristic h(s);
  return dll(f, a, h);
}

SolveResult replay_l_up(const Formula& f, const Schedule& s) {
  ScheduledHeuristic h(s);
  ScheduledStrategy ls(s);
  SolverOptions opt;
  opt.non_greedy = true;
  return dll_l_up(f, Assignment{}, h, ls, opt);
}

SolveResult replay_learn(const Formula& f, const Schedule& s) {
  ScheduledHeuristic h(s);
  SolverOptions opt;
  opt.non_greedy = true;
  return dll_learn(f, Assignment{}, h, opt);
}

const SystemDescriptor kRegRt = SystemDescriptor::rt().with_regular();
const SystemDescriptor kRegWrti = SystemDescriptor::wrti().with_regular();
const SystemDescriptor kRegWrtl = SystemDescriptor::wrtl().with_regular();

}  // namespace

TEST_SUITE("simulation") {
  TEST_CASE("DLL trace to a resolution tree") {
    SmallestIndexHeuristic h;
    auto r = dll(unit_pair(), Assignment{}, h);
    Proof p = trace_to_rt(r.trace, unit_pair());
    CHECK(p == unit_refutation(false));
    Formula php = generate_php(2);
    auto q = dll(php, Assignment{}, h);
    Proof pq = trace_to_rt(q.trace, php);
    CHECK(check_proof(pq, php, kRegRt, true).accepted());
    CHECK(pq.size() <= q.trace.recursive_calls() + 1);
  }

  TEST_CASE("a branch whose child proof lacks the pivot forwards it") {
    Formula f(3, {Clause{pos(1), pos(3)}, Clause{pos(2)}, Clause{neg(2)}});
    SmallestIndexHeuristic h;
    auto r = dll(f, Assignment{}, h);
    REQUIRE(r.trace.nodes[0].decision.var == 1);
    Proof p = trace_to_rt(r.trace, f);
    CHECK(p.size() == 3);
    CHECK(p[p.root()].pivot.var() == 2);
    CHECK(check_proof(p, f, kRegRt, true).accepted());
  }

  TEST_CASE("resolution tree to a DLL schedule") {
    Schedule s = rt_to_schedule(unit_refutation(false), unit_pair(), Assignment{});
    auto r = replay_dll(unit_pair(), Assignment{}, s);
    CHECK(r.outcome == Outcome::Unsat);
    CHECK(r.trace.recursive_calls() <= 2);
    Proof leaf(1, {ProofNode::axiom(Clause{pos(1)})});
    Schedule e = rt_to_schedule(leaf, unit_pair(), Assignment{neg(1)});
    CHECK(e.branch_count() == 0);
    CHECK(replay_dll(unit_pair(), Assignment{neg(1)}, e).trace.recursive_calls() == 0);
    CHECK_THROWS_AS(rt_to_schedule(leaf, unit_pair(), Assignment{}), std::invalid_argument);
  }

  TEST_CASE("DLL round trip on pigeonhole and random formulas") {
    Rng rng(131);
    std::vector<Formula> corpus{generate_php(2), generate_php(3), generate_fphp(2)};
    for (int i = 0; i < 25; ++i) corpus.push_back(generate_random_kcnf(8, 40, 3, rng()));
    for (const Formula& f : corpus) {
      RandomHeuristic h;
      SolverOptions opt;
      opt.seed = rng();
      auto r = dll(f, Assignment{}, h, opt);
      if (r.outcome == Outcome::Sat) continue;
      Proof p = trace_to_rt(r.trace, f);
      REQUIRE(check_proof(p, f, kRegRt, true).accepted());
      CHECK(p.size() <= r.trace.recursive_calls() + 1);
      auto back = replay_dll(f, Assignment{}, rt_to_schedule(p, f, Assignment{}));
      CHECK(back.outcome == Outcome::Unsat);
      CHECK(back.trace.recursive_calls() <= p.size() - 1);
    }
  }

  TEST_CASE("DLL-L-UP trace to regular WRTI") {
    const Var a = 1, x = 2;
    Formula f(2, {Clause{neg(a), pos(x)}, Clause{neg(a), neg(x)}, Clause{pos(a)}});
    SmallestIndexHeuristic h;
    BuiltinStrategy all(LearnKind::AllLearnable);
    auto r = dll_l_up(f, Assignment{}, h, all);
    Proof p = trace_to_regwrti(r.trace, f);
    CHECK(check_proof(p, f, kRegWrti, true).accepted());
    Formula php = generate_php(2);
    BuiltinStrategy none(LearnKind::None);
    auto q = dll_l_up(php, Assignment{}, h, none);
    Proof pq = trace_to_regwrti(q.trace, php);
    CHECK(check_proof(pq, php, kRegWrti, true).accepted());
    CHECK(pq.size() <= q.trace.recursive_calls() * 36);
    CHECK_FALSE(pq.has_lemmas());
  }

  TEST_CASE("learned clauses appear input-derived") {
    Formula php = generate_php(3);
    SmallestIndexHeuristic h;
    BuiltinStrategy uip(LearnKind::AllLearnable);
    auto r = dll_l_up(php, Assignment{}, h, uip);
    Proof p = trace_to_regwrti(r.trace, php);
    REQUIRE(check_proof(p, php, kRegWrti, true).accepted());
    std::set<Clause> derived;
    for (int id : input_derived_nodes(p)) derived.insert(p.clause(id));
    for (const Clause& c : r.trace.learned()) CHECK(derived.count(c) == 1);
    CHECK(check_path_falsification(p).accepted());
  }

  TEST_CASE("regular WRTI to a non-greedy DLL-L-UP schedule") {
    Schedule s = regwrti_to_schedule(unit_refutation(false), unit_pair());
    auto r = replay_l_up(unit_pair(), s);
    CHECK(r.outcome == Outcome::Unsat);
    CHECK(r.trace.recursive_calls() < 3);
    // w-resolution on x3, which occurs in neither premise.
    Formula f(3, {Clause{pos(1)}, Clause{neg(1)}});
    ProofBuilder b;
    auto left = b.resolve(b.axiom(Clause{pos(1)}), b.axiom(Clause{neg(1)}), pos(1));
    auto right = b.resolve(b.axiom(Clause{pos(1)}), b.axiom(Clause{neg(1)}), pos(1));
    Proof p = b.build(b.w_resolve(left, right, pos(3)), 3);
    REQUIRE(check_proof(p, f, kRegWrti, true).accepted());
    Schedule sp = regwrti_to_schedule(p, f);
    REQUIRE(sp.nodes[0].branch.has_value());
    CHECK(sp.nodes[0].branch->var == 3);
    auto rp = replay_l_up(f, sp);
    CHECK(rp.outcome == Outcome::Unsat);
    CHECK(rp.trace.recursive_calls() < p.size());
  }

  TEST_CASE("DLL-L-UP round trip") {
    Rng rng(137);
    const char* strategies[] = {"none", "trivial", "first-uip", "decision", "all"};
    std::vector<Formula> corpus{generate_php(2), generate_php(3), generate_fphp(3)};
    for (int i = 0; i < 30; ++i) corpus.push_back(generate_random_kcnf(9, 45, 3, rng()));
    int k = 0;
    for (const Formula& f : corpus) {
      auto h = make_heuristic(k % 2 ? "random" : "unit", static_cast<int>(k % 3));
      auto ls = make_strategy(strategies[k % 5]);
      SolverOptions opt;
      opt.seed = rng();
      opt.non_greedy = k % 3 == 1;
      ++k;
      auto r = dll_l_up(f, Assignment{}, *h, *ls, opt);
      if (r.outcome == Outcome::Sat) continue;
      Proof p = trace_to_regwrti(r.trace, f);
      REQUIRE(check_proof(p, f, kRegWrti, true).accepted());
      const auto n = static_cast<long>(f.variables().size());
      if (r.trace.recursive_calls() > 0) CHECK(p.size() <= r.trace.recursive_calls() * n * n);
      auto back = replay_l_up(f, regwrti_to_schedule(p, f));
      CHECK(back.outcome == Outcome::Unsat);
      CHECK(back.trace.recursive_calls() < p.size());
    }
  }

  TEST_CASE("DLL-Learn and regular WRTL correspond exactly") {
    SmallestIndexHeuristic h;
    auto r = dll_learn(unit_pair(), Assignment{}, h);
    Proof p = trace_to_regwrtl(r.trace, unit_pair());
    CHECK(p == unit_refutation(true));
    CHECK(replay_learn(unit_pair(), regwrtl_to_schedule(p, unit_pair())).trace.recursive_calls() == 2);
    Formula empty(0, {Clause{}});
    auto e = dll_learn(empty, Assignment{}, h);
    Proof pe = trace_to_regwrtl(e.trace, empty);
    CHECK(pe.size() == 1);
    CHECK(replay_learn(empty, regwrtl_to_schedule(pe, empty)).trace.recursive_calls() == 0);
  }

  TEST_CASE("DLL-Learn proof and schedule are mutually inverse") {
    Rng rng(139);
    std::vector<Formula> corpus{generate_php(2), generate_fphp(2), generate_php(3)};
    for (int i = 0; i < 30; ++i) corpus.push_back(generate_random_kcnf(8, 40, 3, rng()));
    int k = 0;
    for (const Formula& f : corpus) {
      auto h = make_heuristic(k % 2 ? "random" : "smallest", static_cast<int>(k % 3));
      SolverOptions opt;
      opt.seed = rng();
      opt.non_greedy = k % 2 == 0;
      ++k;
      auto r = dll_learn(f, Assignment{}, *h, opt);
      if (r.outcome == Outcome::Sat) continue;
      Proof p = trace_to_regwrtl(r.trace, f);
      REQUIRE(check_proof(p, f, kRegWrtl, true).accepted());
      CHECK(p.size() == r.trace.recursive_calls() + 1);
      auto back = replay_learn(f, regwrtl_to_schedule(p, f));
      CHECK(back.trace.recursive_calls() == p.size() - 1);
      CHECK(trace_to_regwrtl(back.trace, f) == p);
    }
  }

  TEST_CASE("accepted refutations are sound") {
    Rng rng(149);
    for (int i = 0; i < 30; ++i) {
      Formula f = generate_random_kcnf(7, 35, 3, rng());
      SmallestIndexHeuristic h;
      auto r = dll_learn(f, Assignment{}, h);
      if (r.outcome == Outcome::Sat) continue;
      CHECK_FALSE(brute_force_sat(f));
    }
  }
}
