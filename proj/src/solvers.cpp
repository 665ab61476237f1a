#include "rtl/solvers.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace rtl {

Decision SmallestIndexHeuristic::choose(const SearchState& s) {
  if (s.candidates.empty()) throw PolicyError("no branching candidates");
  return {s.candidates.front(), false};
}

Decision UnitPreferringHeuristic::choose(const SearchState& s) {
  for (const Clause& c : s.formula.clauses()) {
    auto r = restrict_clause(c, s.assignment);
    if (r.truth != Truth::Residual || r.residual.size() != 1) continue;
    Lit l = *r.residual.begin();
    if (std::binary_search(s.candidates.begin(), s.candidates.end(), l.var())) return {l.var(), !l.negated()};
  }
  return SmallestIndexHeuristic::choose(s);
}

Decision RandomHeuristic::choose(const SearchState& s) {
  if (s.candidates.empty()) throw PolicyError("no branching candidates");
  std::seed_seq seq = [&] {
    std::vector<std::uint32_t> words{static_cast<std::uint32_t>(s.seed), static_cast<std::uint32_t>(s.seed >> 32)};
    for (const Decision& d : s.path) words.push_back(d.var * 2 + (d.value ? 1u : 0u));
    return std::seed_seq(words.begin(), words.end());
  }();
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<std::size_t> pick(0, s.candidates.size() - 1);
  Var v = s.candidates[pick(rng)];
  return {v, (rng() & 1u) != 0};
}

std::unique_ptr<Heuristic> make_heuristic(std::string_view name, int budget) {
  if (name == "smallest") return std::make_unique<SmallestIndexHeuristic>(budget);
  if (name == "unit") return std::make_unique<UnitPreferringHeuristic>(budget);
  if (name == "random") return std::make_unique<RandomHeuristic>(budget);
  return nullptr;
}

std::string BuiltinStrategy::name() const {
  switch (kind_) {
    case LearnKind::None:
      return "none";
    case LearnKind::Trivial:
      return "trivial";
    case LearnKind::FirstUip:
      return "first-uip";
    case LearnKind::Decision:
      return "decision";
    case LearnKind::AllLearnable:
      return "all";
  }
  return "?";
}

ConflictAnalysis BuiltinStrategy::analyze(const SearchState&, ConflictGraph graph) {
  ConflictAnalysis a;
  switch (kind_) {
    case LearnKind::None:
      a.decomposition = trivial_decomposition(graph);
      break;
    case LearnKind::Trivial:
      a.decomposition = trivial_decomposition(graph);
      a.learned = {conflict_clause(graph)};
      break;
    case LearnKind::FirstUip:
      a.decomposition = first_uip_decomposition(graph);
      a.learned = {Subgraph(graph, a.decomposition.chain[1]).conflict_clause()};
      break;
    case LearnKind::Decision:
      a.decomposition = first_uip_decomposition(graph);
      a.learned = {conflict_clause(graph)};
      break;
    case LearnKind::AllLearnable:
      a.decomposition = latest_first_decomposition(graph);
      a.learned = learnable_clauses(graph, a.decomposition).clauses();
      break;
  }
  a.graph = std::move(graph);
  return a;
}

std::unique_ptr<LearningStrategy> make_strategy(std::string_view name) {
  if (name == "none") return std::make_unique<BuiltinStrategy>(LearnKind::None);
  if (name == "trivial") return std::make_unique<BuiltinStrategy>(LearnKind::Trivial);
  if (name == "first-uip") return std::make_unique<BuiltinStrategy>(LearnKind::FirstUip);
  if (name == "decision") return std::make_unique<BuiltinStrategy>(LearnKind::Decision);
  if (name == "all") return std::make_unique<BuiltinStrategy>(LearnKind::AllLearnable);
  return nullptr;
}

namespace {

struct Search {
  Algorithm algo;
  Formula f;
  std::unordered_set<Clause, ClauseHash> present;
  bool has_empty = false;
  Assignment alpha;
  std::vector<Decision> path;
  Heuristic& h;
  LearningStrategy* ls;
  SolverOptions opt;
  SearchTrace trace;
  std::optional<Assignment> model;

  Search(Algorithm a, const Formula& input, const Assignment& start, Heuristic& heur, LearningStrategy* strat,
         const SolverOptions& o)
      : algo(a), f(input), alpha(start), h(heur), ls(strat), opt(o) {
    for (const Clause& c : f.clauses()) {
      present.insert(c);
      has_empty |= c.empty();
    }
    trace.algorithm = a;
    trace.num_vars = f.num_vars();
    trace.num_clauses = f.size();
    trace.seed = o.seed;
    trace.heuristic = h.name();
    trace.strategy = ls ? ls->name() : "-";
    trace.non_greedy = o.non_greedy;
  }

  void learn(const Clause& c) {
    if (present.insert(c).second) {
      f.add(c);
      has_empty |= c.empty();
    }
  }

  std::vector<Var> unassigned() const {
    std::vector<Var> out;
    for (Var v = 1; v <= f.num_vars(); ++v)
      if (!alpha.assigned(v)) out.push_back(v);
    return out;
  }

  SearchState state(const std::vector<Var>& cands, int past) const {
    return SearchState{f, alpha, path, cands, past, opt.seed};
  }

  int new_node(TraceNode::Kind k) {
    trace.nodes.push_back({});
    trace.nodes.back().kind = k;
    return static_cast<int>(trace.nodes.size()) - 1;
  }

  void sat_leaf() {
    int id = new_node(TraceNode::Kind::Sat);
    trace.nodes[id].model.assign(alpha.trail().begin(), alpha.trail().end());
    model = alpha;
  }

  std::optional<Clause> first_falsified() const {
    for (const Clause& c : f.clauses())
      if (restrict_clause(c, alpha).zero()) return c;
    return std::nullopt;
  }

  // Runs the branch on d below the current node; returns the per-child
  // results via `run` and records the decision.
  template <class Run>
  bool branch(int id, const std::vector<Var>& cands, Decision d, Run run) {
    if (!std::binary_search(cands.begin(), cands.end(), d.var))
      throw PolicyError("variable " + std::to_string(d.var) + " is not a branching candidate");
    trace.nodes[id].decision = d;
    for (bool second : {false, true}) {
      bool value = second ? !d.value : d.value;
      alpha.assign(d.var, value);
      path.push_back({d.var, value});
      int child = static_cast<int>(trace.nodes.size());
      trace.nodes[id].children.push_back(child);
      bool sat = run(second);
      path.pop_back();
      alpha.pop();
      if (sat) return true;
    }
    return false;
  }

  bool dll() {
    int id = new_node(TraceNode::Kind::Branch);
    auto r = restrict_formula(f, alpha);
    if (r.zero()) {
      trace.nodes[id].kind = TraceNode::Kind::Falsified;
      trace.nodes[id].clause = first_falsified();
      return false;
    }
    if (r.one()) {
      trace.nodes.pop_back();
      sat_leaf();
      return true;
    }
    auto cands = r.residual.variables();
    Decision d = h.choose(state(cands, 0));
    return branch(id, cands, d, [&](bool) { return dll(); });
  }

  void check_analysis(const ConflictAnalysis& a) const {
    const ConflictGraph& g = a.graph;
    for (int i = 0; i < g.size(); ++i) {
      if (g.is_leaf(i)) {
        if (!alpha.is_true(g.lit(i)))
          throw PolicyError("conflict graph leaf " + g.lit(i).to_string() + " is not true under the assignment");
      } else if (!present.count(g.reason(i))) {
        throw PolicyError("reason " + g.reason(i).to_string() + " is not in the formula");
      }
    }
    auto v = validate_decomposition(g, a.decomposition);
    if (!v.accepted()) throw PolicyError("invalid decomposition: " + v.problems.front());
    auto learnable = learnable_clauses(g, a.decomposition);
    for (const Clause& c : a.learned)
      if (!learnable.contains(c)) throw PolicyError("clause " + c.to_string() + " is not learnable");
  }

  bool dll_l_up(int past) {
    int id = new_node(TraceNode::Kind::Branch);
    auto r = restrict_formula(f, alpha);
    if (r.one()) {
      trace.nodes.pop_back();
      sat_leaf();
      return true;
    }
    std::optional<ConflictGraph> g;
    if (!has_empty) g = find_conflict_graph(f, alpha, opt.propagation);
    bool conflict = has_empty || g.has_value();
    std::vector<Var> cands;
    if (opt.non_greedy)
      cands = unassigned();
    else if (!conflict)
      cands = r.residual.variables();
    if (conflict) {
      if (!opt.non_greedy || cands.empty() || !h.continue_past_conflict(state(cands, past))) {
        if (has_empty) {
          trace.nodes[id].kind = TraceNode::Kind::Empty;
          return false;
        }
        ConflictAnalysis a = ls->analyze(state(cands, past), std::move(*g));
        check_analysis(a);
        for (const Clause& c : a.learned) learn(c);
        trace.nodes[id].kind = TraceNode::Kind::Conflict;
        trace.nodes[id].analysis = std::move(a);
        return false;
      }
      ++past;
    }
    Decision d = h.choose(state(cands, past));
    return branch(id, cands, d, [&](bool) { return dll_l_up(past); });
  }

  // DLL-Learn. Returns the tagged clause through `tagged` when UNSAT.
  bool dll_learn(int past, Clause& tagged) {
    int id = new_node(TraceNode::Kind::Branch);
    auto r = restrict_formula(f, alpha);
    if (r.one()) {
      trace.nodes.pop_back();
      sat_leaf();
      return true;
    }
    auto cands = unassigned();
    if (r.zero()) {
      if (!opt.non_greedy || cands.empty() || !h.continue_past_conflict(state(cands, past))) {
        auto pick = h.choose_tag(state(cands, past));
        if (!pick) pick = first_falsified();
        if (!present.count(*pick) || !restrict_clause(*pick, alpha).zero())
          throw PolicyError("tagged clause " + pick->to_string() + " is not a falsified clause of F");
        trace.nodes[id].kind = TraceNode::Kind::Falsified;
        trace.nodes[id].clause = *pick;
        tagged = *pick;
        return false;
      }
      ++past;
    }
    Decision d = h.choose(state(cands, past));
    Clause c[2];
    if (branch(id, cands, d, [&](bool second) { return dll_learn(past, c[second ? 1 : 0]); })) return true;
    Clause learned = w_resolve_on(c[0], c[1], lit_of(d.var, d.value ? 1 : 0));
    learn(learned);
    trace.nodes[id].clause = learned;
    tagged = learned;
    return false;
  }

  SolveResult finish(bool sat) {
    SolveResult out;
    out.outcome = sat ? Outcome::Sat : Outcome::Unsat;
    if (model) out.model = *model;
    out.formula = std::move(f);
    out.trace = std::move(trace);
    return out;
  }
};

}  // namespace

SolveResult dll(const Formula& f, const Assignment& a, Heuristic& h, const SolverOptions& opt) {
  Search s(Algorithm::Dll, f, a, h, nullptr, opt);
  bool sat = s.dll();
  return s.finish(sat);
}

SolveResult dll_l_up(const Formula& f, const Assignment& a, Heuristic& h, LearningStrategy& ls,
                     const SolverOptions& opt) {
  Search s(Algorithm::DllLUp, f, a, h, &ls, opt);
  bool sat = s.dll_l_up(0);
  return s.finish(sat);
}

SolveResult dll_learn(const Formula& f, const Assignment& a, Heuristic& h, const SolverOptions& opt) {
  Search s(Algorithm::DllLearn, f, a, h, nullptr, opt);
  Clause tagged;
  bool sat = s.dll_learn(0, tagged);
  return s.finish(sat);
}

}  // namespace rtl
