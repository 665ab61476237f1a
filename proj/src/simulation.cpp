#include "rtl/simulation.hpp"

#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "learnables.hpp"
#include "rtl/checker.hpp"
#include "rtl/proof_builder.hpp"

namespace rtl {

const Schedule::Node* Schedule::at(std::span<const Decision> path) const {
  if (nodes.empty()) return nullptr;
  int u = 0;
  for (const Decision& d : path) {
    const Node& n = nodes[static_cast<std::size_t>(u)];
    if (!n.branch || n.branch->var != d.var) return nullptr;
    u = n.child[d.value == n.branch->value ? 0 : 1];
    if (u < 0) return nullptr;
  }
  return &nodes[static_cast<std::size_t>(u)];
}

int Schedule::branch_count() const {
  int c = 0;
  for (const Node& n : nodes) c += n.branch.has_value();
  return c;
}

const Schedule::Node* ScheduledHeuristic::node(const SearchState& s) const {
  const Node* n = s_->at(s.path);
  if (!n) throw PolicyError("search left the schedule");
  return n;
}

Decision ScheduledHeuristic::choose(const SearchState& s) {
  const Node* n = node(s);
  if (!n->branch) throw PolicyError("schedule stops where the search must branch");
  return *n->branch;
}

bool ScheduledHeuristic::continue_past_conflict(const SearchState& s) { return node(s)->branch.has_value(); }

std::optional<Clause> ScheduledHeuristic::choose_tag(const SearchState& s) {
  const Node* n = node(s);
  if (!n->tag) throw PolicyError("schedule has no clause to tag here");
  return n->tag;
}

ConflictAnalysis ScheduledStrategy::analyze(const SearchState& s, ConflictGraph) {
  const Schedule::Node* n = s_->at(s.path);
  if (!n || !n->analysis) throw PolicyError("schedule has no conflict analysis here");
  return *n->analysis;
}

namespace {

using Handle = ProofBuilder::Handle;

Lit first_falsified_lit(const Decision& d) { return lit_of(d.var, d.value ? 1 : 0); }

const TraceNode& binary_branch(const SearchTrace& t, int id) {
  const TraceNode& n = t.nodes[static_cast<std::size_t>(id)];
  if (n.kind == TraceNode::Kind::Sat) throw std::invalid_argument("trace is satisfiable");
  if (n.kind == TraceNode::Kind::Branch && n.children.size() != 2)
    throw std::invalid_argument("branch without two unsatisfiable children");
  return n;
}

std::unordered_set<Clause, ClauseHash> clause_set(const Formula& f) { return {f.clauses().begin(), f.clauses().end()}; }

void require(const Verdict& v, const char* what) {
  if (!v.accepted())
    throw std::invalid_argument(std::string(what) + ": " + format_violation(v.violations.front()));
}

// The subtree at u as a standalone proof; lemma leaves become axioms.
Proof subproof(const Proof& p, int u) {
  const int begin = p.subtree_begin(u);
  std::vector<ProofNode> nodes;
  for (int i = begin; i <= u; ++i) {
    ProofNode n = p[i];
    if (n.rule == Rule::Lemma) {
      n = ProofNode::axiom(n.clause);
    } else if (n.is_binary() || n.rule == Rule::Weakening) {
      n.left -= begin;
      if (n.is_binary()) n.right -= begin;
    }
    nodes.push_back(std::move(n));
  }
  return Proof(p.num_vars(), std::move(nodes));
}

}  // namespace

Proof trace_to_rt(const SearchTrace& t, const Formula& f) {
  if (t.algorithm != Algorithm::Dll) throw std::invalid_argument("not a DLL trace");
  ProofBuilder b;
  std::function<Handle(int)> rec = [&](int id) -> Handle {
    const TraceNode& n = binary_branch(t, id);
    if (n.kind == TraceNode::Kind::Falsified) return b.axiom(*n.clause);
    if (n.kind != TraceNode::Kind::Branch) throw std::invalid_argument("unexpected node in a DLL trace");
    Handle h0 = rec(n.children[0]), h1 = rec(n.children[1]);
    Lit pivot = first_falsified_lit(n.decision);
    if (!b.clause(h0).contains(pivot)) return h0;
    if (!b.clause(h1).contains(~pivot)) return h1;
    return b.resolve(h0, h1, pivot);
  };
  return b.build(rec(0), f.num_vars());
}

Schedule rt_to_schedule(const Proof& p, const Formula& f, const Assignment& a) {
  require(check_proof(p, f, SystemDescriptor::rt().with_regular(), false), "not a regular resolution tree");
  if (!restrict_clause(p.final_clause(), a).zero())
    throw std::invalid_argument("assignment does not falsify the final clause");
  for (const ProofNode& n : p.nodes())
    if (n.is_binary() && a.assigned(n.pivot.var()))
      throw std::invalid_argument("pivot " + std::to_string(n.pivot.var()) + " is assigned");
  Schedule s;
  std::function<int(int)> rec = [&](int u) -> int {
    int me = static_cast<int>(s.nodes.size());
    s.nodes.emplace_back();
    if (p[u].is_binary()) {
      s.nodes[me].branch = Decision{p[u].pivot.var(), p[u].pivot.negated()};
      int l = rec(p[u].left);
      int r = rec(p[u].right);
      s.nodes[me].child[0] = l;
      s.nodes[me].child[1] = r;
    }
    return me;
  };
  rec(p.root());
  return s;
}

Proof trace_to_regwrti(const SearchTrace& t, const Formula& f) {
  if (t.algorithm != Algorithm::DllLUp) throw std::invalid_argument("not a DLL-L-UP trace");
  ProofBuilder b;
  const auto axioms = clause_set(f);
  std::unordered_map<Clause, Handle, ClauseHash> learned_at;
  auto leaf = [&](const Clause& c) -> Handle {
    if (axioms.count(c)) return b.axiom(c);
    auto it = learned_at.find(c);
    if (it == learned_at.end()) throw std::invalid_argument("reason " + c.to_string() + " was never learned");
    return b.lemma(it->second);
  };
  std::function<Handle(int)> rec = [&](int id) -> Handle {
    const TraceNode& n = binary_branch(t, id);
    switch (n.kind) {
      case TraceNode::Kind::Empty:
        return b.axiom(Clause{});
      case TraceNode::Kind::Conflict: {
        const ConflictAnalysis& a = *n.analysis;
        auto frag = detail::append_learnables_proof(b, a.graph, a.decomposition, leaf);
        for (const Clause& c : a.learned)
          if (!axioms.count(c) && !learned_at.count(c)) learned_at.emplace(c, frag.learnables.at(c));
        return frag.root;
      }
      case TraceNode::Kind::Branch: {
        Handle h0 = rec(n.children[0]);
        Handle h1 = rec(n.children[1]);
        return b.w_resolve(h0, h1, first_falsified_lit(n.decision));
      }
      default:
        throw std::invalid_argument("unexpected node in a DLL-L-UP trace");
    }
  };
  return b.build(rec(0), f.num_vars());
}

Schedule regwrti_to_schedule(const Proof& p, const Formula& f) {
  require(check_proof(p, f, SystemDescriptor::wrti().with_regular(), true), "not a regular WRTI refutation");
  const auto input = input_derived_mask(p);
  Schedule s;
  Assignment alpha;
  std::function<int(int)> rec = [&](int u) -> int {
    int me = static_cast<int>(s.nodes.size());
    s.nodes.emplace_back();
    const ProofNode& n = p[u];
    if (n.is_leaf()) {
      if (!n.clause.empty()) {
        auto g = conflict_graph_from_falsified(n.clause, alpha);
        auto d = trivial_decomposition(g);
        s.nodes[me].analysis = ConflictAnalysis{std::move(g), std::move(d), {}};
      }
      return me;
    }
    if (input[static_cast<std::size_t>(u)]) {
      try {
        auto d = decomposition_from_input_proof(subproof(p, u), alpha);
        auto learned = learnable_clauses(d.graph, d.decomposition).clauses();
        s.nodes[me].analysis = ConflictAnalysis{std::move(d.graph), std::move(d.decomposition), std::move(learned)};
        return me;
      } catch (const std::invalid_argument&) {
        // Not learnable in one conflict; branch on its pivot instead.
      }
    }
    Decision d{n.pivot.var(), n.pivot.negated()};
    s.nodes[me].branch = d;
    for (int side = 0; side < 2; ++side) {
      alpha.assign(d.var, side == 0 ? d.value : !d.value);
      int c = rec(side == 0 ? n.left : n.right);
      s.nodes[me].child[side] = c;
      alpha.pop();
    }
    return me;
  };
  rec(p.root());
  return s;
}

Proof trace_to_regwrtl(const SearchTrace& t, const Formula& f) {
  if (t.algorithm != Algorithm::DllLearn) throw std::invalid_argument("not a DLL-Learn trace");
  ProofBuilder b;
  const auto axioms = clause_set(f);
  std::unordered_map<Clause, Handle, ClauseHash> first;
  std::function<Handle(int)> rec = [&](int id) -> Handle {
    const TraceNode& n = binary_branch(t, id);
    if (n.kind == TraceNode::Kind::Falsified) {
      const Clause& c = *n.clause;
      if (axioms.count(c)) return b.axiom(c);
      auto it = first.find(c);
      if (it == first.end()) throw std::invalid_argument("tagged clause " + c.to_string() + " was never learned");
      return b.lemma(it->second);
    }
    if (n.kind != TraceNode::Kind::Branch) throw std::invalid_argument("unexpected node in a DLL-Learn trace");
    Handle h0 = rec(n.children[0]);
    Handle h1 = rec(n.children[1]);
    Handle h = b.w_resolve(h0, h1, first_falsified_lit(n.decision));
    if (n.clause && b.clause(h) != *n.clause)
      throw std::invalid_argument("learned clause does not match the w-resolvent");
    first.emplace(b.clause(h), h);
    return h;
  };
  return b.build(rec(0), f.num_vars());
}

Schedule regwrtl_to_schedule(const Proof& p, const Formula& f) {
  require(check_proof(p, f, SystemDescriptor::wrtl().with_regular(), true), "not a regular WRTL refutation");
  Schedule s;
  std::function<int(int)> rec = [&](int u) -> int {
    int me = static_cast<int>(s.nodes.size());
    s.nodes.emplace_back();
    const ProofNode& n = p[u];
    if (n.is_leaf()) {
      s.nodes[me].tag = n.clause;
      return me;
    }
    s.nodes[me].branch = Decision{n.pivot.var(), n.pivot.negated()};
    int l = rec(n.left);
    int r = rec(n.right);
    s.nodes[me].child[0] = l;
    s.nodes[me].child[1] = r;
    return me;
  };
  rec(p.root());
  return s;
}

}  // namespace rtl
