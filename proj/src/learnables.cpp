#include "learnables.hpp"

#include <algorithm>
#include <stdexcept>

#include "rtl/checker.hpp"

namespace rtl {
namespace detail {

namespace {

// True if `from` reaches `to` inside h.
bool reaches(const Subgraph& h, int from, int to) {
  const ConflictGraph& g = h.graph();
  std::vector<char> seen(g.size(), 0);
  std::vector<int> stack{to};
  seen[to] = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    if (u == from) return true;
    if (!h.internal(u)) continue;
    for (int p : g.preds(u))
      if (!seen[p]) {
        seen[p] = 1;
        stack.push_back(p);
      }
  }
  return false;
}

struct Emitter {
  ProofBuilder& b;
  const ConflictGraph& g;
  const std::function<ProofBuilder::Handle(const Clause&)>& leaf;

  ProofBuilder::Handle reason_leaf(int node) const { return leaf(g.reason(node)); }

  // Resolves away, deepest first, every literal whose negation is internal in
  // h, except `keep`.
  ProofBuilder::Handle saturate(ProofBuilder::Handle c, const Subgraph& h, std::optional<Lit> keep) const {
    const auto depth = h.depths();
    for (;;) {
      int best = -1;
      Lit best_lit{};
      for (Lit l : b.clause(c)) {
        if (keep && l == *keep) continue;
        auto node = g.index_of(~l);
        if (!node || !h.internal(*node)) continue;
        if (best < 0 || depth[*node] > depth[best] || (depth[*node] == depth[best] && l < best_lit)) {
          best = *node;
          best_lit = l;
        }
      }
      if (best < 0) return c;
      c = b.resolve_var(c, reason_leaf(best), best_lit.var());
    }
  }
};

void expect(const Clause& got, const Clause& want, const char* what) {
  if (got != want)
    throw std::logic_error(std::string(what) + ": derived " + got.to_string() + ", expected " + want.to_string());
}

}  // namespace

LearnablesFragment append_learnables_proof(ProofBuilder& b, const ConflictGraph& g, const Decomposition& d,
                                           const std::function<ProofBuilder::Handle(const Clause&)>& leaf) {
  auto verdict = validate_decomposition(g, d);
  if (!verdict.accepted()) throw std::invalid_argument("invalid decomposition: " + verdict.problems.front());
  Emitter em{b, g, leaf};
  LearnablesFragment out;
  auto record = [&](const Clause& c, ProofBuilder::Handle h) { out.learnables.emplace(c, h); };

  Subgraph h01(g, d.at(0, 1));
  const int px = g.conflict_pos(), nx = g.conflict_neg();
  int start;
  if (h01.internal(px) && h01.internal(nx))
    start = reaches(h01, px, nx) ? nx : px;
  else
    start = h01.internal(px) ? px : nx;
  ProofBuilder::Handle spine = em.reason_leaf(start);
  for (int j = 1; j <= d.m(0); ++j) {
    Subgraph h(g, d.at(0, j));
    spine = em.saturate(spine, h, std::nullopt);
    expect(b.clause(spine), h.conflict_clause(), "conflict clause");
    record(b.clause(spine), spine);
  }

  for (int i = 1; i < d.k(); ++i) {
    Subgraph hi(g, d.at(i, 0));
    Subgraph next(g, d.at(i, d.m(i)));
    std::vector<int> us;
    for (int u : hi.leaves())
      if (next.internal(u)) us.push_back(u);
    std::unordered_map<int, ProofBuilder::Handle> tree;
    for (int u : us) {
      ProofBuilder::Handle c = -1;
      for (int j = 1; j <= d.m(i); ++j) {
        Subgraph h(g, d.at(i, j));
        if (!h.internal(u)) continue;
        if (c < 0) c = em.reason_leaf(u);
        c = em.saturate(c, h, g.lit(u));
        if (auto il = h.induced_clause(g.lit(u))) {
          expect(b.clause(c), *il, "induced clause");
          record(*il, c);
        }
      }
      tree[u] = c;
    }
    const auto depth = next.depths();
    std::sort(us.begin(), us.end(), [&](int p, int q) {
      if (depth[p] != depth[q]) return depth[p] < depth[q];
      return g.lit(p) < g.lit(q);
    });
    for (int u : us) spine = b.resolve_var(spine, tree[u], g.lit(u).var());
    expect(b.clause(spine), next.conflict_clause(), "conflict clause");
  }
  out.root = spine;
  return out;
}

}  // namespace detail

Proof derive_learnables_proof(const ConflictGraph& g, const Decomposition& d) {
  ProofBuilder b;
  auto frag = detail::append_learnables_proof(b, g, d, [&](const Clause& c) { return b.axiom(c); });
  return b.build(frag.root, g.max_var());
}

InputProofDecomposition decomposition_from_input_proof(const Proof& t, const Assignment& a) {
  if (t.size() < 3 || !t[t.root()].is_binary())
    throw std::invalid_argument("input proof needs at least one resolution");
  // Walk the spine from the root; steps[0] is the bottom-most resolution.
  struct Step {
    Lit lit;     // literal of the pivot variable in the leaf premise D_i
    int leaf;    // D_i
    int other;   // C_i
  };
  std::vector<Step> steps;
  std::vector<char> pivot_used(t.num_vars() + 1, 0);
  int u = t.root();
  while (!t[u].is_leaf()) {
    const ProofNode& n = t[u];
    if (n.rule != Rule::Resolution) throw std::invalid_argument("input proof may only use resolution");
    if (resolve_on(t.clause(n.left), t.clause(n.right), n.pivot) != n.clause)
      throw std::invalid_argument("node " + std::to_string(u) + " is not a resolvent of its premises");
    Var v = n.pivot.var();
    if (pivot_used[v]) throw std::invalid_argument("input proof is not regular");
    pivot_used[v] = 1;
    bool left_leaf = t[n.left].is_leaf(), right_leaf = t[n.right].is_leaf();
    if (!left_leaf && !right_leaf) throw std::invalid_argument("node " + std::to_string(u) + " has no leaf premise");
    int leaf = right_leaf ? n.right : n.left;
    int other = leaf == n.right ? n.left : n.right;
    Lit in_leaf = leaf == n.left ? n.pivot : ~n.pivot;
    steps.push_back({in_leaf, leaf, other});
    u = other;
  }
  std::reverse(steps.begin(), steps.end());
  const Clause& c = t.final_clause();
  if (!restrict_clause(c, a).zero()) throw std::invalid_argument("assignment does not falsify the final clause");
  for (Lit l : c)
    if (pivot_used[l.var()]) throw std::invalid_argument("a variable of the final clause is a pivot");

  std::vector<ConflictGraph::NodeSpec> specs;
  std::unordered_map<std::uint32_t, bool> known;
  auto add_node = [&](Lit l, const Clause& reason) {
    ConflictGraph::NodeSpec s{l, true, {}};
    for (Lit m : reason)
      if (m != l) s.preds.push_back(~m);
    specs.push_back(std::move(s));
    known[l.code()] = true;
  };
  add_node(~steps[0].lit, t.clause(steps[0].other));
  for (const Step& s : steps) add_node(s.lit, t.clause(s.leaf));
  std::vector<ConflictGraph::NodeSpec> leaves;
  for (const auto& s : specs)
    for (Lit p : s.preds)
      if (!known.count(p.code())) {
        known[p.code()] = true;
        leaves.push_back({p, false, {}});
      }
  specs.insert(specs.end(), leaves.begin(), leaves.end());

  InputProofDecomposition out{ConflictGraph(std::move(specs)), {}};
  std::vector<std::vector<Lit>> chain{{}};
  std::vector<Lit> acc{~steps[0].lit};
  for (const Step& s : steps) {
    acc.push_back(s.lit);
    chain.push_back(acc);
    std::sort(chain.back().begin(), chain.back().end());
  }
  out.decomposition = Decomposition::series(std::move(chain));
  return out;
}

}  // namespace rtl
