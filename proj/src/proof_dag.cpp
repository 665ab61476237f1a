#include "proof_dag.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace rtl::detail {

int CanonicalDag::reachable_count() const {
  return static_cast<int>(std::count(reachable.begin(), reachable.end(), true));
}

int CanonicalDag::derived_count() const {
  int t = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (reachable[i] && !nodes[i].axiom) ++t;
  return t;
}

CanonicalDag canonical_dag(const Proof& p) {
  CanonicalDag g;
  std::unordered_map<Clause, int, ClauseHash> by_clause;
  g.class_of.assign(p.size(), -1);
  for (int id = 0; id < p.size(); ++id) {
    const ProofNode& n = p[id];
    if (n.rule == Rule::Lemma) {
      g.class_of[id] = g.class_of[n.ref];
      continue;
    }
    if (n.rule != Rule::Axiom && n.rule != Rule::Resolution)
      throw std::invalid_argument("expected a resolution-only proof");
    auto it = by_clause.find(n.clause);
    if (it != by_clause.end()) {
      DagNode& existing = g.nodes[it->second];
      if (n.rule == Rule::Axiom && !existing.axiom) existing = DagNode{true, n.clause};
      g.class_of[id] = it->second;
      continue;
    }
    DagNode d;
    d.clause = n.clause;
    if (n.rule == Rule::Resolution) {
      d.axiom = false;
      d.pivot = n.pivot;
      d.left = g.class_of[n.left];
      d.right = g.class_of[n.right];
    }
    g.class_of[id] = static_cast<int>(g.nodes.size());
    by_clause.emplace(n.clause, g.class_of[id]);
    g.nodes.push_back(std::move(d));
  }
  g.root = g.class_of[p.root()];

  // An axiom upgrade may reorder dependencies, so resolve reachability and
  // depth with an explicit post-order walk rather than by index.
  const std::size_t m = g.nodes.size();
  g.reachable.assign(m, false);
  g.depth.assign(m, 0);
  std::vector<char> state(m, 0);
  std::vector<int> stack{g.root};
  while (!stack.empty()) {
    int u = stack.back();
    const DagNode& d = g.nodes[u];
    if (state[u] == 0) {
      state[u] = 1;
      if (!d.axiom) {
        if (!state[d.left]) stack.push_back(d.left);
        if (!state[d.right]) stack.push_back(d.right);
      }
      continue;
    }
    stack.pop_back();
    if (state[u] == 2) continue;
    if (!d.axiom) {
      if (state[d.left] != 2 || state[d.right] != 2) throw std::logic_error("cycle in canonical dag");
      g.depth[u] = std::max(g.depth[d.left], g.depth[d.right]) + 1;
    }
    state[u] = 2;
    g.reachable[u] = true;
  }
  return g;
}

}  // namespace rtl::detail
