#include <stdexcept>

#include "proof_dag.hpp"
#include "rtl/checker.hpp"
#include "rtl/proof_builder.hpp"
#include "rtl/system.hpp"
#include "rtl/transforms.hpp"

namespace rtl {

DagStats dag_stats(const Proof& p) {
  detail::CanonicalDag g = detail::canonical_dag(p);
  return {g.reachable_count(), g.depth[g.root], g.derived_count()};
}

Proof unfold_to_rti(const Proof& p, const Formula& f) {
  Verdict v = check_proof(p, f, SystemDescriptor::rd(), false);
  if (!v.accepted()) throw std::invalid_argument("input is not a valid RD proof: " + format_violation(v.violations.front()));

  detail::CanonicalDag g = detail::canonical_dag(p);
  std::vector<int> seen(g.nodes.size(), 0);
  std::vector<ProofBuilder::Handle> input_copy(g.nodes.size(), -1);
  ProofBuilder b;
  // Occurrences of one clause never nest, so counting on entry matches the
  // post-order count.
  auto emit = [&](auto&& self, int u) -> ProofBuilder::Handle {
    const detail::DagNode& d = g.nodes[u];
    if (d.axiom) return b.axiom(d.clause);
    int j = ++seen[u];
    if (j > g.depth[u]) return b.lemma(input_copy[u]);
    auto l = self(self, d.left);
    auto r = self(self, d.right);
    auto h = b.resolve(l, r, d.pivot);
    if (j == g.depth[u]) input_copy[u] = h;
    return h;
  };
  auto root = emit(emit, g.root);
  return b.build(root, p.num_vars());
}

}  // namespace rtl
