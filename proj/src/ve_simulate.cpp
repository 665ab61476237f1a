#include <algorithm>
#include <stdexcept>

#include "proof_dag.hpp"
#include "rtl/checker.hpp"
#include "rtl/generators.hpp"
#include "rtl/proof_builder.hpp"
#include "rtl/system.hpp"
#include "rtl/transforms.hpp"

namespace rtl {

namespace {

// Returns the handle of the resolvent node (the input-derived copy of the
// resolvent) through `resolvent`, and the chain root {q}.
ProofBuilder::Handle append_chain(ProofBuilder& b, ProofBuilder::Handle d, ProofBuilder::Handle e, Lit pivot,
                                  Var q, const Formula& f_ve, ProofBuilder::Handle* resolvent) {
  auto h = b.resolve(d, e, pivot);
  if (resolvent) *resolvent = h;
  const Clause c = b.clause(h);
  for (Lit l : c) {
    Clause side{pos(q), ~l};
    if (!f_ve.contains(side)) throw std::invalid_argument("formula lacks " + side.to_string());
    h = b.resolve_var(h, b.axiom(side), l.var());
  }
  return h;
}

Var recover_q(const Formula& f_ve) {
  if (f_ve.num_vars() < 3 || f_ve.num_vars() % 2 == 0)
    throw std::invalid_argument("formula does not look like a variable extension");
  return ve_q((f_ve.num_vars() - 1) / 2);
}

}  // namespace

Proof build_input_chain(const Clause& d, const Clause& e, Lit pivot, Var q, const Formula& f_ve) {
  ProofBuilder b;
  auto root = append_chain(b, b.axiom(d), b.axiom(e), pivot, q, f_ve, nullptr);
  return b.build(root, std::max(f_ve.num_vars(), q));
}

Proof build_input_chain(const Clause& d, const Clause& e, Var x, const Formula& f_ve) {
  return build_input_chain(d, e, pos(x), recover_q(f_ve), f_ve);
}

Proof ve_simulate(const Proof& p, const Formula& f) {
  Verdict v = check_proof(p, f, SystemDescriptor::rd(), false);
  if (!v.accepted()) throw std::invalid_argument("input is not a valid RD proof: " + format_violation(v.violations.front()));

  const Formula ve = variable_extension(f);
  detail::CanonicalDag g = detail::canonical_dag(p);
  if (g.nodes[g.root].axiom) return Proof(ve.num_vars(), {ProofNode::axiom(g.nodes[g.root].clause)});

  std::vector<int> order;  // derived clauses C_1..C_t, premises first
  for (int u = 0; u < static_cast<int>(g.nodes.size()); ++u)
    if (g.reachable[u] && !g.nodes[u].axiom) order.push_back(u);
  // Canonical dag indices are topological except after axiom upgrades, which
  // only remove edges, so index order is still premises first.
  const Var n = f.num_vars();
  const std::size_t t = order.size();
  if (n < 63 && t >= (std::size_t{1} << n))
    throw std::invalid_argument("too many derived clauses for the available p-variables");

  const Var q = ve_q(n);
  ProofBuilder b;
  std::vector<ProofBuilder::Handle> copy(g.nodes.size(), -1);
  auto premise = [&](int u) {
    return g.nodes[u].axiom ? b.axiom(g.nodes[u].clause) : b.lemma(copy[u]);
  };
  auto chain = [&](std::size_t i) {
    const detail::DagNode& d = g.nodes[order[i]];
    auto l = premise(d.left);
    auto r = premise(d.right);
    return append_chain(b, l, r, d.pivot, q, ve, &copy[order[i]]);
  };
  // Left-complete tree over leaves [lo, hi); level 0 uses p_1.
  auto middle = [&](auto&& self, std::size_t lo, std::size_t hi, Var level) -> ProofBuilder::Handle {
    if (hi - lo == 1) return chain(lo);
    std::size_t mid = lo + (hi - lo + 1) / 2;
    auto l = self(self, lo, mid, level + 1);
    auto r = self(self, mid, hi, level + 1);
    return b.w_resolve(l, r, pos(ve_p(n, level + 1)));
  };
  auto top = middle(middle, 0, t, 0);
  auto root = b.w_resolve(top, b.lemma(copy[order.back()]), pos(q));
  return b.build(root, ve.num_vars());
}

}  // namespace rtl
