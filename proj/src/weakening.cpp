#include <stdexcept>
#include <unordered_map>

#include "rtl/checker.hpp"
#include "rtl/proof_builder.hpp"
#include "rtl/system.hpp"
#include "rtl/transforms.hpp"

namespace rtl {

namespace {

struct Reduced {
  bool axiom = true;
  Clause clause;
  Lit pivot{};
  int left = -1;
  int right = -1;
};

}  // namespace

Proof eliminate_weakening(const Proof& p, const Formula& f) {
  Verdict v = check_proof(p, f, SystemDescriptor::any(), false);
  if (!v.accepted()) throw std::invalid_argument("invalid input proof: " + format_violation(v.violations.front()));

  std::vector<Reduced> red;
  std::vector<int> rep(p.size(), -1);
  for (int id = 0; id < p.size(); ++id) {
    const ProofNode& n = p[id];
    switch (n.rule) {
      case Rule::Axiom:
        rep[id] = static_cast<int>(red.size());
        red.push_back({true, n.clause});
        break;
      case Rule::Lemma:
        rep[id] = rep[n.ref];
        break;
      case Rule::Weakening:
        rep[id] = rep[n.left];
        break;
      case Rule::Resolution:
      case Rule::WResolution: {
        int j = rep[n.left], k = rep[n.right];
        bool in_left = red[j].clause.contains(n.pivot);
        bool in_right = red[k].clause.contains(~n.pivot);
        if (in_left && in_right) {
          rep[id] = static_cast<int>(red.size());
          red.push_back({false, resolve_on(red[j].clause, red[k].clause, n.pivot), n.pivot, j, k});
        } else {
          rep[id] = in_left ? k : j;
        }
        break;
      }
    }
  }

  // Re-encode as a tree. A reduced node reached again becomes a lemma; for
  // irregular dags, later derivations of an already derived clause collapse
  // into lemmas as well. Collapsing is skipped on regular inputs because it
  // can join paths that were disjoint.
  const bool collapse = p.has_lemmas() && !check_dag_regularity(p).empty();
  ProofBuilder b;
  std::vector<int> handle(red.size(), -1);
  std::unordered_map<Clause, int, ClauseHash> derived;
  auto emit = [&](auto&& self, int u) -> ProofBuilder::Handle {
    if (handle[u] >= 0) return b.lemma(handle[u]);
    const Reduced& r = red[u];
    if (r.axiom) return handle[u] = b.axiom(r.clause);
    if (collapse) {
      auto it = derived.find(r.clause);
      if (it != derived.end()) return b.lemma(it->second);
    }
    auto l = self(self, r.left);
    auto rr = self(self, r.right);
    handle[u] = b.resolve(l, rr, r.pivot);
    derived.emplace(r.clause, handle[u]);
    return handle[u];
  };
  auto root = emit(emit, rep[p.root()]);
  return b.build(root, p.num_vars());
}

}  // namespace rtl
