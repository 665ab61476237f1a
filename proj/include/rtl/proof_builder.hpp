#pragma once

#include <vector>

#include "rtl/proof.hpp"

namespace rtl {

// Scratch space for constructing proofs bottom-up. Nodes are created in any
// order and linearized into post-order by build(); unreachable nodes are
// dropped. A lemma target must come before the lemma in that post-order.
class ProofBuilder {
 public:
  using Handle = int;

  Handle axiom(Clause c);
  Handle lemma(Handle target);
  Handle resolve(Handle left, Handle right, Lit pivot);
  // Resolution on x with whichever premise holds x on the left.
  Handle resolve_var(Handle a, Handle b, Var x);
  Handle w_resolve(Handle left, Handle right, Lit pivot);
  Handle weaken(Handle child, Clause c);

  const Clause& clause(Handle h) const { return items_[static_cast<std::size_t>(h)].clause; }
  Rule rule(Handle h) const { return items_[static_cast<std::size_t>(h)].rule; }
  int count() const { return static_cast<int>(items_.size()); }

  // Throws std::logic_error if a handle is used twice as a child or a lemma
  // points forward. `ids`, if given, receives the node id per handle (-1 when
  // unreachable).
  Proof build(Handle root, Var num_vars, std::vector<int>* ids = nullptr) const;

 private:
  struct Item {
    Rule rule = Rule::Axiom;
    Clause clause;
    Lit pivot{};
    Handle a = -1;
    Handle b = -1;
  };
  Handle push(Item it);
  std::vector<Item> items_;
};

}  // namespace rtl
