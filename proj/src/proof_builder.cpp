#include "rtl/proof_builder.hpp"

#include <stdexcept>
#include <utility>

namespace rtl {

ProofBuilder::Handle ProofBuilder::push(Item it) {
  items_.push_back(std::move(it));
  return count() - 1;
}

ProofBuilder::Handle ProofBuilder::axiom(Clause c) { return push({Rule::Axiom, std::move(c)}); }

ProofBuilder::Handle ProofBuilder::lemma(Handle target) {
  return push({Rule::Lemma, clause(target), Lit{}, target});
}

ProofBuilder::Handle ProofBuilder::resolve(Handle left, Handle right, Lit pivot) {
  return push({Rule::Resolution, resolve_on(clause(left), clause(right), pivot), pivot, left, right});
}

ProofBuilder::Handle ProofBuilder::resolve_var(Handle a, Handle b, Var x) {
  if (clause(a).contains(pos(x))) return resolve(a, b, pos(x));
  return resolve(b, a, pos(x));
}

ProofBuilder::Handle ProofBuilder::w_resolve(Handle left, Handle right, Lit pivot) {
  return push({Rule::WResolution, w_resolve_on(clause(left), clause(right), pivot), pivot, left, right});
}

ProofBuilder::Handle ProofBuilder::weaken(Handle child, Clause c) {
  if (!clause(child).subset_of(c)) throw std::invalid_argument("weakening must produce a superset");
  return push({Rule::Weakening, std::move(c), Lit{}, child});
}

Proof ProofBuilder::build(Handle root, Var num_vars, std::vector<int>* ids) const {
  std::vector<int> id(items_.size(), -1);
  std::vector<char> entered(items_.size(), 0);
  std::vector<ProofNode> nodes;
  // (handle, expanded?)
  std::vector<std::pair<Handle, bool>> stack{{root, false}};
  while (!stack.empty()) {
    auto [h, expanded] = stack.back();
    stack.pop_back();
    const Item& it = items_[static_cast<std::size_t>(h)];
    if (!expanded) {
      if (entered[h]) throw std::logic_error("proof builder node used twice");
      entered[h] = 1;
      stack.push_back({h, true});
      if (it.rule == Rule::Resolution || it.rule == Rule::WResolution) {
        stack.push_back({it.b, false});
        stack.push_back({it.a, false});
      } else if (it.rule == Rule::Weakening) {
        stack.push_back({it.a, false});
      }
      continue;
    }
    int me = static_cast<int>(nodes.size());
    switch (it.rule) {
      case Rule::Axiom:
        nodes.push_back(ProofNode::axiom(it.clause));
        break;
      case Rule::Lemma:
        if (id[it.a] < 0) throw std::logic_error("lemma target not emitted before the lemma");
        nodes.push_back(ProofNode::lemma(id[it.a], it.clause));
        break;
      case Rule::Resolution:
        nodes.push_back(ProofNode::resolution(it.pivot, id[it.a], id[it.b], it.clause));
        break;
      case Rule::WResolution:
        nodes.push_back(ProofNode::w_resolution(it.pivot, id[it.a], id[it.b], it.clause));
        break;
      case Rule::Weakening:
        nodes.push_back(ProofNode::weakening(id[it.a], it.clause));
        break;
    }
    id[h] = me;
  }
  if (ids) *ids = std::move(id);
  return Proof(num_vars, std::move(nodes));
}

}  // namespace rtl
