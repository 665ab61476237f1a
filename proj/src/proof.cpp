#include "rtl/proof.hpp"

#include <algorithm>

namespace rtl {

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Axiom: return "axiom";
    case Rule::Lemma: return "lemma";
    case Rule::Resolution: return "resolution";
    case Rule::WResolution: return "w-resolution";
    case Rule::Weakening: return "weakening";
  }
  return "?";
}

ProofNode ProofNode::axiom(Clause c) {
  ProofNode n;
  n.rule = Rule::Axiom;
  n.clause = std::move(c);
  return n;
}

ProofNode ProofNode::lemma(int ref, Clause c) {
  ProofNode n;
  n.rule = Rule::Lemma;
  n.ref = ref;
  n.clause = std::move(c);
  return n;
}

ProofNode ProofNode::resolution(Lit pivot, int left, int right, Clause c) {
  ProofNode n;
  n.rule = Rule::Resolution;
  n.pivot = pivot;
  n.left = left;
  n.right = right;
  n.clause = std::move(c);
  return n;
}

ProofNode ProofNode::w_resolution(Lit pivot, int left, int right, Clause c) {
  ProofNode n = resolution(pivot, left, right, std::move(c));
  n.rule = Rule::WResolution;
  return n;
}

ProofNode ProofNode::weakening(int child, Clause c) {
  ProofNode n;
  n.rule = Rule::Weakening;
  n.left = child;
  n.clause = std::move(c);
  return n;
}

Proof::Proof(Var num_vars, std::vector<ProofNode> nodes) : num_vars_(num_vars), nodes_(std::move(nodes)) {
  const int s = size();
  if (s == 0) throw ProofStructureError(0, "proof has no nodes");
  begin_.assign(s, 0);
  parent_.assign(s, -1);
  for (int id = 0; id < s; ++id) {
    const ProofNode& n = nodes_[id];
    if (n.clause.max_var() > num_vars_)
      throw ProofStructureError(id, "clause mentions a variable above " + std::to_string(num_vars_));
    switch (n.rule) {
      case Rule::Axiom:
        begin_[id] = id;
        break;
      case Rule::Lemma:
        if (n.ref < 0 || n.ref >= id)
          throw ProofStructureError(id, "lemma reference " + std::to_string(n.ref) + " is not an earlier node");
        begin_[id] = id;
        break;
      case Rule::Weakening:
        if (n.left != id - 1)
          throw ProofStructureError(id, "weakening premise must be the preceding node");
        begin_[id] = begin_[n.left];
        parent_[n.left] = id;
        break;
      case Rule::Resolution:
      case Rule::WResolution: {
        if (n.pivot.var() == 0) throw ProofStructureError(id, "missing pivot");
        if (n.right != id - 1)
          throw ProofStructureError(id, "right premise must be the preceding node");
        if (n.left < 0 || n.left != begin_[n.right] - 1)
          throw ProofStructureError(id, "left premise must end where the right subtree begins");
        begin_[id] = begin_[n.left];
        parent_[n.left] = id;
        parent_[n.right] = id;
        break;
      }
    }
  }
  if (begin_[s - 1] != 0) throw ProofStructureError(s - 1, "nodes outside the root's subtree");
}

bool Proof::uses(Rule r) const {
  return std::any_of(nodes_.begin(), nodes_.end(), [r](const ProofNode& n) { return n.rule == r; });
}

Clause resolve_on(const Clause& left, const Clause& right, Lit pivot) {
  if (!left.contains(pivot))
    throw PivotMissing("pivot " + pivot.to_string() + " not in " + left.to_string());
  if (!right.contains(~pivot))
    throw PivotMissing("pivot " + (~pivot).to_string() + " not in " + right.to_string());
  return w_resolve_on(left, right, pivot);
}

Clause w_resolve_on(const Clause& left, const Clause& right, Lit pivot) {
  return clause_union(left.without(pivot), right.without(~pivot));
}

Clause resolve(const Clause& c0, const Clause& c1, Var x) { return resolve_on(c0, c1, pos(x)); }

Clause w_resolve(const Clause& c0, const Clause& c1, Var x) { return w_resolve_on(c0, c1, pos(x)); }

std::vector<bool> input_derived_mask(const Proof& p) {
  std::vector<bool> in(p.size(), false);
  for (int id = 0; id < p.size(); ++id) {
    const ProofNode& n = p[id];
    if (n.is_leaf()) {
      in[id] = true;
    } else if (n.rule == Rule::Resolution) {
      in[id] = in[n.left] && in[n.right] && (p[n.left].is_leaf() || p[n.right].is_leaf());
    }
  }
  return in;
}

std::vector<int> input_derived_nodes(const Proof& p) {
  auto mask = input_derived_mask(p);
  std::vector<int> ids;
  for (int id = 0; id < p.size(); ++id)
    if (mask[id]) ids.push_back(id);
  return ids;
}

namespace {
std::vector<int> heights(const Proof& p) {
  std::vector<int> h(p.size(), 0);
  for (int id = 0; id < p.size(); ++id) {
    const ProofNode& n = p[id];
    if (n.rule == Rule::Weakening) h[id] = h[n.left] + 1;
    if (n.is_binary()) h[id] = std::max(h[n.left], h[n.right]) + 1;
  }
  return h;
}
}  // namespace

int proof_depth(const Proof& p) { return heights(p)[p.root()]; }

int node_depth(const Proof& p, int id) { return heights(p)[id]; }

std::size_t clause_width(const Proof& p) {
  std::size_t w = 0;
  for (const ProofNode& n : p.nodes()) w = std::max(w, n.clause.size());
  return w;
}

std::vector<int> lemma_targets(const Proof& p) {
  std::vector<int> t;
  for (const ProofNode& n : p.nodes())
    if (n.rule == Rule::Lemma) t.push_back(n.ref);
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

}  // namespace rtl
