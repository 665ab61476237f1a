#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rtl/cnf.hpp"

namespace rtl {

enum class Rule : std::uint8_t { Axiom, Lemma, Resolution, WResolution, Weakening };

const char* rule_name(Rule r);

// One node of a proof tree. Node ids are positions in the post-order.
//
// For Resolution and WResolution `pivot` is the literal as it occurs (or, for
// w-resolution, would occur) in the left premise; its negation is removed from
// the right premise. Emitters use positive pivots unless child order is forced.
struct ProofNode {
  Rule rule = Rule::Axiom;
  Clause clause;
  Lit pivot{};
  int left = -1;   // Resolution/WResolution left premise, Weakening premise
  int right = -1;  // Resolution/WResolution right premise
  int ref = -1;    // Lemma target

  static ProofNode axiom(Clause c);
  static ProofNode lemma(int ref, Clause c);
  static ProofNode resolution(Lit pivot, int left, int right, Clause c);
  static ProofNode w_resolution(Lit pivot, int left, int right, Clause c);
  static ProofNode weakening(int child, Clause c);

  bool is_leaf() const { return rule == Rule::Axiom || rule == Rule::Lemma; }
  bool is_binary() const { return rule == Rule::Resolution || rule == Rule::WResolution; }

  bool operator==(const ProofNode&) const = default;
};

class ProofStructureError : public std::invalid_argument {
 public:
  ProofStructureError(int node, const std::string& what)
      : std::invalid_argument("node " + std::to_string(node) + ": " + what), node_(node) {}
  int node() const { return node_; }

 private:
  int node_;
};

// A proof tree stored in post-order. Dags are encoded with lemma leaves that
// point back to an earlier node. The constructor enforces the shape
// invariants (ids, post-order layout, single root); clause contents are left to
// the checker.
class Proof {
 public:
  Proof() = default;
  Proof(Var num_vars, std::vector<ProofNode> nodes);

  Var num_vars() const { return num_vars_; }
  const std::vector<ProofNode>& nodes() const { return nodes_; }
  const ProofNode& operator[](int id) const { return nodes_[static_cast<std::size_t>(id)]; }
  int size() const { return static_cast<int>(nodes_.size()); }
  int root() const { return size() - 1; }
  const Clause& clause(int id) const { return (*this)[id].clause; }
  const Clause& final_clause() const { return clause(root()); }

  // First id of the subtree rooted at `id`; the subtree occupies [begin, id].
  int subtree_begin(int id) const { return begin_[static_cast<std::size_t>(id)]; }
  // Parent along tree edges, -1 for the root.
  int parent(int id) const { return parent_[static_cast<std::size_t>(id)]; }

  bool uses(Rule r) const;
  bool has_lemmas() const { return uses(Rule::Lemma); }

  bool operator==(const Proof& o) const { return num_vars_ == o.num_vars_ && nodes_ == o.nodes_; }

 private:
  Var num_vars_ = 0;
  std::vector<ProofNode> nodes_;
  std::vector<int> begin_;
  std::vector<int> parent_;
};

// Pivot-missing errors from the rule primitives.
class PivotMissing : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// (c0 \ {x}) ∪ (c1 \ {x̄}); requires x ∈ c0 and x̄ ∈ c1.
Clause resolve(const Clause& c0, const Clause& c1, Var x);
Clause w_resolve(const Clause& c0, const Clause& c1, Var x);
// Same with the pivot given as the literal expected in the left premise.
Clause resolve_on(const Clause& left, const Clause& right, Lit pivot);
Clause w_resolve_on(const Clause& left, const Clause& right, Lit pivot);

// Node ids whose subtree is an input resolution tree: every internal node is a
// resolution with at least one leaf child. Subtrees containing w-resolution or
// weakening do not qualify.
std::vector<bool> input_derived_mask(const Proof& p);
std::vector<int> input_derived_nodes(const Proof& p);

int proof_depth(const Proof& p);
int node_depth(const Proof& p, int id);
std::size_t clause_width(const Proof& p);

// Distinct ids referenced by lemma leaves, ascending.
std::vector<int> lemma_targets(const Proof& p);

}  // namespace rtl
