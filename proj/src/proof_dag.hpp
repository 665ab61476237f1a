#pragma once

#include <vector>

#include "rtl/proof.hpp"

namespace rtl::detail {

// A resolution dag with one node per distinct clause. Lemma leaves are folded
// into their targets; when a clause occurs both as an axiom and as a derived
// clause the axiom wins. Nodes are topologically ordered (premises first).
struct DagNode {
  bool axiom = true;
  Clause clause;
  Lit pivot{};
  int left = -1;
  int right = -1;
};

struct CanonicalDag {
  std::vector<DagNode> nodes;
  std::vector<int> class_of;  // proof id -> dag node
  int root = -1;
  std::vector<bool> reachable;
  std::vector<int> depth;  // edges from a leaf, over reachable nodes

  int reachable_count() const;
  int derived_count() const;
};

// Requires a resolution-only proof (lemmas allowed).
CanonicalDag canonical_dag(const Proof& p);

}  // namespace rtl::detail
