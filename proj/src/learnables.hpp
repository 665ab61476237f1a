#pragma once

#include <functional>
#include <unordered_map>

#include "rtl/conflict_graph.hpp"
#include "rtl/proof_builder.hpp"

namespace rtl::detail {

struct LearnablesFragment {
  ProofBuilder::Handle root = -1;
  // First input-derived handle for every learnable clause.
  std::unordered_map<Clause, ProofBuilder::Handle, ClauseHash> learnables;
};

// Appends the learnables proof of (g, d) to b. `leaf` creates a fresh leaf for
// a reason clause.
LearnablesFragment append_learnables_proof(ProofBuilder& b, const ConflictGraph& g, const Decomposition& d,
                                           const std::function<ProofBuilder::Handle(const Clause&)>& leaf);

}  // namespace rtl::detail
