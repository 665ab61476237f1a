#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rtl/cnf.hpp"
#include "rtl/proof.hpp"

namespace rtl {

// A conflict graph: a dag over literals whose sink □ has the two predecessors
// x and x̄. A node with a reason clause is internal and its predecessors are the
// negations of the other reason literals; a node without a reason is a leaf
// (set by the assignment). Nodes are kept in topological order.
class ConflictGraph {
 public:
  struct NodeSpec {
    Lit lit;
    bool internal = false;
    std::vector<Lit> preds;
    // Propagation metadata used by cut strategies; 0 when unknown.
    int level = 0;
    int stamp = -1;
  };

  ConflictGraph() = default;
  // Throws std::invalid_argument unless the specs form a conflict graph.
  explicit ConflictGraph(std::vector<NodeSpec> nodes);

  int size() const { return static_cast<int>(lits_.size()); }
  Lit lit(int i) const { return lits_[i]; }
  std::optional<int> index_of(Lit l) const;
  const std::vector<int>& preds(int i) const { return preds_[i]; }
  const std::vector<int>& succs(int i) const { return succs_[i]; }
  bool is_leaf(int i) const { return !internal_[i]; }
  bool is_internal(int i) const { return internal_[i]; }
  int level(int i) const { return level_[i]; }
  int stamp(int i) const { return stamp_[i]; }
  Var conflict_var() const { return conflict_var_; }
  // Indices of x and x̄.
  int conflict_pos() const { return *index_of(pos(conflict_var_)); }
  int conflict_neg() const { return *index_of(neg(conflict_var_)); }

  // {l} ∪ {l̄' : l' a predecessor of l}; only for internal nodes.
  Clause reason(int i) const;
  std::vector<int> leaves() const;
  std::vector<Lit> internal_lits() const;
  std::vector<Clause> reasons() const;
  Var max_var() const;

  std::vector<NodeSpec> specs() const;
  std::string to_dot() const;

 private:
  std::vector<Lit> lits_;
  std::vector<char> internal_;
  std::vector<std::vector<int>> preds_;
  std::vector<std::vector<int>> succs_;
  std::vector<int> level_;
  std::vector<int> stamp_;
  std::unordered_map<std::uint32_t, int> index_;
  Var conflict_var_ = 0;
};

// A subconflict graph H of G, given by its internal nodes N. Its node set is
// N ∪ preds(N) ∪ {x, x̄} plus □, and its leaves are the members outside N.
class Subgraph {
 public:
  Subgraph(const ConflictGraph& g, const std::vector<Lit>& internal);
  // The whole graph.
  explicit Subgraph(const ConflictGraph& g);

  const ConflictGraph& graph() const { return *g_; }
  bool internal(int i) const { return internal_[i]; }
  bool member(int i) const { return member_[i]; }
  bool leaf(int i) const { return member_[i] && !internal_[i]; }
  std::vector<int> leaves() const;
  std::vector<Lit> internal_lits() const;
  int internal_count() const;

  // Longest path from a leaf of H; 0 on leaves, at least 1 on internal nodes.
  std::vector<int> depths() const;
  Clause conflict_clause() const;
  // il(l, H). nullopt when H_l is the single node l; throws if l is not a
  // node or is a leaf of H.
  std::optional<Clause> induced_clause(Lit l) const;
  // Reasons why H is not a proper subconflict graph of G; empty if it is.
  std::vector<std::string> problems() const;

 private:
  const ConflictGraph* g_;
  std::vector<char> internal_;
  std::vector<char> member_;
};

Clause conflict_clause(const ConflictGraph& g);
std::optional<Clause> induced_clause(const ConflictGraph& g, Lit l);

// A series-parallel decomposition, flattened: chain lists
// H_{0,0}, H_{0,1}, ..., H_{k-1,m_{k-1}} = H_k by internal literals, and cuts
// holds the positions of H_0, H_1, ..., H_k in that chain.
struct Decomposition {
  std::vector<std::vector<Lit>> chain;
  std::vector<int> cuts;

  int k() const { return static_cast<int>(cuts.size()) - 1; }
  // H_{i,j} for 0 <= j <= m_i.
  const std::vector<Lit>& at(int i, int j) const { return chain[cuts[i] + j]; }
  int m(int i) const { return cuts[i + 1] - cuts[i]; }

  static Decomposition series(std::vector<std::vector<Lit>> chain);
  static Decomposition parallel(std::vector<std::vector<Lit>> chain);

  bool operator==(const Decomposition&) const = default;
};

struct DecompositionVerdict {
  std::vector<std::string> problems;
  bool accepted() const { return problems.empty(); }
};

DecompositionVerdict validate_decomposition(const ConflictGraph& g, const Decomposition& d);

struct LearnableClause {
  enum class Kind { Conflict, Induced };
  Kind kind = Kind::Conflict;
  Clause clause;
  int i = 0;
  int j = 0;
  Lit lit{};  // Induced only
};

struct LearnableSet {
  std::vector<LearnableClause> items;
  // Distinct clauses, sorted.
  std::vector<Clause> clauses() const;
  bool contains(const Clause& c) const;
};

// Throws std::invalid_argument for an invalid decomposition.
LearnableSet learnable_clauses(const ConflictGraph& g, const Decomposition& d);

// Cut strategies.
Decomposition trivial_decomposition(const ConflictGraph& g);
// Internal nodes of the first unique implication point cut: nodes are
// absorbed latest first (by level, then propagation stamp) until one literal
// of the conflict level remains.
std::vector<Lit> first_uip_cut(const ConflictGraph& g);
// H_0 ⊂ H_uip ⊂ G as a series decomposition (the middle element dropped when it
// coincides with G).
Decomposition first_uip_decomposition(const ConflictGraph& g);
// Series decomposition that absorbs one node at a time, latest first.
Decomposition latest_first_decomposition(const ConflictGraph& g);

enum class PropagationOrder {
  Sweep,             // repeated passes over the clauses in index order
  LowestIndexFirst,  // restart from the first clause after every implication
};

// Exhaustive unit propagation from a. Returns a conflict graph for the first
// falsified non-empty clause, or nullopt when propagation ends without one.
std::optional<ConflictGraph> find_conflict_graph(const Formula& f, const Assignment& a,
                                                 PropagationOrder order = PropagationOrder::Sweep);

// The conflict graph of a clause falsified by a: x is the literal of c, the
// other literals' negations are leaves.
ConflictGraph conflict_graph_from_falsified(const Clause& c, const Assignment& a);

// Regular w-resolution tree with input lemmas whose input-derived clauses
// include every learnable clause; the final clause is Cc(G) and the leaves are
// reason clauses.
Proof derive_learnables_proof(const ConflictGraph& g, const Decomposition& d);

struct InputProofDecomposition {
  ConflictGraph graph;
  Decomposition decomposition;
};

// Series decomposition whose learnable clauses are exactly the clauses of the
// internal nodes of the regular input proof t, for an a falsifying its final
// clause.
InputProofDecomposition decomposition_from_input_proof(const Proof& t, const Assignment& a);

// Text form: `n <lit> <pred lits> 0` for internal nodes, `f <lit>` for leaves,
// `h <i> <j> <internal lits> 0` for H_{i,j} in chain order (each element once,
// with H_{i,m_i} written as H_{i+1,0}).
struct ConflictGraphFile {
  ConflictGraph graph;
  std::optional<Decomposition> decomposition;
};
ConflictGraphFile parse_conflict_graph(std::istream& in);
ConflictGraphFile parse_conflict_graph(std::string_view text);
void write_conflict_graph(std::ostream& out, const ConflictGraph& g, const Decomposition* d = nullptr);

}  // namespace rtl
