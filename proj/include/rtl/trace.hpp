#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rtl/cnf.hpp"
#include "rtl/conflict_graph.hpp"

namespace rtl {

enum class Algorithm { Dll, DllLUp, DllLearn };
const char* algorithm_name(Algorithm a);
std::optional<Algorithm> algorithm_from_name(std::string_view name);

enum class Outcome { Sat, Unsat };

// Branch on var, trying `value` first.
struct Decision {
  Var var = 0;
  bool value = false;
  bool operator==(const Decision&) const = default;
};

// The conflict graph, decomposition and learned clauses chosen at a
// DLL-L-UP conflict.
struct ConflictAnalysis {
  ConflictGraph graph;
  Decomposition decomposition;
  std::vector<Clause> learned;
};

struct TraceNode {
  enum class Kind {
    Branch,     // decision with one or two children
    Falsified,  // a clause falsified by the assignment (DLL leaf, DLL-Learn tag)
    Conflict,   // DLL-L-UP conflict with its analysis
    Empty,      // the formula contains □; there is no conflict graph
    Sat,        // satisfying assignment
  };
  Kind kind = Kind::Branch;
  Decision decision;                        // Branch
  std::vector<int> children;                // Branch
  std::optional<Clause> clause;             // Falsified; DLL-Learn Branch (the learned w-resolvent)
  std::optional<ConflictAnalysis> analysis;  // Conflict
  std::vector<Lit> model;                   // Sat, true literals in assignment order
};

// Execution tree of a solver run in pre-order; nodes[0] is the initial call.
struct SearchTrace {
  Algorithm algorithm = Algorithm::Dll;
  Var num_vars = 0;
  std::size_t num_clauses = 0;
  std::uint64_t seed = 0;
  std::string heuristic;
  std::string strategy;
  bool non_greedy = false;
  std::vector<TraceNode> nodes;

  int recursive_calls() const { return static_cast<int>(nodes.size()) - 1; }
  Outcome outcome() const;
  // Learned clauses in execution order, repeats included.
  std::vector<Clause> learned() const;
};

// Text form (.trc):
//   p trace <algorithm> <num_vars> <num_clauses>
//   o <seed> <heuristic> <strategy> <non-greedy 0|1>
// then one record per node in pre-order:
//   b <var> <value> <children> <has-clause> [<lits> 0]
//   f <lits> 0 | e | s <true lits> 0
//   x, the conflict graph and decomposition lines, `l <lits> 0` per learned
//   clause, then `end`.
void write_trace(std::ostream& out, const SearchTrace& t);
std::string serialize_trace(const SearchTrace& t);
SearchTrace parse_trace(std::istream& in);
SearchTrace parse_trace(std::string_view text);

}  // namespace rtl
