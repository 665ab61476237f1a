#pragma once

#include <optional>
#include <span>
#include <vector>

#include "rtl/proof.hpp"
#include "rtl/solvers.hpp"
#include "rtl/trace.hpp"

namespace rtl {

// A scripted execution: a tree of decisions and stops, addressed by the
// decision path of the search.
struct Schedule {
  struct Node {
    std::optional<Decision> branch;  // nullopt: stop here
    int child[2] = {-1, -1};         // first value, second value
    std::optional<ConflictAnalysis> analysis;  // DLL-L-UP stop
    std::optional<Clause> tag;                 // DLL-Learn stop
  };
  std::vector<Node> nodes;  // nodes[0] is the initial call

  // Node reached by following `path` from the root, or nullptr when the
  // path leaves the script.
  const Node* at(std::span<const Decision> path) const;
  int branch_count() const;
};

// Replays a schedule; any departure raises PolicyError.
class ScheduledHeuristic : public Heuristic {
 public:
  explicit ScheduledHeuristic(const Schedule& s) : s_(&s) {}
  std::string name() const override { return "scripted"; }
  Decision choose(const SearchState& s) override;
  bool continue_past_conflict(const SearchState& s) override;
  std::optional<Clause> choose_tag(const SearchState& s) override;

 private:
  using Node = Schedule::Node;
  const Node* node(const SearchState& s) const;
  const Schedule* s_;
};

class ScheduledStrategy : public LearningStrategy {
 public:
  explicit ScheduledStrategy(const Schedule& s) : s_(&s) {}
  std::string name() const override { return "scripted"; }
  ConflictAnalysis analyze(const SearchState& s, ConflictGraph graph) override;

 private:
  const Schedule* s_;
};

// DLL trace to a regular resolution tree of a clause falsified by the initial
// assignment, with at most recursive_calls + 1 nodes. A branch whose first
// (second) child clause lacks the falsified literal forwards that clause.
Proof trace_to_rt(const SearchTrace& t, const Formula& f);

// Regular resolution tree of C with C|a = 0 and no pivot in dom(a) to a DLL
// schedule with at most size - 1 recursive calls.
Schedule rt_to_schedule(const Proof& p, const Formula& f, const Assignment& a);

// DLL-L-UP trace (initial assignment empty) to a regular w-resolution
// refutation with input lemmas. Every learned clause is input-derived.
Proof trace_to_regwrti(const SearchTrace& t, const Formula& f);

// Regular WRTI refutation to a non-greedy DLL-L-UP schedule making fewer than
// size recursive calls: branch on the pivots of nodes that are not
// input-derived, learn each maximal input subproof through a series
// decomposition.
Schedule regwrti_to_schedule(const Proof& p, const Formula& f);

// DLL-Learn trace to a regular WRTL refutation with exactly
// recursive_calls + 1 nodes. Leaves are axioms when the tagged clause is in f,
// otherwise lemmas pointing to the first node with that clause.
Proof trace_to_regwrtl(const SearchTrace& t, const Formula& f);

// Regular WRTL refutation to a DLL-Learn schedule performing exactly size - 1
// recursive calls.
Schedule regwrtl_to_schedule(const Proof& p, const Formula& f);

}  // namespace rtl
