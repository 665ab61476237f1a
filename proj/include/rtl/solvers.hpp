#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rtl/cnf.hpp"
#include "rtl/conflict_graph.hpp"
#include "rtl/trace.hpp"

namespace rtl {

// What a policy sees at a search node.
struct SearchState {
  const Formula& formula;  // the current formula, learned clauses included
  const Assignment& assignment;
  std::span<const Decision> path;  // decisions from the initial call down to here
  std::span<const Var> candidates;  // admissible branching variables, ascending
  int levels_past_conflict = 0;     // ancestors that branched despite a conflict
  std::uint64_t seed = 0;
};

class Heuristic {
 public:
  virtual ~Heuristic() = default;
  virtual std::string name() const = 0;
  // Must return a variable from s.candidates.
  virtual Decision choose(const SearchState& s) = 0;
  // Non-greedy runs only: branch although a conflict is already present.
  virtual bool continue_past_conflict(const SearchState&) { return false; }
  // DLL-Learn: the falsified clause to tag; nullopt picks the first one in F.
  virtual std::optional<Clause> choose_tag(const SearchState&) { return std::nullopt; }
};

// Smallest candidate, value 0 first. Branches past at most `budget` conflict
// levels in non-greedy runs.
class SmallestIndexHeuristic : public Heuristic {
 public:
  explicit SmallestIndexHeuristic(int budget = 0) : budget_(budget) {}
  std::string name() const override { return "smallest"; }
  Decision choose(const SearchState& s) override;
  bool continue_past_conflict(const SearchState& s) override { return s.levels_past_conflict < budget_; }

 private:
  int budget_;
};

// Satisfies the literal of the first unit clause of F|α when it is a
// candidate, else falls back to the smallest index.
class UnitPreferringHeuristic : public SmallestIndexHeuristic {
 public:
  using SmallestIndexHeuristic::SmallestIndexHeuristic;
  std::string name() const override { return "unit"; }
  Decision choose(const SearchState& s) override;
};

// Uniform candidate and value, a function of the seed and the decision path.
class RandomHeuristic : public SmallestIndexHeuristic {
 public:
  using SmallestIndexHeuristic::SmallestIndexHeuristic;
  std::string name() const override { return "random"; }
  Decision choose(const SearchState& s) override;
};

std::unique_ptr<Heuristic> make_heuristic(std::string_view name, int budget = 0);

class LearningStrategy {
 public:
  virtual ~LearningStrategy() = default;
  virtual std::string name() const = 0;
  // `graph` is the conflict graph found by unit propagation. The returned
  // learned clauses must be learnable for the returned decomposition.
  virtual ConflictAnalysis analyze(const SearchState& s, ConflictGraph graph) = 0;
};

enum class LearnKind {
  None,          // learn nothing
  Trivial,       // Cc(G)
  FirstUip,      // the first unique implication point cut
  Decision,      // the cut at the decision literals, Cc(G)
  AllLearnable,  // every learnable clause of the latest-first series decomposition
};

class BuiltinStrategy : public LearningStrategy {
 public:
  explicit BuiltinStrategy(LearnKind kind) : kind_(kind) {}
  std::string name() const override;
  ConflictAnalysis analyze(const SearchState& s, ConflictGraph graph) override;

 private:
  LearnKind kind_;
};

std::unique_ptr<LearningStrategy> make_strategy(std::string_view name);

struct SolverOptions {
  bool non_greedy = false;
  PropagationOrder propagation = PropagationOrder::Sweep;
  std::uint64_t seed = 0;
};

struct SolveResult {
  Outcome outcome = Outcome::Unsat;
  Assignment model;  // Sat only
  Formula formula;   // input plus learned clauses
  SearchTrace trace;
};

// Thrown when a policy makes a choice the schema does not allow.
class PolicyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

SolveResult dll(const Formula& f, const Assignment& a, Heuristic& h, const SolverOptions& opt = {});
SolveResult dll_l_up(const Formula& f, const Assignment& a, Heuristic& h, LearningStrategy& ls,
                     const SolverOptions& opt = {});
SolveResult dll_learn(const Formula& f, const Assignment& a, Heuristic& h, const SolverOptions& opt = {});

}  // namespace rtl
