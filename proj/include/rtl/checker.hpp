#pragma once

#include <string>
#include <vector>

#include "rtl/cnf.hpp"
#include "rtl/proof.hpp"
#include "rtl/system.hpp"

namespace rtl {

enum class ViolationKind {
  BadAxiom,
  BadLemmaRef,
  LemmaNotInputDerived,
  LemmaTooLarge,
  RuleMismatch,
  PivotMissing,
  Irregular,
  NotRefutation,
  PathNotFalsified,
};

const char* kind_name(ViolationKind k);

struct Violation {
  int node = -1;
  ViolationKind kind = ViolationKind::RuleMismatch;
  std::string message;
  // Irregular only: the repeated variable and the upper end of the path.
  Var variable = 0;
  int other = -1;

  bool operator==(const Violation&) const = default;
};

// "<node-id> <KIND> <message>"
std::string format_violation(const Violation& v);

struct Verdict {
  std::vector<Violation> violations;
  bool accepted() const { return violations.empty(); }
  bool has(ViolationKind k) const;
};

enum class Execution { Serial, Parallel };

// Collects every violation, sorted by node id then kind. Regularity is checked
// along tree edges for tree systems and along dag paths (lemma leaves continue
// into their target) for dag systems.
Verdict check_proof(const Proof& p, const Formula& f, const SystemDescriptor& sys,
                    bool require_refutation, Execution exec = Execution::Parallel);

std::vector<Violation> check_regularity(const Proof& p);
std::vector<Violation> check_dag_regularity(const Proof& p);

// Every node's clause must be falsified by the assignment read off the edge
// labels between it and the root. Throws std::invalid_argument unless p is a
// regular refutation.
Verdict check_path_falsification(const Proof& p);

}  // namespace rtl
