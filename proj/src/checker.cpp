#include "rtl/checker.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <unordered_set>

namespace rtl {

const char* kind_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::BadAxiom: return "BAD_AXIOM";
    case ViolationKind::BadLemmaRef: return "BAD_LEMMA_REF";
    case ViolationKind::LemmaNotInputDerived: return "LEMMA_NOT_INPUT_DERIVED";
    case ViolationKind::LemmaTooLarge: return "LEMMA_TOO_LARGE";
    case ViolationKind::RuleMismatch: return "RULE_MISMATCH";
    case ViolationKind::PivotMissing: return "PIVOT_MISSING";
    case ViolationKind::Irregular: return "IRREGULAR";
    case ViolationKind::NotRefutation: return "NOT_REFUTATION";
    case ViolationKind::PathNotFalsified: return "PATH_NOT_FALSIFIED";
  }
  return "?";
}

std::string format_violation(const Violation& v) {
  return std::to_string(v.node) + " " + kind_name(v.kind) + " " + v.message;
}

bool Verdict::has(ViolationKind k) const {
  return std::any_of(violations.begin(), violations.end(), [k](const Violation& v) { return v.kind == k; });
}

namespace {

using ClauseSet = std::unordered_set<Clause, ClauseHash>;

struct NodeContext {
  const Proof& p;
  const ClauseSet& axioms;
  const SystemDescriptor& sys;
  const std::vector<bool>& input_derived;
};

void check_node(const NodeContext& cx, int id, std::vector<Violation>& out) {
  const ProofNode& n = cx.p[id];
  auto report = [&](ViolationKind k, std::string msg) { out.push_back({id, k, std::move(msg)}); };

  if (!cx.sys.allows(n.rule)) {
    if (n.rule == Rule::Lemma)
      report(ViolationKind::BadLemmaRef, "lemmas are not permitted in " + cx.sys.name());
    else
      report(ViolationKind::RuleMismatch, std::string(rule_name(n.rule)) + " is not permitted in " + cx.sys.name());
  }

  switch (n.rule) {
    case Rule::Axiom:
      if (!cx.axioms.count(n.clause)) report(ViolationKind::BadAxiom, n.clause.to_string() + " is not in the formula");
      break;
    case Rule::Lemma: {
      const Clause& target = cx.p.clause(n.ref);
      if (target != n.clause)
        report(ViolationKind::BadLemmaRef,
               n.clause.to_string() + " differs from node " + std::to_string(n.ref) + " " + target.to_string());
      if (cx.sys.lemmas == LemmaPolicy::InputOnly && !cx.input_derived[n.ref])
        report(ViolationKind::LemmaNotInputDerived, "node " + std::to_string(n.ref) + " is not input-derived");
      if (cx.sys.max_lemma_size && n.clause.size() > *cx.sys.max_lemma_size && !cx.axioms.count(n.clause))
        report(ViolationKind::LemmaTooLarge, "lemma of size " + std::to_string(n.clause.size()) + " exceeds " +
                                                 std::to_string(*cx.sys.max_lemma_size));
      break;
    }
    case Rule::Resolution:
    case Rule::WResolution: {
      const Clause& l = cx.p.clause(n.left);
      const Clause& r = cx.p.clause(n.right);
      if (n.rule == Rule::Resolution && (!l.contains(n.pivot) || !r.contains(~n.pivot))) {
        report(ViolationKind::PivotMissing, "pivot " + n.pivot.to_string() + " not present as required in " +
                                                l.to_string() + " / " + r.to_string());
        break;
      }
      Clause expect = w_resolve_on(l, r, n.pivot);
      if (expect != n.clause)
        report(ViolationKind::RuleMismatch, "expected " + expect.to_string() + ", found " + n.clause.to_string());
      break;
    }
    case Rule::Weakening:
      if (!cx.p.clause(n.left).subset_of(n.clause))
        report(ViolationKind::RuleMismatch,
               n.clause.to_string() + " does not contain premise " + cx.p.clause(n.left).to_string());
      break;
  }
}

std::vector<std::vector<Violation>> check_nodes_serial(const NodeContext& cx) {
  std::vector<std::vector<Violation>> per(cx.p.size());
  for (int id = 0; id < cx.p.size(); ++id) check_node(cx, id, per[id]);
  return per;
}

std::vector<std::vector<Violation>> check_nodes_parallel(const NodeContext& cx) {
  const int s = cx.p.size();
  std::vector<std::vector<Violation>> per(s);
#pragma omp parallel for schedule(dynamic, 256)
  for (int id = 0; id < s; ++id) check_node(cx, id, per[id]);
  return per;
}

}  // namespace

Verdict check_proof(const Proof& p, const Formula& f, const SystemDescriptor& sys, bool require_refutation,
                    Execution exec) {
  ClauseSet axioms(f.clauses().begin(), f.clauses().end());
  std::vector<bool> mask = input_derived_mask(p);
  NodeContext cx{p, axioms, sys, mask};
  auto per = exec == Execution::Parallel ? check_nodes_parallel(cx) : check_nodes_serial(cx);

  if (sys.regular) {
    auto irr = sys.shape == Shape::Dag ? check_dag_regularity(p) : check_regularity(p);
    for (Violation& v : irr) per[v.node].push_back(std::move(v));
  }
  if (require_refutation && !p.final_clause().empty())
    per[p.root()].push_back({p.root(), ViolationKind::NotRefutation, "root clause " + p.final_clause().to_string()});

  Verdict out;
  for (auto& vs : per) {
    std::stable_sort(vs.begin(), vs.end(), [](const Violation& a, const Violation& b) { return a.kind < b.kind; });
    for (Violation& v : vs) out.violations.push_back(std::move(v));
  }
  return out;
}

std::vector<Violation> check_regularity(const Proof& p) {
  std::vector<Violation> out;
  // last[x] = nearest ancestor on the current path resolving on x.
  std::vector<int> last(p.num_vars() + 1, -1);
  struct Frame {
    int id;
    int saved;
    bool done;
  };
  std::vector<Frame> stack{{p.root(), -1, false}};
  while (!stack.empty()) {
    Frame fr = stack.back();
    stack.pop_back();
    const ProofNode& n = p[fr.id];
    if (fr.done) {
      last[n.pivot.var()] = fr.saved;
      continue;
    }
    if (n.rule == Rule::Weakening) {
      stack.push_back({n.left, -1, false});
      continue;
    }
    if (!n.is_binary()) continue;
    Var x = n.pivot.var();
    if (last[x] >= 0)
      out.push_back({fr.id, ViolationKind::Irregular,
                     "variable " + std::to_string(x) + " resolved again on the path to node " + std::to_string(last[x]),
                     x, last[x]});
    stack.push_back({fr.id, last[x], true});
    last[x] = fr.id;
    stack.push_back({n.right, -1, false});
    stack.push_back({n.left, -1, false});
  }
  std::sort(out.begin(), out.end(), [](const Violation& a, const Violation& b) { return a.node < b.node; });
  return out;
}

std::vector<Violation> check_dag_regularity(const Proof& p) {
  const std::size_t words = (p.num_vars() + 64) / 64;
  std::vector<std::uint64_t> below(static_cast<std::size_t>(p.size()) * words, 0);
  auto row = [&](int id) { return below.data() + static_cast<std::size_t>(id) * words; };
  std::vector<Violation> out;
  for (int id = 0; id < p.size(); ++id) {
    const ProofNode& n = p[id];
    std::uint64_t* me = row(id);
    auto merge = [&](int other) {
      const std::uint64_t* o = row(other);
      for (std::size_t w = 0; w < words; ++w) me[w] |= o[w];
    };
    if (n.rule == Rule::Lemma) merge(n.ref);
    if (n.rule == Rule::Weakening) merge(n.left);
    if (n.is_binary()) {
      merge(n.left);
      merge(n.right);
      Var x = n.pivot.var();
      if (me[x / 64] >> (x % 64) & 1u)
        out.push_back({id, ViolationKind::Irregular,
                       "variable " + std::to_string(x) + " resolved again on a dag path above this node", x, -1});
      me[x / 64] |= std::uint64_t{1} << (x % 64);
    }
  }
  return out;
}

Verdict check_path_falsification(const Proof& p) {
  if (!p.final_clause().empty()) throw std::invalid_argument("path falsification needs a refutation");
  if (!check_regularity(p).empty()) throw std::invalid_argument("path falsification needs a regular proof");

  Verdict out;
  Assignment path;
  struct Item {
    int id;
    std::optional<Lit> edge;  // literal made true on entering
    bool pop;
  };
  std::vector<Item> stack{{p.root(), std::nullopt, false}};
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    if (it.pop) {
      path.pop();
      continue;
    }
    if (it.edge) path.set_true(*it.edge);
    const ProofNode& n = p[it.id];
    for (Lit l : n.clause)
      if (!path.is_false(l)) {
        out.violations.push_back({it.id, ViolationKind::PathNotFalsified,
                                  "literal " + l.to_string() + " is not falsified by the path assignment"});
        break;
      }
    if (n.rule == Rule::Weakening) stack.push_back({n.left, std::nullopt, false});
    if (!n.is_binary()) continue;
    // Left edge falsifies the pivot literal of the left premise, right edge satisfies it.
    stack.push_back({-1, std::nullopt, true});
    stack.push_back({n.right, n.pivot, false});
    stack.push_back({-1, std::nullopt, true});
    stack.push_back({n.left, ~n.pivot, false});
  }
  return out;
}

}  // namespace rtl
