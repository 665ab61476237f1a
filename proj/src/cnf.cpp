#include "rtl/cnf.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace rtl {

Lit Lit::from_dimacs(int d) {
  if (d == 0) throw std::invalid_argument("literal 0 is not a literal");
  return d > 0 ? pos(static_cast<Var>(d)) : neg(static_cast<Var>(-static_cast<long long>(d)));
}

int Lit::to_dimacs() const {
  int v = static_cast<int>(var());
  return negated() ? -v : v;
}

std::string Lit::to_string() const { return std::to_string(to_dimacs()); }

Clause::Clause(std::initializer_list<Lit> lits) : Clause(std::vector<Lit>(lits)) {}

Clause::Clause(std::vector<Lit> lits) : lits_(std::move(lits)) {
  for (Lit l : lits_)
    if (l.var() == 0) throw std::invalid_argument("variable index must be >= 1");
  std::sort(lits_.begin(), lits_.end());
  lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
}

Clause Clause::from_dimacs(std::initializer_list<int> lits) {
  std::vector<Lit> v;
  v.reserve(lits.size());
  for (int d : lits) v.push_back(Lit::from_dimacs(d));
  return Clause(std::move(v));
}

bool Clause::contains(Lit l) const { return std::binary_search(lits_.begin(), lits_.end(), l); }

bool Clause::contains_var(Var v) const { return contains(pos(v)) || contains(neg(v)); }

bool Clause::is_tautology() const {
  for (std::size_t i = 1; i < lits_.size(); ++i)
    if (lits_[i - 1].var() == lits_[i].var()) return true;
  return false;
}

bool Clause::subset_of(const Clause& other) const {
  return std::includes(other.lits_.begin(), other.lits_.end(), lits_.begin(), lits_.end());
}

Var Clause::max_var() const { return lits_.empty() ? 0 : lits_.back().var(); }

Clause Clause::without(Lit l) const {
  Clause c;
  c.lits_.reserve(lits_.size());
  for (Lit x : lits_)
    if (x != l) c.lits_.push_back(x);
  return c;
}

Clause Clause::with(Lit l) const {
  Clause c = *this;
  auto it = std::lower_bound(c.lits_.begin(), c.lits_.end(), l);
  if (it == c.lits_.end() || *it != l) c.lits_.insert(it, l);
  return c;
}

std::string Clause::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < lits_.size(); ++i) {
    if (i) s += ", ";
    s += lits_[i].to_string();
  }
  return s + "}";
}

Clause clause_union(const Clause& a, const Clause& b) {
  std::vector<Lit> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return Clause(std::move(out));
}

std::size_t ClauseHash::operator()(const Clause& c) const noexcept {
  std::size_t h = 0xcbf29ce484222325ull;
  for (Lit l : c) {
    h ^= l.code() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h ^ c.size();
}

Formula::Formula(Var num_vars, std::vector<Clause> clauses)
    : num_vars_(num_vars), clauses_(std::move(clauses)) {
  for (const Clause& c : clauses_)
    if (c.max_var() > num_vars_)
      throw std::invalid_argument("clause " + c.to_string() + " exceeds num_vars " +
                                  std::to_string(num_vars_));
}

bool Formula::contains(const Clause& c) const {
  return std::find(clauses_.begin(), clauses_.end(), c) != clauses_.end();
}

bool Formula::has_empty_clause() const {
  return std::any_of(clauses_.begin(), clauses_.end(), [](const Clause& c) { return c.empty(); });
}

std::vector<Var> Formula::variables() const {
  std::vector<bool> seen(num_vars_ + 1, false);
  for (const Clause& c : clauses_)
    for (Lit l : c) seen[l.var()] = true;
  std::vector<Var> out;
  for (Var v = 1; v <= num_vars_; ++v)
    if (seen[v]) out.push_back(v);
  return out;
}

void Formula::add(Clause c) {
  num_vars_ = std::max(num_vars_, c.max_var());
  clauses_.push_back(std::move(c));
}

void Formula::raise_num_vars(Var n) { num_vars_ = std::max(num_vars_, n); }

Assignment::Assignment(std::initializer_list<Lit> true_lits) {
  for (Lit l : true_lits) set_true(l);
}

void Assignment::assign(Var v, bool value) {
  if (v == 0) throw std::invalid_argument("variable index must be >= 1");
  if (values_.size() <= v) values_.resize(v + 1, -1);
  if (values_[v] >= 0) {
    if ((values_[v] == 1) != value)
      throw std::invalid_argument("variable " + std::to_string(v) + " already assigned");
    return;
  }
  values_[v] = value ? 1 : 0;
  trail_.push_back(Lit(v, !value));
}

void Assignment::pop() {
  if (trail_.empty()) throw std::logic_error("pop on empty assignment");
  values_[trail_.back().var()] = -1;
  trail_.pop_back();
}

std::optional<bool> Assignment::value(Var v) const {
  if (v >= values_.size() || values_[v] < 0) return std::nullopt;
  return values_[v] == 1;
}

std::optional<bool> Assignment::value(Lit l) const {
  auto v = value(l.var());
  if (!v) return std::nullopt;
  return *v != l.negated();
}

Assignment Assignment::extended(Var v, bool value) const {
  Assignment a = *this;
  a.assign(v, value);
  return a;
}

std::string Assignment::to_string() const {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < trail_.size(); ++i) {
    if (i) os << ", ";
    os << trail_[i].var() << "=" << (trail_[i].negated() ? 0 : 1);
  }
  os << "}";
  return os.str();
}

bool operator==(const Assignment& a, const Assignment& b) {
  if (a.size() != b.size()) return false;
  for (Lit l : a.trail())
    if (!b.is_true(l)) return false;
  return true;
}

Restricted<Clause> restrict_clause(const Clause& c, const Assignment& a) {
  std::vector<Lit> rest;
  for (Lit l : c) {
    auto v = a.value(l);
    if (!v) {
      rest.push_back(l);
    } else if (*v) {
      return {Truth::One, {}};
    }
  }
  if (rest.empty()) return {Truth::Zero, {}};
  return {Truth::Residual, Clause(std::move(rest))};
}

Restricted<Formula> restrict_formula(const Formula& f, const Assignment& a) {
  std::vector<Clause> rest;
  std::unordered_set<Clause, ClauseHash> seen;
  for (const Clause& c : f.clauses()) {
    auto r = restrict_clause(c, a);
    if (r.zero()) return {Truth::Zero, {}};
    if (r.one()) continue;
    if (seen.insert(r.residual).second) rest.push_back(std::move(r.residual));
  }
  if (rest.empty()) return {Truth::One, {}};
  return {Truth::Residual, Formula(f.num_vars(), std::move(rest))};
}

Formula restricted_clause_set(const Formula& f, const Assignment& a) {
  std::vector<Clause> rest;
  std::unordered_set<Clause, ClauseHash> seen;
  for (const Clause& c : f.clauses()) {
    auto r = restrict_clause(c, a);
    if (r.one()) continue;
    if (seen.insert(r.residual).second) rest.push_back(std::move(r.residual));
  }
  return Formula(f.num_vars(), std::move(rest));
}

bool evaluate(const Formula& f, const Assignment& a) {
  for (Var v : f.variables())
    if (!a.assigned(v)) throw std::invalid_argument("assignment is not total on var(F)");
  return restrict_formula(f, a).one();
}

}  // namespace rtl
