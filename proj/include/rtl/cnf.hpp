#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rtl {

using Var = std::uint32_t;

// A literal is a variable together with a polarity. Encoded as 2*var + negated
// so that literals of the same variable are adjacent in the natural order.
class Lit {
 public:
  constexpr Lit() = default;
  constexpr Lit(Var v, bool negated) : code_(v * 2 + (negated ? 1u : 0u)) {}

  static Lit from_dimacs(int d);
  static constexpr Lit from_code(std::uint32_t c) {
    Lit l;
    l.code_ = c;
    return l;
  }

  constexpr Var var() const { return code_ >> 1; }
  constexpr bool negated() const { return (code_ & 1u) != 0; }
  constexpr std::uint32_t code() const { return code_; }
  constexpr Lit operator~() const { return from_code(code_ ^ 1u); }

  int to_dimacs() const;
  std::string to_string() const;

  constexpr auto operator<=>(const Lit&) const = default;

 private:
  std::uint32_t code_ = 0;
};

constexpr Lit pos(Var v) { return Lit(v, false); }
constexpr Lit neg(Var v) { return Lit(v, true); }

// x^0 = x, x^1 = x̄.
constexpr Lit lit_of(Var v, int eps) { return Lit(v, eps != 0); }

// A finite set of literals, kept sorted and duplicate free. The empty clause
// is □. Tautologies are representable.
class Clause {
 public:
  Clause() = default;
  Clause(std::initializer_list<Lit> lits);
  explicit Clause(std::vector<Lit> lits);

  static Clause from_dimacs(std::initializer_list<int> lits);

  std::span<const Lit> literals() const { return lits_; }
  auto begin() const { return lits_.begin(); }
  auto end() const { return lits_.end(); }
  std::size_t size() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }

  bool contains(Lit l) const;
  bool contains_var(Var v) const;
  bool is_tautology() const;
  bool subset_of(const Clause& other) const;
  Var max_var() const;

  Clause without(Lit l) const;
  Clause with(Lit l) const;

  std::string to_string() const;

  bool operator==(const Clause&) const = default;
  auto operator<=>(const Clause&) const = default;

 private:
  std::vector<Lit> lits_;
};

Clause clause_union(const Clause& a, const Clause& b);

struct ClauseHash {
  std::size_t operator()(const Clause& c) const noexcept;
};

class Formula {
 public:
  Formula() = default;
  Formula(Var num_vars, std::vector<Clause> clauses);

  Var num_vars() const { return num_vars_; }
  const std::vector<Clause>& clauses() const { return clauses_; }
  std::size_t size() const { return clauses_.size(); }
  bool empty() const { return clauses_.empty(); }
  const Clause& operator[](std::size_t i) const { return clauses_[i]; }

  bool contains(const Clause& c) const;
  bool has_empty_clause() const;
  // Variables that occur in some clause, ascending.
  std::vector<Var> variables() const;

  void add(Clause c);
  void raise_num_vars(Var n);

  bool operator==(const Formula&) const = default;

 private:
  Var num_vars_ = 0;
  std::vector<Clause> clauses_;
};

// Partial assignment. Assigned literals are kept in assignment order, which
// the solvers use as the decision order.
class Assignment {
 public:
  Assignment() = default;
  Assignment(std::initializer_list<Lit> true_lits);

  void assign(Var v, bool value);
  void set_true(Lit l) { assign(l.var(), !l.negated()); }
  void pop();

  std::optional<bool> value(Var v) const;
  std::optional<bool> value(Lit l) const;
  bool assigned(Var v) const { return value(v).has_value(); }
  bool is_true(Lit l) const { return value(l) == true; }
  bool is_false(Lit l) const { return value(l) == false; }

  std::span<const Lit> trail() const { return trail_; }
  std::size_t size() const { return trail_.size(); }
  bool empty() const { return trail_.empty(); }

  Assignment extended(Var v, bool value) const;
  std::string to_string() const;

  friend bool operator==(const Assignment& a, const Assignment& b);

 private:
  std::vector<std::int8_t> values_;
  std::vector<Lit> trail_;
};

enum class Truth { Zero, One, Residual };

template <class T>
struct Restricted {
  Truth truth = Truth::Residual;
  T residual{};

  bool zero() const { return truth == Truth::Zero; }
  bool one() const { return truth == Truth::One; }
};

Restricted<Clause> restrict_clause(const Clause& c, const Assignment& a);
Restricted<Formula> restrict_formula(const Formula& f, const Assignment& a);

// The clause set of F|α when it is not 1, with a falsified clause kept as □.
// Used as the target formula of restricted proofs.
Formula restricted_clause_set(const Formula& f, const Assignment& a);

// Requires a to be total on var(f).
bool evaluate(const Formula& f, const Assignment& a);

}  // namespace rtl

template <>
struct std::hash<rtl::Clause> {
  std::size_t operator()(const rtl::Clause& c) const noexcept { return rtl::ClauseHash{}(c); }
};
