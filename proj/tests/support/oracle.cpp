#include "oracle.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace rtl::testing {

namespace {

struct Masks {
  std::vector<Var> vars;
  std::vector<std::uint32_t> pos;
  std::vector<std::uint32_t> neg;
  bool has_empty = false;
};

Masks compile(const Formula& f) {
  Masks m;
  m.vars = f.variables();
  if (m.vars.size() > 24) throw std::invalid_argument("too many variables for brute force");
  std::vector<int> slot(f.num_vars() + 1, -1);
  for (std::size_t i = 0; i < m.vars.size(); ++i) slot[m.vars[i]] = static_cast<int>(i);
  for (const Clause& c : f.clauses()) {
    std::uint32_t p = 0, n = 0;
    for (Lit l : c) (l.negated() ? n : p) |= 1u << slot[l.var()];
    m.pos.push_back(p);
    m.neg.push_back(n);
    m.has_empty |= c.empty();
  }
  return m;
}

bool satisfies(const Masks& m, std::uint32_t a) {
  for (std::size_t i = 0; i < m.pos.size(); ++i)
    if (!(a & m.pos[i]) && !(~a & m.neg[i])) return false;
  return true;
}

std::optional<std::uint32_t> first_model_serial(const Masks& m) {
  if (m.has_empty) return std::nullopt;
  const std::uint64_t total = 1ull << m.vars.size();
  for (std::uint64_t a = 0; a < total; ++a)
    if (satisfies(m, static_cast<std::uint32_t>(a))) return static_cast<std::uint32_t>(a);
  return std::nullopt;
}

bool any_model_parallel(const Masks& m) {
  if (m.has_empty) return false;
  const std::int64_t total = static_cast<std::int64_t>(1ull << m.vars.size());
  bool found = false;
#pragma omp parallel for reduction(|| : found) schedule(static)
  for (std::int64_t a = 0; a < total; ++a)
    if (!found && satisfies(m, static_cast<std::uint32_t>(a))) found = true;
  return found;
}

}  // namespace

bool brute_force_sat(const Formula& f, Execution exec) {
  Masks m = compile(f);
  return exec == Execution::Serial ? first_model_serial(m).has_value() : any_model_parallel(m);
}

std::optional<Assignment> brute_force_model(const Formula& f) {
  Masks m = compile(f);
  auto a = first_model_serial(m);
  if (!a) return std::nullopt;
  Assignment out;
  for (std::size_t i = 0; i < m.vars.size(); ++i) out.assign(m.vars[i], (*a >> i) & 1u);
  return out;
}

bool entails(const Formula& f, const Clause& c, Execution exec) {
  Formula g = f;
  for (Lit l : c) g.add(Clause{~l});
  return !brute_force_sat(g, exec);
}

}  // namespace rtl::testing
