#include "rtl/generators.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace rtl {

Var php_var(int n, int pigeon, int hole) {
  return static_cast<Var>((pigeon - 1) * n + hole);
}

Formula generate_php(int n) {
  if (n < 1) throw std::invalid_argument("PHP_n needs n >= 1");
  std::vector<Clause> cls;
  for (int i = 1; i <= n + 1; ++i) {
    std::vector<Lit> p;
    for (int j = 1; j <= n; ++j) p.push_back(pos(php_var(n, i, j)));
    cls.emplace_back(std::move(p));
  }
  for (int k = 1; k <= n; ++k)
    for (int i = 1; i <= n + 1; ++i)
      for (int j = i + 1; j <= n + 1; ++j)
        cls.push_back(Clause{neg(php_var(n, i, k)), neg(php_var(n, j, k))});
  return Formula(static_cast<Var>((n + 1) * n), std::move(cls));
}

Formula generate_fphp(int n) {
  Formula f = generate_php(n);
  for (int i = 1; i <= n + 1; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k) f.add(Clause{neg(php_var(n, i, j)), neg(php_var(n, i, k))});
  return f;
}

Formula variable_extension(const Formula& f) {
  const Var n = f.num_vars();
  if (n == 0) return f;
  const Var q = ve_q(n);
  std::vector<Clause> out = f.clauses();
  std::unordered_set<Clause, ClauseHash> seen;
  for (const Clause& c : f.clauses())
    for (Lit l : c) {
      Clause qc{pos(q), ~l};
      if (seen.insert(qc).second) out.push_back(std::move(qc));
    }
  std::vector<Lit> ps;
  for (Var i = 1; i <= n; ++i) ps.push_back(pos(ve_p(n, i)));
  out.emplace_back(std::move(ps));
  return Formula(2 * n + 1, std::move(out));
}

Formula generate_random_kcnf(int n, int m, int k, std::uint64_t seed) {
  if (n < 0 || m < 0 || k < 0) throw std::invalid_argument("negative parameter");
  if (k > n) throw std::invalid_argument("k must not exceed n");
  std::mt19937_64 rng(seed);
  std::vector<Var> vars(n);
  std::iota(vars.begin(), vars.end(), Var{1});
  std::vector<Clause> cls;
  cls.reserve(m);
  for (int c = 0; c < m; ++c) {
    // Partial Fisher-Yates: the first k slots become a uniform k-subset.
    for (int i = 0; i < k; ++i) {
      std::uniform_int_distribution<int> pick(i, n - 1);
      std::swap(vars[i], vars[pick(rng)]);
    }
    std::vector<Lit> lits;
    for (int i = 0; i < k; ++i) lits.push_back(Lit(vars[i], (rng() & 1u) != 0));
    cls.emplace_back(std::move(lits));
  }
  return Formula(static_cast<Var>(n), std::move(cls));
}

Assignment matching_restriction(int n, const std::vector<std::pair<int, int>>& matching) {
  Assignment a;
  for (auto [i, j] : matching) {
    if (i < 1 || i > n + 1 || j < 1 || j > n) throw std::invalid_argument("matching pair out of range");
    a.assign(php_var(n, i, j), true);
  }
  for (auto [i, j] : matching) {
    for (int h = 1; h <= n; ++h)
      if (h != j) a.assign(php_var(n, i, h), false);
    for (int p = 1; p <= n + 1; ++p)
      if (p != i) a.assign(php_var(n, p, j), false);
  }
  return a;
}

}  // namespace rtl
