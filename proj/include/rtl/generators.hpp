#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rtl/cnf.hpp"

namespace rtl {

// Index of x_{i,j} (pigeon i, hole j) in PHP_n and FPHP_n: (i-1)*n + j.
Var php_var(int n, int pigeon, int hole);

Formula generate_php(int n);
Formula generate_fphp(int n);

// VE(F): F, then {q, l̄} for every literal l of F (first occurrence order, no
// duplicates), then {p_1, ..., p_n}. With n = num_vars(F), q = n+1, p_i = n+1+i.
Formula variable_extension(const Formula& f);
inline Var ve_q(Var n) { return n + 1; }
inline Var ve_p(Var n, Var i) { return n + 1 + i; }

Formula generate_random_kcnf(int n, int m, int k, std::uint64_t seed);

// The matching restriction of PHP_n/FPHP_n: pigeon i goes to hole j for each
// pair, every other variable of that pigeon or hole is set to 0.
Assignment matching_restriction(int n, const std::vector<std::pair<int, int>>& matching);

}  // namespace rtl
