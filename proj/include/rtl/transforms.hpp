#pragma once

#include "rtl/cnf.hpp"
#include "rtl/proof.hpp"

namespace rtl {

// Removes w-resolution and weakening. Each w-resolution whose pivot literals
// are both still present becomes a resolution; otherwise the premise lacking
// its pivot literal is forwarded. The result proves a subset of the original
// root clause with at most as many nodes, keeps tree shape, and keeps
// regularity. Throws std::invalid_argument if p is not a valid proof from f.
Proof eliminate_weakening(const Proof& p, const Formula& f);

// Unfolds a resolution dag (tree with lemmas) into a tree with input lemmas.
// Duplicate clauses are merged first. The k-th occurrence of a derived clause C
// is kept as a derivation while k <= depth(C) and becomes a lemma leaf after.
Proof unfold_to_rti(const Proof& p, const Formula& f);

// Restricts a tree proof using resolution and weakening by rho. The result
// proves a subset of C|rho from the clauses of F|rho (a falsified axiom becomes
// □). Throws std::invalid_argument if C|rho = 1 or p uses other rules.
Proof restrict_proof(const Proof& p, const Assignment& rho);

// Input proof of {q} over VE(F): resolve d and e, then each literal l of the
// resolvent against {q, l̄}. Has exactly 2|C|+3 nodes. The pivot is the literal
// in d; q defaults to num_vars(F)+1 recovered from f_ve.
Proof build_input_chain(const Clause& d, const Clause& e, Var x, const Formula& f_ve);
Proof build_input_chain(const Clause& d, const Clause& e, Lit pivot, Var q, const Formula& f_ve);

// Simulates a resolution dag of C from F by a regular w-resolution tree with
// input lemmas of C from VE(F), of size at most 2s(d+2)+1.
Proof ve_simulate(const Proof& p, const Formula& f);

// Size and depth of the duplicate-free dag underlying a resolution proof.
struct DagStats {
  int size = 0;
  int depth = 0;
  int derived = 0;
};
DagStats dag_stats(const Proof& p);

}  // namespace rtl
