#include <stdexcept>

#include "rtl/proof_builder.hpp"
#include "rtl/transforms.hpp"

namespace rtl {

namespace {

struct Part {
  bool satisfied = false;
  ProofBuilder::Handle h = -1;
};

}  // namespace

Proof restrict_proof(const Proof& p, const Assignment& rho) {
  if (p.size() > 0 && restrict_clause(p.final_clause(), rho).one())
    throw std::invalid_argument("the restricted root clause is satisfied");
  ProofBuilder b;
  std::vector<Part> part(p.size());
  for (int id = 0; id < p.size(); ++id) {
    const ProofNode& n = p[id];
    switch (n.rule) {
      case Rule::Axiom: {
        auto r = restrict_clause(n.clause, rho);
        if (r.one())
          part[id].satisfied = true;
        else
          part[id].h = b.axiom(r.residual);
        break;
      }
      case Rule::Weakening: {
        auto r = restrict_clause(n.clause, rho);
        const Part& c = part[n.left];
        if (r.one() || c.satisfied) {
          part[id].satisfied = true;
        } else if (b.clause(c.h) == r.residual) {
          part[id] = c;
        } else {
          part[id].h = b.weaken(c.h, r.residual);
        }
        break;
      }
      case Rule::Resolution: {
        const Part& l = part[n.left];
        const Part& r = part[n.right];
        auto value = rho.value(n.pivot);
        if (value) {
          // Pivot literal true: the left premise is satisfied and the right
          // one already lacks its pivot literal after restriction.
          part[id] = *value ? r : l;
        } else if (l.satisfied || r.satisfied) {
          part[id].satisfied = true;
        } else if (!b.clause(l.h).contains(n.pivot)) {
          part[id] = l;
        } else if (!b.clause(r.h).contains(~n.pivot)) {
          part[id] = r;
        } else {
          part[id].h = b.resolve(l.h, r.h, n.pivot);
        }
        break;
      }
      default:
        throw std::invalid_argument("restrict_proof expects a tree with resolution and weakening only");
    }
  }
  if (part[p.root()].satisfied) throw std::invalid_argument("the restricted root clause is satisfied");
  return b.build(part[p.root()].h, p.num_vars());
}

}  // namespace rtl
