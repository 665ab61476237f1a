#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "rtl/conflict_graph.hpp"

namespace rtl {

namespace {

struct Implied {
  int stamp = 0;
  int level = 0;
  int reason = -1;  // clause index, -1 for a literal of the starting assignment
};

}  // namespace

std::optional<ConflictGraph> find_conflict_graph(const Formula& f, const Assignment& a, PropagationOrder order) {
  Assignment cur = a;
  std::unordered_map<Var, Implied> info;
  int next_stamp = 0;
  for (Lit l : a.trail()) {
    info[l.var()] = {next_stamp, next_stamp + 1, -1};
    ++next_stamp;
  }

  int falsified = -1;
  for (bool progress = true; progress && falsified < 0;) {
    progress = false;
    for (std::size_t ci = 0; ci < f.size(); ++ci) {
      const Clause& c = f[ci];
      if (c.empty()) continue;
      bool satisfied = false;
      int open = 0;
      Lit unit{};
      for (Lit l : c) {
        auto v = cur.value(l);
        if (!v) {
          ++open;
          unit = l;
        } else if (*v) {
          satisfied = true;
          break;
        }
      }
      if (satisfied || open > 1) continue;
      if (open == 0) {
        falsified = static_cast<int>(ci);
        break;
      }
      int level = 0;
      for (Lit l : c)
        if (l != unit) level = std::max(level, info[l.var()].level);
      cur.set_true(unit);
      info[unit.var()] = {next_stamp++, level, static_cast<int>(ci)};
      progress = true;
      if (order == PropagationOrder::LowestIndexFirst) break;
    }
  }
  if (falsified < 0) return std::nullopt;

  const Clause& conflict = f[static_cast<std::size_t>(falsified)];
  Lit x = *std::max_element(conflict.begin(), conflict.end(),
                            [&](Lit p, Lit q) { return info[p.var()].stamp < info[q.var()].stamp; });

  std::vector<ConflictGraph::NodeSpec> specs;
  ConflictGraph::NodeSpec top{x, true, {}, 0, next_stamp};
  for (Lit l : conflict)
    if (l != x) {
      top.preds.push_back(~l);
      top.level = std::max(top.level, info[l.var()].level);
    }
  specs.push_back(top);

  std::vector<Lit> work{~x};
  for (Lit l : top.preds) work.push_back(l);
  std::unordered_map<std::uint32_t, bool> added;
  while (!work.empty()) {
    Lit t = work.back();
    work.pop_back();
    if (!added.emplace(t.code(), true).second) continue;
    const Implied& it = info[t.var()];
    ConflictGraph::NodeSpec s{t, it.reason >= 0, {}, it.level, it.stamp};
    if (it.reason >= 0)
      for (Lit l : f[static_cast<std::size_t>(it.reason)])
        if (l != t) {
          s.preds.push_back(~l);
          work.push_back(~l);
        }
    specs.push_back(std::move(s));
  }
  return ConflictGraph(std::move(specs));
}

ConflictGraph conflict_graph_from_falsified(const Clause& c, const Assignment& a) {
  if (c.empty()) throw std::invalid_argument("the empty clause has no conflict graph");
  std::unordered_map<Var, int> when;
  for (std::size_t i = 0; i < a.trail().size(); ++i) when[a.trail()[i].var()] = static_cast<int>(i);
  for (Lit l : c)
    if (!a.is_false(l)) throw std::invalid_argument("clause " + c.to_string() + " is not falsified");
  Lit x = *std::max_element(c.begin(), c.end(), [&](Lit p, Lit q) { return when[p.var()] < when[q.var()]; });
  std::vector<ConflictGraph::NodeSpec> specs;
  ConflictGraph::NodeSpec top{x, true, {}, 0, static_cast<int>(a.size())};
  for (Lit l : c) {
    int w = when[l.var()];
    if (l != x) top.preds.push_back(~l);
    top.level = std::max(top.level, w + 1);
    specs.push_back({~l, false, {}, w + 1, w});
  }
  specs.push_back(std::move(top));
  return ConflictGraph(std::move(specs));
}

}  // namespace rtl
