#include "rtl/conflict_graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "rtl/dimacs.hpp"

namespace rtl {

ConflictGraph::ConflictGraph(std::vector<NodeSpec> nodes) {
  const int n = static_cast<int>(nodes.size());
  std::unordered_map<std::uint32_t, int> spec_index;
  for (int i = 0; i < n; ++i)
    if (!spec_index.emplace(nodes[i].lit.code(), i).second)
      throw std::invalid_argument("duplicate node " + nodes[i].lit.to_string());

  std::vector<std::vector<int>> spec_preds(n);
  for (int i = 0; i < n; ++i) {
    if (!nodes[i].internal && !nodes[i].preds.empty())
      throw std::invalid_argument("leaf " + nodes[i].lit.to_string() + " has predecessors");
    for (Lit p : nodes[i].preds) {
      auto it = spec_index.find(p.code());
      if (it == spec_index.end())
        throw std::invalid_argument("predecessor " + p.to_string() + " of " + nodes[i].lit.to_string() +
                                    " is not a node");
      spec_preds[i].push_back(it->second);
    }
  }

  // Topological order by depth-first search, predecessors first.
  std::vector<int> order;
  std::vector<char> state(n, 0);
  for (int s = 0; s < n; ++s) {
    if (state[s]) continue;
    std::vector<std::pair<int, std::size_t>> stack{{s, 0}};
    state[s] = 1;
    while (!stack.empty()) {
      auto& [u, next] = stack.back();
      if (next < spec_preds[u].size()) {
        int p = spec_preds[u][next++];
        if (state[p] == 1) throw std::invalid_argument("conflict graph has a cycle");
        if (state[p] == 0) {
          state[p] = 1;
          stack.push_back({p, 0});
        }
        continue;
      }
      state[u] = 2;
      order.push_back(u);
      stack.pop_back();
    }
  }

  std::vector<int> pos_of(n);
  for (int i = 0; i < n; ++i) pos_of[order[i]] = i;
  lits_.resize(n);
  internal_.resize(n);
  preds_.resize(n);
  succs_.resize(n);
  level_.resize(n);
  stamp_.resize(n);
  for (int i = 0; i < n; ++i) {
    const NodeSpec& sp = nodes[order[i]];
    lits_[i] = sp.lit;
    internal_[i] = sp.internal;
    level_[i] = sp.level;
    stamp_[i] = sp.stamp >= 0 ? sp.stamp : i;
    for (int p : spec_preds[order[i]]) preds_[i].push_back(pos_of[p]);
    std::sort(preds_[i].begin(), preds_[i].end());
    preds_[i].erase(std::unique(preds_[i].begin(), preds_[i].end()), preds_[i].end());
    for (int p : preds_[i]) succs_[p].push_back(i);
    index_.emplace(sp.lit.code(), i);
  }

  int conflicts = 0;
  for (int i = 0; i < n; ++i)
    if (lits_[i].negated() && index_.count(pos(lits_[i].var()).code())) {
      conflict_var_ = lits_[i].var();
      ++conflicts;
    }
  if (conflicts != 1)
    throw std::invalid_argument("conflict graph needs exactly one complementary pair, found " +
                                std::to_string(conflicts));

  std::vector<char> reaches(n, 0);
  for (int i = n - 1; i >= 0; --i) {
    reaches[i] = lits_[i].var() == conflict_var_;
    for (int s : succs_[i]) reaches[i] |= reaches[s];
    if (!reaches[i]) throw std::invalid_argument("node " + lits_[i].to_string() + " does not reach the conflict");
  }
}

std::optional<int> ConflictGraph::index_of(Lit l) const {
  auto it = index_.find(l.code());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Clause ConflictGraph::reason(int i) const {
  if (!internal_[i]) throw std::invalid_argument("leaf " + lits_[i].to_string() + " has no reason");
  std::vector<Lit> c{lits_[i]};
  for (int p : preds_[i]) c.push_back(~lits_[p]);
  return Clause(std::move(c));
}

std::vector<int> ConflictGraph::leaves() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (!internal_[i]) out.push_back(i);
  return out;
}

std::vector<Lit> ConflictGraph::internal_lits() const {
  std::vector<Lit> out;
  for (int i = 0; i < size(); ++i)
    if (internal_[i]) out.push_back(lits_[i]);
  return out;
}

std::vector<Clause> ConflictGraph::reasons() const {
  std::vector<Clause> out;
  for (int i = 0; i < size(); ++i)
    if (internal_[i]) out.push_back(reason(i));
  return out;
}

Var ConflictGraph::max_var() const {
  Var m = 0;
  for (Lit l : lits_) m = std::max(m, l.var());
  return m;
}

std::vector<ConflictGraph::NodeSpec> ConflictGraph::specs() const {
  std::vector<NodeSpec> out;
  for (int i = 0; i < size(); ++i) {
    NodeSpec s{lits_[i], static_cast<bool>(internal_[i]), {}, level_[i], stamp_[i]};
    for (int p : preds_[i]) s.preds.push_back(lits_[p]);
    out.push_back(std::move(s));
  }
  return out;
}

std::string ConflictGraph::to_dot() const {
  std::ostringstream os;
  os << "digraph conflict {\n  box [label=\"□\", shape=box];\n";
  for (int i = 0; i < size(); ++i) {
    os << "  \"" << lits_[i].to_string() << "\"";
    if (!internal_[i]) os << " [shape=doublecircle]";
    os << ";\n";
    for (int p : preds_[i]) os << "  \"" << lits_[p].to_string() << "\" -> \"" << lits_[i].to_string() << "\";\n";
    if (lits_[i].var() == conflict_var_) os << "  \"" << lits_[i].to_string() << "\" -> box;\n";
  }
  os << "}\n";
  return os.str();
}

Subgraph::Subgraph(const ConflictGraph& g, const std::vector<Lit>& internal)
    : g_(&g), internal_(g.size(), 0), member_(g.size(), 0) {
  for (Lit l : internal) {
    auto i = g.index_of(l);
    if (!i) throw std::invalid_argument("literal " + l.to_string() + " is not a node of the graph");
    internal_[*i] = 1;
  }
  member_[g.conflict_pos()] = member_[g.conflict_neg()] = 1;
  for (int i = 0; i < g.size(); ++i)
    if (internal_[i]) {
      member_[i] = 1;
      for (int p : g.preds(i)) member_[p] = 1;
    }
}

Subgraph::Subgraph(const ConflictGraph& g) : Subgraph(g, g.internal_lits()) {}

std::vector<int> Subgraph::leaves() const {
  std::vector<int> out;
  for (int i = 0; i < g_->size(); ++i)
    if (leaf(i)) out.push_back(i);
  return out;
}

std::vector<Lit> Subgraph::internal_lits() const {
  std::vector<Lit> out;
  for (int i = 0; i < g_->size(); ++i)
    if (internal_[i]) out.push_back(g_->lit(i));
  std::sort(out.begin(), out.end());
  return out;
}

int Subgraph::internal_count() const { return static_cast<int>(std::count(internal_.begin(), internal_.end(), 1)); }

std::vector<int> Subgraph::depths() const {
  std::vector<int> d(g_->size(), 0);
  for (int i = 0; i < g_->size(); ++i) {
    if (!internal_[i]) continue;
    int best = 0;
    for (int p : g_->preds(i)) best = std::max(best, d[p]);
    d[i] = best + 1;
  }
  return d;
}

Clause Subgraph::conflict_clause() const {
  std::vector<Lit> c;
  for (int i : leaves()) c.push_back(~g_->lit(i));
  return Clause(std::move(c));
}

std::optional<Clause> Subgraph::induced_clause(Lit l) const {
  auto idx = g_->index_of(l);
  if (!idx || !member_[*idx]) throw std::invalid_argument("literal " + l.to_string() + " is not a node of H");
  if (!internal_[*idx]) throw std::invalid_argument("literal " + l.to_string() + " is a leaf of H");
  if (g_->preds(*idx).empty()) return std::nullopt;
  std::vector<char> seen(g_->size(), 0);
  std::vector<int> stack{*idx};
  std::vector<Lit> c{l};
  seen[*idx] = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    if (!internal_[u]) {
      c.push_back(~g_->lit(u));
      continue;
    }
    for (int p : g_->preds(u))
      if (!seen[p]) {
        seen[p] = 1;
        stack.push_back(p);
      }
  }
  return Clause(std::move(c));
}

std::vector<std::string> Subgraph::problems() const {
  std::vector<std::string> out;
  const ConflictGraph& g = *g_;
  const Var x = g.conflict_var();
  for (int i = 0; i < g.size(); ++i) {
    if (!internal_[i]) continue;
    if (g.is_leaf(i)) out.push_back("leaf " + g.lit(i).to_string() + " of G is internal in H");
    if (g.lit(i).var() == x) continue;
    bool reaches = std::any_of(g.succs(i).begin(), g.succs(i).end(), [&](int s) { return internal_[s] != 0; });
    if (!reaches) out.push_back("internal node " + g.lit(i).to_string() + " has no successor in H");
  }
  // Proper: nothing reachable in G from an internal node is a leaf of H.
  std::vector<char> below(g.size(), 0);
  for (int i = 0; i < g.size(); ++i) {
    if (internal_[i]) below[i] = 1;
    if (!below[i]) continue;
    if (leaf(i)) out.push_back("leaf " + g.lit(i).to_string() + " of H is reachable from an internal node");
    for (int s : g.succs(i)) below[s] = 1;
  }
  return out;
}

Clause conflict_clause(const ConflictGraph& g) { return Subgraph(g).conflict_clause(); }

std::optional<Clause> induced_clause(const ConflictGraph& g, Lit l) { return Subgraph(g).induced_clause(l); }

Decomposition Decomposition::series(std::vector<std::vector<Lit>> chain) {
  Decomposition d;
  d.cuts = {0, static_cast<int>(chain.size()) - 1};
  d.chain = std::move(chain);
  return d;
}

Decomposition Decomposition::parallel(std::vector<std::vector<Lit>> chain) {
  Decomposition d;
  for (int i = 0; i < static_cast<int>(chain.size()); ++i) d.cuts.push_back(i);
  d.chain = std::move(chain);
  return d;
}

namespace {

std::set<Lit> as_set(const std::vector<Lit>& v) { return {v.begin(), v.end()}; }

std::string label(const Decomposition& d, int pos) {
  int i = 0;
  while (i + 1 < static_cast<int>(d.cuts.size()) && d.cuts[i + 1] <= pos) ++i;
  return "H_{" + std::to_string(i) + "," + std::to_string(pos - d.cuts[i]) + "}";
}

}  // namespace

DecompositionVerdict validate_decomposition(const ConflictGraph& g, const Decomposition& d) {
  DecompositionVerdict v;
  auto& out = v.problems;
  const int len = static_cast<int>(d.chain.size());
  if (len < 2) {
    out.push_back("decomposition needs at least H_0 and G");
    return v;
  }
  if (d.cuts.size() < 2 || d.cuts.front() != 0 || d.cuts.back() != len - 1)
    out.push_back("parallel cuts must start at H_0 and end at G");
  for (std::size_t i = 1; i < d.cuts.size(); ++i)
    if (d.cuts[i] <= d.cuts[i - 1]) out.push_back("parallel cuts must be strictly increasing");
  if (!out.empty()) return v;
  if (!d.chain.front().empty()) out.push_back("H_0 must consist of the conflict pair only");
  if (as_set(d.chain.back()) != as_set(g.internal_lits())) out.push_back("the last element must be G");
  for (int t = 0; t < len; ++t) {
    for (Lit l : d.chain[t])
      if (!g.index_of(l)) {
        out.push_back(label(d, t) + ": " + l.to_string() + " is not a node of G");
        return v;
      }
    for (const std::string& p : Subgraph(g, d.chain[t]).problems()) out.push_back(label(d, t) + ": " + p);
    if (t > 0) {
      auto a = as_set(d.chain[t - 1]), b = as_set(d.chain[t]);
      if (a == b || !std::includes(b.begin(), b.end(), a.begin(), a.end()))
        out.push_back(label(d, t) + " must strictly contain " + label(d, t - 1));
    }
  }
  return v;
}

std::vector<Clause> LearnableSet::clauses() const {
  std::vector<Clause> out;
  for (const auto& it : items) out.push_back(it.clause);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool LearnableSet::contains(const Clause& c) const {
  return std::any_of(items.begin(), items.end(), [&](const LearnableClause& it) { return it.clause == c; });
}

LearnableSet learnable_clauses(const ConflictGraph& g, const Decomposition& d) {
  auto v = validate_decomposition(g, d);
  if (!v.accepted()) throw std::invalid_argument("invalid decomposition: " + v.problems.front());
  LearnableSet out;
  for (int j = 1; j <= d.m(0); ++j)
    out.items.push_back({LearnableClause::Kind::Conflict, Subgraph(g, d.at(0, j)).conflict_clause(), 0, j});
  for (int i = 1; i < d.k(); ++i) {
    Subgraph hi(g, d.at(i, 0));
    for (int j = 1; j <= d.m(i); ++j) {
      Subgraph hij(g, d.at(i, j));
      for (int u : hi.leaves()) {
        if (hij.leaf(u)) continue;
        if (auto c = hij.induced_clause(g.lit(u)))
          out.items.push_back({LearnableClause::Kind::Induced, *c, i, j, g.lit(u)});
      }
    }
  }
  return out;
}

Decomposition trivial_decomposition(const ConflictGraph& g) { return Decomposition::series({{}, g.internal_lits()}); }

namespace {

// Nodes ordered so that every edge goes from a smaller to a larger key.
bool later(const ConflictGraph& g, int a, int b) {
  if (g.level(a) != g.level(b)) return g.level(a) > g.level(b);
  return g.stamp(a) > g.stamp(b);
}

}  // namespace

std::vector<Lit> first_uip_cut(const ConflictGraph& g) {
  std::set<int> frontier{g.conflict_pos(), g.conflict_neg()};
  std::vector<char> absorbed(g.size(), 0);
  const int top = std::max(g.level(g.conflict_pos()), g.level(g.conflict_neg()));
  std::vector<Lit> cut;
  for (;;) {
    int at_top = 0;
    int pick = -1;
    for (int v : frontier) {
      if (g.level(v) == top) ++at_top;
      if (g.is_internal(v) && (pick < 0 || later(g, v, pick))) pick = v;
    }
    if ((!cut.empty() && at_top <= 1) || pick < 0) break;
    frontier.erase(pick);
    absorbed[pick] = 1;
    cut.push_back(g.lit(pick));
    for (int p : g.preds(pick))
      if (!absorbed[p]) frontier.insert(p);
  }
  std::sort(cut.begin(), cut.end());
  return cut;
}

Decomposition first_uip_decomposition(const ConflictGraph& g) {
  auto cut = first_uip_cut(g);
  auto all = g.internal_lits();
  if (as_set(cut) == as_set(all)) return Decomposition::series({{}, all});
  return Decomposition::series({{}, cut, all});
}

Decomposition latest_first_decomposition(const ConflictGraph& g) {
  std::vector<int> nodes;
  for (int i = 0; i < g.size(); ++i)
    if (g.is_internal(i)) nodes.push_back(i);
  std::sort(nodes.begin(), nodes.end(), [&](int a, int b) { return later(g, a, b); });
  std::vector<std::vector<Lit>> chain{{}};
  std::vector<Lit> acc;
  for (int v : nodes) {
    acc.push_back(g.lit(v));
    chain.push_back(acc);
    std::sort(chain.back().begin(), chain.back().end());
  }
  return Decomposition::series(std::move(chain));
}

namespace {

std::vector<Lit> read_lit_list(std::istringstream& ls, std::size_t lineno) {
  std::vector<Lit> out;
  long long d;
  while (ls >> d) {
    if (d == 0) return out;
    out.push_back(Lit::from_dimacs(static_cast<int>(d)));
  }
  throw ParseError(lineno, "list missing terminating 0");
}

}  // namespace

ConflictGraphFile parse_conflict_graph(std::istream& in) {
  std::vector<ConflictGraph::NodeSpec> specs;
  std::unordered_map<std::uint32_t, std::size_t> where;
  std::vector<Lit> mentioned;
  std::vector<std::tuple<int, int, std::vector<Lit>>> hs;
  std::string line;
  std::size_t lineno = 0;
  auto declare = [&](Lit l, bool internal, std::size_t at) -> ConflictGraph::NodeSpec& {
    auto it = where.find(l.code());
    if (it != where.end()) throw ParseError(at, "node " + l.to_string() + " declared twice");
    where.emplace(l.code(), specs.size());
    specs.push_back({l, internal, {}});
    return specs.back();
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == 'c') continue;
    try {
      if (tag == "n") {
        int lit = 0;
        if (!(ls >> lit) || lit == 0) throw ParseError(lineno, "bad node literal");
        auto preds = read_lit_list(ls, lineno);
        mentioned.insert(mentioned.end(), preds.begin(), preds.end());
        declare(Lit::from_dimacs(lit), true, lineno).preds = std::move(preds);
      } else if (tag == "f") {
        int lit = 0;
        if (!(ls >> lit) || lit == 0) throw ParseError(lineno, "bad leaf literal");
        declare(Lit::from_dimacs(lit), false, lineno);
      } else if (tag == "h") {
        int i = -1, j = -1;
        if (!(ls >> i >> j) || i < 0 || j < 0) throw ParseError(lineno, "bad subgraph label");
        hs.emplace_back(i, j, read_lit_list(ls, lineno));
      } else {
        throw ParseError(lineno, "unknown tag '" + tag + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw ParseError(lineno, e.what());
    }
  }
  for (Lit l : mentioned)
    if (!where.count(l.code())) {
      where.emplace(l.code(), specs.size());
      specs.push_back({l, false, {}});
    }
  ConflictGraphFile out;
  try {
    out.graph = ConflictGraph(std::move(specs));
  } catch (const std::invalid_argument& e) {
    throw ParseError(lineno, e.what());
  }
  if (!hs.empty()) {
    Decomposition d;
    int expect_i = 0;
    for (std::size_t t = 0; t < hs.size(); ++t) {
      auto& [i, j, lits] = hs[t];
      if (j == 0) {
        if (i != expect_i) throw ParseError(lineno, "subgraphs out of order");
        ++expect_i;
        d.cuts.push_back(static_cast<int>(t));
      }
      std::sort(lits.begin(), lits.end());
      d.chain.push_back(std::move(lits));
    }
    out.decomposition = std::move(d);
  }
  return out;
}

ConflictGraphFile parse_conflict_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_conflict_graph(in);
}

void write_conflict_graph(std::ostream& out, const ConflictGraph& g, const Decomposition* d) {
  for (int i = 0; i < g.size(); ++i) {
    if (g.is_leaf(i)) {
      out << "f " << g.lit(i).to_dimacs() << '\n';
      continue;
    }
    out << "n " << g.lit(i).to_dimacs();
    for (int p : g.preds(i)) out << ' ' << g.lit(p).to_dimacs();
    out << " 0\n";
  }
  if (!d) return;
  for (int t = 0; t < static_cast<int>(d->chain.size()); ++t) {
    int i = 0;
    while (i + 1 < static_cast<int>(d->cuts.size()) && d->cuts[i + 1] <= t) ++i;
    out << "h " << i << ' ' << t - d->cuts[i];
    for (Lit l : d->chain[t]) out << ' ' << l.to_dimacs();
    out << " 0\n";
  }
}

}  // namespace rtl
