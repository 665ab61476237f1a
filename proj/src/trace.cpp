#include "rtl/trace.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "rtl/dimacs.hpp"

namespace rtl {

const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Dll:
      return "dll";
    case Algorithm::DllLUp:
      return "dll-l-up";
    case Algorithm::DllLearn:
      return "dll-learn";
  }
  return "?";
}

std::optional<Algorithm> algorithm_from_name(std::string_view name) {
  if (name == "dll") return Algorithm::Dll;
  if (name == "dll-l-up") return Algorithm::DllLUp;
  if (name == "dll-learn") return Algorithm::DllLearn;
  return std::nullopt;
}

Outcome SearchTrace::outcome() const {
  for (const TraceNode& n : nodes)
    if (n.kind == TraceNode::Kind::Sat) return Outcome::Sat;
  return Outcome::Unsat;
}

std::vector<Clause> SearchTrace::learned() const {
  std::vector<Clause> out;
  if (nodes.empty()) return out;
  // Conflict learning happens on entry, DLL-Learn learning after the children.
  std::vector<std::pair<int, bool>> stack{{0, false}};
  while (!stack.empty()) {
    auto [id, done] = stack.back();
    stack.pop_back();
    const TraceNode& n = nodes[static_cast<std::size_t>(id)];
    if (done) {
      if (n.kind == TraceNode::Kind::Branch && n.clause) out.push_back(*n.clause);
      continue;
    }
    if (n.kind == TraceNode::Kind::Conflict)
      out.insert(out.end(), n.analysis->learned.begin(), n.analysis->learned.end());
    stack.push_back({id, true});
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.push_back({*it, false});
  }
  return out;
}

namespace {

void write_lits(std::ostream& out, const Clause& c) {
  for (Lit l : c) out << ' ' << l.to_dimacs();
  out << " 0";
}

Clause read_clause(std::istringstream& ls, std::size_t lineno) {
  std::vector<Lit> lits;
  long long d;
  while (ls >> d) {
    if (d == 0) return Clause(std::move(lits));
    lits.push_back(Lit::from_dimacs(static_cast<int>(d)));
  }
  throw ParseError(lineno, "clause missing terminating 0");
}

}  // namespace

void write_trace(std::ostream& out, const SearchTrace& t) {
  out << "p trace " << algorithm_name(t.algorithm) << ' ' << t.num_vars << ' ' << t.num_clauses << '\n';
  out << "o " << t.seed << ' ' << t.heuristic << ' ' << t.strategy << ' ' << (t.non_greedy ? 1 : 0) << '\n';
  for (const TraceNode& n : t.nodes) {
    switch (n.kind) {
      case TraceNode::Kind::Branch:
        out << "b " << n.decision.var << ' ' << (n.decision.value ? 1 : 0) << ' ' << n.children.size() << ' '
            << (n.clause ? 1 : 0);
        if (n.clause) write_lits(out, *n.clause);
        out << '\n';
        break;
      case TraceNode::Kind::Falsified:
        out << 'f';
        write_lits(out, *n.clause);
        out << '\n';
        break;
      case TraceNode::Kind::Empty:
        out << "e\n";
        break;
      case TraceNode::Kind::Sat:
        out << 's';
        for (Lit l : n.model) out << ' ' << l.to_dimacs();
        out << " 0\n";
        break;
      case TraceNode::Kind::Conflict:
        out << "x\n";
        write_conflict_graph(out, n.analysis->graph, &n.analysis->decomposition);
        for (const Clause& c : n.analysis->learned) {
          out << 'l';
          write_lits(out, c);
          out << '\n';
        }
        out << "end\n";
        break;
    }
  }
}

std::string serialize_trace(const SearchTrace& t) {
  std::ostringstream os;
  write_trace(os, t);
  return os.str();
}

SearchTrace parse_trace(std::istream& in) {
  SearchTrace t;
  std::string line;
  std::size_t lineno = 0;
  bool header = false, options = false;
  // Children counts of open branch nodes, to rebuild the tree.
  std::vector<std::pair<int, std::size_t>> open;
  auto attach = [&](int id) {
    if (!open.empty()) {
      t.nodes[static_cast<std::size_t>(open.back().first)].children.push_back(id);
    } else if (id != 0) {
      throw ParseError(lineno, "more than one root node");
    }
    while (!open.empty() && t.nodes[static_cast<std::size_t>(open.back().first)].children.size() == open.back().second)
      open.pop_back();
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    try {
      if (tag == "p") {
        std::string kind, algo;
        if (header || !(ls >> kind >> algo >> t.num_vars >> t.num_clauses) || kind != "trace")
          throw ParseError(lineno, "bad trace header");
        auto a = algorithm_from_name(algo);
        if (!a) throw ParseError(lineno, "unknown algorithm '" + algo + "'");
        t.algorithm = *a;
        header = true;
        continue;
      }
      if (!header) throw ParseError(lineno, "record before header");
      if (tag == "o") {
        int ng = 0;
        if (options || !(ls >> t.seed >> t.heuristic >> t.strategy >> ng)) throw ParseError(lineno, "bad options line");
        t.non_greedy = ng != 0;
        options = true;
        continue;
      }
      if (!open.empty() || t.nodes.empty()) {
        // fall through: a node record
      } else {
        throw ParseError(lineno, "record after the trace is complete");
      }
      TraceNode n;
      std::size_t expect = 0;
      if (tag == "b") {
        int value = 0, has = 0;
        if (!(ls >> n.decision.var >> value >> expect >> has) || expect < 1 || expect > 2)
          throw ParseError(lineno, "bad branch record");
        n.decision.value = value != 0;
        if (has) n.clause = read_clause(ls, lineno);
      } else if (tag == "f") {
        n.kind = TraceNode::Kind::Falsified;
        n.clause = read_clause(ls, lineno);
      } else if (tag == "e") {
        n.kind = TraceNode::Kind::Empty;
      } else if (tag == "s") {
        n.kind = TraceNode::Kind::Sat;
        auto c = read_clause(ls, lineno);
        n.model.assign(c.begin(), c.end());
      } else if (tag == "x") {
        n.kind = TraceNode::Kind::Conflict;
        std::ostringstream block;
        std::vector<Clause> learned;
        bool closed = false;
        while (std::getline(in, line)) {
          ++lineno;
          std::istringstream bl(line);
          std::string bt;
          if (!(bl >> bt)) continue;
          if (bt == "end") {
            closed = true;
            break;
          }
          if (bt == "l") {
            learned.push_back(read_clause(bl, lineno));
          } else {
            block << line << '\n';
          }
        }
        if (!closed) throw ParseError(lineno, "conflict block missing 'end'");
        auto cg = parse_conflict_graph(block.str());
        if (!cg.decomposition) throw ParseError(lineno, "conflict block without decomposition");
        n.analysis = ConflictAnalysis{std::move(cg.graph), std::move(*cg.decomposition), std::move(learned)};
      } else {
        throw ParseError(lineno, "unknown record '" + tag + "'");
      }
      int id = static_cast<int>(t.nodes.size());
      t.nodes.push_back(std::move(n));
      attach(id);
      if (expect) open.push_back({id, expect});
    } catch (const std::invalid_argument& e) {
      throw ParseError(lineno, e.what());
    }
  }
  if (!header) throw ParseError(lineno, "missing trace header");
  if (t.nodes.empty()) throw ParseError(lineno, "empty trace");
  if (!open.empty()) throw ParseError(lineno, "trace ends inside a branch");
  return t;
}

SearchTrace parse_trace(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_trace(in);
}

}  // namespace rtl
