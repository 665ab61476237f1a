#include "rtl/proof_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace rtl {

namespace {

long long read_int(std::istringstream& ls, std::size_t lineno, const char* what) {
  std::string tok;
  if (!(ls >> tok)) throw ParseError(lineno, std::string("missing ") + what);
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size()) throw ParseError(lineno, std::string("bad ") + what + " '" + tok + "'");
  return v;
}

Clause read_lits(std::istringstream& ls, std::size_t lineno, Var nvars) {
  std::vector<Lit> lits;
  for (;;) {
    std::string tok;
    if (!(ls >> tok)) throw ParseError(lineno, "clause missing terminating 0");
    std::size_t used = 0;
    long long d = 0;
    try {
      d = std::stoll(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw ParseError(lineno, "bad literal '" + tok + "'");
    if (d == 0) break;
    long long v = d < 0 ? -d : d;
    if (v > static_cast<long long>(nvars))
      throw ParseError(lineno, "literal " + tok + " exceeds variable count");
    lits.push_back(Lit(static_cast<Var>(v), d < 0));
  }
  std::string extra;
  if (ls >> extra) throw ParseError(lineno, "trailing tokens after 0");
  return Clause(std::move(lits));
}

int read_id(std::istringstream& ls, std::size_t lineno, const char* what, int self) {
  long long v = read_int(ls, lineno, what);
  if (v < 0 || v >= self)
    throw ParseError(lineno, std::string(what) + " " + std::to_string(v) + " must refer to an earlier node");
  return static_cast<int>(v);
}

}  // namespace

ProofFile parse_proof_file(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  Var nvars = 0;
  std::string system;
  std::vector<ProofNode> nodes;
  std::vector<std::size_t> lines;

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == 'c') continue;
    if (tag == "p") {
      if (have_header) throw ParseError(lineno, "duplicate header");
      std::string kind;
      long long n = -1;
      if (!(ls >> kind >> n) || kind != "proof" || n < 0)
        throw ParseError(lineno, "malformed header, expected 'p proof <vars>'");
      ls >> system;
      have_header = true;
      nvars = static_cast<Var>(n);
      continue;
    }
    if (!have_header) throw ParseError(lineno, "node before header");
    const int self = static_cast<int>(nodes.size());
    ProofNode node;
    if (tag == "a") {
      node = ProofNode::axiom(read_lits(ls, lineno, nvars));
    } else if (tag == "l") {
      int ref = read_id(ls, lineno, "lemma reference", self);
      node = ProofNode::lemma(ref, read_lits(ls, lineno, nvars));
    } else if (tag == "r" || tag == "w") {
      long long piv = read_int(ls, lineno, "pivot");
      if (piv == 0 || (piv < 0 ? -piv : piv) > static_cast<long long>(nvars))
        throw ParseError(lineno, "bad pivot " + std::to_string(piv));
      int left = read_id(ls, lineno, "left child", self);
      int right = read_id(ls, lineno, "right child", self);
      Clause c = read_lits(ls, lineno, nvars);
      Lit p = Lit::from_dimacs(static_cast<int>(piv));
      node = tag == "r" ? ProofNode::resolution(p, left, right, std::move(c))
                        : ProofNode::w_resolution(p, left, right, std::move(c));
    } else if (tag == "k") {
      int child = read_id(ls, lineno, "weakening child", self);
      node = ProofNode::weakening(child, read_lits(ls, lineno, nvars));
    } else {
      throw ParseError(lineno, "unknown node tag '" + tag + "'");
    }
    nodes.push_back(std::move(node));
    lines.push_back(lineno);
  }
  if (!have_header) throw ParseError(lineno, "missing header");
  if (nodes.empty()) throw ParseError(lineno, "proof has no nodes (no root)");
  try {
    return {Proof(nvars, std::move(nodes)), system};
  } catch (const ProofStructureError& e) {
    throw ParseError(lines[static_cast<std::size_t>(e.node())], e.what());
  }
}

Proof parse_proof(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_proof_file(in).proof;
}

ProofFile read_proof_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_proof_file(in);
}

void write_proof(std::ostream& out, const Proof& p, std::string_view system) {
  out << "p proof " << p.num_vars();
  if (!system.empty()) out << ' ' << system;
  out << '\n';
  for (const ProofNode& n : p.nodes()) {
    switch (n.rule) {
      case Rule::Axiom: out << "a "; break;
      case Rule::Lemma: out << "l " << n.ref << ' '; break;
      case Rule::Resolution:
        out << "r " << n.pivot.to_dimacs() << ' ' << n.left << ' ' << n.right << ' ';
        break;
      case Rule::WResolution:
        out << "w " << n.pivot.to_dimacs() << ' ' << n.left << ' ' << n.right << ' ';
        break;
      case Rule::Weakening: out << "k " << n.left << ' '; break;
    }
    for (Lit l : n.clause) out << l.to_dimacs() << ' ';
    out << "0\n";
  }
}

std::string serialize_proof(const Proof& p, std::string_view system) {
  std::ostringstream os;
  write_proof(os, p, system);
  return os.str();
}

}  // namespace rtl
