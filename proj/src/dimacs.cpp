#include "rtl/dimacs.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace rtl {

Formula parse_dimacs(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  long long num_vars = 0;
  std::vector<Clause> clauses;
  std::vector<Lit> pending;
  std::size_t pending_line = 0;

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok[0] == 'c') continue;
    if (tok[0] == '%') break;
    if (tok == "p") {
      if (have_header) throw ParseError(lineno, "duplicate header");
      std::string fmt;
      long long n = -1, m = -1;
      if (!(ls >> fmt >> n >> m) || fmt != "cnf" || n < 0 || m < 0)
        throw ParseError(lineno, "malformed header, expected 'p cnf <vars> <clauses>'");
      std::string extra;
      if (ls >> extra) throw ParseError(lineno, "trailing tokens after header");
      have_header = true;
      num_vars = n;
      continue;
    }
    if (!have_header) throw ParseError(lineno, "clause before header");
    do {
      long long d = 0;
      std::size_t used = 0;
      try {
        d = std::stoll(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw ParseError(lineno, "bad literal '" + tok + "'");
      if (d == 0) {
        clauses.emplace_back(std::move(pending));
        pending.clear();
        continue;
      }
      long long v = d < 0 ? -d : d;
      if (v > num_vars)
        throw ParseError(lineno, "literal " + tok + " exceeds declared variable count " +
                                     std::to_string(num_vars));
      if (pending.empty()) pending_line = lineno;
      pending.push_back(Lit(static_cast<Var>(v), d < 0));
    } while (ls >> tok);
  }
  if (!have_header) throw ParseError(lineno, "missing header");
  if (!pending.empty()) throw ParseError(pending_line, "clause missing terminating 0");
  return Formula(static_cast<Var>(num_vars), std::move(clauses));
}

Formula parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_dimacs(in);
}

Formula read_dimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_dimacs(in);
}

void write_dimacs(std::ostream& out, const Formula& f) {
  out << "p cnf " << f.num_vars() << ' ' << f.size() << '\n';
  for (const Clause& c : f.clauses()) {
    for (Lit l : c) out << l.to_dimacs() << ' ';
    out << "0\n";
  }
}

std::string to_dimacs(const Formula& f) {
  std::ostringstream os;
  write_dimacs(os, f);
  return os.str();
}

}  // namespace rtl
