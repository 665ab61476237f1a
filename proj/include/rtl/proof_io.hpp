#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "rtl/dimacs.hpp"
#include "rtl/proof.hpp"

namespace rtl {

struct ProofFile {
  Proof proof;
  std::string system;  // optional tag from the header, e.g. "regwrti"
};

// Text format, one node per line in id order after `p proof <nvars> [tag]`:
//   a <lits> 0 | l <ref> <lits> 0 | r <pivot> <left> <right> <lits> 0
//   w <pivot> <left> <right> <lits> 0 | k <child> <lits> 0
// Lines starting with `c` are comments. Errors are ParseError.
ProofFile parse_proof_file(std::istream& in);
Proof parse_proof(std::string_view text);
ProofFile read_proof_file(const std::string& path);

void write_proof(std::ostream& out, const Proof& p, std::string_view system = {});
std::string serialize_proof(const Proof& p, std::string_view system = {});

}  // namespace rtl
