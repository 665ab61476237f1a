#include <sstream>

#include "doctest.h"
#include "gen.hpp"
#include "rtl/proof_builder.hpp"
#include "rtl/proof_io.hpp"

using namespace rtl;

TEST_SUITE("proof_io") {
  TEST_CASE("three-node refutation") {
    const char* text = "p proof 1\na 1 0\na -1 0\nr 1 0 1 0\n";
    Proof p = parse_proof(text);
    CHECK(p.size() == 3);
    CHECK(p.final_clause().empty());
    CHECK(serialize_proof(p) == text);
  }

  TEST_CASE("system tag in the header") {
    std::istringstream in("p proof 1 regwrtl\na 1 0\na -1 0\nw 1 0 1 0\n");
    ProofFile f = parse_proof_file(in);
    CHECK(f.system == "regwrtl");
    CHECK(f.proof[2].rule == Rule::WResolution);
    CHECK(serialize_proof(f.proof, "regwrtl").rfind("p proof 1 regwrtl\n", 0) == 0);
  }

  TEST_CASE("signed pivots and weakening") {
    const char* text = "p proof 2\nc forwarded\na -1 0\nk 0 -1 2 0\na 1 0\nr -1 1 2 2 0\n";
    Proof p = parse_proof(text);
    CHECK(p[3].pivot == neg(1));
    CHECK(p[1].rule == Rule::Weakening);
    CHECK(parse_proof(serialize_proof(p)) == p);
  }

  TEST_CASE("parse errors") {
    auto line_of = [](const char* text) -> long {
      try {
        parse_proof(text);
      } catch (const ParseError& e) {
        return static_cast<long>(e.line());
      }
      return -1;
    };
    CHECK(line_of("p proof 1\na 1 0\nl 1 1 0\n") == 3);
    CHECK(line_of("p proof 1\n") >= 0);
    CHECK(line_of("a 1 0\n") == 1);
    CHECK(line_of("p proof 1\na 2 0\n") == 2);
    CHECK(line_of("p proof 1\na 1 0\nr 1 0 5 0\n") == 3);
    CHECK(line_of("p proof 1\na 1 0\nq 1 0\n") == 3);
  }

  TEST_CASE("round trip on generated proofs") {
    testing::Rng rng(23);
    for (int i = 0; i < 30; ++i) {
      auto inst = testing::random_rd(rng, 8, 30, 10);
      Proof p = testing::insert_weakenings(rng, inst.proof, 0.2);
      CHECK(parse_proof(serialize_proof(p)) == p);
    }
  }
}
