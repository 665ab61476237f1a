#include "doctest.h"
#include "gen.hpp"
#include "rtl/dimacs.hpp"
#include "rtl/generators.hpp"

using namespace rtl;

TEST_SUITE("dimacs") {
  TEST_CASE("parses clauses in order") {
    Formula f = parse_dimacs("c comment\np cnf 2 2\n1 -2 0\n2 0\n");
    CHECK(f.num_vars() == 2);
    REQUIRE(f.size() == 2);
    CHECK(f[0] == Clause{pos(1), neg(2)});
    CHECK(f[1] == Clause{pos(2)});
  }

  TEST_CASE("empty formula and empty clause") {
    CHECK(parse_dimacs("p cnf 0 0\n").empty());
    Formula f = parse_dimacs("p cnf 1 1\n0\n");
    REQUIRE(f.size() == 1);
    CHECK(f[0].empty());
  }

  TEST_CASE("clauses may span lines and collapse duplicates") {
    Formula f = parse_dimacs("p cnf 3 1\n1 2\n2 -3 0\n");
    REQUIRE(f.size() == 1);
    CHECK(f[0] == Clause{pos(1), pos(2), neg(3)});
  }

  TEST_CASE("errors carry line numbers") {
    auto line_of = [](const char* text) {
      try {
        parse_dimacs(text);
      } catch (const ParseError& e) {
        return e.line();
      }
      return std::size_t{0};
    };
    CHECK(line_of("p cnf x 1\n") == 1);
    CHECK(line_of("p cnf 2 1\n1 3 0\n") == 2);
    CHECK(line_of("p cnf 2 1\n1 2\n") == 2);
    CHECK(line_of("1 2 0\n") == 1);
  }

  TEST_CASE("missing header is an error") { CHECK_THROWS_AS(parse_dimacs(""), ParseError); }

  TEST_CASE("serialize then parse is the identity") {
    testing::Rng rng(5);
    for (int i = 0; i < 20; ++i) {
      Formula f = generate_random_kcnf(8, 20, 3, rng());
      CHECK(parse_dimacs(to_dimacs(f)) == f);
    }
    Formula php = generate_php(3);
    CHECK(parse_dimacs(to_dimacs(php)) == php);
    std::string text = to_dimacs(Formula(2, {Clause{pos(1), neg(2)}}));
    CHECK(text == "p cnf 2 1\n1 -2 0\n");
  }
}
