#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "rtl/cnf.hpp"

namespace rtl {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

Formula parse_dimacs(std::istream& in);
Formula parse_dimacs(std::string_view text);
Formula read_dimacs_file(const std::string& path);

void write_dimacs(std::ostream& out, const Formula& f);
std::string to_dimacs(const Formula& f);

}  // namespace rtl
