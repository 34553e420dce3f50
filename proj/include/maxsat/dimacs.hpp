#ifndef MAXSAT_DIMACS_HPP
#define MAXSAT_DIMACS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "maxsat/formula.hpp"

namespace maxsat {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what),
        line(line_) {}
};

struct ParsedCnf {
  Formula formula;
  int header_vars = 0;
  int header_clauses = 0;
  int max_var = 0;  // highest id actually seen
  std::vector<std::string> warnings;
};

/// DIMACS CNF: `c` comments, `p cnf <n> <m>` header, clauses as
/// whitespace-separated nonzero integers terminated by 0. Duplicate literals
/// within a clause collapse. Header counts are validated; mismatches warn and
/// the parsed counts win.
ParsedCnf parse_dimacs(std::istream& in);
ParsedCnf parse_dimacs(const std::string& text);

std::string emit_dimacs(const Formula& f);

}  // namespace maxsat

#endif
