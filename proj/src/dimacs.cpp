#include "maxsat/dimacs.hpp"

#include <algorithm>
#include <sstream>

namespace maxsat {

ParsedCnf parse_dimacs(std::istream& in) {
  ParsedCnf out;
  bool header_seen = false;
  std::vector<Lit> current;
  int line_no = 0;
  int clauses_read = 0;
  std::string line;
  int open_clause_line = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == 'c' || line[0] == 'C') continue;
    if (line[0] == 'p') {
      if (header_seen) throw ParseError(line_no, "duplicate header");
      std::istringstream hs(line);
      std::string p, fmt;
      int n = 0, m = 0;
      hs >> p >> fmt >> n >> m;
      if (hs.fail() || fmt != "cnf")
        throw ParseError(line_no, "malformed header, expected 'p cnf <n> <m>'");
      out.header_vars = n;
      out.header_clauses = m;
      header_seen = true;
      continue;
    }
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      int v;
      try {
        size_t pos = 0;
        v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw ParseError(line_no, "bad token '" + tok + "'");
      }
      if (v == 0) {
        if (current.empty()) {
          out.warnings.push_back("line " + std::to_string(line_no) +
                                 ": empty clause dropped");
        } else {
          out.formula.add_clause(current);
          ++clauses_read;
        }
        current.clear();
        open_clause_line = 0;
      } else {
        current.push_back(Lit::from_dimacs(v));
        out.max_var = std::max(out.max_var, std::abs(v));
        if (!open_clause_line) open_clause_line = line_no;
      }
    }
  }
  if (!current.empty())
    throw ParseError(open_clause_line, "clause not terminated by 0");
  if (!header_seen)
    out.warnings.push_back("missing 'p cnf' header");
  if (header_seen && clauses_read != out.header_clauses)
    out.warnings.push_back("header declares " + std::to_string(out.header_clauses) +
                           " clauses, parsed " + std::to_string(clauses_read));
  if (header_seen && out.max_var > out.header_vars)
    out.warnings.push_back("header declares " + std::to_string(out.header_vars) +
                           " variables, saw id " + std::to_string(out.max_var));
  return out;
}

ParsedCnf parse_dimacs(const std::string& text) {
  std::istringstream is(text);
  return parse_dimacs(is);
}

std::string emit_dimacs(const Formula& f) {
  int max_var = 0;
  for (Var v : f.variables()) max_var = std::max(max_var, v);
  std::ostringstream os;
  os << "p cnf " << max_var << " " << f.clause_count() << "\n";
  for (const auto& [id, c] : f.clauses()) {
    for (Lit l : c.lits) os << l.to_dimacs() << " ";
    os << "0\n";
  }
  return os.str();
}

}  // namespace maxsat
