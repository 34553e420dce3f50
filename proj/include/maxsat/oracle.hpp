#ifndef MAXSAT_ORACLE_HPP
#define MAXSAT_ORACLE_HPP

#include "maxsat/formula.hpp"

namespace maxsat {

struct BruteResult {
  int max = 0;
  Assignment argmax;  // lexicographically first among maxima, variables ascending
};

/// Exact maximum number of simultaneously satisfiable clauses by exhaustive
/// enumeration of all 2^n assignments. Guarded at n <= 26.
/// OpenMP-parallel bitmask kernel; the deterministic reduction keys on
/// (count, lexicographic index) so the result is schedule-independent.
BruteResult brute_maxsat(const Formula& f);

/// Serial reference implementation: plain per-assignment recount, no masks,
/// no pruning. Kept as the independent check for the parallel kernel.
BruteResult brute_maxsat_serial(const Formula& f);

inline bool brute_decision(const Formula& f, int k) {
  if (k <= 0) return true;
  return brute_maxsat(f).max >= k;
}

}  // namespace maxsat

#endif
