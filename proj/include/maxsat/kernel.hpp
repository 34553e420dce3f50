#ifndef MAXSAT_KERNEL_HPP
#define MAXSAT_KERNEL_HPP

#include "maxsat/formula.hpp"
#include "maxsat/trace.hpp"

namespace maxsat {

/// Either the instance was recognized as a Yes-instance (with a certificate
/// for the input formula) or it was reduced to m < 2k with clause sizes
/// <= k-1, hence size(F) <= 2k(k-1).
struct KernelOutcome {
  bool solved = false;
  Assignment certificate;  // valid for the input formula when solved
  Instance instance;       // when !solved
  ReductionTrace trace;    // big-clause removals (empty when solved)
  int big_clause_firings = 0;
  int final_k = 0;
};

/// Total assignment satisfying at least ceil(m/2) clauses, built by the
/// method of conditional expectations under independent fair coin flips,
/// ties resolved to 0. Exact rational arithmetic throughout.
Assignment majority_witness(const Formula& f);

/// If m >= 2k the instance is a Yes-instance and the majority witness
/// (lifted through any prior big-clause removals) certifies it; otherwise
/// clauses of size >= k are removed while k decreases, re-checking m >= 2k
/// after each removal.
KernelOutcome kernelize(Instance inst);

/// Certificate direction of the big-clause rule: given sigma' satisfying
/// >= k-1 clauses of F \ {C} (f_post), returns sigma satisfying >= k clauses
/// of F. If sigma' misses C, some variable of C is uncharged -- no satisfied
/// clause has its unique true literal on it -- and flipping it satisfies C
/// without unsatisfying anything.
Assignment lift_big_clause(const TraceEntry& entry, const Formula& f_post,
                           Assignment sigma, int k_before);

}  // namespace maxsat

#endif
