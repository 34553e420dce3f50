#ifndef MAXSAT_SIMPLIFIED_HPP
#define MAXSAT_SIMPLIFIED_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include "maxsat/formula.hpp"
#include "maxsat/setcover.hpp"

namespace maxsat {

using Rational = boost::multiprecision::cpp_rational;

/// Yes/No answer with a witnessing assignment on Yes.
struct Outcome {
  bool yes = false;
  Assignment certificate;
};

/// Probability of assigning 1 and the threshold coefficient. The defaults
/// are the constants the endgame analysis fixes; validate() checks
/// coeff * (1 - (1-p)^4) >= 1 exactly, which is what makes the threshold
/// branch sound (the slack is about 6e-5, far too tight for floating point).
struct DerandomizerConfig {
  Rational p{1795, 10000};
  Rational threshold_coeff{1829, 1000};

  void validate() const;
};

/// m + n/2 >= coeff * k, exact rational comparison. Requires a normalized
/// simplified formula.
bool threshold_check(const Formula& f, int k,
                     const DerandomizerConfig& cfg = {});

/// Exact expected number of satisfied clauses when the unassigned variables
/// are independently set to 1 with probability p. A satisfied clause counts
/// 1; an unsatisfied clause counts 1 minus the product of its unassigned
/// literals' false-probabilities.
Rational expected_satisfied(const Formula& f, const Assignment& partial,
                            const Rational& p);

/// Method of conditional expectations in ascending variable order, ties to 0.
/// Requires the threshold to hold; the result satisfies >= ceil(E) >= k
/// clauses.
Assignment derandomized_assignment(const Formula& f, int k,
                                   const DerandomizerConfig& cfg = {});

/// Universe: the m-n non-unit clauses; one set per variable, containing the
/// non-unit clauses its positive literal sits in (size <= 4).
SetCoverInstance to_set_cover(const Formula& f);

/// Variables in the cover get 1, the rest 0; satisfies exactly m - |cover|
/// clauses. Minimum covers yield optimal assignments.
Assignment cover_to_assignment(const Formula& f, const std::set<int>& cover);

struct SimplifiedStats {
  long threshold_leaves = 0;
  long setcover_leaves = 0;
  long setcover_nodes = 0;
  double max_measure_ratio = 0.0;  // max over leaves of 0.6(m+n/2)/k
};

/// Full endgame: the threshold branch answers Yes immediately; otherwise the
/// minimum set cover decides, Yes iff m - t_min >= k.
Outcome solve_simplified(const Formula& f, int k,
                         const DerandomizerConfig& cfg = {},
                         SimplifiedStats* stats = nullptr);

}  // namespace maxsat

#endif
