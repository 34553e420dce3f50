#ifndef MAXSAT_REDUCE_HPP
#define MAXSAT_REDUCE_HPP

#include <map>
#include <optional>
#include <string>

#include "maxsat/formula.hpp"
#include "maxsat/trace.hpp"

namespace maxsat {

using RuleCounters = std::map<std::string, long>;

/// Result of one successful rule application.
struct Applied {
  Instance next;
  TraceEntry entry;
};

// The seven reduction rules. Each matches its own pattern deterministically
// (variables ascending, positive literal before negative, lowest clause ids
// among matches) and returns nullopt when the pattern is absent. Rule
// ordering -- rule j fires only when rules i < j do not -- is the driver's
// job, not the matchers'.
std::optional<Applied> rrule1(const Instance& inst);
std::optional<Applied> rrule2(const Instance& inst);
std::optional<Applied> rrule3(const Instance& inst);
std::optional<Applied> rrule4(const Instance& inst);
std::optional<Applied> rrule5(const Instance& inst);
std::optional<Applied> rrule6(const Instance& inst);
std::optional<Applied> rrule7(const Instance& inst);

std::optional<Applied> apply_first_rrule(const Instance& inst);

/// True iff none of R-Rules 1-7 applies.
bool is_irreducible(const Instance& inst);

struct ReduceResult {
  Instance instance;                  // meaningful when !solved
  ReductionTrace trace;
  std::optional<Assignment> solved;   // certificate for the input formula
  int final_k = 0;                    // k when reduction stopped
};

/// Applies R-Rules 1-7 in order, repeatedly, until irreducible. Whenever the
/// formula size exceeds 4k^2 the kernelization runs (R-Rule 7 can grow the
/// formula); a kernel majority answer ends the reduction with a certificate
/// lifted back to the input formula.
ReduceResult apply_rrules(Instance inst, RuleCounters* counters = nullptr);

/// Walks the trace backward, lifting a certificate for the reduced formula to
/// one for the original. For each eliminated variable both truth values are
/// tried and the one satisfying more of the entry's removed clauses is kept;
/// kernel entries replay through the big-clause pigeonhole construction.
/// If sigma satisfies >= k' clauses of `reduced`, the result satisfies
/// >= k' + sum(delta_k) clauses of the original formula.
Assignment reverse_replay(const ReductionTrace& trace, const Formula& reduced,
                          Assignment sigma);

}  // namespace maxsat

#endif
