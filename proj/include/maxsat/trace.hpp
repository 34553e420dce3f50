#ifndef MAXSAT_TRACE_HPP
#define MAXSAT_TRACE_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "maxsat/formula.hpp"

namespace maxsat {

enum class RuleId { R1, R2, R3, R4, R5, R6, R7, KernelBigClause };

const char* rule_name(RuleId r);

/// One reduction step. A clause modified in place (a literal deleted) is
/// recorded as removed (the old content) plus added (the new content, same
/// id), so replaying forward is uniformly "remove the removed ids, insert
/// the added clauses" and backward the reverse.
struct TraceEntry {
  RuleId rule;
  std::vector<Clause> removed;
  std::vector<Clause> added;
  std::optional<Var> pivot;  // variable eliminated by the step, if any
  int delta_k = 0;
  int k_before = 0;
  std::vector<std::pair<std::string, std::string>> bindings;
};

struct ReductionTrace {
  std::vector<TraceEntry> entries;

  void append(TraceEntry e) { entries.push_back(std::move(e)); }
  void append_all(const ReductionTrace& other) {
    entries.insert(entries.end(), other.entries.begin(), other.entries.end());
  }
  bool empty() const { return entries.empty(); }

  /// Line-oriented text form: one entry per line with rule id, bound ids,
  /// and the parameter drop.
  std::string to_text() const;
};

/// Applies one entry forward: f must be the formula the entry was recorded
/// on. Used by replay tests.
void replay_entry_forward(Formula& f, const TraceEntry& e);
/// Inverts one entry: f must be the post-entry formula.
void replay_entry_backward(Formula& f, const TraceEntry& e);

}  // namespace maxsat

#endif
