#ifndef MAXSAT_FORMULA_HPP
#define MAXSAT_FORMULA_HPP

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace maxsat {

using Var = int;       // 1-based variable ids
using ClauseId = int;  // unique within a Formula, never reused

/// A literal: a variable together with a polarity. Encoded as 2*v for the
/// positive literal and 2*v+1 for the negative one, so the natural ordering
/// is (variable, positive-before-negative).
class Lit {
 public:
  Lit() : code_(0) {}
  Lit(Var v, bool positive) : code_(2 * v + (positive ? 0 : 1)) {}

  static Lit pos(Var v) { return Lit(v, true); }
  static Lit neg(Var v) { return Lit(v, false); }
  /// DIMACS convention: +v is the positive literal, -v the negative one.
  static Lit from_dimacs(int d) { return Lit(d > 0 ? d : -d, d > 0); }

  Var var() const { return code_ >> 1; }
  bool positive() const { return (code_ & 1) == 0; }
  Lit operator~() const { return Lit::from_code(code_ ^ 1); }
  int to_dimacs() const { return positive() ? var() : -var(); }
  int code() const { return code_; }
  bool valid() const { return code_ >= 2; }

  auto operator<=>(const Lit&) const = default;

 private:
  static Lit from_code(int c) {
    Lit l;
    l.code_ = c;
    return l;
  }
  int code_;
};

std::string to_string(Lit l);

/// A clause is a duplicate-free set of literals, stored sorted by
/// (variable, polarity). A clause may be tautological (contain x and x̄);
/// reduction rule R-1 is responsible for removing those.
struct Clause {
  ClauseId id = 0;
  std::vector<Lit> lits;  // sorted, duplicate-free

  int size() const { return static_cast<int>(lits.size()); }
  bool unit() const { return size() == 1; }
  bool contains(Lit l) const;
  bool tautological() const;
  std::string str() const;

  bool same_literals(const Clause& other) const { return lits == other.lits; }
};

/// Total or partial assignment of truth values to variables.
struct Assignment {
  std::map<Var, bool> values;

  bool has(Var v) const { return values.count(v) != 0; }
  bool value(Var v) const { return values.at(v); }
  void set(Var v, bool b) { values[v] = b; }
  bool satisfies(Lit l) const {
    auto it = values.find(l.var());
    return it != values.end() && it->second == l.positive();
  }
  bool satisfies(const Clause& c) const;
};

/// Result of applying a single-literal assignment to a formula. Clauses that
/// contained the true literal are removed (and counted), the false literal is
/// deleted from the rest, and clauses that become empty are dropped.
struct AssignDelta {
  int satisfied = 0;                           // clauses containing the true literal
  std::vector<Clause> removed_satisfied;       // as they were before removal
  std::vector<Clause> removed_empty;           // shrunk to empty and dropped
  std::vector<std::pair<Clause, Clause>> shrunk;  // (before, after), same id
};

/// CNF formula: a multiset of clauses (duplicates allowed, distinct ids) with
/// a literal -> clause-id occurrence index kept in sync with every edit.
class Formula {
 public:
  /// Adds a clause; duplicate literals collapse. Empty clauses are never
  /// stored (an empty clause is unsatisfiable under every assignment and
  /// changes no decision); returns 0 in that case.
  ClauseId add_clause(std::vector<Lit> lits);
  /// Re-inserts a clause under its original id (trace replay).
  void restore_clause(const Clause& c);
  void remove_clause(ClauseId id);

  bool has_clause(ClauseId id) const { return clauses_.count(id) != 0; }
  const Clause& clause(ClauseId id) const;

  int clause_count() const { return static_cast<int>(clauses_.size()); }  // m
  int var_count() const;                                                  // n
  long long size() const;  // sum of clause sizes

  bool contains_var(Var v) const;
  int occurrences(Lit l) const;
  /// Clause ids containing l, ascending. Empty set if none.
  const std::set<ClauseId>& occ(Lit l) const;

  std::vector<Var> variables() const;       // ascending
  std::vector<ClauseId> clause_ids() const; // ascending
  const std::map<ClauseId, Clause>& clauses() const { return clauses_; }

  /// Unit clauses consisting of exactly {l}, ascending ids.
  std::vector<ClauseId> unit_clauses_of(Lit l) const;

  AssignDelta assign_in_place(Lit l, bool value);

  /// Rebuilds the occurrence index from scratch and compares with the
  /// maintained one.
  bool occ_index_consistent() const;

  /// Multisets of literal-sets equal, ignoring clause ids.
  bool same_clauses(const Formula& other) const;

  bool empty() const { return clauses_.empty(); }

 private:
  std::map<ClauseId, Clause> clauses_;
  std::map<int, std::set<ClauseId>> occ_;  // literal code -> ids
  ClauseId next_id_ = 1;

  void index_add(const Clause& c);
  void index_remove(const Clause& c);
};

/// (formula, parameter) pair passed through reductions and branchings;
/// k only decreases along any path.
struct Instance {
  Formula formula;
  int k = 0;
};

/// Spec-facing wrapper around Formula::assign_in_place.
std::pair<Formula, int> assign(const Formula& f, Lit l, bool value);

/// Number of clauses with at least one true literal. sigma must be total on
/// the variables of f.
int satisfied_count(const Formula& f, const Assignment& sigma);

enum class VarClass {
  SingletonI1,     // (i,1)-literal whose complement sits in a unit clause
  NonsingletonI1,
  Skewed22,
  Evened22,
  Other22,
  HighDegree,      // degree >= 6 or a (3,2)/(2,3) profile
  Pure,
  Other,
};

struct VariableProfile {
  int pos = 0;  // occurrences of the positive literal
  int neg = 0;
  VarClass cls = VarClass::Other;

  int degree() const { return pos + neg; }
};

/// Exact occurrence counts and the structural class of v per the branching
/// rules' case analysis. Throws if v does not occur.
VariableProfile profile(const Formula& f, Var v);

/// l occurs at least once and ~l occurs exactly once.
bool is_i1_literal(const Formula& f, Lit l);
/// (i,1)-literal whose complement's single occurrence is a unit clause.
bool is_singleton_literal(const Formula& f, Lit l);
bool is_22_literal(const Formula& f, Lit l);

/// Result of simplified-instance detection. When ok, `normalized` is the
/// formula with polarities flipped so every variable's singleton side is
/// positive, and `flipped` lists the variables that were flipped.
struct SimplifiedView {
  bool ok = false;
  Formula normalized;
  std::set<Var> flipped;
};

/// True iff, after polarity normalization, every variable is a (3,1)- or
/// (4,1)-singleton and every non-unit clause has size >= 4. The unit clauses
/// of a simplified formula are exactly the n singleton complements.
SimplifiedView is_simplified(const Formula& f);

}  // namespace maxsat

#endif
