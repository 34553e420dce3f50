#ifndef MAXSAT_BRANCH_HPP
#define MAXSAT_BRANCH_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "maxsat/analysis.hpp"
#include "maxsat/formula.hpp"
#include "maxsat/reduce.hpp"
#include "maxsat/simplified.hpp"

namespace maxsat {

/// One branch of a branching step: the forced literal assignments in
/// application order, the number of clauses they satisfied (the immediate
/// parameter drop), and the resulting child instance.
struct Branch {
  std::vector<std::pair<Lit, bool>> forced;
  int delta_k = 0;
  Instance child;
};

struct BranchingStep {
  std::string rule;  // "B1".."B14"
  std::vector<Branch> branches;
  std::vector<std::pair<std::string, std::string>> bindings;
};

/// Applies the forced assignments in order on a copy of inst. Skips
/// assignments whose variable already vanished; throws if the list forces a
/// literal and its complement (the rules' preconditions exclude it, so it
/// indicates a pattern-matching bug).
Branch make_branch(const Instance& inst, std::vector<std::pair<Lit, bool>> forced);

// The branching rules. Matchers are deterministic (variables ascending,
// positive before negative, lowest clause ids) and assume an irreducible
// instance; dispatch order is the driver's responsibility.
std::optional<BranchingStep> brule1(const Instance& inst);
std::optional<BranchingStep> brule3(const Instance& inst);
std::optional<BranchingStep> brule4(const Instance& inst);
std::optional<BranchingStep> brule5(const Instance& inst);
std::optional<BranchingStep> brule6(const Instance& inst);
std::optional<BranchingStep> brule7(const Instance& inst);
std::optional<BranchingStep> brule8(const Instance& inst);
std::optional<BranchingStep> brule9(const Instance& inst);
std::optional<BranchingStep> brule10(const Instance& inst);
std::optional<BranchingStep> brule11(const Instance& inst);
std::optional<BranchingStep> brule12(const Instance& inst);
std::optional<BranchingStep> brule13(const Instance& inst);
std::optional<BranchingStep> brule14(const Instance& inst);

/// B-Rule 2 is a strategy interface: the case analysis achieving the
/// (6,1)/(4,2)/(3,3) vectors lives in prior work, so the rule is pluggable.
/// The default branches on the (2,1)-literal of the 3-variable and relies on
/// the driver's re-reduction of the children for any further gain.
using ThreeVarStrategy = std::function<BranchingStep(const Instance&, Var)>;
BranchingStep default_three_var_branching(const Instance& inst, Var v);

/// First 3-variable, ascending; 0 if none.
Var find_three_variable(const Formula& f);

/// First applicable B-Rule in order, with the structural-progress scanner
/// checks between stages. Returns nullopt when none applies (the instance is
/// then simplified).
std::optional<BranchingStep> dispatch_brules(const Instance& inst,
                                             const ThreeVarStrategy& b2 = {});

struct SolverOptions {
  ThreeVarStrategy three_var_strategy;  // empty -> default
  DerandomizerConfig derand;
  bool collect_audit = true;
  bool verify_certificates = true;
  long node_limit = 0;  // 0 = unlimited
};

struct SolverStats {
  long nodes = 0;
  int max_depth = 0;
  RuleCounters firings;  // R1..R7, kernel_*, B1..B14
  long leaf_k_le_1 = 0;
  long leaf_kernel_majority = 0;
  SimplifiedStats simplified;
};

struct NodeLimitReached : std::runtime_error {
  NodeLimitReached() : std::runtime_error("solver node limit reached") {}
};

/// The top-level branch-and-bound driver: reduce, answer k <= 1 directly,
/// hand simplified instances to the endgame, otherwise apply the first
/// applicable B-Rule and recurse on its branches in order, lifting the first
/// Yes certificate back through forced assignments and the reduction trace.
class Solver {
 public:
  explicit Solver(SolverOptions opts = {});

  Outcome solve(Instance inst);

  const SolverStats& stats() const { return stats_; }
  const std::vector<AuditRecord>& audit_records() const { return audit_; }

 private:
  struct NodeResult {
    Outcome out;
    int reduced_k = 0;       // k after this node's reduction phase
    int own_audit = -1;      // index of this node's audit record, -1 if leaf
  };

  NodeResult solve_node(Instance inst, int depth);
  NodeResult solve_irreducible(Instance inst, int depth);
  void enter_node(int depth);

  SolverOptions opts_;
  SolverStats stats_;
  std::vector<AuditRecord> audit_;
};

}  // namespace maxsat

#endif
