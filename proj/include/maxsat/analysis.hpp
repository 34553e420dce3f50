#ifndef MAXSAT_ANALYSIS_HPP
#define MAXSAT_ANALYSIS_HPP

#include <map>
#include <string>
#include <vector>

namespace maxsat {

/// rho(3,2), the plastic number; every branching rule except B-2 realizes a
/// branching complexity at or below it.
inline constexpr double kRhoTarget = 1.3247179572447460;
/// Audit threshold: realized vectors above this are flagged.
inline constexpr double kAuditBound = 1.32472 + 1e-4;

/// Unique positive root >= 1 of x^dmax - sum_i x^(dmax - d_i), computed by
/// bisection on [1, r+1] to absolute tolerance 1e-9. Throws on an empty
/// vector or a non-positive component.
double branching_root(const std::vector<int>& d);

/// rho(t1) > rho(t2) + 1e-9.
bool is_inferior(const std::vector<int>& t1, const std::vector<int>& t2);

/// One record per branching node of a search: the rule applied and the
/// realized effective vector (parameter drop from the node to each child
/// after the child's reduction phase). B-13 nodes also carry the cumulative
/// vector obtained by folding the first and third children through their own
/// next branching, which is the object B13's bound covers.
struct AuditRecord {
  std::string rule;                // "B1".."B14"
  std::vector<int> effective;
  std::vector<int> cumulative;     // B13 only; empty otherwise
  bool immediate_ok = true;        // B13 only: immediate vector >= (4,6,4,6)
  std::string bindings;            // matched pattern, for diagnostics
};

struct AuditReport {
  // rule -> (vector -> count)
  std::map<std::string, std::map<std::vector<int>, int>> histogram;
  struct Violation {
    std::string rule;
    std::vector<int> vector;
    double rho;
  };
  std::vector<Violation> violations;     // non-B2 nodes over the audit bound
  std::vector<Violation> b2_realized;    // reported, never asserted
  std::vector<Violation> b13_cumulative; // reported against rho(10,5,6,10,5,6)
  long nodes = 0;

  std::string to_text() const;
  std::string to_json() const;
};

AuditReport audit_trace(const std::vector<AuditRecord>& records);

}  // namespace maxsat

#endif
