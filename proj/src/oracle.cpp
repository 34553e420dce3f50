#include "maxsat/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace maxsat {

namespace {

constexpr int kMaxVars = 26;

// Variable v_t maps to bit (n-1-t) so that ascending enumeration index equals
// lexicographic order of the value tuple (v_1 first, 0 before 1).
Assignment assignment_from_index(const std::vector<Var>& vars, std::uint32_t idx) {
  Assignment a;
  int n = static_cast<int>(vars.size());
  for (int t = 0; t < n; ++t)
    a.set(vars[t], (idx >> (n - 1 - t)) & 1u);
  return a;
}

}  // namespace

BruteResult brute_maxsat_serial(const Formula& f) {
  std::vector<Var> vars = f.variables();
  int n = static_cast<int>(vars.size());
  if (n > kMaxVars) throw std::invalid_argument("brute_maxsat: too many variables");

  std::uint64_t total = 1ull << n;
  int best = -1;
  std::uint32_t best_idx = 0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Assignment a = assignment_from_index(vars, static_cast<std::uint32_t>(idx));
    int count = 0;
    for (const auto& [id, c] : f.clauses())
      if (a.satisfies(c)) ++count;
    if (count > best) {
      best = count;
      best_idx = static_cast<std::uint32_t>(idx);
    }
  }
  return {best, assignment_from_index(vars, best_idx)};
}

BruteResult brute_maxsat(const Formula& f) {
  std::vector<Var> vars = f.variables();
  int n = static_cast<int>(vars.size());
  if (n > kMaxVars) throw std::invalid_argument("brute_maxsat: too many variables");

  std::vector<int> bit_of(n);
  for (int t = 0; t < n; ++t) bit_of[t] = n - 1 - t;

  std::vector<std::uint32_t> pos_mask, neg_mask;
  pos_mask.reserve(f.clause_count());
  for (const auto& [id, c] : f.clauses()) {
    std::uint32_t pm = 0, nm = 0;
    for (Lit l : c.lits) {
      int t = static_cast<int>(std::lower_bound(vars.begin(), vars.end(), l.var()) -
                               vars.begin());
      std::uint32_t bit = 1u << bit_of[t];
      if (l.positive())
        pm |= bit;
      else
        nm |= bit;
    }
    pos_mask.push_back(pm);
    neg_mask.push_back(nm);
  }
  int m = static_cast<int>(pos_mask.size());

  std::int64_t total = 1ll << n;
  int best = -1;
  std::int64_t best_idx = 0;

#pragma omp parallel
  {
    int local_best = -1;
    std::int64_t local_idx = 0;
#pragma omp for schedule(static) nowait
    for (std::int64_t idx = 0; idx < total; ++idx) {
      std::uint32_t bits = static_cast<std::uint32_t>(idx);
      int count = 0;
      for (int c = 0; c < m; ++c)
        count += ((bits & pos_mask[c]) != 0 || (~bits & neg_mask[c]) != 0);
      if (count > local_best || (count == local_best && idx < local_idx)) {
        local_best = count;
        local_idx = idx;
      }
    }
#pragma omp critical
    {
      if (local_best > best || (local_best == best && local_idx < best_idx)) {
        best = local_best;
        best_idx = local_idx;
      }
    }
  }

  return {best, assignment_from_index(vars, static_cast<std::uint32_t>(best_idx))};
}

}  // namespace maxsat
