#include "maxsat/kernel.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <map>

namespace maxsat {

using boost::multiprecision::cpp_rational;

Assignment majority_witness(const Formula& f) {
  std::vector<Var> vars = f.variables();

  // Per-clause state under the growing partial assignment.
  struct State {
    bool satisfied = false;
    int unassigned = 0;
  };
  std::map<ClauseId, State> st;
  for (const auto& [id, c] : f.clauses()) st[id] = {false, c.size()};

  // 2^-e for e >= 0.
  auto half_pow = [](int e) {
    cpp_rational r(1);
    r /= (boost::multiprecision::cpp_int(1) << e);
    return r;
  };

  Assignment a;
  for (Var v : vars) {
    // E[sat | v=1] - E[sat | v=0] = sum over unsatisfied clauses containing
    // +v of 2^-(u-1) minus the same sum over -v.
    cpp_rational diff(0);
    for (ClauseId id : f.occ(Lit::pos(v))) {
      const State& s = st[id];
      if (!s.satisfied) diff += half_pow(s.unassigned - 1);
    }
    for (ClauseId id : f.occ(Lit::neg(v))) {
      const State& s = st[id];
      if (!s.satisfied) diff -= half_pow(s.unassigned - 1);
    }
    bool value = diff > 0;  // tie -> 0
    a.set(v, value);
    Lit t = value ? Lit::pos(v) : Lit::neg(v);
    for (ClauseId id : f.occ(t)) {
      st[id].satisfied = true;
      st[id].unassigned--;
    }
    for (ClauseId id : f.occ(~t)) st[id].unassigned--;
  }
  return a;
}

KernelOutcome kernelize(Instance inst) {
  KernelOutcome out;
  // Formula states after each removal, for certificate lifting.
  std::vector<std::pair<Formula, TraceEntry>> steps;

  for (;;) {
    if (inst.formula.clause_count() >= 2 * inst.k) {
      Assignment w = majority_witness(inst.formula);
      for (auto it = steps.rbegin(); it != steps.rend(); ++it)
        w = lift_big_clause(it->second, it->first, std::move(w),
                            it->second.k_before);
      out.solved = true;
      out.certificate = std::move(w);
      out.final_k = inst.k;
      out.big_clause_firings = static_cast<int>(steps.size());
      out.trace.entries.clear();  // certificate already lifted past them
      return out;
    }
    ClauseId big = 0;
    for (const auto& [id, c] : inst.formula.clauses())
      if (c.size() >= inst.k) {
        big = id;
        break;
      }
    if (big == 0) break;

    TraceEntry e;
    e.rule = RuleId::KernelBigClause;
    e.removed.push_back(inst.formula.clause(big));
    e.delta_k = 1;
    e.k_before = inst.k;
    e.bindings = {{"C", std::to_string(big)}};
    inst.formula.remove_clause(big);
    inst.k -= 1;
    out.trace.append(e);
    steps.emplace_back(inst.formula, e);
  }

  out.instance = std::move(inst);
  out.final_k = out.instance.k;
  out.big_clause_firings = static_cast<int>(steps.size());
  return out;
}

Assignment lift_big_clause(const TraceEntry& entry, const Formula& f_post,
                           Assignment sigma, int k_before) {
  if (entry.removed.size() != 1)
    throw std::invalid_argument("lift_big_clause: not a big-clause entry");
  const Clause& c = entry.removed.front();

  for (Lit l : c.lits)
    if (!sigma.has(l.var())) sigma.set(l.var(), false);

  int s = satisfied_count(f_post, sigma);
  if (s < k_before - 1)
    throw std::invalid_argument("lift_big_clause: certificate below k-1");
  if (sigma.satisfies(c) || s >= k_before) return sigma;

  // sigma misses c, so c has no complementary pair and its >= k literals sit
  // on >= k distinct variables. Each satisfied clause charges at most one
  // variable (its unique true literal's); total charges <= k-1 < k.
  std::map<Var, int> charges;
  for (const auto& [id, d] : f_post.clauses()) {
    Lit unique_true;
    int true_count = 0;
    for (Lit l : d.lits)
      if (sigma.satisfies(l)) {
        ++true_count;
        unique_true = l;
      }
    if (true_count == 1) charges[unique_true.var()]++;
  }
  for (Lit l : c.lits) {
    if (charges.count(l.var()) == 0) {
      sigma.set(l.var(), l.positive());
      return sigma;
    }
  }
  throw std::logic_error("lift_big_clause: no uncharged variable found");
}

}  // namespace maxsat
