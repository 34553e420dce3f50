#include "maxsat/branch.hpp"

#include <algorithm>
#include <map>

namespace maxsat {

namespace {

std::vector<Lit> all_literals(const Formula& f) {
  std::vector<Lit> out;
  for (Var v : f.variables()) {
    if (f.occurrences(Lit::pos(v)) > 0) out.push_back(Lit::pos(v));
    if (f.occurrences(Lit::neg(v)) > 0) out.push_back(Lit::neg(v));
  }
  return out;
}

std::vector<Lit> others(const Clause& c, Lit skip) {
  std::vector<Lit> out;
  for (Lit l : c.lits)
    if (l != skip) out.push_back(l);
  return out;
}

using Bind = std::vector<std::pair<std::string, std::string>>;

BranchingStep make_step(const Instance& inst, std::string rule,
                        std::vector<std::vector<std::pair<Lit, bool>>> forced_sets,
                        Bind bindings) {
  BranchingStep st;
  st.rule = std::move(rule);
  st.bindings = std::move(bindings);
  for (auto& fs : forced_sets) st.branches.push_back(make_branch(inst, std::move(fs)));
  return st;
}

}  // namespace

Branch make_branch(const Instance& inst, std::vector<std::pair<Lit, bool>> forced) {
  Branch b;
  b.forced = forced;
  b.child = inst;
  std::map<Var, bool> seen;
  for (auto [l, val] : forced) {
    bool var_val = l.positive() ? val : !val;
    auto it = seen.find(l.var());
    if (it != seen.end()) {
      if (it->second != var_val)
        throw std::logic_error("make_branch: complementary forced literals");
      continue;
    }
    seen.emplace(l.var(), var_val);
    if (b.child.formula.contains_var(l.var()))
      b.delta_k += b.child.formula.assign_in_place(l, val).satisfied;
  }
  b.child.k = inst.k - b.delta_k;
  return b;
}

std::optional<BranchingStep> brule1(const Instance& inst) {
  const Formula& f = inst.formula;
  for (Var v : f.variables()) {
    int i = f.occurrences(Lit::pos(v));
    int j = f.occurrences(Lit::neg(v));
    Lit x;
    if (i + j >= 6)
      x = Lit::pos(v);
    else if (i == 3 && j == 2)
      x = Lit::pos(v);
    else if (i == 2 && j == 3)
      x = Lit::neg(v);
    else
      continue;
    return make_step(inst, "B1", {{{x, true}}, {{x, false}}},
                     {{"x", to_string(x)}});
  }
  return std::nullopt;
}

Var find_three_variable(const Formula& f) {
  for (Var v : f.variables())
    if (f.occurrences(Lit::pos(v)) + f.occurrences(Lit::neg(v)) == 3) return v;
  return 0;
}

BranchingStep default_three_var_branching(const Instance& inst, Var v) {
  Lit z = inst.formula.occurrences(Lit::pos(v)) == 2 ? Lit::pos(v) : Lit::neg(v);
  return make_step(inst, "B2", {{{z, true}}, {{z, false}}},
                   {{"z", to_string(z)}});
}

std::optional<BranchingStep> brule3(const Instance& inst) {
  const Formula& f = inst.formula;
  for (Lit z : all_literals(f)) {
    if (f.occurrences(z) < 3 || f.occurrences(~z) != 1) continue;
    const Clause& neg = f.clause(*f.occ(~z).begin());
    if (neg.unit()) continue;
    std::vector<std::pair<Lit, bool>> b2{{z, false}};
    for (Lit y : others(neg, ~z)) b2.emplace_back(y, false);
    return make_step(inst, "B3", {{{z, true}}, b2},
                     {{"z", to_string(z)}, {"negclause", std::to_string(neg.id)}});
  }
  return std::nullopt;
}

std::optional<BranchingStep> brule4(const Instance& inst) {
  const Formula& f = inst.formula;
  for (Lit z : all_literals(f)) {
    if (f.occurrences(z) < 3 || f.occurrences(~z) != 1) continue;
    for (ClauseId id : f.occ(z)) {
      const Clause& c = f.clause(id);
      if (c.size() != 2) continue;
      Lit y = others(c, z)[0];
      return make_step(inst, "B4", {{{z, true}}, {{z, false}, {y, true}}},
                       {{"z", to_string(z)}, {"y", to_string(y)}});
    }
  }
  return std::nullopt;
}

std::optional<BranchingStep> brule5(const Instance& inst) {
  const Formula& f = inst.formula;
  for (Lit z : all_literals(f)) {
    if (!is_22_literal(f, z)) continue;
    auto it = f.occ(z).begin();
    const Clause& c1 = f.clause(*it++);
    const Clause& c2 = f.clause(*it);
    for (Lit y1 : others(c1, z)) {
      if (y1.var() == z.var()) continue;
      for (Lit y2 : others(c2, z)) {
        if (y2.var() != y1.var()) continue;
        Var y = y1.var();
        if (f.occurrences(Lit::pos(y)) + f.occurrences(Lit::neg(y)) != 4) continue;
        return make_step(inst, "B5", {{{z, true}}, {{z, false}}},
                         {{"z", to_string(z)}, {"y", "+" + std::to_string(y)}});
      }
    }
  }
  return std::nullopt;
}

std::optional<BranchingStep> brule6(const Instance& inst) {
  const Formula& f = inst.formula;
  for (Lit z : all_literals(f)) {
    if (!is_22_literal(f, z)) continue;
    auto it = f.occ(z).begin();
    const Clause& c1 = f.clause(*it++);
    const Clause& c2 = f.clause(*it);
    for (Lit y : others(c1, z)) {
      if (!c2.contains(y)) continue;
      return make_step(inst, "B6", {{{y, false}}, {{y, true}}},
                       {{"z", to_string(z)}, {"y", to_string(y)}});
    }
  }
  return std::nullopt;
}

std::optional<BranchingStep> brule7(const Instance& inst) {
  const Formula& f = inst.formula;
  for (Lit z : all_literals(f)) {
    if (!is_22_literal(f, z)) continue;
    bool neg_unit = false;
    for (ClauseId id : f.occ(~z))
      if (f.clause(id).unit()) neg_unit = true;
    if (!neg_unit) continue;
    std::vector<std::pair<Lit, bool>> b1{{z, true}};
    for (ClauseId id : f.occ(z))
      for (Lit y : others(f.clause(id), z)) b1.emplace_back(y, false);
    return make_step(inst, "B7", {b1, {{z, false}}}, {{"z", to_string(z)}});
  }
  return std::nullopt;
}

std::optional<BranchingStep> brule8(const Instance& inst) {
  const Formula& f = inst.formula;
  for (Lit z : all_literals(f)) {
    if (!is_22_literal(f, z)) continue;
    auto it = f.occ(z).begin();
    ClauseId a = *it++;
    ClauseId b = *it;
    for (auto [ca, cb] : {std::pair{a, b}, std::pair{b, a}}) {
      Lit y1, y2;
      for (Lit l : others(f.clause(ca), z))
        if (is_i1_literal(f, l)) {
          y1 = l;
          break;
        }
      for (Lit l : others(f.clause(cb), z))
        if (is_22_literal(f, l) && l.var() != z.var()) {
          y2 = l;
          break;
        }
      if (y1.valid() && y2.valid())
        return make_step(inst, "B8", {{{y2, true}}, {{y2, false}}},
                         {{"z", to_string(z)},
                          {"y1", to_string(y1)},
                          {"y2", to_string(y2)}});
    }
  }
  return std::nullopt;
}

namespace {

bool variable_evened(const Formula& f, Var v) {
  return profile(f, v).cls == VarClass::Evened22;
}

bool variable_skewed(const Formula& f, Var v) {
  return profile(f, v).cls == VarClass::Skewed22;
}

}  // namespace

std::optional<BranchingStep> brule9(const Instance& inst) {
  const Formula& f = inst.formula;
  for (Lit z : all_literals(f)) {
    if (!is_22_literal(f, z) || !variable_evened(f, z.var())) continue;
    bool in_2clause = false;
    for (ClauseId id : f.occ(z))
      if (f.clause(id).size() == 2) in_2clause = true;
    if (!in_2clause) continue;
    for (ClauseId id : f.occ(~z)) {
      for (Lit y : others(f.clause(id), ~z)) {
        if (y.var() == z.var()) continue;  // y != z and y != ~z
        return make_step(inst, "B9", {{{y, true}}, {{y, false}}},
                         {{"z", to_string(z)}, {"y", to_string(y)}});
      }
    }
  }
  return std::nullopt;
}

std::optional<BranchingStep> brule10(const Instance& inst) {
  const Formula& f = inst.formula;
  for (const auto& [id, c] : f.clauses()) {
    if (c.size() != 2) continue;
    Lit z = c.lits[0], y = c.lits[1];
    if (!is_22_literal(f, z) || !is_22_literal(f, y)) continue;
    std::vector<Lit> c1, c2;
    auto it = f.occ(~z).begin();
    const Clause& n1 = f.clause(*it++);
    const Clause& n2 = f.clause(*it);
    c1 = others(n1, ~z);
    c2 = others(n2, ~z);
    for (Lit l1 : c1)
      for (Lit l2 : c2)
        if (l1 == l2)
          throw std::logic_error("brule10: C1 and C2 share a literal");
    std::vector<std::pair<Lit, bool>> b3{{y, false}, {z, false}};
    for (Lit l : c1) b3.emplace_back(l, false);
    for (Lit l : c2) b3.emplace_back(l, false);
    return make_step(inst, "B10",
                     {{{y, true}}, {{y, false}, {z, true}}, b3},
                     {{"z", to_string(z)}, {"y", to_string(y)}});
  }
  return std::nullopt;
}

std::optional<BranchingStep> brule11(const Instance& inst) {
  const Formula& f = inst.formula;
  for (const auto& [id, c] : f.clauses()) {
    for (Lit z : c.lits) {
      if (!is_22_literal(f, z)) continue;
      for (Lit y : c.lits) {
        if (y == z || y.var() == z.var()) continue;
        if (!is_22_literal(f, y) || !variable_skewed(f, y.var())) continue;
        ClauseId other = 0;
        for (ClauseId zc : f.occ(z))
          if (zc != id) other = zc;
        if (other == 0) continue;
        std::vector<std::pair<Lit, bool>> b2{{z, true}, {y, false}};
        for (Lit l : others(c, z))
          if (l != y) b2.emplace_back(l, false);
        std::vector<std::pair<Lit, bool>> b3{{z, true}};
        for (Lit l : others(f.clause(other), z)) b3.emplace_back(l, false);
        return make_step(inst, "B11", {{{z, false}}, b2, b3},
                         {{"z", to_string(z)},
                          {"y", to_string(y)},
                          {"c1", std::to_string(id)},
                          {"c2", std::to_string(other)}});
      }
    }
  }
  return std::nullopt;
}

std::optional<BranchingStep> brule12(const Instance& inst) {
  const Formula& f = inst.formula;
  for (Lit z : all_literals(f)) {
    if (!is_22_literal(f, z)) continue;
    auto it = f.occ(z).begin();
    ClauseId a = *it++;
    ClauseId b = *it;
    for (auto [ca, cb] : {std::pair{a, b}, std::pair{b, a}}) {
      for (Lit y1 : others(f.clause(ca), z)) {
        if (y1.var() == z.var()) continue;
        for (Lit y2 : others(f.clause(cb), z)) {
          if (y2.var() == z.var() || y2.var() == y1.var()) continue;
          for (ClauseId third : f.occ(y1)) {
            if (third == ca || third == cb) continue;
            if (!f.clause(third).contains(~y2)) continue;
            return make_step(inst, "B12", {{{z, true}}, {{z, false}}},
                             {{"z", to_string(z)},
                              {"y1", to_string(y1)},
                              {"y2", to_string(y2)},
                              {"c3", std::to_string(third)}});
          }
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<BranchingStep> brule13(const Instance& inst) {
  const Formula& f = inst.formula;
  for (Lit z : all_literals(f)) {
    if (!is_22_literal(f, z)) continue;
    // (z y1 C1): lowest z-clause with a (2,2) co-literal, lowest such literal.
    ClauseId c1 = 0;
    Lit y1;
    for (ClauseId id : f.occ(z)) {
      for (Lit l : others(f.clause(id), z))
        if (is_22_literal(f, l) && l.var() != z.var()) {
          c1 = id;
          y1 = l;
          break;
        }
      if (c1) break;
    }
    if (!c1) continue;
    ClauseId c2 = 0;
    Lit y2;
    for (ClauseId id : f.occ(~z)) {
      for (Lit l : others(f.clause(id), ~z))
        if (is_22_literal(f, l) && l.var() != z.var()) {
          c2 = id;
          y2 = l;
          break;
        }
      if (c2) break;
    }
    if (!c2) continue;
    // (y1 D1), (y2 D2): the other clauses containing y1 and y2.
    ClauseId d1 = 0, d2 = 0;
    for (ClauseId id : f.occ(y1))
      if (id != c1) d1 = id;
    for (ClauseId id : f.occ(y2))
      if (id != c2) d2 = id;
    if (!d1 || !d2) continue;

    std::vector<std::pair<Lit, bool>> b2{{z, true}, {y1, true}};
    for (Lit l : others(f.clause(d1), y1)) b2.emplace_back(l, false);
    std::vector<std::pair<Lit, bool>> b4{{z, false}, {y2, true}};
    for (Lit l : others(f.clause(d2), y2)) b4.emplace_back(l, false);
    return make_step(inst, "B13",
                     {{{z, true}, {y1, false}},
                      b2,
                      {{z, false}, {y2, false}},
                      b4},
                     {{"z", to_string(z)},
                      {"y1", to_string(y1)},
                      {"y2", to_string(y2)},
                      {"d1", std::to_string(d1)},
                      {"d2", std::to_string(d2)}});
  }
  return std::nullopt;
}

std::optional<BranchingStep> brule14(const Instance& inst) {
  const Formula& f = inst.formula;
  for (const auto& [id, c] : f.clauses()) {
    if (c.size() != 3) continue;
    Lit z1 = c.lits[0], z2 = c.lits[1], z3 = c.lits[2];
    return make_step(inst, "B14",
                     {{{z1, true}},
                      {{z1, false}, {z2, true}},
                      {{z1, false}, {z2, false}, {z3, true}}},
                     {{"clause", std::to_string(id)}});
  }
  return std::nullopt;
}

namespace {

// Structural facts implied by the inapplicability of earlier rules; a
// violation means a matcher let something through.
void check_only_small_profiles(const Formula& f) {
  for (Var v : f.variables()) {
    int i = f.occurrences(Lit::pos(v));
    int j = f.occurrences(Lit::neg(v));
    bool ok = (i == 4 && j == 1) || (i == 1 && j == 4) || (i == 3 && j == 1) ||
              (i == 1 && j == 3) || (i == 2 && j == 2);
    if (!ok)
      throw std::logic_error("progress ladder: profile survived B1/B2 on var " +
                             std::to_string(v));
  }
}

void check_i1_singletons(const Formula& f) {
  for (Lit z : all_literals(f)) {
    if (f.occurrences(z) >= 3 && f.occurrences(~z) == 1 &&
        !f.clause(*f.occ(~z).begin()).unit())
      throw std::logic_error("progress ladder: non-singleton (i,1)-literal " +
                             to_string(z));
  }
}

void check_no_22(const Formula& f) {
  for (Var v : f.variables())
    if (is_22_literal(f, Lit::pos(v)))
      throw std::logic_error("progress ladder: (2,2)-variable survived B13: " +
                             std::to_string(v));
}

}  // namespace

std::optional<BranchingStep> dispatch_brules(const Instance& inst,
                                             const ThreeVarStrategy& b2) {
  if (auto s = brule1(inst)) return s;
  if (Var v = find_three_variable(inst.formula)) {
    BranchingStep st =
        b2 ? b2(inst, v) : default_three_var_branching(inst, v);
    st.rule = "B2";
    return st;
  }
  check_only_small_profiles(inst.formula);
  if (auto s = brule3(inst)) return s;
  check_i1_singletons(inst.formula);
  if (auto s = brule4(inst)) return s;
  if (auto s = brule5(inst)) return s;
  if (auto s = brule6(inst)) return s;
  if (auto s = brule7(inst)) return s;
  if (auto s = brule8(inst)) return s;
  if (auto s = brule9(inst)) return s;
  if (auto s = brule10(inst)) return s;
  if (auto s = brule11(inst)) return s;
  if (auto s = brule12(inst)) return s;
  if (auto s = brule13(inst)) return s;
  check_no_22(inst.formula);
  if (auto s = brule14(inst)) return s;
  return std::nullopt;
}

Solver::Solver(SolverOptions opts) : opts_(std::move(opts)) {
  opts_.derand.validate();
}

void Solver::enter_node(int depth) {
  ++stats_.nodes;
  stats_.max_depth = std::max(stats_.max_depth, depth);
  if (opts_.node_limit > 0 && stats_.nodes > opts_.node_limit)
    throw NodeLimitReached();
}

namespace {

Assignment zero_assignment(const Formula& f) {
  Assignment a;
  for (Var v : f.variables()) a.set(v, false);
  return a;
}

Assignment satisfy_one_clause(const Formula& f) {
  Assignment a = zero_assignment(f);
  const Clause& c = f.clauses().begin()->second;
  Lit l = c.lits[0];
  a.set(l.var(), l.positive());
  return a;
}

Assignment merge_forced(const Instance& parent, const Branch& br,
                        Assignment cert) {
  for (auto [l, val] : br.forced) {
    bool var_val = l.positive() ? val : !val;
    if (cert.has(l.var())) {
      if (cert.value(l.var()) != var_val)
        throw std::logic_error("certificate merge: forced value conflict");
    } else {
      cert.set(l.var(), var_val);
    }
  }
  for (Var v : parent.formula.variables())
    if (!cert.has(v)) cert.set(v, false);
  return cert;
}

}  // namespace

Solver::NodeResult Solver::solve_node(Instance inst, int depth) {
  enter_node(depth);
  if (inst.k <= 0) {
    ++stats_.leaf_k_le_1;
    return {{true, zero_assignment(inst.formula)}, inst.k, -1};
  }
  ReduceResult rr = apply_rrules(std::move(inst), &stats_.firings);
  if (rr.solved) {
    ++stats_.leaf_kernel_majority;
    return {{true, std::move(*rr.solved)}, rr.final_k, -1};
  }
  Formula reduced = rr.instance.formula;
  NodeResult nr = solve_irreducible(std::move(rr.instance), depth);
  if (nr.out.yes && !rr.trace.empty())
    nr.out.certificate =
        reverse_replay(rr.trace, reduced, std::move(nr.out.certificate));
  nr.reduced_k = rr.final_k;
  return nr;
}

Solver::NodeResult Solver::solve_irreducible(Instance inst, int depth) {
  if (inst.k <= 0) {
    ++stats_.leaf_k_le_1;
    return {{true, zero_assignment(inst.formula)}, inst.k, -1};
  }
  if (inst.k == 1) {
    ++stats_.leaf_k_le_1;
    if (inst.formula.empty()) return {{false, {}}, inst.k, -1};
    return {{true, satisfy_one_clause(inst.formula)}, inst.k, -1};
  }
  SimplifiedView sv = is_simplified(inst.formula);
  if (sv.ok) {
    Outcome out =
        solve_simplified(sv.normalized, inst.k, opts_.derand, &stats_.simplified);
    if (out.yes)
      for (Var v : sv.flipped)
        out.certificate.set(v, !out.certificate.value(v));
    return {std::move(out), inst.k, -1};
  }

  auto step = dispatch_brules(inst, opts_.three_var_strategy);
  if (!step)
    throw std::logic_error("dispatch exhausted on a non-simplified instance");
  stats_.firings[step->rule] += 1;

  // Reduce every child up front so the effective vector is complete even
  // when an early branch answers Yes.
  struct Prepared {
    ReduceResult rr;
    int effective = 0;
    bool continuing = false;  // child still carries a positive parameter
  };
  std::vector<Prepared> prep;
  prep.reserve(step->branches.size());
  for (const Branch& br : step->branches) {
    Prepared p;
    p.rr = apply_rrules(br.child, &stats_.firings);
    p.effective = inst.k - p.rr.final_k;
    // Children answered during reduction (kernel majority) or with k
    // exhausted are leaves: re-reduction stops at k <= 0, so their gains are
    // truncated and they spawn no subtree. The audited vector covers the
    // children the search actually recurses into.
    p.continuing = !p.rr.solved && p.rr.final_k >= 1;
    prep.push_back(std::move(p));
  }

  int audit_idx = -1;
  bool is_b13 = step->rule == "B13";
  // Per-child cumulative components, refined as children are explored.
  std::vector<std::vector<int>> cum;
  bool any_continuing = false;
  for (const auto& p : prep) any_continuing |= p.continuing;
  if (opts_.collect_audit && any_continuing) {
    AuditRecord rec;
    rec.rule = step->rule;
    for (const auto& p : prep)
      if (p.continuing) rec.effective.push_back(p.effective);
    if (is_b13) {
      const auto& br = step->branches;
      rec.immediate_ok = br[0].delta_k >= 4 && br[1].delta_k >= 6 &&
                         br[2].delta_k >= 4 && br[3].delta_k >= 6;
      for (const auto& p : prep) cum.push_back({p.effective});
    }
    audit_idx = static_cast<int>(audit_.size());
    audit_.push_back(std::move(rec));
  }
  auto finalize_b13 = [&]() {
    if (audit_idx < 0 || !is_b13) return;
    std::vector<int> flat;
    for (size_t i = 0; i < cum.size(); ++i) {
      if (!prep[i].continuing) continue;
      flat.insert(flat.end(), cum[i].begin(), cum[i].end());
    }
    audit_[audit_idx].cumulative = std::move(flat);
  };

  for (size_t i = 0; i < step->branches.size(); ++i) {
    const Branch& br = step->branches[i];
    Prepared& p = prep[i];
    enter_node(depth + 1);
    Outcome child_out;
    if (p.rr.solved) {
      ++stats_.leaf_kernel_majority;
      child_out = {true, std::move(*p.rr.solved)};
    } else {
      Formula reduced = p.rr.instance.formula;
      NodeResult nr = solve_irreducible(std::move(p.rr.instance), depth + 1);
      // Fold the explored first/third children of a B13 node through their
      // own next branching; that folded vector is what B13's bound covers.
      if (is_b13 && audit_idx >= 0 && (i == 0 || i == 2) && nr.own_audit >= 0) {
        cum[i].clear();
        for (int e : audit_[nr.own_audit].effective)
          cum[i].push_back(p.effective + e);
      }
      child_out = std::move(nr.out);
      if (child_out.yes && !p.rr.trace.empty())
        child_out.certificate =
            reverse_replay(p.rr.trace, reduced, std::move(child_out.certificate));
    }
    if (child_out.yes) {
      finalize_b13();
      Assignment cert = merge_forced(inst, br, std::move(child_out.certificate));
      return {{true, std::move(cert)}, inst.k, audit_idx};
    }
  }
  finalize_b13();
  return {{false, {}}, inst.k, audit_idx};
}

Outcome Solver::solve(Instance inst) {
  Formula original = inst.formula;
  int original_k = inst.k;
  NodeResult nr = solve_node(std::move(inst), 0);
  if (nr.out.yes) {
    for (Var v : original.variables())
      if (!nr.out.certificate.has(v)) nr.out.certificate.set(v, false);
    if (opts_.verify_certificates &&
        satisfied_count(original, nr.out.certificate) < original_k)
      throw std::logic_error("certificate verification failed");
  }
  return std::move(nr.out);
}

}  // namespace maxsat
