#include "maxsat/reduce.hpp"

#include <algorithm>
#include <sstream>

#include "maxsat/kernel.hpp"

namespace maxsat {

const char* rule_name(RuleId r) {
  switch (r) {
    case RuleId::R1: return "R1";
    case RuleId::R2: return "R2";
    case RuleId::R3: return "R3";
    case RuleId::R4: return "R4";
    case RuleId::R5: return "R5";
    case RuleId::R6: return "R6";
    case RuleId::R7: return "R7";
    case RuleId::KernelBigClause: return "K";
  }
  return "?";
}

std::string ReductionTrace::to_text() const {
  std::ostringstream os;
  for (const auto& e : entries) {
    os << rule_name(e.rule);
    for (const auto& [k, v] : e.bindings) os << " " << k << "=" << v;
    os << " removed=";
    for (size_t i = 0; i < e.removed.size(); ++i)
      os << (i ? "," : "") << e.removed[i].id;
    os << " added=";
    for (size_t i = 0; i < e.added.size(); ++i)
      os << (i ? "," : "") << e.added[i].id;
    os << " dk=" << e.delta_k << "\n";
  }
  return os.str();
}

void replay_entry_forward(Formula& f, const TraceEntry& e) {
  for (const Clause& c : e.removed) f.remove_clause(c.id);
  for (const Clause& c : e.added) f.restore_clause(c);
}

void replay_entry_backward(Formula& f, const TraceEntry& e) {
  for (const Clause& c : e.added) f.remove_clause(c.id);
  for (const Clause& c : e.removed) f.restore_clause(c);
}

namespace {

// All literals, ascending by (variable, polarity).
std::vector<Lit> all_literals(const Formula& f) {
  std::vector<Lit> out;
  for (Var v : f.variables()) {
    if (f.occurrences(Lit::pos(v)) > 0) out.push_back(Lit::pos(v));
    if (f.occurrences(Lit::neg(v)) > 0) out.push_back(Lit::neg(v));
  }
  return out;
}

std::vector<Lit> minus(const Clause& c, std::initializer_list<Lit> drop) {
  std::vector<Lit> out;
  for (Lit l : c.lits)
    if (std::find(drop.begin(), drop.end(), l) == drop.end()) out.push_back(l);
  return out;
}

std::vector<Lit> unite(std::vector<Lit> a, const std::vector<Lit>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Builds the successor instance: removes the matched clauses, adds the given
// replacement literal sets, and assembles the trace entry.
Applied make_applied(const Instance& inst, RuleId rule,
                     const std::vector<ClauseId>& remove,
                     const std::vector<std::vector<Lit>>& add, int delta_k,
                     std::optional<Var> pivot,
                     std::vector<std::pair<std::string, std::string>> bindings) {
  Applied ap;
  ap.entry.rule = rule;
  ap.entry.delta_k = delta_k;
  ap.entry.k_before = inst.k;
  ap.entry.pivot = pivot;
  ap.entry.bindings = std::move(bindings);
  ap.next = inst;
  for (ClauseId id : remove) {
    ap.entry.removed.push_back(ap.next.formula.clause(id));
    ap.next.formula.remove_clause(id);
  }
  for (const auto& lits : add) {
    ClauseId id = ap.next.formula.add_clause(lits);
    if (id == 0) throw std::logic_error("reduction produced an empty clause");
    ap.entry.added.push_back(ap.next.formula.clause(id));
  }
  ap.next.k -= delta_k;
  return ap;
}

std::string ids_str(const std::set<ClauseId>& ids) {
  std::ostringstream os;
  bool first = true;
  for (ClauseId id : ids) {
    if (!first) os << "+";
    os << id;
    first = false;
  }
  return os.str();
}

}  // namespace

std::optional<Applied> rrule1(const Instance& inst) {
  const Formula& f = inst.formula;
  for (const auto& [id, c] : f.clauses())
    if (c.tautological())
      return make_applied(inst, RuleId::R1, {id}, {}, 1, std::nullopt,
                          {{"taut", std::to_string(id)}});
  for (Var v : f.variables()) {
    auto pos_units = f.unit_clauses_of(Lit::pos(v));
    auto neg_units = f.unit_clauses_of(Lit::neg(v));
    if (!pos_units.empty() && !neg_units.empty())
      return make_applied(inst, RuleId::R1, {pos_units[0], neg_units[0]}, {}, 1,
                          std::nullopt, {{"x", "+" + std::to_string(v)}});
  }
  return std::nullopt;
}

std::optional<Applied> rrule2(const Instance& inst) {
  const Formula& f = inst.formula;
  for (Lit z : all_literals(f)) {
    int i = f.occurrences(z);
    int j = f.occurrences(~z);
    if (i < 1) continue;
    if (static_cast<int>(f.unit_clauses_of(z).size()) < j) continue;

    // Assign z = 1; the i clauses containing z are satisfied.
    Applied ap;
    ap.entry.rule = RuleId::R2;
    ap.entry.k_before = inst.k;
    ap.entry.pivot = z.var();
    ap.entry.bindings = {{"z", to_string(z)}, {"i", std::to_string(i)},
                         {"j", std::to_string(j)}};
    ap.next = inst;
    AssignDelta d = ap.next.formula.assign_in_place(z, true);
    ap.entry.delta_k = d.satisfied;
    for (auto& c : d.removed_satisfied) ap.entry.removed.push_back(std::move(c));
    for (auto& c : d.removed_empty) ap.entry.removed.push_back(std::move(c));
    for (auto& [before, after] : d.shrunk) {
      ap.entry.removed.push_back(std::move(before));
      ap.entry.added.push_back(std::move(after));
    }
    ap.next.k -= ap.entry.delta_k;
    return ap;
  }
  return std::nullopt;
}

std::optional<Applied> rrule3(const Instance& inst) {
  const Formula& f = inst.formula;
  for (Var v : f.variables()) {
    if (f.occurrences(Lit::pos(v)) != 1 || f.occurrences(Lit::neg(v)) != 1) continue;
    ClauseId c1 = *f.occ(Lit::pos(v)).begin();
    ClauseId c2 = *f.occ(Lit::neg(v)).begin();
    if (c1 == c2) continue;  // tautological clause; R-Rule 1 territory
    std::vector<Lit> resolvent =
        unite(minus(f.clause(c1), {Lit::pos(v)}), minus(f.clause(c2), {Lit::neg(v)}));
    if (resolvent.empty()) continue;  // both unit: R-Rule 1 territory
    return make_applied(inst, RuleId::R3, {c1, c2}, {resolvent}, 1, v,
                        {{"x", "+" + std::to_string(v)}});
  }
  return std::nullopt;
}

namespace {

// (2,1)-literal z: the two clauses containing z (ascending ids) and the one
// containing ~z, all distinct. Positive clauses must be non-unit (R-Rule 2
// precedes). Returns false if the shape is off.
bool match_21(const Formula& f, Lit z, ClauseId& p1, ClauseId& p2, ClauseId& n1) {
  if (f.occurrences(z) != 2 || f.occurrences(~z) != 1) return false;
  auto it = f.occ(z).begin();
  p1 = *it++;
  p2 = *it;
  n1 = *f.occ(~z).begin();
  if (n1 == p1 || n1 == p2) return false;  // tautological clause
  return !f.clause(p1).unit() && !f.clause(p2).unit();
}

bool has_complementary_pair(const std::vector<Lit>& lits) {
  std::vector<Lit> s = lits;
  std::sort(s.begin(), s.end());
  for (size_t i = 0; i + 1 < s.size(); ++i)
    if (s[i].var() == s[i + 1].var() && s[i] != s[i + 1]) return true;
  return false;
}

}  // namespace

std::optional<Applied> rrule4(const Instance& inst) {
  const Formula& f = inst.formula;
  for (Lit z : all_literals(f)) {
    ClauseId p1, p2, n1;
    if (!match_21(f, z, p1, p2, n1)) continue;
    // The 2-clause (z y); lowest id if both positive clauses qualify.
    ClauseId zy = 0, other = 0;
    if (f.clause(p1).size() == 2) {
      zy = p1;
      other = p2;
    } else if (f.clause(p2).size() == 2) {
      zy = p2;
      other = p1;
    } else {
      continue;
    }
    Lit y = minus(f.clause(zy), {z})[0];
    std::vector<Lit> c2 = minus(f.clause(other), {z});
    std::vector<Lit> c3 = minus(f.clause(n1), {~z});
    std::vector<Lit> r1 = unite({y}, c3);
    std::vector<Lit> r2 = unite(unite({~y}, c2), c3);
    return make_applied(inst, RuleId::R4, {zy, other, n1}, {r1, r2}, 1, z.var(),
                        {{"z", to_string(z)}, {"y", to_string(y)}});
  }
  return std::nullopt;
}

std::optional<Applied> rrule5(const Instance& inst) {
  const Formula& f = inst.formula;
  for (Lit z : all_literals(f)) {
    ClauseId p1, p2, n1;
    if (!match_21(f, z, p1, p2, n1)) continue;
    std::vector<Lit> c1 = minus(f.clause(p1), {z});
    std::vector<Lit> c2 = minus(f.clause(p2), {z});
    std::vector<Lit> c3 = minus(f.clause(n1), {~z});
    if (!has_complementary_pair(unite(unite(c1, c2), c3))) continue;
    return make_applied(inst, RuleId::R5, {p1, p2, n1},
                        {unite(c1, c3), unite(c2, c3)}, 1, z.var(),
                        {{"z", to_string(z)}});
  }
  return std::nullopt;
}

std::optional<Applied> rrule6(const Instance& inst) {
  const Formula& f = inst.formula;
  for (Lit z : all_literals(f)) {
    if (f.occurrences(z) < 1 || f.occurrences(~z) != 1) continue;
    ClauseId neg = *f.occ(~z).begin();
    if (f.occ(z).count(neg)) continue;  // tautological
    if (f.clause(neg).unit()) continue;
    // Positive clauses must be non-unit (R-Rule 2 precedes).
    bool ok = true;
    for (ClauseId id : f.occ(z))
      if (f.clause(id).unit()) ok = false;
    if (!ok) continue;
    // y: lowest (j,1)-literal among the other literals of the ~z clause.
    Lit y;
    for (Lit cand : f.clause(neg).lits) {
      if (cand == ~z) continue;
      if (is_i1_literal(f, cand)) {
        y = cand;
        break;
      }
    }
    if (!y.valid()) continue;
    std::vector<Lit> c = minus(f.clause(neg), {~z, y});
    std::vector<ClauseId> remove(f.occ(z).begin(), f.occ(z).end());
    std::vector<std::vector<Lit>> add;
    for (ClauseId id : remove)
      add.push_back(unite(unite({y}, c), minus(f.clause(id), {z})));
    remove.push_back(neg);
    return make_applied(inst, RuleId::R6, remove, add, 1, z.var(),
                        {{"z", to_string(z)}, {"y", to_string(y)}});
  }
  return std::nullopt;
}

std::optional<Applied> rrule7(const Instance& inst) {
  const Formula& f = inst.formula;
  for (Var v : f.variables()) {
    Lit z = Lit::pos(v);
    if (!is_22_literal(f, z)) continue;
    std::vector<ClauseId> pos(f.occ(z).begin(), f.occ(z).end());
    std::vector<ClauseId> neg(f.occ(~z).begin(), f.occ(~z).end());
    if (pos[0] == neg[0] || pos[0] == neg[1] || pos[1] == neg[0] || pos[1] == neg[1])
      continue;  // tautological clause
    // Each of the four clauses must contain an (i,1)-literal besides z/~z.
    auto find_i1 = [&](ClauseId id, Lit skip) {
      for (Lit cand : f.clause(id).lits)
        if (cand != skip && is_i1_literal(f, cand)) return cand;
      return Lit();
    };
    Lit y1 = find_i1(pos[0], z), y2 = find_i1(pos[1], z);
    Lit y3 = find_i1(neg[0], ~z), y4 = find_i1(neg[1], ~z);
    if (!y1.valid() || !y2.valid() || !y3.valid() || !y4.valid()) continue;
    std::vector<std::vector<Lit>> add;
    for (ClauseId nh : {neg[0], neg[1]})
      for (ClauseId pd : {pos[0], pos[1]})
        add.push_back(unite(minus(f.clause(pd), {z}), minus(f.clause(nh), {~z})));
    return make_applied(inst, RuleId::R7, {pos[0], pos[1], neg[0], neg[1]}, add, 0,
                        v,
                        {{"z", to_string(z)},
                         {"y1", to_string(y1)},
                         {"y2", to_string(y2)},
                         {"y3", to_string(y3)},
                         {"y4", to_string(y4)}});
  }
  return std::nullopt;
}

std::optional<Applied> apply_first_rrule(const Instance& inst) {
  if (auto a = rrule1(inst)) return a;
  if (auto a = rrule2(inst)) return a;
  if (auto a = rrule3(inst)) return a;
  if (auto a = rrule4(inst)) return a;
  if (auto a = rrule5(inst)) return a;
  if (auto a = rrule6(inst)) return a;
  if (auto a = rrule7(inst)) return a;
  return std::nullopt;
}

bool is_irreducible(const Instance& inst) {
  return !apply_first_rrule(inst).has_value();
}

ReduceResult apply_rrules(Instance inst, RuleCounters* counters) {
  ReduceResult res;
  for (;;) {
    if (inst.k <= 0) break;
    if (inst.formula.size() > 4ll * inst.k * inst.k) {
      Formula at_kernel = inst.formula;  // kept in case the kernel answers
      KernelOutcome ko = kernelize(std::move(inst));
      if (counters) {
        (*counters)["kernel_big_clause"] += ko.big_clause_firings;
      }
      if (ko.solved) {
        if (counters) (*counters)["kernel_majority"] += 1;
        // ko.certificate is valid for the formula at the kernel call; lift
        // it through everything recorded before that.
        res.solved =
            reverse_replay(res.trace, at_kernel, std::move(ko.certificate));
        res.final_k = ko.final_k;
        return res;
      }
      res.trace.append_all(ko.trace);
      inst = std::move(ko.instance);
      continue;
    }
    auto a = apply_first_rrule(inst);
    if (!a) break;
    if (counters) (*counters)[rule_name(a->entry.rule)] += 1;
    res.trace.append(a->entry);
    inst = std::move(a->next);
  }
  res.instance = std::move(inst);
  res.final_k = res.instance.k;
  return res;
}

namespace {

int count_satisfied(const std::vector<Clause>& clauses, const Assignment& a) {
  int n = 0;
  for (const Clause& c : clauses)
    if (a.satisfies(c)) ++n;
  return n;
}

}  // namespace

Assignment reverse_replay(const ReductionTrace& trace, const Formula& reduced,
                          Assignment sigma) {
  // Make sigma total on the reduced formula (callers may pass certificates
  // that skip vanished variables).
  Formula f = reduced;
  for (Var v : f.variables())
    if (!sigma.has(v)) sigma.set(v, false);

  for (auto it = trace.entries.rbegin(); it != trace.entries.rend(); ++it) {
    const TraceEntry& e = *it;
    if (e.rule == RuleId::KernelBigClause) {
      sigma = lift_big_clause(e, f, std::move(sigma), e.k_before);
      replay_entry_backward(f, e);
      continue;
    }
    // Default-extend over variables that exist only in the removed clauses.
    for (const Clause& c : e.removed)
      for (Lit l : c.lits)
        if (l.var() != e.pivot.value_or(0) && !sigma.has(l.var()))
          sigma.set(l.var(), false);
    if (e.pivot) {
      Var p = *e.pivot;
      if (sigma.has(p))
        throw std::logic_error("reverse_replay: pivot variable already assigned");
      Assignment with_true = sigma, with_false = sigma;
      with_true.set(p, true);
      with_false.set(p, false);
      int st = count_satisfied(e.removed, with_true);
      int sf = count_satisfied(e.removed, with_false);
      sigma = (st >= sf) ? std::move(with_true) : std::move(with_false);
    }
    replay_entry_backward(f, e);
  }
  return sigma;
}

}  // namespace maxsat
