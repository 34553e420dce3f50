#include "maxsat/simplified.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace maxsat {

namespace {

boost::multiprecision::cpp_int ceil_of(const Rational& r) {
  using boost::multiprecision::cpp_int;
  cpp_int num = numerator(r), den = denominator(r);
  cpp_int q = num / den;
  if (num % den != 0 && num > 0) ++q;
  return q;
}

void require_simplified_normalized(const Formula& f, const char* who) {
  SimplifiedView v = is_simplified(f);
  if (!v.ok || !v.flipped.empty())
    throw std::invalid_argument(std::string(who) +
                                ": formula is not simplified-normalized");
}

}  // namespace

void DerandomizerConfig::validate() const {
  if (p <= 0 || p >= 1)
    throw std::invalid_argument("DerandomizerConfig: p outside (0,1)");
  Rational q = 1 - p;
  Rational hit = 1 - q * q * q * q;
  if (threshold_coeff * hit < 1)
    throw std::invalid_argument(
        "DerandomizerConfig: coeff * (1 - (1-p)^4) < 1");
}

bool threshold_check(const Formula& f, int k, const DerandomizerConfig& cfg) {
  require_simplified_normalized(f, "threshold_check");
  cfg.validate();
  Rational lhs = Rational(f.clause_count()) + Rational(f.var_count(), 2);
  return lhs >= cfg.threshold_coeff * k;
}

Rational expected_satisfied(const Formula& f, const Assignment& partial,
                            const Rational& p) {
  Rational e(0);
  for (const auto& [id, c] : f.clauses()) {
    if (partial.satisfies(c)) {
      e += 1;
      continue;
    }
    Rational miss(1);
    for (Lit l : c.lits) {
      if (partial.has(l.var())) continue;  // assigned false here
      miss *= l.positive() ? (1 - p) : p;
    }
    e += 1 - miss;
  }
  return e;
}

Assignment derandomized_assignment(const Formula& f, int k,
                                   const DerandomizerConfig& cfg) {
  require_simplified_normalized(f, "derandomized_assignment");
  cfg.validate();
  if (!threshold_check(f, k, cfg))
    throw std::invalid_argument("derandomized_assignment: threshold not met");

  const Rational& p = cfg.p;
  Rational initial = expected_satisfied(f, Assignment{}, p);

  // Per-clause product of false-probabilities over the unassigned literals.
  struct State {
    bool satisfied = false;
    Rational miss{1};
  };
  std::map<ClauseId, State> st;
  for (const auto& [id, c] : f.clauses()) {
    State s;
    for (Lit l : c.lits) s.miss *= l.positive() ? (1 - p) : p;
    st[id] = s;
  }

  Assignment a;
  for (Var v : f.variables()) {
    Rational diff(0);
    for (ClauseId id : f.occ(Lit::pos(v))) {
      const State& s = st[id];
      if (!s.satisfied) diff += s.miss / (1 - p);
    }
    for (ClauseId id : f.occ(Lit::neg(v))) {
      const State& s = st[id];
      if (!s.satisfied) diff -= s.miss / p;
    }
    bool value = diff > 0;  // tie -> 0
    a.set(v, value);
    Lit t = value ? Lit::pos(v) : Lit::neg(v);
    for (ClauseId id : f.occ(t)) st[id].satisfied = true;
    for (ClauseId id : f.occ(~t))
      st[id].miss /= t.positive() ? p : (1 - p);
  }

  int count = satisfied_count(f, a);
  if (boost::multiprecision::cpp_int(count) < ceil_of(initial))
    throw std::logic_error(
        "derandomized_assignment: count fell below the initial expectation");
  return a;
}

SetCoverInstance to_set_cover(const Formula& f) {
  require_simplified_normalized(f, "to_set_cover");
  SetCoverInstance sc;
  for (const auto& [id, c] : f.clauses())
    if (!c.unit()) sc.universe.insert(id);
  for (Var v : f.variables()) {
    SetCoverInstance::OwnedSet s;
    s.owner = v;
    for (ClauseId id : f.occ(Lit::pos(v)))
      if (!f.clause(id).unit()) s.elems.insert(id);
    if (s.elems.size() > 4)
      throw std::logic_error("to_set_cover: set larger than 4");
    sc.sets.push_back(std::move(s));
  }
  return sc;
}

Assignment cover_to_assignment(const Formula& f, const std::set<int>& cover) {
  require_simplified_normalized(f, "cover_to_assignment");
  SetCoverInstance sc = to_set_cover(f);
  if (!is_cover(sc, cover))
    throw std::invalid_argument("cover_to_assignment: not a cover");
  Assignment a;
  for (Var v : f.variables()) a.set(v, cover.count(v) != 0);
  return a;
}

Outcome solve_simplified(const Formula& f, int k, const DerandomizerConfig& cfg,
                         SimplifiedStats* stats) {
  require_simplified_normalized(f, "solve_simplified");
  if (threshold_check(f, k, cfg)) {
    if (stats) ++stats->threshold_leaves;
    return {true, derandomized_assignment(f, k, cfg)};
  }
  if (stats) {
    ++stats->setcover_leaves;
    if (k > 0) {
      double measure =
          0.6 * (f.clause_count() + 0.5 * f.var_count()) / static_cast<double>(k);
      stats->max_measure_ratio = std::max(stats->max_measure_ratio, measure);
    }
  }
  SetCoverInstance sc = to_set_cover(f);
  std::set<int> cover =
      min_set_cover(sc, stats ? &stats->setcover_nodes : nullptr);
  int t_min = static_cast<int>(cover.size());
  if (f.clause_count() - t_min >= k)
    return {true, cover_to_assignment(f, cover)};
  return {false, {}};
}

}  // namespace maxsat
