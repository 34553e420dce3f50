#include <algorithm>

#include "doctest.h"
#include "gen.hpp"
#include "maxsat/oracle.hpp"
#include "maxsat/reduce.hpp"

using namespace maxsat;
using maxsat::test::Rng;

namespace {

Formula make(std::initializer_list<std::vector<int>> clauses) {
  Formula f;
  for (const auto& c : clauses) {
    std::vector<Lit> lits;
    for (int d : c) lits.push_back(Lit::from_dimacs(d));
    f.add_clause(lits);
  }
  return f;
}

Formula lits_of(std::initializer_list<std::vector<int>> clauses) {
  return make(clauses);
}

// maxsat(F) - maxsat(F') == k - k' for a single rule application.
void check_safety(const Instance& before, const Applied& ap) {
  int d_max = brute_maxsat(before.formula).max -
              brute_maxsat(ap.next.formula).max;
  CHECK(d_max == before.k - ap.next.k);
}

}  // namespace

TEST_CASE("R1 removes a tautology") {
  Instance inst{make({{1, -1, 2}, {2, 3}}), 2};
  auto ap = rrule1(inst);
  REQUIRE(ap);
  CHECK(ap->next.k == 1);
  CHECK(ap->next.formula.same_clauses(lits_of({{2, 3}})));
}

TEST_CASE("R1 removes a complementary unit pair") {
  Instance inst{make({{1}, {-1}}), 1};
  auto ap = rrule1(inst);
  REQUIRE(ap);
  CHECK(ap->next.k == 0);
  CHECK(ap->next.formula.empty());
}

TEST_CASE("R2 assigns a pure literal") {
  Instance inst{make({{1, 2}, {1, 3}, {2, -3}}), 2};
  auto ap = rrule2(inst);
  REQUIRE(ap);
  CHECK(ap->next.k == 0);
  CHECK(ap->next.formula.same_clauses(lits_of({{2, -3}})));
}

TEST_CASE("R2 fires on a dominated literal") {
  Instance inst{make({{1}, {-1, 2}}), 2};
  auto ap = rrule2(inst);
  REQUIRE(ap);
  CHECK(ap->next.k == 1);
  CHECK(ap->next.formula.same_clauses(lits_of({{2}})));
}

TEST_CASE("R3 resolves a 2-variable") {
  Instance inst{make({{1, 2}, {-1, 3}}), 2};
  auto ap = rrule3(inst);
  REQUIRE(ap);
  CHECK(ap->next.k == 1);
  CHECK(ap->next.formula.same_clauses(lits_of({{2, 3}})));

  Instance merge{make({{1, 2}, {-1, 2}}), 2};
  auto ap2 = rrule3(merge);
  REQUIRE(ap2);
  CHECK(ap2->next.formula.same_clauses(lits_of({{2}})));
}

TEST_CASE("R4 rewrites a (2,1)-literal with a 2-clause") {
  Instance inst{make({{1, 2}, {1, 3}, {-1, 4}}), 3};
  auto ap = rrule4(inst);
  REQUIRE(ap);
  CHECK(ap->next.k == 2);
  CHECK(ap->next.formula.same_clauses(lits_of({{2, 4}, {-2, 3, 4}})));
}

TEST_CASE("R4 leaves a tautological resolvent for R1") {
  // (z y)(z a)(~z y) -> (y)(~y a y): the second resolvent is tautological
  Instance inst{make({{1, 2}, {1, 3}, {-1, 2}}), 3};
  auto ap = rrule4(inst);
  REQUIRE(ap);
  bool has_taut = false;
  for (const auto& [id, c] : ap->next.formula.clauses())
    has_taut |= c.tautological();
  CHECK(has_taut);
  check_safety(inst, *ap);
}

TEST_CASE("R5 rewrites when the union holds a complementary pair") {
  Instance inst{make({{1, 2, 3}, {1, 4, 5}, {-1, -2, 6}}), 3};
  auto ap = rrule5(inst);
  REQUIRE(ap);
  CHECK(ap->next.k == 2);
  CHECK(ap->next.formula.same_clauses(
      lits_of({{2, 3, -2, 6}, {4, 5, -2, 6}})));

  Instance clean{make({{1, 2, 3}, {1, 4, 5}, {-1, 6, 7}}), 3};
  CHECK(!rrule5(clean));
}

TEST_CASE("R6 resolves an (i,1)-literal against its negative clause") {
  // z=(2,1) with (z a)(z b)(~z y c); y is a (2,1)-literal
  Instance inst{make({{1, 2}, {1, 3}, {-1, 4, 5}, {4, 6}, {-4}}), 4};
  auto ap = rrule6(inst);
  REQUIRE(ap);
  CHECK(ap->next.k == 3);
  CHECK(ap->next.formula.same_clauses(
      lits_of({{4, 5, 2}, {4, 5, 3}, {4, 6}, {-4}})));
}

TEST_CASE("R6 with i=3 produces three resolvents") {
  Rng rng(501);
  Instance inst = test::make_rule_case(rng, "R6");
  auto ap = rrule6(inst);
  REQUIRE(ap);
  CHECK(ap->entry.added.size() == ap->entry.removed.size() - 1);
  CHECK(ap->entry.delta_k == 1);
}

TEST_CASE("R7 replaces a (2,2)-variable by its four resolvents") {
  Instance inst{make({{1, 2}, {1, 3}, {-1, 4}, {-1, 5},
                      {2, 6}, {-2}, {3, 6}, {-3}, {4, 6}, {-4}, {5, 6}, {-5}}),
                6};
  auto ap = rrule7(inst);
  REQUIRE(ap);
  CHECK(ap->next.k == 6);  // k unchanged
  CHECK(!ap->next.formula.contains_var(1));
  CHECK(ap->entry.added.size() == 4);
  Formula resolvents = lits_of({{2, 4}, {3, 4}, {2, 5}, {3, 5},
                                {2, 6}, {-2}, {3, 6}, {-3}, {4, 6}, {-4},
                                {5, 6}, {-5}});
  CHECK(ap->next.formula.same_clauses(resolvents));
}

TEST_CASE("R7 requires an (i,1)-literal in every touched clause") {
  // y4's side contains only a (2,2)-literal
  Instance inst{make({{1, 2}, {1, 3}, {-1, 4}, {-1, 5},
                      {2, 6}, {-2}, {3, 6}, {-3}, {4, 6}, {-4},
                      {5, 6}, {5, 7}, {-5, 6}, {-5, 7}}),
                6};
  CHECK(!rrule7(inst));
}

TEST_CASE("rule safety: maxsat difference equals the parameter drop") {
  Rng rng(502);
  for (const char* rule : {"R1", "R2", "R3", "R4", "R5", "R6", "R7"}) {
    for (int i = 0; i < 120; ++i) {
      Instance inst = test::make_rule_case(rng, rule);
      auto ap = apply_first_rrule(inst);
      REQUIRE(ap);
      CHECK(rule_name(ap->entry.rule) == std::string(rule));
      check_safety(inst, *ap);
    }
  }
}

TEST_CASE("rules fire only when earlier rules do not") {
  Rng rng(503);
  for (int i = 0; i < 300; ++i) {
    Formula f = test::random_formula(rng);
    Instance inst{f, f.clause_count()};
    for (int step = 0; step < 200; ++step) {
      auto ap = apply_first_rrule(inst);
      if (!ap) break;
      // every rule before the fired one returns NotApplicable
      std::optional<Applied> earlier[] = {rrule1(inst), rrule2(inst), rrule3(inst),
                                          rrule4(inst), rrule5(inst), rrule6(inst),
                                          rrule7(inst)};
      int fired = static_cast<int>(ap->entry.rule);
      for (int r = 0; r < fired; ++r) CHECK(!earlier[r]);
      inst = ap->next;
    }
  }
}

TEST_CASE("apply_rrules is the identity on irreducible instances") {
  Rng rng(504);
  Instance inst = test::make_rule_case(rng, "B9");  // irreducible by design
  ReduceResult rr = apply_rrules(inst);
  CHECK(rr.trace.empty());
  CHECK(rr.instance.formula.same_clauses(inst.formula));
  CHECK(rr.instance.k == inst.k);
}

TEST_CASE("apply_rrules output is irreducible with the documented structure") {
  Rng rng(505);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    Formula f = test::random_formula(rng);
    Instance inst{f, f.clause_count()};
    ReduceResult rr = apply_rrules(inst);
    if (rr.solved || rr.instance.k <= 0) continue;
    ++checked;
    CHECK(is_irreducible(rr.instance));
    const Formula& g = rr.instance.formula;
    for (Var v : g.variables()) {
      int pos = g.occurrences(Lit::pos(v));
      int neg = g.occurrences(Lit::neg(v));
      CHECK(pos >= 1);  // no pure literals
      CHECK(neg >= 1);
      CHECK(pos + neg >= 3);  // all variables 3+
      // a (2,1)-literal's two positive clauses are 3+-clauses
      for (Lit z : {Lit::pos(v), Lit::neg(v)}) {
        if (g.occurrences(z) == 2 && g.occurrences(~z) == 1) {
          for (ClauseId id : g.occ(z)) CHECK(g.clause(id).size() >= 3);
        }
      }
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("apply_rrules chains rules, matching the oracle") {
  Rng rng(506);
  for (int i = 0; i < 400; ++i) {
    Formula f = test::random_formula(rng);
    Instance inst{f, f.clause_count()};
    ReduceResult rr = apply_rrules(inst);
    if (rr.solved) {
      CHECK(satisfied_count(f, *rr.solved) >= inst.k);
      continue;
    }
    // Yes-equivalence at every parameter value within the drop.
    int drop = inst.k - rr.instance.k;
    for (int k = 0; k <= f.clause_count(); ++k) {
      bool lhs = brute_decision(f, k);
      bool rhs = brute_decision(rr.instance.formula, k - drop);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("trace text has one line per entry") {
  Instance inst{make({{1, -1, 2}, {1, 2}, {-1, 2}}), 3};
  ReduceResult rr = apply_rrules(inst);
  std::string text = rr.trace.to_text();
  size_t lines = std::count(text.begin(), text.end(), '\n');
  CHECK(lines == rr.trace.entries.size());
  CHECK(text.find("dk=") != std::string::npos);
}

TEST_CASE("forward replay reproduces the reduced formula") {
  Rng rng(507);
  for (int i = 0; i < 300; ++i) {
    Formula f = test::random_formula(rng);
    Instance inst{f, f.clause_count()};
    ReduceResult rr = apply_rrules(inst);
    if (rr.solved) continue;
    Formula replay = f;
    for (const auto& e : rr.trace.entries) replay_entry_forward(replay, e);
    CHECK(replay.same_clauses(rr.instance.formula));
  }
}

TEST_CASE("reverse_replay lifts certificates across the trace") {
  Rng rng(508);
  int lifted_checked = 0;
  for (int i = 0; i < 1000 || lifted_checked < 300; ++i) {
    if (i > 5000) break;
    Formula f = test::random_formula(rng);
    Instance inst{f, f.clause_count()};
    ReduceResult rr = apply_rrules(inst);
    if (rr.solved || rr.trace.empty()) continue;
    bool kernel_free = true;
    for (const auto& e : rr.trace.entries)
      kernel_free &= e.rule != RuleId::KernelBigClause;
    if (!kernel_free) continue;
    BruteResult r = brute_maxsat(rr.instance.formula);
    Assignment lifted = reverse_replay(rr.trace, rr.instance.formula, r.argmax);
    int drop = inst.k - rr.instance.k;
    CHECK(satisfied_count(f, lifted) >= r.max + drop);
    ++lifted_checked;
  }
  CHECK(lifted_checked >= 300);
}

TEST_CASE("reverse_replay on an R3 entry satisfies both originals") {
  Instance inst{make({{1, 2}, {-1, 3}}), 2};
  auto ap = rrule3(inst);
  REQUIRE(ap);
  ReductionTrace trace;
  trace.append(ap->entry);
  Assignment sigma;  // satisfy the resolvent (2 3) via 2
  sigma.set(2, true);
  sigma.set(3, false);
  Assignment lifted = reverse_replay(trace, ap->next.formula, sigma);
  CHECK(satisfied_count(inst.formula, lifted) == 2);
}

TEST_CASE("reverse_replay on an R7 entry recovers all four originals") {
  Instance inst{make({{1, 2}, {1, 3}, {-1, 4}, {-1, 5},
                      {2, 6}, {-2}, {3, 6}, {-3}, {4, 6}, {-4}, {5, 6}, {-5}}),
                6};
  auto ap = rrule7(inst);
  REQUIRE(ap);
  ReductionTrace trace;
  trace.append(ap->entry);
  Assignment sigma;  // satisfies all four resolvents
  for (Var v : {2, 3, 4, 5}) sigma.set(v, true);
  sigma.set(6, false);
  Assignment lifted = reverse_replay(trace, ap->next.formula, sigma);
  int before = satisfied_count(ap->next.formula, sigma);
  CHECK(satisfied_count(inst.formula, lifted) >= before);
  // all four original z-clauses are satisfied
  for (ClauseId id : {1, 2, 3, 4}) CHECK(lifted.satisfies(inst.formula.clause(id)));
}

TEST_CASE("kernel guard: oversized formulas are kernelized mid-loop") {
  // size > 4k^2 with k = 2: any formula of size > 16
  Formula f;
  for (int i = 0; i < 12; ++i)
    f.add_clause({Lit::pos(3 * i + 1), Lit::pos(3 * i + 2), Lit::neg(3 * i + 3)});
  Instance inst{f, 2};
  RuleCounters counters;
  ReduceResult rr = apply_rrules(inst, &counters);
  // m = 12 >= 2k = 4, so the kernel answers via the majority witness.
  REQUIRE(rr.solved);
  CHECK(counters["kernel_majority"] == 1);
  CHECK(satisfied_count(f, *rr.solved) >= 2);
}
