#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "maxsat/analysis.hpp"

using namespace maxsat;

TEST_CASE("branching roots of the vectors the case analysis quotes") {
  CHECK(branching_root({3, 2}) == doctest::Approx(1.3248).epsilon(5e-4));
  CHECK(branching_root({1}) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(branching_root({6, 1}) == doctest::Approx(1.2852).epsilon(5e-4));
  CHECK(branching_root({4, 2}) == doctest::Approx(1.2721).epsilon(5e-4));
  CHECK(branching_root({3, 3}) == doctest::Approx(1.2600).epsilon(5e-4));
  CHECK(branching_root({3, 3}) ==
        doctest::Approx(std::cbrt(2.0)).epsilon(1e-8));
  CHECK(branching_root({2, 2}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-8));
  CHECK(branching_root({2, 1}) ==
        doctest::Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-8));
  CHECK(branching_root({10, 5, 6, 10, 5, 6}) ==
        doctest::Approx(1.3204).epsilon(5e-4));
}

TEST_CASE("root identities with rho(3,2)") {
  double target = branching_root({3, 2});
  CHECK(std::abs(branching_root({5, 1}) - target) < 1e-6);
  CHECK(std::abs(branching_root({8, 4, 2}) - target) < 1e-6);
  CHECK(std::abs(branching_root({6, 5, 2}) - target) < 1e-6);
  CHECK(std::abs(branching_root({5, 4, 3}) - target) < 1e-6);
}

TEST_CASE("computed roots satisfy the characteristic polynomial") {
  std::mt19937 rng(301);
  for (int i = 0; i < 200; ++i) {
    std::vector<int> d(1 + rng() % 5);
    for (int& x : d) x = 1 + rng() % 9;
    double rho = branching_root(d);
    int dmax = *std::max_element(d.begin(), d.end());
    double p = std::pow(rho, dmax);
    for (int x : d) p -= std::pow(rho, dmax - x);
    CHECK(std::abs(p) < 1e-6 * std::pow(rho, dmax));

    std::vector<int> shuffled = d;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(std::abs(branching_root(shuffled) - rho) < 1e-9);
  }
}

TEST_CASE("branching_root rejects bad input") {
  CHECK_THROWS_AS(branching_root({}), std::invalid_argument);
  CHECK_THROWS_AS(branching_root({3, 0}), std::invalid_argument);
}

TEST_CASE("is_inferior") {
  CHECK(is_inferior({2, 2}, {3, 2}));
  CHECK(is_inferior({3, 2}, {4, 2}));   // componentwise domination
  CHECK(is_inferior({5, 1}, {4, 2}));   // less balanced, equal sum
  CHECK(!is_inferior({4, 2}, {5, 1}));
  CHECK(!is_inferior({3, 2}, {3, 2}));
}

TEST_CASE("audit_trace flags only what it should") {
  CHECK(audit_trace({}).violations.empty());

  std::vector<AuditRecord> recs;
  recs.push_back({"B10", {8, 4, 2}, {}, true});
  AuditReport rep = audit_trace(recs);
  CHECK(rep.violations.empty());
  CHECK(rep.nodes == 1);

  recs.push_back({"B5", {2, 1}, {}, true});  // golden ratio, flagged
  rep = audit_trace(recs);
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0].rule == "B5");
  CHECK(rep.violations[0].rho > 1.6);

  // the same vector on a B2 node is reported, never flagged
  recs.clear();
  recs.push_back({"B2", {2, 1}, {}, true});
  rep = audit_trace(recs);
  CHECK(rep.violations.empty());
  CHECK(rep.b2_realized.size() == 1);

  // B13: immediate failure is a violation; cumulative is reported
  recs.clear();
  AuditRecord b13{"B13", {4, 6, 4, 6}, {10, 5, 6, 10, 5, 6}, true};
  recs.push_back(b13);
  rep = audit_trace(recs);
  CHECK(rep.violations.empty());
  REQUIRE(rep.b13_cumulative.size() == 1);
  CHECK(rep.b13_cumulative[0].rho == doctest::Approx(1.3204).epsilon(5e-4));

  b13.immediate_ok = false;
  rep = audit_trace({b13});
  CHECK(rep.violations.size() == 1);
}

TEST_CASE("reports render") {
  std::vector<AuditRecord> recs{{"B1", {3, 2}, {}, true}};
  AuditReport rep = audit_trace(recs);
  CHECK(rep.to_text().find("B1") != std::string::npos);
  CHECK(rep.to_json().find("\"nodes\"") != std::string::npos);
}
