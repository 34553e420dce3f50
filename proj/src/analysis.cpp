#include "maxsat/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace maxsat {

double branching_root(const std::vector<int>& d) {
  if (d.empty()) throw std::invalid_argument("branching_root: empty vector");
  for (int di : d)
    if (di < 1) throw std::invalid_argument("branching_root: component < 1");

  int dmax = *std::max_element(d.begin(), d.end());
  auto p = [&](double x) {
    double v = std::pow(x, dmax);
    for (int di : d) v -= std::pow(x, dmax - di);
    return v;
  };

  double lo = 1.0, hi = static_cast<double>(d.size()) + 1.0;
  if (p(lo) >= 0.0) return 1.0;  // single-branch case: root is exactly 1
  while (hi - lo > 1e-9) {
    double mid = 0.5 * (lo + hi);
    if (p(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

bool is_inferior(const std::vector<int>& t1, const std::vector<int>& t2) {
  return branching_root(t1) > branching_root(t2) + 1e-9;
}

namespace {

std::string vec_str(const std::vector<int>& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << v[i];
  }
  os << ")";
  return os.str();
}

}  // namespace

AuditReport audit_trace(const std::vector<AuditRecord>& records) {
  AuditReport rep;
  rep.nodes = static_cast<long>(records.size());
  for (const auto& r : records) {
    std::vector<int> sorted = r.effective;
    std::sort(sorted.rbegin(), sorted.rend());
    rep.histogram[r.rule][sorted]++;
    double rho = branching_root(r.effective);
    if (r.rule == "B2") {
      rep.b2_realized.push_back({r.rule, sorted, rho});
      continue;
    }
    if (r.rule == "B13") {
      // B13's bound folds the first and third children together with the
      // branching they immediately trigger, so the flat vector is not the
      // bounded object. The node's own obligation is the immediate
      // (4,6,4,6) guarantee; the folded vector is reported against 1.3204.
      if (!r.immediate_ok)
        rep.violations.push_back({r.rule, sorted, rho});
      if (!r.cumulative.empty()) {
        std::vector<int> cum = r.cumulative;
        std::sort(cum.rbegin(), cum.rend());
        rep.b13_cumulative.push_back({r.rule, cum, branching_root(r.cumulative)});
      }
      continue;
    }
    if (rho > kAuditBound) rep.violations.push_back({r.rule, sorted, rho});
  }
  return rep;
}

std::string AuditReport::to_text() const {
  std::ostringstream os;
  os << "branching audit: " << nodes << " nodes, " << violations.size()
     << " violations\n";
  for (const auto& [rule, vecs] : histogram) {
    os << "  " << rule << ":";
    for (const auto& [v, n] : vecs) os << " " << vec_str(v) << "x" << n;
    os << "\n";
  }
  if (!violations.empty()) {
    os << "violations (rho > " << kAuditBound << "):\n";
    for (const auto& v : violations)
      os << "  " << v.rule << " " << vec_str(v.vector) << " rho=" << v.rho << "\n";
  }
  if (!b2_realized.empty()) {
    os << "B2 realized vectors (reported, not asserted):\n";
    std::map<std::vector<int>, int> h;
    for (const auto& v : b2_realized) h[v.vector]++;
    for (const auto& [v, n] : h)
      os << "  " << vec_str(v) << " x" << n << " rho=" << branching_root(v) << "\n";
  }
  if (!b13_cumulative.empty()) {
    os << "B13 cumulative vectors (reference rho(10,5,6,10,5,6)=1.3204):\n";
    for (const auto& v : b13_cumulative)
      os << "  " << vec_str(v.vector) << " rho=" << v.rho << "\n";
  }
  return os.str();
}

std::string AuditReport::to_json() const {
  nlohmann::json j;
  j["nodes"] = nodes;
  j["violations"] = nlohmann::json::array();
  for (const auto& v : violations)
    j["violations"].push_back({{"rule", v.rule}, {"vector", v.vector}, {"rho", v.rho}});
  j["histogram"] = nlohmann::json::object();
  for (const auto& [rule, vecs] : histogram) {
    nlohmann::json h = nlohmann::json::array();
    for (const auto& [v, n] : vecs) h.push_back({{"vector", v}, {"count", n}});
    j["histogram"][rule] = h;
  }
  nlohmann::json b2 = nlohmann::json::array();
  for (const auto& v : b2_realized)
    b2.push_back({{"vector", v.vector}, {"rho", v.rho}});
  j["b2_realized"] = b2;
  nlohmann::json b13 = nlohmann::json::array();
  for (const auto& v : b13_cumulative)
    b13.push_back({{"vector", v.vector}, {"rho", v.rho}});
  j["b13_cumulative"] = b13;
  return j.dump(2);
}

}  // namespace maxsat
