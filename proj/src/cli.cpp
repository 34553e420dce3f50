#include "maxsat/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "maxsat/branch.hpp"
#include "maxsat/dimacs.hpp"
#include "maxsat/oracle.hpp"

namespace maxsat {

namespace {

std::string certificate_line(const Assignment& a, int num_vars) {
  std::ostringstream os;
  os << "v";
  for (Var v = 1; v <= num_vars; ++v) {
    bool val = a.has(v) && a.value(v);
    os << " " << (val ? v : -v);
  }
  os << " 0";
  return os.str();
}

nlohmann::json stats_json(const Solver& solver, const AuditReport& audit) {
  const SolverStats& s = solver.stats();
  nlohmann::json j;
  j["nodes"] = s.nodes;
  j["max_depth"] = s.max_depth;
  nlohmann::json firings = nlohmann::json::object();
  for (const char* r : {"R1", "R2", "R3", "R4", "R5", "R6", "R7",
                        "kernel_big_clause", "kernel_majority"})
    firings[r] = s.firings.count(r) ? s.firings.at(r) : 0;
  for (int b = 1; b <= 14; ++b) {
    std::string key = "B" + std::to_string(b);
    firings[key] = s.firings.count(key) ? s.firings.at(key) : 0;
  }
  j["rule_firings"] = firings;
  j["leaves"] = {{"k_le_1", s.leaf_k_le_1},
                 {"kernel_majority", s.leaf_kernel_majority},
                 {"simplified_threshold", s.simplified.threshold_leaves},
                 {"simplified_setcover", s.simplified.setcover_leaves}};
  j["setcover_nodes"] = s.simplified.setcover_nodes;
  j["setcover_max_measure_ratio"] = s.simplified.max_measure_ratio;
  j["audit_violations"] = audit.violations.size();
  return j;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Exact parameterized MaxSAT solver"};
  std::string input_path;
  std::optional<int> k_flag;
  bool max_mode = false;
  std::string trace_path, stats_path;
  bool audit_flag = false, oracle_check = false, no_verify = false;

  app.add_option("file", input_path, "DIMACS CNF input")->required();
  app.add_option("--k", k_flag, "decide: is there an assignment satisfying >= k clauses?");
  app.add_flag("--max", max_mode, "find the maximum number of satisfiable clauses");
  app.add_option("--trace", trace_path, "write the root reduction trace to this file");
  app.add_flag("--audit", audit_flag, "print the branching audit report");
  app.add_option("--stats", stats_path, "write solver statistics JSON to this file");
  app.add_flag("--oracle-check", oracle_check,
               "cross-check the answer against brute force (n <= 20)");
  app.add_flag("--no-verify", no_verify, "skip certificate verification");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }
  if (max_mode == k_flag.has_value()) {
    err << "exactly one of --k and --max is required\n";
    return kExitUsage;
  }

  std::ifstream in(input_path);
  if (!in) {
    err << "cannot open " << input_path << "\n";
    return kExitUsage;
  }
  ParsedCnf parsed;
  try {
    parsed = parse_dimacs(in);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  }
  for (const auto& w : parsed.warnings) err << "c warning: " << w << "\n";

  const Formula& f = parsed.formula;
  int num_vars = std::max(parsed.header_vars, parsed.max_var);
  int m = f.clause_count();

  if (oracle_check && f.var_count() > 20) {
    err << "--oracle-check requires at most 20 variables\n";
    return kExitUsage;
  }

  if (!trace_path.empty()) {
    ReduceResult rr = apply_rrules({f, k_flag ? *k_flag : m});
    std::ofstream tf(trace_path);
    tf << rr.trace.to_text();
  }

  SolverOptions opts;
  opts.verify_certificates = !no_verify;
  Solver solver(opts);

  bool yes = false;
  Assignment cert;
  int reported_max = -1;

  if (k_flag) {
    Outcome o = solver.solve({f, *k_flag});
    yes = o.yes;
    cert = std::move(o.certificate);
    if (oracle_check && brute_decision(f, *k_flag) != yes) {
      err << "oracle mismatch at k=" << *k_flag << "\n";
      return kExitUsage;
    }
  } else {
    int lo = (m + 1) / 2, hi = m;
    Outcome base = solver.solve({f, lo});
    if (!base.yes) throw std::logic_error("majority bound violated");
    cert = std::move(base.certificate);
    while (lo < hi) {
      int mid = lo + (hi - lo + 1) / 2;
      Outcome o = solver.solve({f, mid});
      if (o.yes) {
        lo = mid;
        cert = std::move(o.certificate);
      } else {
        hi = mid - 1;
      }
    }
    reported_max = lo;
    yes = true;
    if (oracle_check && brute_maxsat(f).max != reported_max) {
      err << "oracle mismatch: --max disagrees with brute force\n";
      return kExitUsage;
    }
  }

  AuditReport audit = audit_trace(solver.audit_records());
  if (!stats_path.empty()) {
    std::ofstream sf(stats_path);
    sf << stats_json(solver, audit).dump(2) << "\n";
  }

  if (reported_max >= 0) out << "o " << reported_max << "\n";
  out << (yes ? "s YES" : "s NO") << "\n";
  if (yes) out << certificate_line(cert, num_vars) << "\n";
  if (audit_flag) {
    std::istringstream rep(audit.to_text());
    std::string line;
    while (std::getline(rep, line)) out << "c " << line << "\n";
  }
  return yes ? kExitYes : kExitNo;
}

}  // namespace maxsat
