#include "maxsat/formula.hpp"

#include <algorithm>
#include <sstream>

namespace maxsat {

std::string to_string(Lit l) {
  return (l.positive() ? "+" : "-") + std::to_string(l.var());
}

bool Clause::contains(Lit l) const {
  return std::binary_search(lits.begin(), lits.end(), l);
}

bool Clause::tautological() const {
  for (size_t i = 0; i + 1 < lits.size(); ++i)
    if (lits[i].var() == lits[i + 1].var()) return true;
  return false;
}

std::string Clause::str() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < lits.size(); ++i) {
    if (i) os << " ";
    os << to_string(lits[i]);
  }
  os << ")";
  return os.str();
}

bool Assignment::satisfies(const Clause& c) const {
  for (Lit l : c.lits)
    if (satisfies(l)) return true;
  return false;
}

ClauseId Formula::add_clause(std::vector<Lit> lits) {
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  if (lits.empty()) return 0;
  Clause c;
  c.id = next_id_++;
  c.lits = std::move(lits);
  index_add(c);
  clauses_.emplace(c.id, std::move(c));
  return next_id_ - 1;
}

void Formula::restore_clause(const Clause& c) {
  if (clauses_.count(c.id))
    throw std::logic_error("restore_clause: id already present");
  index_add(c);
  clauses_.emplace(c.id, c);
  if (c.id >= next_id_) next_id_ = c.id + 1;
}

void Formula::remove_clause(ClauseId id) {
  auto it = clauses_.find(id);
  if (it == clauses_.end()) throw std::invalid_argument("remove_clause: no such clause");
  index_remove(it->second);
  clauses_.erase(it);
}

const Clause& Formula::clause(ClauseId id) const {
  auto it = clauses_.find(id);
  if (it == clauses_.end()) throw std::invalid_argument("clause: no such id");
  return it->second;
}

int Formula::var_count() const {
  int n = 0;
  Var last = 0;
  for (const auto& [code, ids] : occ_) {
    Var v = code >> 1;
    if (v != last && !ids.empty()) {
      ++n;
      last = v;
    }
  }
  return n;
}

long long Formula::size() const {
  long long s = 0;
  for (const auto& [id, c] : clauses_) s += c.size();
  return s;
}

bool Formula::contains_var(Var v) const {
  return occurrences(Lit::pos(v)) > 0 || occurrences(Lit::neg(v)) > 0;
}

int Formula::occurrences(Lit l) const {
  auto it = occ_.find(l.code());
  return it == occ_.end() ? 0 : static_cast<int>(it->second.size());
}

const std::set<ClauseId>& Formula::occ(Lit l) const {
  static const std::set<ClauseId> kEmpty;
  auto it = occ_.find(l.code());
  return it == occ_.end() ? kEmpty : it->second;
}

std::vector<Var> Formula::variables() const {
  std::vector<Var> out;
  for (const auto& [code, ids] : occ_) {
    Var v = code >> 1;
    if (!ids.empty() && (out.empty() || out.back() != v)) out.push_back(v);
  }
  return out;
}

std::vector<ClauseId> Formula::clause_ids() const {
  std::vector<ClauseId> out;
  out.reserve(clauses_.size());
  for (const auto& [id, c] : clauses_) out.push_back(id);
  return out;
}

std::vector<ClauseId> Formula::unit_clauses_of(Lit l) const {
  std::vector<ClauseId> out;
  for (ClauseId id : occ(l))
    if (clause(id).unit()) out.push_back(id);
  return out;
}

AssignDelta Formula::assign_in_place(Lit l, bool value) {
  if (!contains_var(l.var()))
    throw std::invalid_argument("assign: variable does not occur");
  Lit t = value ? l : ~l;  // the literal made true
  AssignDelta d;

  std::vector<ClauseId> sat(occ(t).begin(), occ(t).end());
  for (ClauseId id : sat) {
    d.removed_satisfied.push_back(clause(id));
    remove_clause(id);
  }
  d.satisfied = static_cast<int>(sat.size());

  std::vector<ClauseId> shrink(occ(~t).begin(), occ(~t).end());
  for (ClauseId id : shrink) {
    Clause before = clause(id);
    Clause after = before;
    after.lits.erase(std::remove(after.lits.begin(), after.lits.end(), ~t),
                     after.lits.end());
    remove_clause(id);
    if (after.lits.empty()) {
      d.removed_empty.push_back(before);
    } else {
      restore_clause(after);
      d.shrunk.emplace_back(before, after);
    }
  }
  return d;
}

bool Formula::occ_index_consistent() const {
  std::map<int, std::set<ClauseId>> rebuilt;
  for (const auto& [id, c] : clauses_)
    for (Lit l : c.lits) rebuilt[l.code()].insert(id);
  // Maintained index may keep empty entries; ignore them.
  std::map<int, std::set<ClauseId>> maintained;
  for (const auto& [code, ids] : occ_)
    if (!ids.empty()) maintained[code] = ids;
  return rebuilt == maintained;
}

bool Formula::same_clauses(const Formula& other) const {
  std::vector<std::vector<Lit>> a, b;
  for (const auto& [id, c] : clauses_) a.push_back(c.lits);
  for (const auto& [id, c] : other.clauses_) b.push_back(c.lits);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

void Formula::index_add(const Clause& c) {
  for (Lit l : c.lits) occ_[l.code()].insert(c.id);
}

void Formula::index_remove(const Clause& c) {
  for (Lit l : c.lits) {
    auto it = occ_.find(l.code());
    it->second.erase(c.id);
    if (it->second.empty()) occ_.erase(it);
  }
}

std::pair<Formula, int> assign(const Formula& f, Lit l, bool value) {
  Formula g = f;
  AssignDelta d = g.assign_in_place(l, value);
  return {std::move(g), d.satisfied};
}

int satisfied_count(const Formula& f, const Assignment& sigma) {
  for (Var v : f.variables())
    if (!sigma.has(v))
      throw std::invalid_argument("satisfied_count: assignment not total");
  int n = 0;
  for (const auto& [id, c] : f.clauses())
    if (sigma.satisfies(c)) ++n;
  return n;
}

namespace {

bool clause_all_matching(const Formula& f, const Clause& c, Lit except,
                         bool (*pred)(const Formula&, Lit)) {
  for (Lit l : c.lits)
    if (l != except && !pred(f, l)) return false;
  return true;
}

bool side_all_singletons(const Formula& f, Lit z1) {
  for (ClauseId id : f.occ(z1))
    if (!clause_all_matching(f, f.clause(id), z1, is_singleton_literal))
      return false;
  return true;
}

bool side_all_22(const Formula& f, Lit z1) {
  for (ClauseId id : f.occ(z1))
    if (!clause_all_matching(f, f.clause(id), Lit(), is_22_literal))
      return false;
  return true;
}

}  // namespace

bool is_i1_literal(const Formula& f, Lit l) {
  return f.occurrences(l) >= 1 && f.occurrences(~l) == 1;
}

bool is_singleton_literal(const Formula& f, Lit l) {
  if (!is_i1_literal(f, l)) return false;
  ClauseId id = *f.occ(~l).begin();
  return f.clause(id).unit();
}

bool is_22_literal(const Formula& f, Lit l) {
  return f.occurrences(l) == 2 && f.occurrences(~l) == 2;
}

VariableProfile profile(const Formula& f, Var v) {
  if (!f.contains_var(v)) throw std::invalid_argument("profile: unknown variable");
  VariableProfile p;
  p.pos = f.occurrences(Lit::pos(v));
  p.neg = f.occurrences(Lit::neg(v));
  int i = p.pos, j = p.neg;

  if (i == 0 || j == 0) {
    p.cls = VarClass::Pure;
  } else if (i + j >= 6 || (i == 3 && j == 2) || (i == 2 && j == 3)) {
    p.cls = VarClass::HighDegree;
  } else if (std::min(i, j) == 1) {
    // Orient so the (i,1)-side literal is the one with the larger count;
    // (1,1) counts as positive-side.
    Lit side = (j == 1) ? Lit::pos(v) : Lit::neg(v);
    p.cls = is_singleton_literal(f, side) ? VarClass::SingletonI1
                                          : VarClass::NonsingletonI1;
  } else if (i == 2 && j == 2) {
    Lit z = Lit::pos(v);
    if (side_all_22(f, z) && side_all_22(f, ~z)) {
      p.cls = VarClass::Evened22;
    } else if ((side_all_singletons(f, z) && side_all_22(f, ~z)) ||
               (side_all_singletons(f, ~z) && side_all_22(f, z))) {
      p.cls = VarClass::Skewed22;
    } else {
      p.cls = VarClass::Other22;
    }
  } else {
    p.cls = VarClass::Other;
  }
  return p;
}

SimplifiedView is_simplified(const Formula& f) {
  SimplifiedView out;
  for (const auto& [id, c] : f.clauses())
    if (c.size() > 1 && c.size() < 4) return out;

  std::set<Var> flip;
  for (Var v : f.variables()) {
    int i = f.occurrences(Lit::pos(v));
    int j = f.occurrences(Lit::neg(v));
    Lit singleton_side;
    if (j == 1 && (i == 3 || i == 4))
      singleton_side = Lit::pos(v);
    else if (i == 1 && (j == 3 || j == 4))
      singleton_side = Lit::neg(v);
    else
      return out;
    // The complement's single occurrence must be a unit clause, and the
    // singleton side must not sit in any unit clause (R-Rule 2 would apply).
    if (!f.clause(*f.occ(~singleton_side).begin()).unit()) return out;
    for (ClauseId id : f.occ(singleton_side))
      if (f.clause(id).unit()) return out;
    if (!singleton_side.positive()) flip.insert(v);
  }

  Formula norm;
  for (const auto& [id, c] : f.clauses()) {
    std::vector<Lit> lits;
    lits.reserve(c.lits.size());
    for (Lit l : c.lits)
      lits.push_back(flip.count(l.var()) ? ~l : l);
    norm.add_clause(std::move(lits));
  }
  out.ok = true;
  out.normalized = std::move(norm);
  out.flipped = std::move(flip);
  return out;
}

}  // namespace maxsat
