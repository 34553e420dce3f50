#include "maxsat/setcover.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>

namespace maxsat {

bool is_cover(const SetCoverInstance& inst, const std::set<int>& owners) {
  std::set<int> covered;
  for (const auto& s : inst.sets)
    if (owners.count(s.owner))
      covered.insert(s.elems.begin(), s.elems.end());
  return std::includes(covered.begin(), covered.end(), inst.universe.begin(),
                       inst.universe.end());
}

namespace {

struct Work {
  std::set<int> uncovered;
  std::vector<SetCoverInstance::OwnedSet> sets;
};

// Reductions to fixpoint. Returns the owners forced into the cover, or
// nullopt if some element is uncoverable.
std::optional<std::set<int>> reduce_to_fixpoint(Work& w) {
  std::set<int> forced;
  bool changed = true;
  while (changed) {
    changed = false;
    // (a) element in exactly one set -> take that set
    for (int e : w.uncovered) {
      int count = 0, owner_idx = -1;
      for (size_t i = 0; i < w.sets.size(); ++i)
        if (w.sets[i].elems.count(e)) {
          ++count;
          owner_idx = static_cast<int>(i);
        }
      if (count == 0) return std::nullopt;
      if (count == 1) {
        forced.insert(w.sets[owner_idx].owner);
        for (int covered : w.sets[owner_idx].elems) w.uncovered.erase(covered);
        w.sets.erase(w.sets.begin() + owner_idx);
        changed = true;
        break;
      }
    }
    if (changed) continue;
    // (b) set contained in another -> discard the smaller (ties by owner id:
    // keep the lower)
    for (size_t i = 0; i < w.sets.size() && !changed; ++i) {
      for (size_t j = 0; j < w.sets.size(); ++j) {
        if (i == j) continue;
        const auto& a = w.sets[i];
        const auto& b = w.sets[j];
        bool a_sub_b = std::includes(b.elems.begin(), b.elems.end(),
                                     a.elems.begin(), a.elems.end());
        if (!a_sub_b) continue;
        if (a.elems.size() < b.elems.size() ||
            (a.elems.size() == b.elems.size() && a.owner > b.owner)) {
          w.sets.erase(w.sets.begin() + i);
          changed = true;
          break;
        }
      }
    }
  }
  return forced;
}

// Restricts sets to the uncovered universe before comparing.
void clip_sets(Work& w) {
  for (auto& s : w.sets) {
    std::set<int> clipped;
    for (int e : s.elems)
      if (w.uncovered.count(e)) clipped.insert(e);
    s.elems = std::move(clipped);
  }
}

std::optional<std::set<int>> search(Work w, long* node_count) {
  if (node_count) ++*node_count;
  clip_sets(w);
  auto forced = reduce_to_fixpoint(w);
  if (!forced) return std::nullopt;
  if (w.uncovered.empty()) return forced;

  // Branch on a maximum-cardinality set, ties by lowest owner id.
  size_t pick = 0;
  for (size_t i = 1; i < w.sets.size(); ++i) {
    if (w.sets[i].elems.size() > w.sets[pick].elems.size() ||
        (w.sets[i].elems.size() == w.sets[pick].elems.size() &&
         w.sets[i].owner < w.sets[pick].owner))
      pick = i;
  }
  SetCoverInstance::OwnedSet chosen = w.sets[pick];

  Work inc = w;
  inc.sets.erase(inc.sets.begin() + pick);
  for (int e : chosen.elems) inc.uncovered.erase(e);
  auto with = search(std::move(inc), node_count);
  if (with) {
    with->insert(chosen.owner);
    with->insert(forced->begin(), forced->end());
  }

  Work exc = w;
  exc.sets.erase(exc.sets.begin() + pick);
  auto without = search(std::move(exc), node_count);
  if (without) without->insert(forced->begin(), forced->end());

  if (!with) return without;
  if (!without) return with;
  return with->size() <= without->size() ? with : without;
}

}  // namespace

std::set<int> min_set_cover(const SetCoverInstance& inst, long* node_count) {
  std::set<int> all;
  for (const auto& s : inst.sets) all.insert(s.elems.begin(), s.elems.end());
  if (!std::includes(all.begin(), all.end(), inst.universe.begin(),
                     inst.universe.end()))
    throw std::invalid_argument("min_set_cover: universe not coverable");

  Work w;
  w.uncovered = inst.universe;
  w.sets = inst.sets;
  auto result = search(std::move(w), node_count);
  if (!result) throw std::logic_error("min_set_cover: search failed on coverable input");
  return *result;
}

std::set<int> brute_min_cover(const SetCoverInstance& inst) {
  if (inst.sets.size() > 20)
    throw std::invalid_argument("brute_min_cover: more than 20 sets");
  int n = static_cast<int>(inst.sets.size());

  // Element ids mapped to bit positions so subsets enumerate as masks.
  std::map<int, int> bit;
  for (int e : inst.universe) {
    int b = static_cast<int>(bit.size());
    bit[e] = b;
  }
  std::uint64_t want = (bit.size() >= 64) ? ~0ull : (1ull << bit.size()) - 1;
  std::vector<std::uint64_t> mask_of(n, 0);
  for (int i = 0; i < n; ++i)
    for (int e : inst.sets[i].elems) {
      auto it = bit.find(e);
      if (it != bit.end()) mask_of[i] |= 1ull << it->second;
    }

  std::set<int> owner_ids;
  for (const auto& s : inst.sets) owner_ids.insert(s.owner);
  bool owners_distinct = static_cast<int>(owner_ids.size()) == n;

  std::optional<std::set<int>> best;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    // With one owner per set, |owners| == popcount, so larger masks cannot
    // beat the incumbent (equal sizes still compete on the tie-break).
    if (owners_distinct && best &&
        std::popcount(mask) > static_cast<int>(best->size()))
      continue;
    std::uint64_t covered = 0;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) covered |= mask_of[i];
    if (covered != want) continue;
    std::set<int> owners;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) owners.insert(inst.sets[i].owner);
    if (!best || owners.size() < best->size() ||
        (owners.size() == best->size() && owners < *best))
      best = std::move(owners);
  }
  if (!best) throw std::invalid_argument("brute_min_cover: universe not coverable");
  return *best;
}

}  // namespace maxsat
