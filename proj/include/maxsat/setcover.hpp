#ifndef MAXSAT_SETCOVER_HPP
#define MAXSAT_SETCOVER_HPP

#include <set>
#include <vector>

namespace maxsat {

/// Min Set-Cover instance: a universe of element ids and owner-tagged sets.
/// Instances produced from simplified MaxSAT formulas have |S| <= 4.
struct SetCoverInstance {
  std::set<int> universe;
  struct OwnedSet {
    int owner;
    std::set<int> elems;
  };
  std::vector<OwnedSet> sets;
};

/// Exact minimum-cardinality cover. Reductions to fixpoint -- an element in
/// exactly one set forces that set; a set contained in another is discarded
/// -- then include/exclude branching on a maximum-cardinality set (ties by
/// lowest owner id). Throws if the universe is not covered by the union.
/// node_count, when given, accumulates the number of search nodes.
std::set<int> min_set_cover(const SetCoverInstance& inst,
                            long* node_count = nullptr);

/// Exhaustive minimum over all subcollections; guard at <= 20 sets. Returns
/// the lexicographically smallest owner set among minimum covers.
std::set<int> brute_min_cover(const SetCoverInstance& inst);

bool is_cover(const SetCoverInstance& inst, const std::set<int>& owners);

}  // namespace maxsat

#endif
