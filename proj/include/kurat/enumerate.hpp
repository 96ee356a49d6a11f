#pragma once

// Enumeration of all finite topologies on n labeled points, i.e. all
// reflexive transitive boolean matrices.  Rows are assigned depth-first in
// ascending mask order with transitivity enforced incrementally, so the
// stream order is deterministic.  With dedup enabled, one representative per
// isomorphism class is emitted: spaces are bucketed by an iterated
// degree-refinement fingerprint and confirmed by an exact permutation
// search inside each bucket.

#include <cstdint>
#include <functional>
#include <vector>

#include "kurat/space.hpp"

namespace kurat {

// Labeled preorder counts grow fast (9.5M at 7 points); 7 is the supported
// ceiling and 5 is instant.
inline constexpr int kEnumerationCap = 7;

struct enumeration_cap_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Visits every space; return false from the visitor to stop early.
void enumerate_spaces(int point_count, bool dedup, const std::function<bool(const TopSpace&)>& visit);

std::vector<TopSpace> enumerate_spaces_vec(int point_count, bool dedup);

// Memoized per-size lists of isomorphism-class representatives.  The heavy
// sweeps in the search commands all share this cache.
const std::vector<TopSpace>& dedup_spaces(int point_count);

// Structure-preserving bijection test (specialization matrices match under
// some relabeling).
bool spaces_isomorphic(const TopSpace& a, const TopSpace& b);

uint64_t space_fingerprint(const TopSpace& s);

// All 2^points subset masks ordered by popcount, then numeric value — the
// canonical assignment sweep order everywhere a search reports "first"
// witnesses.
std::vector<uint64_t> subsets_by_popcount(int points);

}   // namespace kurat
