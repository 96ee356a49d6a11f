// Fixpoint generation of set families under a chosen operation subset, the
// sweep that maximizes family size over all small spaces, and the prefix-
// topology iterations behind the unboundedness demonstrations.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kurat/enumerate.hpp"
#include "kurat/space.hpp"
#include "kurat/term.hpp"

namespace kurat {

// 2^points bounds any family on a real space; the cap only bites on
// pathological configurations.
inline constexpr int kDefaultSaturationCap = 10000;

struct OpSet {
    bool use_k = false;
    bool use_i = false;
    bool use_c = false;
    bool use_meet = false;
    bool use_join = false;

    // Letters k, i, c, ^ (meet), v (join), each at most once, any order.
    static OpSet parse(const std::string& text);
    std::string to_string() const;   // canonical letter order "kic^v"

    bool any_binary() const { return use_meet || use_join; }
    friend bool operator==(const OpSet&, const OpSet&) = default;
};

struct FamilyEntry {
    PointSet set;
    TermPtr witness;
};

// Entries appear in witness-term order (size, then structure), so entry 0
// is always the first initial set and every witness is minimal.
struct Family {
    std::vector<FamilyEntry> entries;
    bool truncated = false;

    int size() const { return static_cast<int>(entries.size()); }
    const FamilyEntry* find(uint64_t bits) const;
};

Family saturate(const TopSpace& space, const std::vector<PointSet>& initial, const OpSet& ops,
                int cap = kDefaultSaturationCap);

// Count-only path used by the sweeps; no witness bookkeeping.  stop_at > 0
// returns as soon as the family reaches that size.
int saturate_count(const TopSpace& space, const std::vector<uint64_t>& initial, const OpSet& ops,
                   int cap = kDefaultSaturationCap, int stop_at = 0);

std::string family_to_json(const Family& family, const TopSpace& space, const OpSet& ops);

struct SweepResult {
    int max_count = 0;
    TopSpace space;                     // earliest task attaining max_count
    std::vector<PointSet> assignment;
    Family family;                      // full saturation at that task
    uint64_t task_index = 0;
    uint64_t tasks_total = 0;
    bool stopped_early = false;         // stop_at reached
};

// Sweeps isomorphism-class representatives of every space with 1..max_points
// points and every n_generators-tuple of subsets (each generator running
// through subsets by popcount then value, generator 1 slowest).  Reduction
// is by (count desc, task index asc) and therefore deterministic regardless
// of the worker count.  stop_at > 0 stops the sweep at the earliest task
// reaching that count.
SweepResult max_over_spaces(const OpSet& ops, int n_generators, int max_points,
                            int cap = kDefaultSaturationCap, int stop_at = 0);

// Worker pool size: KURAT_WORKERS when set, else 1.
int worker_count();

// phi = I ^ [k(k ^ c)] iterated on the evens of the prefix space; the j-th
// entry equals evens intersected with [2j+2, N].
std::vector<PointSet> phi_iterate(int N, int steps);

// E_j = E_{j-1} ^ k(kE_{j-1} ^ O) on the prefix space; same closed form.
std::vector<PointSet> ej_sequence(int N, int steps);

struct GrowthRow {
    int points = 0;
    int count = 0;
    bool truncated = false;
};

struct GrowthResult {
    OpSet ops;
    int n_generators = 0;
    std::vector<GrowthRow> rows;
    bool strictly_increasing = false;
    // True when the opset contains one of the two constructions whose
    // unboundedness the closed-form analysis establishes ({k,c,^} on one
    // generator, {k,^} on two); other opsets still run and report counts.
    bool known_infinite_construction = false;
};

// Saturates on prefix spaces of the given sizes; generators are the evens
// (and the odds when n_generators = 2).  Strictly increasing counts are
// evidence of unboundedness, never proof.
GrowthResult growth_probe(const OpSet& ops, int n_generators, const std::vector<int>& sizes,
                          int cap = kDefaultSaturationCap);

}   // namespace kurat
