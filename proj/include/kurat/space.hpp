#pragma once

// Finite topological spaces as specialization preorders.
//
// A topology on n points is the same thing as a reflexive transitive
// relation ("x lies in the closure of {y}").  We store that relation as a
// boolean matrix packed into 64-bit row masks, so every set operation is a
// handful of word instructions.  Row x is the minimal open neighborhood of
// x; column y is the closure of the singleton {y}.  Closure of a set is the
// union of its singleton closures; interior is the set of points whose
// minimal neighborhood the set swallows.
//
// Points are 0-indexed internally and 1-indexed in all I/O.

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace kurat {

// Point sets are single 64-bit masks, so spaces are capped at 64 points.
inline constexpr int kMaxPoints = 64;

struct dimension_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A subset of the points of a space of known size.
struct PointSet {
    uint64_t bits = 0;
    int universe = 0;

    PointSet() = default;
    PointSet(int universe_, uint64_t bits_);

    static PointSet empty(int universe);
    static PointSet full(int universe);
    // Labels are 1-indexed.
    static PointSet of(int universe, std::initializer_list<int> labels);
    static PointSet of(int universe, const std::vector<int>& labels);

    bool contains_label(int label) const { return label >= 1 && label <= universe && (bits >> (label - 1) & 1); }
    int count() const;
    bool is_empty() const { return bits == 0; }
    std::vector<int> labels() const;   // sorted, 1-indexed
    std::string to_string() const;     // "{2,4,6}"

    friend bool operator==(const PointSet&, const PointSet&) = default;
};

uint64_t full_mask_for(int points);

class TopSpace {
  public:
    // spec_rows[x] bit y set means point x lies in the closure of {y}.
    // Construction is lenient: validate_space reports whether the matrix
    // actually is a preorder.
    TopSpace(int point_count, std::vector<uint64_t> spec_rows);

    static TopSpace discrete(int point_count);
    // Topology on {1..N} whose closure of A is {min A, ..., N}.
    static TopSpace prefix(int point_count);

    int point_count() const { return n_; }
    uint64_t full_mask() const { return full_; }
    bool spec(int x, int y) const { return (row_[static_cast<size_t>(x)] >> y) & 1; }
    const std::vector<uint64_t>& rows() const { return row_; }
    const std::vector<uint64_t>& cols() const { return col_; }

    uint64_t closure_bits(uint64_t a) const {
        uint64_t out = 0;
        uint64_t rest = a;
        while (rest) {
            int y = __builtin_ctzll(rest);
            rest &= rest - 1;
            out |= col_[static_cast<size_t>(y)];
        }
        return out;
    }
    uint64_t interior_bits(uint64_t a) const {
        uint64_t out = 0;
        for (int x = 0; x < n_; ++x)
            if ((row_[static_cast<size_t>(x)] & ~a) == 0) out |= 1ull << x;
        return out;
    }
    uint64_t complement_bits(uint64_t a) const { return full_ & ~a; }

    friend bool operator==(const TopSpace&, const TopSpace&) = default;

  private:
    int n_ = 0;
    uint64_t full_ = 0;
    std::vector<uint64_t> row_;   // row_[x] = minimal open neighborhood of x
    std::vector<uint64_t> col_;   // col_[y] = closure of {y}
};

// The five basic operations.  All of them check that operands belong to the
// given space and throw dimension_error otherwise.
PointSet closure(const TopSpace& space, const PointSet& a);
PointSet interior(const TopSpace& space, const PointSet& a);
PointSet complement(const TopSpace& space, const PointSet& a);
PointSet meet(const TopSpace& space, const PointSet& a, const PointSet& b);
PointSet join(const TopSpace& space, const PointSet& a, const PointSet& b);

// ---------------------------------------------------------------------------
// Validation

struct AxiomViolation {
    std::string axiom;    // "reflexive", "transitive", "closure-empty", ...
    std::string detail;   // human-readable counterexample, 1-indexed
};

struct ValidationReport {
    bool valid = true;
    bool exhaustive = true;            // false when axioms were sampled
    uint64_t pairs_checked = 0;        // union-axiom pairs actually tested
    std::vector<AxiomViolation> violations;
    std::string summary() const;
};

struct ValidateOptions {
    // Below this size every subset (and subset pair) is checked; above it,
    // `samples` random pairs are drawn.
    int exhaustive_bound = 12;
    int samples = 4096;
    uint64_t seed = 0x6b757261746f77ULL;
};

// Checks reflexivity, transitivity and the four closure axioms
// (k0 = 0, kk = k, k >= id, k(A|B) = kA|kB).  Never throws.
ValidationReport validate_space(const TopSpace& space, const ValidateOptions& opt = {});

// ---------------------------------------------------------------------------
// Space files: {"points": N, "closure": [[bool,...],...]} row-major.

struct invalid_space_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string space_to_json(const TopSpace& space);
// Parses and validates; throws invalid_space_error on malformed input or a
// matrix that fails validate_space.
TopSpace space_from_json(const std::string& text, const ValidateOptions& opt = {});
TopSpace load_space_file(const std::string& path, const ValidateOptions& opt = {});

}   // namespace kurat
