// Operation posets under the pointwise inclusion order, hereditary-subset
// lattices, the join closure into the generated distributive lattice, and
// the closed-form family counts (including the Dedekind numbers).
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kurat/saturate.hpp"
#include "kurat/term.hpp"

namespace kurat {

// Two terms that evaluate equal everywhere tested cannot be ordered.
struct order_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline constexpr int kDefaultOrderBound = 5;

struct OperationPoset {
    std::vector<TermPtr> elements;
    // Bit j of leq[i] means elements[i] <= elements[j]; at most 64 elements.
    std::vector<uint64_t> leq;
    // Covering edges (lower index, upper index), sorted.
    std::vector<std::pair<int, int>> hasse;

    int size() const { return static_cast<int>(elements.size()); }
    bool le(int i, int j) const { return leq[static_cast<size_t>(i)] >> j & 1; }
};

// Certifies s <= t by eval(s) subseteq eval(t) on every space with up to
// max_points points (isomorphism-class representatives) and every subset.
// Terms must be over one generator.  Throws order_error when two inputs
// evaluate equal at the bound, naming the pair.
OperationPoset build_order(const std::vector<TermPtr>& terms, int max_points = kDefaultOrderBound);

struct DownSetLattice {
    // Down-closed subsets as bitmasks over base element indices, ascending;
    // includes the empty set.  Closed under union and intersection.
    std::vector<uint64_t> elements;
    int total() const { return static_cast<int>(elements.size()); }
    int nonempty() const { return total() - 1; }
};

DownSetLattice hereditary_subsets(const OperationPoset& base);

struct DistributiveClosureResult {
    // Canonical representatives (joins of base terms, operands sorted by
    // term order), in term order.
    std::vector<TermPtr> elements;
    // Pairs of element indices whose evaluations could not be separated at
    // the bound.  Empty when the bound suffices.
    std::vector<std::pair<int, int>> collisions;
};

// Closes a meet-closed term list (over one generator) under irredundant
// joins: one element per nonempty antichain of the base order.
DistributiveClosureResult distributive_closure(const std::vector<TermPtr>& base_terms,
                                               int max_points = kDefaultOrderBound);

struct CellCount {
    bool infinite = false;
    unsigned long long value = 0;
};

// The closed-form family count for n generators under the given opset
// (unary part one of {}, {i}, {k}, {c}, {i,k}, or a c-containing set with k
// or i, which all coincide).  n = 1 returns the single-generator table.
CellCount closed_form_counts(int n, const OpSet& ops);

// Free distributive lattice on n generators, no empty meet or join:
// 1, 4, 18, 166, 7579, 7828352.  Counts monotone boolean functions minus
// the two constants.  n is capped at 6 for runtime.
unsigned long long dedekind_count(int n);

enum class HasseFormat { dot, json, markdown };

std::string emit_hasse(const OperationPoset& poset, HasseFormat format);

// Order-preserving bijection search between two small posets given as
// leq bitmask rows.
bool posets_isomorphic(const std::vector<uint64_t>& leq_a, const std::vector<uint64_t>& leq_b);

// The seven unary {k,i} operations as terms in g1, in term order.
std::vector<TermPtr> unary_ki_terms();

// The thirteen {k,i,^} operations: the seven unary ones, ki^ik, and the
// meets of I with ki, ik, kik, iki, ki^ik.
std::vector<TermPtr> meet_ki_terms();

}   // namespace kurat
