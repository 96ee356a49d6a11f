// Terms over the closure-algebra signature: generators, k, i, c, meet, join.
// Nodes are immutable and shared; copying a TermPtr is O(1).
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kurat/space.hpp"

namespace kurat {

// Kind order doubles as the tiebreak order for minimal witnesses.
enum class TermKind : uint8_t { Generator = 0, K = 1, Iop = 2, C = 3, Meet = 4, Join = 5 };

class Term;
using TermPtr = std::shared_ptr<const Term>;

class Term {
public:
    TermKind kind;
    int gen;              // Generator only; 1-based
    TermPtr left, right;  // unary ops use left; right null

    static TermPtr generator(int j);
    static TermPtr k(TermPtr t);
    static TermPtr i(TermPtr t);
    static TermPtr c(TermPtr t);
    static TermPtr meet(TermPtr a, TermPtr b);
    static TermPtr join(TermPtr a, TermPtr b);

    int size() const { return size_; }               // node count
    int max_generator() const { return max_gen_; }

private:
    Term(TermKind kd, int g, TermPtr l, TermPtr r);
    int size_;
    int max_gen_;
};

// Total order: size first, then kind, then children (left before right),
// then generator index.  Distinct structures never compare equal.
bool term_less(const TermPtr& a, const TermPtr& b);
bool term_equal_structural(const TermPtr& a, const TermPtr& b);

struct term_parse_error : std::invalid_argument {
    size_t position;
    term_parse_error(const std::string& what, size_t pos)
        : std::invalid_argument(what + " at position " + std::to_string(pos)), position(pos) {}
};

struct arity_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Syntax: unary letters juxtaposed on the left, generators g1..gn,
// infix ^ (meet, binds tighter) and v (join), parentheses.  "k(g1 ^ ikg1)"
std::string term_to_string(const TermPtr& t);
TermPtr parse_term(const std::string& text);

uint64_t eval_bits(const Term& t, const TopSpace& space, const std::vector<uint64_t>& assignment);
PointSet eval(const TermPtr& t, const TopSpace& space, const std::vector<PointSet>& assignment);

// Swaps K<->Iop and Meet<->Join; fixes C and generators.  Involutive, and
// eval(dual(t), A...) == c eval(t, cA...).
TermPtr dual(const TermPtr& t);

// ---- unary words -------------------------------------------------------
// A word over {k,i,c}; leftmost letter applied last.  "" is the identity.
using UnaryWord = std::string;

// Unique normal form under {kk->k, ii->i, cc->e, kc->ci, ic->ck,
// ikik->ik, kiki->ki}: an optional leading c followed by one of the seven
// {k,i} forms.
UnaryWord normalize_unary(const UnaryWord& w);

// All normal forms reachable from the identity by right-appending letters
// of the alphabet.  Sorted with c-free forms first, lexicographic within.
std::vector<UnaryWord> enumerate_unary_monoid(const std::string& alphabet);

// The word as a term applied to generator `gen`.
TermPtr term_of_word(const UnaryWord& w, int gen = 1);

// ---- finite-model equality --------------------------------------------
struct Distinguisher {
    TopSpace space;
    std::vector<PointSet> assignment;
    PointSet lhs, rhs;
};

struct TermEqualResult {
    bool equal;           // no difference found up to max_points
    int max_points;
    std::optional<Distinguisher> witness;   // set iff !equal
};

// Evaluates both terms on every space of 1..max_points points (one
// representative per isomorphism class) and every assignment of subsets.
// A verdict of equal is "equal up to this bound", not a proof.
TermEqualResult term_equal(const TermPtr& s, const TermPtr& t, int max_points);

}   // namespace kurat
