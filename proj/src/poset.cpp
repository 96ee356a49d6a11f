#include "kurat/poset.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>

#include "json.hpp"

#include "kurat/enumerate.hpp"

namespace kurat {

// ---- order construction ----------------------------------------------------

OperationPoset build_order(const std::vector<TermPtr>& terms, int max_points) {
    if (terms.empty()) throw std::invalid_argument("build_order needs at least one term");
    if (terms.size() > 64) throw std::invalid_argument("posets are limited to 64 elements");
    for (const TermPtr& t : terms)
        if (t->max_generator() > 1)
            throw std::invalid_argument("build_order terms must be over one generator: " + term_to_string(t));
    if (max_points < 1 || max_points > kEnumerationCap)
        throw enumeration_cap_error("order bound must be 1.." + std::to_string(kEnumerationCap) + ", got " +
                                    std::to_string(max_points));

    const int T = static_cast<int>(terms.size());
    const uint64_t all = T == 64 ? ~0ull : (1ull << T) - 1;
    std::vector<uint64_t> rel(static_cast<size_t>(T), all);
    std::vector<uint64_t> vals(static_cast<size_t>(T));
    std::vector<uint64_t> assign(1);
    for (int m = 1; m <= max_points; ++m) {
        for (const TopSpace& sp : dedup_spaces(m)) {
            for (uint64_t a = 0; a < (1ull << m); ++a) {
                assign[0] = a;
                for (int e = 0; e < T; ++e) vals[static_cast<size_t>(e)] = eval_bits(*terms[static_cast<size_t>(e)], sp, assign);
                for (int x = 0; x < T; ++x) {
                    uint64_t keep = rel[static_cast<size_t>(x)];
                    uint64_t rest = keep;
                    while (rest) {
                        int y = __builtin_ctzll(rest);
                        rest &= rest - 1;
                        if (vals[static_cast<size_t>(x)] & ~vals[static_cast<size_t>(y)]) keep &= ~(1ull << y);
                    }
                    rel[static_cast<size_t>(x)] = keep;
                }
            }
        }
    }

    for (int x = 0; x < T; ++x)
        for (int y = x + 1; y < T; ++y)
            if ((rel[static_cast<size_t>(x)] >> y & 1) && (rel[static_cast<size_t>(y)] >> x & 1))
                throw order_error("not antisymmetric at this bound: \"" + term_to_string(terms[static_cast<size_t>(x)]) +
                                  "\" and \"" + term_to_string(terms[static_cast<size_t>(y)]) +
                                  "\" evaluate equal on every space with up to " + std::to_string(max_points) +
                                  " points");

    OperationPoset p;
    p.elements = terms;
    p.leq = rel;
    for (int x = 0; x < T; ++x) {
        uint64_t above = rel[static_cast<size_t>(x)] & ~(1ull << x);
        uint64_t rest = above;
        while (rest) {
            int y = __builtin_ctzll(rest);
            rest &= rest - 1;
            bool cover = true;
            uint64_t between = above & ~(1ull << y);
            while (between && cover) {
                int z = __builtin_ctzll(between);
                between &= between - 1;
                if (rel[static_cast<size_t>(z)] >> y & 1) cover = false;
            }
            if (cover) p.hasse.emplace_back(x, y);
        }
    }
    std::sort(p.hasse.begin(), p.hasse.end());
    return p;
}

DownSetLattice hereditary_subsets(const OperationPoset& base) {
    const int T = base.size();
    if (T > 20) throw std::invalid_argument("hereditary subset enumeration supports up to 20 base elements");
    std::vector<uint64_t> dn(static_cast<size_t>(T), 0);
    for (int j = 0; j < T; ++j)
        for (int x = 0; x < T; ++x)
            if (base.le(j, x)) dn[static_cast<size_t>(x)] |= 1ull << j;
    DownSetLattice out;
    for (uint64_t S = 0; S < (1ull << T); ++S) {
        bool ok = true;
        uint64_t rest = S;
        while (rest && ok) {
            int x = __builtin_ctzll(rest);
            rest &= rest - 1;
            if (dn[static_cast<size_t>(x)] & ~S) ok = false;
        }
        if (ok) out.elements.push_back(S);
    }
    return out;
}

// ---- distributive closure ----------------------------------------------------

namespace {

uint64_t mix_sig(uint64_t h, uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdull;
    return h ^ (h >> 29);
}

// Streams eval over every (space, subset) pair at the bound.
template <typename Fn>
void for_each_eval(const TermPtr& t, int max_points, Fn&& fn) {
    std::vector<uint64_t> assign(1);
    for (int m = 1; m <= max_points; ++m)
        for (const TopSpace& sp : dedup_spaces(m))
            for (uint64_t a = 0; a < (1ull << m); ++a) {
                assign[0] = a;
                fn(eval_bits(*t, sp, assign));
            }
}

uint64_t eval_signature(const TermPtr& t, int max_points) {
    uint64_t h = 0x6b75726174ull;
    for_each_eval(t, max_points, [&](uint64_t v) { h = mix_sig(h, v); });
    return h;
}

bool eval_equal_at_bound(const TermPtr& s, const TermPtr& t, int max_points) {
    std::vector<uint64_t> assign(1);
    for (int m = 1; m <= max_points; ++m)
        for (const TopSpace& sp : dedup_spaces(m))
            for (uint64_t a = 0; a < (1ull << m); ++a) {
                assign[0] = a;
                if (eval_bits(*s, sp, assign) != eval_bits(*t, sp, assign)) return false;
            }
    return true;
}

}   // namespace

DistributiveClosureResult distributive_closure(const std::vector<TermPtr>& base_terms, int max_points) {
    OperationPoset base = build_order(base_terms, max_points);
    const int T = base.size();
    if (T > 20) throw std::invalid_argument("antichain enumeration supports up to 20 base elements");

    // cmp[x] = elements comparable with x, x excluded
    std::vector<uint64_t> cmp(static_cast<size_t>(T), 0);
    for (int x = 0; x < T; ++x)
        for (int y = 0; y < T; ++y)
            if (x != y && (base.le(x, y) || base.le(y, x))) cmp[static_cast<size_t>(x)] |= 1ull << y;

    std::vector<int> by_term(static_cast<size_t>(T));
    for (int x = 0; x < T; ++x) by_term[static_cast<size_t>(x)] = x;
    std::sort(by_term.begin(), by_term.end(), [&](int a, int b) {
        return term_less(base.elements[static_cast<size_t>(a)], base.elements[static_cast<size_t>(b)]);
    });

    DistributiveClosureResult res;
    for (uint64_t S = 1; S < (1ull << T); ++S) {
        bool anti = true;
        uint64_t rest = S;
        while (rest && anti) {
            int x = __builtin_ctzll(rest);
            rest &= rest - 1;
            if (cmp[static_cast<size_t>(x)] & S) anti = false;
        }
        if (!anti) continue;
        TermPtr rep;
        for (int x : by_term)
            if (S >> x & 1) rep = rep ? Term::join(rep, base.elements[static_cast<size_t>(x)]) : base.elements[static_cast<size_t>(x)];
        res.elements.push_back(std::move(rep));
    }
    std::sort(res.elements.begin(), res.elements.end(), term_less);

    std::map<uint64_t, std::vector<int>> buckets;
    for (int e = 0; e < static_cast<int>(res.elements.size()); ++e) {
        uint64_t h = eval_signature(res.elements[static_cast<size_t>(e)], max_points);
        for (int prior : buckets[h])
            if (eval_equal_at_bound(res.elements[static_cast<size_t>(prior)], res.elements[static_cast<size_t>(e)], max_points))
                res.collisions.emplace_back(prior, e);
        buckets[h].push_back(e);
    }
    return res;
}

// ---- closed forms ------------------------------------------------------------

namespace {

unsigned long long checked_pow2(int e, const std::string& what) {
    if (e >= 64) throw std::invalid_argument(what + " exceeds the 64-bit range at this n");
    return 1ull << e;
}

unsigned long long pow3_minus1(int n) {
    if (n > 40) throw std::invalid_argument("3^n - 1 exceeds the 64-bit range at this n");
    unsigned long long v = 1;
    for (int j = 0; j < n; ++j) v *= 3;
    return v - 1;
}

}   // namespace

CellCount closed_form_counts(int n, const OpSet& ops) {
    if (n < 1) throw std::invalid_argument("generator count must be >= 1, got " + std::to_string(n));
    enum Row { RowId, RowI, RowK, RowC, RowIK, RowKC };
    Row row;
    if (ops.use_c) row = (ops.use_k || ops.use_i) ? RowKC : RowC;
    else if (ops.use_k && ops.use_i) row = RowIK;
    else if (ops.use_k) row = RowK;
    else if (ops.use_i) row = RowI;
    else row = RowId;
    int col = (ops.use_meet ? 1 : 0) | (ops.use_join ? 2 : 0);

    constexpr unsigned long long INF = 0;
    auto fin = [](unsigned long long v) { return CellCount{false, v}; };
    auto inf = []() { return CellCount{true, 0}; };
    (void)INF;

    if (n == 1) {
        switch (row) {
            case RowId: return fin(1);
            case RowI:
            case RowK: return fin(2);
            case RowC: return fin(col == 0 ? 2 : 4);
            case RowIK: {
                static constexpr unsigned long long v[4] = {7, 13, 13, 35};
                return fin(v[col]);
            }
            case RowKC: return col == 0 ? fin(14) : inf();
        }
    }
    const unsigned long long un = static_cast<unsigned long long>(n);
    switch (row) {
        case RowId:
            if (col == 0) return fin(un);
            if (col == 3) return fin(dedekind_count(n));
            return fin(checked_pow2(n, "2^n - 1") - 1);
        case RowI:
            if (col == 0) return fin(2 * un);
            if (col == 1) return fin(pow3_minus1(n));
            return inf();
        case RowK:
            if (col == 0) return fin(2 * un);
            if (col == 2) return fin(pow3_minus1(n));
            return inf();
        case RowC: {
            if (col == 0) return fin(2 * un);
            if (n > 5) throw std::invalid_argument("2^(2^n) exceeds the 64-bit range at this n");
            return fin(checked_pow2(1 << n, "2^(2^n)"));
        }
        case RowIK: return col == 0 ? fin(7 * un) : inf();
        case RowKC: return col == 0 ? fin(14 * un) : inf();
    }
    throw std::logic_error("unreachable opset classification");
}

namespace {

std::vector<uint64_t> monotone_functions(int k) {
    if (k == 0) return {0ull, 1ull};
    std::vector<uint64_t> prev = monotone_functions(k - 1);
    std::vector<uint64_t> out;
    int half = 1 << (k - 1);
    for (uint64_t g : prev)
        for (uint64_t h : prev)
            if ((g & ~h) == 0) out.push_back(g | (h << half));
    return out;
}

}   // namespace

unsigned long long dedekind_count(int n) {
    if (n < 1 || n > 6)
        throw std::invalid_argument("dedekind_count supports n = 1..6 (the count grows doubly "
                                    "exponentially), got " + std::to_string(n));
    if (n <= 5) return monotone_functions(n).size() - 2;
    std::vector<uint64_t> m5 = monotone_functions(5);
    unsigned long long total = 0;
    for (uint64_t g : m5) {
        for (uint64_t h : m5)
            if ((g & ~h) == 0) ++total;
    }
    return total - 2;
}

// ---- rendering ----------------------------------------------------------------

std::string emit_hasse(const OperationPoset& poset, HasseFormat format) {
    switch (format) {
        case HasseFormat::dot: {
            std::string out = "digraph poset {\n  rankdir=BT;\n";
            for (int e = 0; e < poset.size(); ++e)
                out += "  n" + std::to_string(e) + " [label=\"" + term_to_string(poset.elements[static_cast<size_t>(e)]) + "\"];\n";
            for (const auto& [lo, hi] : poset.hasse)
                out += "  n" + std::to_string(lo) + " -> n" + std::to_string(hi) + ";\n";
            out += "}\n";
            return out;
        }
        case HasseFormat::json: {
            nlohmann::json j;
            nlohmann::json nodes = nlohmann::json::array();
            for (const TermPtr& t : poset.elements) nodes.push_back(term_to_string(t));
            nlohmann::json covers = nlohmann::json::array();
            for (const auto& [lo, hi] : poset.hasse) covers.push_back({lo, hi});
            j["nodes"] = std::move(nodes);
            j["covers"] = std::move(covers);
            return j.dump(2) + "\n";
        }
        case HasseFormat::markdown: {
            std::string out = "| # | operation | covered by |\n|---:|---|---|\n";
            for (int e = 0; e < poset.size(); ++e) {
                std::string ups;
                for (const auto& [lo, hi] : poset.hasse)
                    if (lo == e) ups += (ups.empty() ? "" : ", ") + std::to_string(hi);
                out += "| " + std::to_string(e) + " | `" + term_to_string(poset.elements[static_cast<size_t>(e)]) +
                       "` | " + (ups.empty() ? "-" : ups) + " |\n";
            }
            return out;
        }
    }
    throw std::logic_error("unreachable hasse format");
}

// ---- isomorphism ----------------------------------------------------------------

bool posets_isomorphic(const std::vector<uint64_t>& leq_a, const std::vector<uint64_t>& leq_b) {
    const int n = static_cast<int>(leq_a.size());
    if (static_cast<int>(leq_b.size()) != n) return false;
    // (up-set size, down-set size) per element
    auto sig = [n](const std::vector<uint64_t>& leq, int x) {
        int down = 0;
        for (int j = 0; j < n; ++j) down += leq[static_cast<size_t>(j)] >> x & 1;
        return std::pair<int, int>(std::popcount(leq[static_cast<size_t>(x)]), down);
    };
    std::vector<std::pair<int, int>> sa(static_cast<size_t>(n)), sb(static_cast<size_t>(n));
    for (int x = 0; x < n; ++x) {
        sa[static_cast<size_t>(x)] = sig(leq_a, x);
        sb[static_cast<size_t>(x)] = sig(leq_b, x);
    }
    {
        auto ma = sa, mb = sb;
        std::sort(ma.begin(), ma.end());
        std::sort(mb.begin(), mb.end());
        if (ma != mb) return false;
    }
    std::vector<int> perm(static_cast<size_t>(n), -1);
    uint64_t used = 0;
    std::function<bool(int)> place = [&](int x) -> bool {
        if (x == n) return true;
        for (int y = 0; y < n; ++y) {
            if (used >> y & 1) continue;
            if (sa[static_cast<size_t>(x)] != sb[static_cast<size_t>(y)]) continue;
            bool ok = true;
            for (int x2 = 0; x2 < x && ok; ++x2) {
                int y2 = perm[static_cast<size_t>(x2)];
                if (((leq_a[static_cast<size_t>(x)] >> x2 & 1) != (leq_b[static_cast<size_t>(y)] >> y2 & 1)) ||
                    ((leq_a[static_cast<size_t>(x2)] >> x & 1) != (leq_b[static_cast<size_t>(y2)] >> y & 1)))
                    ok = false;
            }
            if (!ok) continue;
            perm[static_cast<size_t>(x)] = y;
            used |= 1ull << y;
            if (place(x + 1)) return true;
            used &= ~(1ull << y);
            perm[static_cast<size_t>(x)] = -1;
        }
        return false;
    };
    return place(0);
}

// ---- fixed term lists --------------------------------------------------------

std::vector<TermPtr> unary_ki_terms() {
    std::vector<TermPtr> out;
    for (const UnaryWord& w : enumerate_unary_monoid("ki")) out.push_back(term_of_word(w));
    std::sort(out.begin(), out.end(), term_less);
    return out;
}

std::vector<TermPtr> meet_ki_terms() {
    std::vector<TermPtr> out = unary_ki_terms();
    TermPtr g = Term::generator(1);
    TermPtr ki = term_of_word("ki"), ik = term_of_word("ik");
    TermPtr kik = term_of_word("kik"), iki = term_of_word("iki");
    out.push_back(Term::meet(ki, ik));
    out.push_back(Term::meet(g, ki));
    out.push_back(Term::meet(g, ik));
    out.push_back(Term::meet(g, kik));
    out.push_back(Term::meet(g, iki));
    out.push_back(Term::meet(Term::meet(g, ki), ik));
    std::sort(out.begin(), out.end(), term_less);
    return out;
}

}   // namespace kurat
