#include "kurat/term.hpp"

#include <algorithm>
#include <cctype>

#include "kurat/enumerate.hpp"

namespace kurat {

Term::Term(TermKind kd, int g, TermPtr l, TermPtr r)
    : kind(kd), gen(g), left(std::move(l)), right(std::move(r)) {
    size_ = 1 + (left ? left->size() : 0) + (right ? right->size() : 0);
    max_gen_ = std::max({gen, left ? left->max_generator() : 0, right ? right->max_generator() : 0});
}

TermPtr Term::generator(int j) {
    if (j < 1) throw std::invalid_argument("generator index must be >= 1, got " + std::to_string(j));
    return TermPtr(new Term(TermKind::Generator, j, nullptr, nullptr));
}
TermPtr Term::k(TermPtr t) { return TermPtr(new Term(TermKind::K, 0, std::move(t), nullptr)); }
TermPtr Term::i(TermPtr t) { return TermPtr(new Term(TermKind::Iop, 0, std::move(t), nullptr)); }
TermPtr Term::c(TermPtr t) { return TermPtr(new Term(TermKind::C, 0, std::move(t), nullptr)); }
TermPtr Term::meet(TermPtr a, TermPtr b) { return TermPtr(new Term(TermKind::Meet, 0, std::move(a), std::move(b))); }
TermPtr Term::join(TermPtr a, TermPtr b) { return TermPtr(new Term(TermKind::Join, 0, std::move(a), std::move(b))); }

namespace {

// -1 / 0 / +1 comparison ignoring size (callers compare size first).
int cmp_structure(const Term& a, const Term& b) {
    if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
    switch (a.kind) {
        case TermKind::Generator:
            return a.gen == b.gen ? 0 : (a.gen < b.gen ? -1 : 1);
        case TermKind::K:
        case TermKind::Iop:
        case TermKind::C:
            return cmp_structure(*a.left, *b.left);
        default: {
            if (int cl = cmp_structure(*a.left, *b.left)) return cl;
            return cmp_structure(*a.right, *b.right);
        }
    }
}

}   // namespace

bool term_less(const TermPtr& a, const TermPtr& b) {
    if (a->size() != b->size()) return a->size() < b->size();
    return cmp_structure(*a, *b) < 0;
}

bool term_equal_structural(const TermPtr& a, const TermPtr& b) {
    if (a.get() == b.get()) return true;
    if (a->size() != b->size()) return false;
    return cmp_structure(*a, *b) == 0;
}

// ---- printing ----------------------------------------------------------

namespace {

void print_into(const Term& t, std::string& out) {
    switch (t.kind) {
        case TermKind::Generator:
            out += 'g';
            out += std::to_string(t.gen);
            return;
        case TermKind::K:
        case TermKind::Iop:
        case TermKind::C: {
            out += (t.kind == TermKind::K ? 'k' : t.kind == TermKind::Iop ? 'i' : 'c');
            bool wrap = t.left->kind == TermKind::Meet || t.left->kind == TermKind::Join;
            if (wrap) out += '(';
            print_into(*t.left, out);
            if (wrap) out += ')';
            return;
        }
        case TermKind::Meet: {
            bool wl = t.left->kind == TermKind::Join;
            bool wr = t.right->kind == TermKind::Meet || t.right->kind == TermKind::Join;
            if (wl) out += '(';
            print_into(*t.left, out);
            if (wl) out += ')';
            out += " ^ ";
            if (wr) out += '(';
            print_into(*t.right, out);
            if (wr) out += ')';
            return;
        }
        case TermKind::Join: {
            bool wr = t.right->kind == TermKind::Join;
            print_into(*t.left, out);
            out += " v ";
            if (wr) out += '(';
            print_into(*t.right, out);
            if (wr) out += ')';
            return;
        }
    }
}

}   // namespace

std::string term_to_string(const TermPtr& t) {
    std::string out;
    print_into(*t, out);
    return out;
}

// ---- parsing -----------------------------------------------------------

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    char peek() {
        skip();
        return pos < s.size() ? s[pos] : '\0';
    }

    [[noreturn]] void fail(const std::string& what) { throw term_parse_error(what, pos); }

    TermPtr parse_join() {
        TermPtr t = parse_meet();
        while (peek() == 'v') {
            ++pos;
            t = Term::join(std::move(t), parse_meet());
        }
        return t;
    }

    TermPtr parse_meet() {
        TermPtr t = parse_unary();
        while (peek() == '^') {
            ++pos;
            t = Term::meet(std::move(t), parse_unary());
        }
        return t;
    }

    TermPtr parse_unary() {
        char ch = peek();
        if (ch == 'k' || ch == 'i' || ch == 'c') {
            ++pos;
            TermPtr inner = parse_unary();
            return ch == 'k' ? Term::k(std::move(inner))
                 : ch == 'i' ? Term::i(std::move(inner))
                             : Term::c(std::move(inner));
        }
        return parse_atom();
    }

    TermPtr parse_atom() {
        char ch = peek();
        if (ch == 'g') {
            ++pos;
            size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (pos == start) fail("expected generator index after 'g'");
            int j = std::stoi(s.substr(start, pos - start));
            if (j < 1) fail("generator index must be >= 1");
            return Term::generator(j);
        }
        if (ch == '(') {
            ++pos;
            TermPtr t = parse_join();
            if (peek() != ')') fail("expected ')'");
            ++pos;
            return t;
        }
        if (ch == '\0') fail("unexpected end of input");
        fail(std::string("unexpected character '") + ch + "'");
    }
};

}   // namespace

TermPtr parse_term(const std::string& text) {
    Parser p{text};
    TermPtr t = p.parse_join();
    if (p.peek() != '\0') p.fail("unexpected trailing input");
    return t;
}

// ---- evaluation --------------------------------------------------------

uint64_t eval_bits(const Term& t, const TopSpace& space, const std::vector<uint64_t>& assignment) {
    switch (t.kind) {
        case TermKind::Generator:
            if (static_cast<size_t>(t.gen) > assignment.size())
                throw arity_error("term refers to g" + std::to_string(t.gen) + " but only " +
                                  std::to_string(assignment.size()) + " assignment(s) given");
            return assignment[static_cast<size_t>(t.gen - 1)];
        case TermKind::K:
            return space.closure_bits(eval_bits(*t.left, space, assignment));
        case TermKind::Iop:
            return space.interior_bits(eval_bits(*t.left, space, assignment));
        case TermKind::C:
            return space.complement_bits(eval_bits(*t.left, space, assignment));
        case TermKind::Meet:
            return eval_bits(*t.left, space, assignment) & eval_bits(*t.right, space, assignment);
        default:
            return eval_bits(*t.left, space, assignment) | eval_bits(*t.right, space, assignment);
    }
}

PointSet eval(const TermPtr& t, const TopSpace& space, const std::vector<PointSet>& assignment) {
    std::vector<uint64_t> bits;
    bits.reserve(assignment.size());
    for (const PointSet& a : assignment) {
        if (a.universe != space.point_count())
            throw dimension_error("assignment set lives in a " + std::to_string(a.universe) +
                                  "-point universe, space has " + std::to_string(space.point_count()));
        bits.push_back(a.bits);
    }
    return PointSet(space.point_count(), eval_bits(*t, space, bits));
}

TermPtr dual(const TermPtr& t) {
    switch (t->kind) {
        case TermKind::Generator: return t;
        case TermKind::K:         return Term::i(dual(t->left));
        case TermKind::Iop:       return Term::k(dual(t->left));
        case TermKind::C:         return Term::c(dual(t->left));
        case TermKind::Meet:      return Term::join(dual(t->left), dual(t->right));
        default:                  return Term::meet(dual(t->left), dual(t->right));
    }
}

// ---- unary words -------------------------------------------------------

namespace {

// x prepended to a normal {k,i} word, renormalized.  The only non-obvious
// collapses are kiki -> ki and ikik -> ik.
std::string prepend_ki(char x, const std::string& u) {
    if (u.empty()) return std::string(1, x);
    if (u[0] == x) return u;                       // kk = k, ii = i
    std::string w = x + u;
    if (w.size() >= 4 && w.compare(w.size() - 4, 4, x == 'k' ? "kiki" : "ikik") == 0)
        return w.substr(0, w.size() - 2);
    if (w == "kiki") return "ki";
    if (w == "ikik") return "ik";
    return w;
}

}   // namespace

UnaryWord normalize_unary(const UnaryWord& w) {
    std::string nf;   // always normal: optional leading c + {k,i} form
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        char x = *it;
        if (x != 'k' && x != 'i' && x != 'c')
            throw std::invalid_argument(std::string("unary word letter must be k, i, or c; got '") + x + "'");
        if (!nf.empty() && nf[0] == 'c') {
            std::string u = nf.substr(1);
            if (x == 'c') nf = u;                              // cc = I
            else nf = "c" + prepend_ki(x == 'k' ? 'i' : 'k', u);   // kc = ci, ic = ck
        } else {
            if (x == 'c') nf = "c" + nf;
            else nf = prepend_ki(x, nf);
        }
    }
    return nf;
}

std::vector<UnaryWord> enumerate_unary_monoid(const std::string& alphabet) {
    if (alphabet.empty()) throw std::invalid_argument("alphabet must be nonempty");
    std::string letters;
    for (char ch : alphabet) {
        if (ch != 'k' && ch != 'i' && ch != 'c')
            throw std::invalid_argument(std::string("alphabet letter must be k, i, or c; got '") + ch + "'");
        if (letters.find(ch) == std::string::npos) letters += ch;
    }
    std::vector<UnaryWord> forms{""};
    for (size_t head = 0; head < forms.size(); ++head) {
        for (char ch : letters) {
            UnaryWord nf = normalize_unary(forms[head] + ch);
            if (std::find(forms.begin(), forms.end(), nf) == forms.end()) {
                forms.push_back(nf);
                if (forms.size() > 100)
                    throw std::logic_error("internal consistency violation: unary monoid exceeded 100 normal forms");
            }
        }
    }
    std::sort(forms.begin(), forms.end(), [](const UnaryWord& a, const UnaryWord& b) {
        bool ca = !a.empty() && a[0] == 'c', cb = !b.empty() && b[0] == 'c';
        if (ca != cb) return !ca;
        return a < b;
    });
    return forms;
}

TermPtr term_of_word(const UnaryWord& w, int gen) {
    TermPtr t = Term::generator(gen);
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        switch (*it) {
            case 'k': t = Term::k(std::move(t)); break;
            case 'i': t = Term::i(std::move(t)); break;
            case 'c': t = Term::c(std::move(t)); break;
            default:
                throw std::invalid_argument(std::string("unary word letter must be k, i, or c; got '") + *it + "'");
        }
    }
    return t;
}

// ---- finite-model equality ----------------------------------------------

TermEqualResult term_equal(const TermPtr& s, const TermPtr& t, int max_points) {
    if (max_points < 1 || max_points > kEnumerationCap)
        throw enumeration_cap_error("term_equal bound must be 1.." + std::to_string(kEnumerationCap) +
                                    ", got " + std::to_string(max_points));
    int gens = std::max(s->max_generator(), t->max_generator());
    for (int m = 1; m <= max_points; ++m) {
        const std::vector<TopSpace>& spaces = dedup_spaces(m);
        std::vector<uint64_t> order = subsets_by_popcount(m);
        std::vector<size_t> odo(static_cast<size_t>(gens), 0);
        std::vector<uint64_t> assign(static_cast<size_t>(gens), 0);
        for (const TopSpace& sp : spaces) {
            std::fill(odo.begin(), odo.end(), 0);
            while (true) {
                for (int g = 0; g < gens; ++g) assign[static_cast<size_t>(g)] = order[odo[static_cast<size_t>(g)]];
                uint64_t lhs = eval_bits(*s, sp, assign);
                uint64_t rhs = eval_bits(*t, sp, assign);
                if (lhs != rhs) {
                    std::vector<PointSet> ps;
                    for (uint64_t a : assign) ps.emplace_back(m, a);
                    return TermEqualResult{false, max_points,
                                           Distinguisher{sp, std::move(ps), PointSet(m, lhs), PointSet(m, rhs)}};
                }
                // odometer: last generator fastest
                int g = gens - 1;
                while (g >= 0 && ++odo[static_cast<size_t>(g)] == order.size()) {
                    odo[static_cast<size_t>(g)] = 0;
                    --g;
                }
                if (g < 0) break;
            }
        }
    }
    return TermEqualResult{true, max_points, std::nullopt};
}

}   // namespace kurat
