#include "kurat/saturate.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdlib>
#include <queue>
#include <thread>
#include <unordered_set>

#include "json.hpp"

namespace kurat {

// ---- OpSet ---------------------------------------------------------------

OpSet OpSet::parse(const std::string& text) {
    OpSet ops;
    for (size_t p = 0; p < text.size(); ++p) {
        char ch = text[p];
        bool* flag = ch == 'k'   ? &ops.use_k
                     : ch == 'i' ? &ops.use_i
                     : ch == 'c' ? &ops.use_c
                     : ch == '^' ? &ops.use_meet
                     : ch == 'v' ? &ops.use_join
                                 : nullptr;
        if (!flag)
            throw std::invalid_argument(std::string("bad op letter '") + ch + "' at position " +
                                        std::to_string(p) + " (expected k, i, c, ^, v)");
        if (*flag)
            throw std::invalid_argument(std::string("duplicate op letter '") + ch + "' at position " +
                                        std::to_string(p));
        *flag = true;
    }
    return ops;
}

std::string OpSet::to_string() const {
    std::string s;
    if (use_k) s += 'k';
    if (use_i) s += 'i';
    if (use_c) s += 'c';
    if (use_meet) s += '^';
    if (use_join) s += 'v';
    return s;
}

const FamilyEntry* Family::find(uint64_t bits) const {
    for (const FamilyEntry& e : entries)
        if (e.set.bits == bits) return &e;
    return nullptr;
}

// ---- saturate (witness-tracking) ------------------------------------------

namespace {

struct Cand {
    uint64_t bits;
    TermPtr term;
};

// min-heap on witness term order
struct CandAfter {
    bool operator()(const Cand& a, const Cand& b) const { return term_less(b.term, a.term); }
};

TermPtr smaller_arrangement(TermPtr (*make)(TermPtr, TermPtr), const TermPtr& x, const TermPtr& y) {
    TermPtr xy = make(x, y), yx = make(y, x);
    return term_less(xy, yx) ? xy : yx;
}

}   // namespace

Family saturate(const TopSpace& space, const std::vector<PointSet>& initial, const OpSet& ops, int cap) {
    if (initial.empty()) throw std::invalid_argument("saturate needs at least one initial set");
    if (cap < 1) throw std::invalid_argument("saturation cap must be >= 1");
    std::priority_queue<Cand, std::vector<Cand>, CandAfter> pq;
    for (size_t j = 0; j < initial.size(); ++j) {
        if (initial[j].universe != space.point_count())
            throw dimension_error("initial set " + std::to_string(j + 1) + " lives in a " +
                                  std::to_string(initial[j].universe) + "-point universe, space has " +
                                  std::to_string(space.point_count()));
        pq.push(Cand{initial[j].bits, Term::generator(static_cast<int>(j) + 1)});
    }

    Family fam;
    std::unordered_set<uint64_t> seen;
    while (!pq.empty()) {
        Cand c = pq.top();
        pq.pop();
        if (seen.count(c.bits)) continue;
        if (fam.size() == cap) {
            fam.truncated = true;
            break;
        }
        seen.insert(c.bits);
        fam.entries.push_back(FamilyEntry{PointSet(space.point_count(), c.bits), c.term});
        const size_t self = fam.entries.size() - 1;

        if (ops.use_k) pq.push(Cand{space.closure_bits(c.bits), Term::k(c.term)});
        if (ops.use_i) pq.push(Cand{space.interior_bits(c.bits), Term::i(c.term)});
        if (ops.use_c) pq.push(Cand{space.complement_bits(c.bits), Term::c(c.term)});
        for (size_t j = 0; j < self; ++j) {
            const FamilyEntry& e = fam.entries[j];
            if (ops.use_meet)
                pq.push(Cand{e.set.bits & c.bits, smaller_arrangement(&Term::meet, e.witness, c.term)});
            if (ops.use_join)
                pq.push(Cand{e.set.bits | c.bits, smaller_arrangement(&Term::join, e.witness, c.term)});
        }
    }
    return fam;
}

// ---- saturate_count (no witnesses) -----------------------------------------

namespace {

int saturate_count_small(const TopSpace& space, const std::vector<uint64_t>& initial, const OpSet& ops,
                         int cap, int stop_at, bool* truncated) {
    // Subset values fit in 7 bits; membership is two machine words.
    std::array<uint64_t, 2> seen{0, 0};
    std::array<uint64_t, 128> list;
    int sz = 0;
    auto push = [&](uint64_t v) -> bool {
        uint64_t& w = seen[static_cast<size_t>(v >> 6)];
        uint64_t b = 1ull << (v & 63);
        if (w & b) return false;
        if (sz == cap) {
            if (truncated) *truncated = true;
            return false;
        }
        w |= b;
        list[static_cast<size_t>(sz++)] = v;
        return true;
    };
    for (uint64_t v : initial) {
        push(v);
        if (stop_at > 0 && sz >= stop_at) return sz;
    }
    for (int head = 0; head < sz; ++head) {
        uint64_t v = list[static_cast<size_t>(head)];
        if (ops.use_k && push(space.closure_bits(v)) && sz == stop_at) return sz;
        if (ops.use_i && push(space.interior_bits(v)) && sz == stop_at) return sz;
        if (ops.use_c && push(space.complement_bits(v)) && sz == stop_at) return sz;
        if (ops.use_meet)
            for (int j = 0; j < head; ++j)
                if (push(list[static_cast<size_t>(j)] & v) && sz == stop_at) return sz;
        if (ops.use_join)
            for (int j = 0; j < head; ++j)
                if (push(list[static_cast<size_t>(j)] | v) && sz == stop_at) return sz;
    }
    return sz;
}

}   // namespace

int saturate_count(const TopSpace& space, const std::vector<uint64_t>& initial, const OpSet& ops, int cap,
                   int stop_at) {
    if (initial.empty()) throw std::invalid_argument("saturate needs at least one initial set");
    if (cap < 1) throw std::invalid_argument("saturation cap must be >= 1");
    if (space.point_count() <= 7 && cap > 128) {
        // 2^7 possible values; a tighter cap must still be honored.
        return saturate_count_small(space, initial, ops, 128, stop_at, nullptr);
    }
    if (space.point_count() <= 7) return saturate_count_small(space, initial, ops, cap, stop_at, nullptr);

    std::unordered_set<uint64_t> seen;
    std::vector<uint64_t> list;
    auto push = [&](uint64_t v) -> bool {
        if (seen.count(v)) return false;
        if (static_cast<int>(list.size()) == cap) return false;
        seen.insert(v);
        list.push_back(v);
        return true;
    };
    for (uint64_t v : initial) {
        push(v);
        if (stop_at > 0 && static_cast<int>(list.size()) >= stop_at) return static_cast<int>(list.size());
    }
    for (size_t head = 0; head < list.size(); ++head) {
        uint64_t v = list[head];
        int sz;
        auto grown = [&]() {
            sz = static_cast<int>(list.size());
            return sz == stop_at || sz == cap;
        };
        if (ops.use_k && push(space.closure_bits(v)) && grown()) return sz;
        if (ops.use_i && push(space.interior_bits(v)) && grown()) return sz;
        if (ops.use_c && push(space.complement_bits(v)) && grown()) return sz;
        if (ops.use_meet)
            for (size_t j = 0; j < head; ++j)
                if (push(list[j] & v) && grown()) return sz;
        if (ops.use_join)
            for (size_t j = 0; j < head; ++j)
                if (push(list[j] | v) && grown()) return sz;
    }
    return static_cast<int>(list.size());
}

// ---- JSON ------------------------------------------------------------------

std::string family_to_json(const Family& family, const TopSpace& space, const OpSet& ops) {
    nlohmann::json j;
    j["space"] = nlohmann::json::parse(space_to_json(space));
    j["ops"] = ops.to_string();
    j["truncated"] = family.truncated;
    nlohmann::json arr = nlohmann::json::array();
    for (const FamilyEntry& e : family.entries)
        arr.push_back({{"set", e.set.labels()}, {"witness", term_to_string(e.witness)}});
    j["family"] = std::move(arr);
    return j.dump(2) + "\n";
}

// ---- sweep -------------------------------------------------------------------

int worker_count() {
    if (const char* env = std::getenv("KURAT_WORKERS")) {
        int v = std::atoi(env);
        if (v >= 1) return std::min(v, 64);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(std::min(hc, 16u)) : 1;
}

namespace {

struct Segment {
    int m = 0;
    const std::vector<TopSpace>* spaces = nullptr;
    std::vector<uint64_t> subset_order;
    uint64_t assigns_per_space = 0;
    uint64_t tasks = 0;        // spaces * assigns
    uint64_t task_base = 0;    // global index of this segment's first task
};

struct DecodedTask {
    const TopSpace* space;
    int m;
    std::vector<uint64_t> assign;
};

DecodedTask decode_task(const std::vector<Segment>& segs, uint64_t t, int gens) {
    for (const Segment& s : segs) {
        if (t >= s.task_base + s.tasks) continue;
        uint64_t local = t - s.task_base;
        uint64_t space_idx = local / s.assigns_per_space;
        uint64_t rem = local % s.assigns_per_space;
        DecodedTask d;
        d.space = &(*s.spaces)[static_cast<size_t>(space_idx)];
        d.m = s.m;
        d.assign.resize(static_cast<size_t>(gens));
        uint64_t digit_mask = (1ull << s.m) - 1;
        for (int g = 0; g < gens; ++g) {
            uint64_t digit = (rem >> (static_cast<uint64_t>(s.m) * static_cast<uint64_t>(gens - 1 - g))) & digit_mask;
            d.assign[static_cast<size_t>(g)] = s.subset_order[static_cast<size_t>(digit)];
        }
        return d;
    }
    throw std::logic_error("task index out of range");
}

}   // namespace

SweepResult max_over_spaces(const OpSet& ops, int n_generators, int max_points, int cap, int stop_at) {
    if (n_generators < 1) throw std::invalid_argument("need at least one generator");
    if (max_points < 1 || max_points > kEnumerationCap)
        throw enumeration_cap_error("sweep bound must be 1.." + std::to_string(kEnumerationCap) + ", got " +
                                    std::to_string(max_points));
    if (n_generators * max_points > 48)
        throw std::invalid_argument("assignment sweep too large: generators * points must be <= 48");
    if (cap < 1) throw std::invalid_argument("saturation cap must be >= 1");

    std::vector<Segment> segs;
    uint64_t tasks_total = 0;
    for (int m = 1; m <= max_points; ++m) {
        Segment s;
        s.m = m;
        s.spaces = &dedup_spaces(m);
        s.subset_order = subsets_by_popcount(m);
        s.assigns_per_space = 1ull << (static_cast<uint64_t>(m) * static_cast<uint64_t>(n_generators));
        s.tasks = s.assigns_per_space * s.spaces->size();
        s.task_base = tasks_total;
        tasks_total += s.tasks;
        segs.push_back(std::move(s));
    }

    struct Best {
        int count = -1;
        uint64_t task = UINT64_MAX;
    };
    const uint64_t chunk = 2048;
    std::atomic<uint64_t> next{0};
    std::atomic<uint64_t> stop_found{UINT64_MAX};
    int nw = worker_count();
    uint64_t chunks = (tasks_total + chunk - 1) / chunk;
    nw = static_cast<int>(std::min<uint64_t>(static_cast<uint64_t>(nw), chunks));
    std::vector<Best> best(static_cast<size_t>(nw));

    auto body = [&](int widx) {
        Best local;
        std::vector<uint64_t> assign(static_cast<size_t>(n_generators));
        while (true) {
            uint64_t start = next.fetch_add(chunk);
            if (start >= tasks_total) break;
            if (start > stop_found.load(std::memory_order_relaxed)) break;
            uint64_t end = std::min(start + chunk, tasks_total);
            // locate segment once; advance as t crosses boundaries
            size_t si = 0;
            while (start >= segs[si].task_base + segs[si].tasks) ++si;
            for (uint64_t t = start; t < end; ++t) {
                if (t >= segs[si].task_base + segs[si].tasks) ++si;
                const Segment& s = segs[si];
                if (t > stop_found.load(std::memory_order_relaxed)) break;
                uint64_t local_idx = t - s.task_base;
                uint64_t space_idx = local_idx / s.assigns_per_space;
                uint64_t rem = local_idx % s.assigns_per_space;
                uint64_t digit_mask = (1ull << s.m) - 1;
                for (int g = 0; g < n_generators; ++g)
                    assign[static_cast<size_t>(g)] =
                        s.subset_order[static_cast<size_t>((rem >> (static_cast<uint64_t>(s.m) *
                                                                    static_cast<uint64_t>(n_generators - 1 - g))) &
                                                           digit_mask)];
                int cnt = saturate_count((*s.spaces)[static_cast<size_t>(space_idx)], assign, ops, cap, stop_at);
                if (stop_at > 0 && cnt >= stop_at) {
                    uint64_t cur = stop_found.load();
                    while (t < cur && !stop_found.compare_exchange_weak(cur, t)) {
                    }
                    break;
                }
                if (cnt > local.count || (cnt == local.count && t < local.task)) {
                    local.count = cnt;
                    local.task = t;
                }
            }
        }
        best[static_cast<size_t>(widx)] = local;
    };

    if (nw <= 1) {
        body(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(nw));
        for (int w = 0; w < nw; ++w) pool.emplace_back(body, w);
        for (std::thread& th : pool) th.join();
    }

    uint64_t winner;
    bool early = false;
    if (stop_at > 0 && stop_found.load() != UINT64_MAX) {
        winner = stop_found.load();
        early = true;
    } else {
        Best merged;
        for (const Best& b : best)
            if (b.count > merged.count || (b.count == merged.count && b.task < merged.task)) merged = b;
        winner = merged.task;
    }

    DecodedTask d = decode_task(segs, winner, n_generators);
    std::vector<PointSet> assignment;
    for (uint64_t a : d.assign) assignment.emplace_back(d.m, a);
    Family fam = saturate(*d.space, assignment, ops, cap);
    SweepResult res{fam.size(), *d.space,     std::move(assignment), std::move(fam),
                    winner,     tasks_total, early};
    return res;
}

// ---- prefix-space iterations -----------------------------------------------

namespace {

uint64_t evens_mask(int N) {
    uint64_t m = 0;
    for (int label = 2; label <= N; label += 2) m |= 1ull << (label - 1);
    return m;
}

void check_iteration_range(const char* what, int N, int steps) {
    if (N < 4 || N > kMaxPoints)
        throw std::invalid_argument(std::string(what) + " needs 4 <= N <= " + std::to_string(kMaxPoints) +
                                    ", got N=" + std::to_string(N));
    int max_steps = (N - 2) / 2;
    if (steps < 1 || steps > max_steps)
        throw std::invalid_argument(std::string(what) + " with N=" + std::to_string(N) +
                                    " supports steps in 1.." + std::to_string(max_steps) + ", got " +
                                    std::to_string(steps));
}

}   // namespace

std::vector<PointSet> phi_iterate(int N, int steps) {
    check_iteration_range("phi_iterate", N, steps);
    TopSpace sp = TopSpace::prefix(N);
    uint64_t a = evens_mask(N);
    std::vector<PointSet> out;
    out.reserve(static_cast<size_t>(steps));
    for (int j = 1; j <= steps; ++j) {
        uint64_t inner = sp.closure_bits(a) & sp.complement_bits(a);
        a &= sp.closure_bits(inner);
        out.emplace_back(N, a);
    }
    return out;
}

std::vector<PointSet> ej_sequence(int N, int steps) {
    check_iteration_range("ej_sequence", N, steps);
    TopSpace sp = TopSpace::prefix(N);
    uint64_t evens = evens_mask(N);
    uint64_t odds = sp.full_mask() & ~evens;
    uint64_t e = evens;
    std::vector<PointSet> out;
    out.reserve(static_cast<size_t>(steps));
    for (int j = 1; j <= steps; ++j) {
        e &= sp.closure_bits(sp.closure_bits(e) & odds);
        out.emplace_back(N, e);
    }
    return out;
}

// ---- growth probe ------------------------------------------------------------

GrowthResult growth_probe(const OpSet& ops, int n_generators, const std::vector<int>& sizes, int cap) {
    if (n_generators < 1 || n_generators > 2)
        throw std::invalid_argument("growth_probe runs on the prefix construction, which defines "
                                    "generators for n = 1 (evens) and n = 2 (evens, odds)");
    if (sizes.empty()) throw std::invalid_argument("growth_probe needs at least one size");

    GrowthResult res;
    res.ops = ops;
    res.n_generators = n_generators;
    // With complement available, k/i and meet/join are interchangeable (De Morgan),
    // so close the opset under that before matching the known constructions.
    OpSet eff = ops;
    if (eff.use_c) {
        if (eff.use_k || eff.use_i) eff.use_k = eff.use_i = true;
        if (eff.use_meet || eff.use_join) eff.use_meet = eff.use_join = true;
    }
    res.known_infinite_construction =
        (n_generators == 1 && eff.use_k && eff.use_c && eff.use_meet) ||
        (n_generators == 2 && ((eff.use_k && eff.use_meet) || (eff.use_i && eff.use_join)));
    for (int N : sizes) {
        if (N < 2 || N > kMaxPoints)
            throw std::invalid_argument("prefix size must be 2.." + std::to_string(kMaxPoints) + ", got " +
                                        std::to_string(N));
        TopSpace sp = TopSpace::prefix(N);
        std::vector<uint64_t> initial{evens_mask(N)};
        if (n_generators == 2) initial.push_back(sp.full_mask() & ~evens_mask(N));
        int cnt = saturate_count(sp, initial, ops, cap);
        res.rows.push_back(GrowthRow{N, cnt, cnt >= cap});
    }
    res.strictly_increasing = res.rows.size() >= 2;
    for (size_t r = 1; r < res.rows.size(); ++r)
        if (res.rows[r].count <= res.rows[r - 1].count) res.strictly_increasing = false;
    return res;
}

}   // namespace kurat
