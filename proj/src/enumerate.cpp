#include "kurat/enumerate.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <mutex>
#include <unordered_map>

namespace kurat {

namespace {

uint64_t mix(uint64_t h, uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdull;
    h ^= h >> 33;
    return h;
}

struct RawSpace {
    int n;
    std::array<uint64_t, 8> row;   // minimal open neighborhoods
    std::array<uint64_t, 8> col;   // singleton closures
};

RawSpace raw_of(const TopSpace& s) {
    RawSpace r{};
    r.n = s.point_count();
    for (int x = 0; x < r.n; ++x) {
        r.row[static_cast<size_t>(x)] = s.rows()[static_cast<size_t>(x)];
        r.col[static_cast<size_t>(x)] = s.cols()[static_cast<size_t>(x)];
    }
    return r;
}

// Iterated neighborhood-color refinement.  Three rounds stabilize tiny
// graphs in practice; collisions are resolved by the exact check anyway.
std::array<uint64_t, 8> refine_colors(const RawSpace& s) {
    std::array<uint64_t, 8> color{};
    for (int x = 0; x < s.n; ++x)
        color[static_cast<size_t>(x)] =
            mix(0x12345, (static_cast<uint64_t>(std::popcount(s.row[static_cast<size_t>(x)])) << 8) |
                             static_cast<uint64_t>(std::popcount(s.col[static_cast<size_t>(x)])));
    std::array<uint64_t, 8> next{};
    for (int round = 0; round < 3; ++round) {
        for (int x = 0; x < s.n; ++x) {
            uint64_t up = 0, down = 0;
            for (uint64_t rest = s.row[static_cast<size_t>(x)]; rest; rest &= rest - 1)
                up += mix(0xABCD, color[static_cast<size_t>(__builtin_ctzll(rest))]);
            for (uint64_t rest = s.col[static_cast<size_t>(x)]; rest; rest &= rest - 1)
                down += mix(0xEF01, color[static_cast<size_t>(__builtin_ctzll(rest))]);
            next[static_cast<size_t>(x)] = mix(mix(color[static_cast<size_t>(x)], up), down);
        }
        color = next;
    }
    return color;
}

uint64_t fingerprint_raw(const RawSpace& s) {
    auto color = refine_colors(s);
    std::array<uint64_t, 8> sorted = color;
    std::sort(sorted.begin(), sorted.begin() + s.n);
    uint64_t h = mix(0xC0FFEE, static_cast<uint64_t>(s.n));
    for (int x = 0; x < s.n; ++x) h = mix(h, sorted[static_cast<size_t>(x)]);
    return h;
}

// Exact isomorphism: backtracking over color-compatible assignments,
// checking row masks as the permutation fills in.
bool iso_raw(const RawSpace& a, const RawSpace& b) {
    if (a.n != b.n) return false;
    const int n = a.n;
    auto ca = refine_colors(a);
    auto cb = refine_colors(b);
    {
        std::array<uint64_t, 8> sa = ca, sb = cb;
        std::sort(sa.begin(), sa.begin() + n);
        std::sort(sb.begin(), sb.begin() + n);
        if (!std::equal(sa.begin(), sa.begin() + n, sb.begin())) return false;
    }
    std::array<int, 8> perm{};
    perm.fill(-1);
    uint64_t used = 0;

    std::function<bool(int)> place = [&](int x) -> bool {
        if (x == n) return true;
        for (int y = 0; y < n; ++y) {
            if (used >> y & 1) continue;
            if (ca[static_cast<size_t>(x)] != cb[static_cast<size_t>(y)]) continue;
            // Check consistency of rows against already-placed points.
            bool ok = true;
            for (int x2 = 0; x2 <= x && ok; ++x2) {
                int y2 = (x2 == x) ? y : perm[static_cast<size_t>(x2)];
                if (y2 < 0) continue;
                if (((a.row[static_cast<size_t>(x)] >> x2) & 1) != ((b.row[static_cast<size_t>(y)] >> y2) & 1)) ok = false;
                if (((a.row[static_cast<size_t>(x2)] >> x) & 1) != ((b.row[static_cast<size_t>(y2)] >> y) & 1)) ok = false;
            }
            if (!ok) continue;
            perm[static_cast<size_t>(x)] = y;
            used |= 1ull << y;
            if (place(x + 1)) return true;
            perm[static_cast<size_t>(x)] = -1;
            used &= ~(1ull << y);
        }
        return false;
    };
    return place(0);
}

// DFS over rows: row[x] must contain x, and for every earlier y,
// y in row[x] forces row[y] subset of row[x] and vice versa.
template <typename Fn>
bool dfs_rows(int n, int x, std::array<uint64_t, 8>& row, Fn&& emit) {
    if (x == n) return emit(row);
    const uint64_t self = 1ull << x;
    const uint64_t full = full_mask_for(n);
    for (uint64_t free_bits = 0;; free_bits = ((free_bits | self) + 1) & ~self) {
        uint64_t m = (free_bits & full) | self;
        bool ok = true;
        for (int y = 0; y < x && ok; ++y) {
            if (m >> y & 1) ok = (row[static_cast<size_t>(y)] & ~m) == 0;
            if (ok && (row[static_cast<size_t>(y)] >> x & 1)) ok = (m & ~row[static_cast<size_t>(y)]) == 0;
        }
        if (ok) {
            row[static_cast<size_t>(x)] = m;
            if (!dfs_rows(n, x + 1, row, emit)) return false;
        }
        if ((free_bits | self) == full) break;
    }
    row[static_cast<size_t>(x)] = 0;
    return true;
}

TopSpace to_space(int n, const std::array<uint64_t, 8>& row) {
    return TopSpace(n, std::vector<uint64_t>(row.begin(), row.begin() + n));
}

}   // namespace

uint64_t space_fingerprint(const TopSpace& s) { return fingerprint_raw(raw_of(s)); }

bool spaces_isomorphic(const TopSpace& a, const TopSpace& b) { return iso_raw(raw_of(a), raw_of(b)); }

void enumerate_spaces(int point_count, bool dedup, const std::function<bool(const TopSpace&)>& visit) {
    if (point_count < 1 || point_count > kEnumerationCap)
        throw enumeration_cap_error("space enumeration supports 1.." + std::to_string(kEnumerationCap) +
                                    " points, got " + std::to_string(point_count));
    std::array<uint64_t, 8> row{};
    if (!dedup) {
        dfs_rows(point_count, 0, row, [&](const std::array<uint64_t, 8>& r) { return visit(to_space(point_count, r)); });
        return;
    }
    // Fingerprint buckets hold indices into the representative list.
    std::unordered_map<uint64_t, std::vector<size_t>> buckets;
    std::vector<RawSpace> reps;
    dfs_rows(point_count, 0, row, [&](const std::array<uint64_t, 8>& r) {
        RawSpace raw{};
        raw.n = point_count;
        raw.row = r;
        for (int x = 0; x < point_count; ++x)
            for (uint64_t rest = r[static_cast<size_t>(x)]; rest; rest &= rest - 1)
                raw.col[static_cast<size_t>(__builtin_ctzll(rest))] |= 1ull << x;
        uint64_t fp = fingerprint_raw(raw);
        auto& bucket = buckets[fp];
        for (size_t idx : bucket)
            if (iso_raw(reps[idx], raw)) return true;
        bucket.push_back(reps.size());
        reps.push_back(raw);
        return visit(to_space(point_count, r));
    });
}

std::vector<TopSpace> enumerate_spaces_vec(int point_count, bool dedup) {
    std::vector<TopSpace> out;
    enumerate_spaces(point_count, dedup, [&](const TopSpace& s) {
        out.push_back(s);
        return true;
    });
    return out;
}

std::vector<uint64_t> subsets_by_popcount(int points) {
    if (points < 0 || points > 20)
        throw dimension_error("subset sweep supports 0..20 points, got " + std::to_string(points));
    std::vector<uint64_t> order;
    order.reserve(1ull << points);
    for (uint64_t m = 0; m < (1ull << points); ++m) order.push_back(m);
    std::stable_sort(order.begin(), order.end(), [](uint64_t a, uint64_t b) {
        int pa = std::popcount(a), pb = std::popcount(b);
        if (pa != pb) return pa < pb;
        return a < b;
    });
    return order;
}

const std::vector<TopSpace>& dedup_spaces(int point_count) {
    static std::mutex mu;
    static std::unordered_map<int, std::vector<TopSpace>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(point_count);
    if (it == cache.end()) it = cache.emplace(point_count, enumerate_spaces_vec(point_count, true)).first;
    return it->second;
}

}   // namespace kurat
