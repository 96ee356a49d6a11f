#include "kurat/space.hpp"

#include <bit>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

namespace kurat {

uint64_t full_mask_for(int points) {
    if (points <= 0) return 0;
    if (points >= 64) return ~0ull;
    return (1ull << points) - 1;
}

PointSet::PointSet(int universe_, uint64_t bits_) : bits(bits_), universe(universe_) {
    if (universe_ < 0 || universe_ > kMaxPoints)
        throw dimension_error("point set universe out of range: " + std::to_string(universe_));
    if (bits & ~full_mask_for(universe_))
        throw dimension_error("point set has bits outside its universe");
}

PointSet PointSet::empty(int universe) { return PointSet(universe, 0); }

PointSet PointSet::full(int universe) { return PointSet(universe, full_mask_for(universe)); }

PointSet PointSet::of(int universe, std::initializer_list<int> labels) {
    return of(universe, std::vector<int>(labels));
}

PointSet PointSet::of(int universe, const std::vector<int>& labels) {
    uint64_t bits = 0;
    for (int label : labels) {
        if (label < 1 || label > universe)
            throw dimension_error("point label " + std::to_string(label) + " outside universe of size " +
                                  std::to_string(universe));
        bits |= 1ull << (label - 1);
    }
    return PointSet(universe, bits);
}

int PointSet::count() const { return std::popcount(bits); }

std::vector<int> PointSet::labels() const {
    std::vector<int> out;
    for (uint64_t rest = bits; rest; rest &= rest - 1) out.push_back(__builtin_ctzll(rest) + 1);
    return out;
}

std::string PointSet::to_string() const {
    std::string out = "{";
    bool first = true;
    for (int label : labels()) {
        if (!first) out += ",";
        out += std::to_string(label);
        first = false;
    }
    out += "}";
    return out;
}

TopSpace::TopSpace(int point_count, std::vector<uint64_t> spec_rows) : n_(point_count), row_(std::move(spec_rows)) {
    if (n_ < 1 || n_ > kMaxPoints)
        throw dimension_error("space size out of range: " + std::to_string(n_));
    if (row_.size() != static_cast<size_t>(n_)) throw dimension_error("spec matrix row count does not match size");
    full_ = full_mask_for(n_);
    for (uint64_t& r : row_) r &= full_;
    col_.assign(static_cast<size_t>(n_), 0);
    for (int x = 0; x < n_; ++x)
        for (uint64_t rest = row_[static_cast<size_t>(x)]; rest; rest &= rest - 1)
            col_[static_cast<size_t>(__builtin_ctzll(rest))] |= 1ull << x;
}

TopSpace TopSpace::discrete(int point_count) {
    std::vector<uint64_t> rows(static_cast<size_t>(point_count));
    for (int x = 0; x < point_count; ++x) rows[static_cast<size_t>(x)] = 1ull << x;
    return TopSpace(point_count, std::move(rows));
}

TopSpace TopSpace::prefix(int point_count) {
    // spec[x][y] iff x >= y: the minimal neighborhood of x is {1..x}.
    std::vector<uint64_t> rows(static_cast<size_t>(point_count));
    for (int x = 0; x < point_count; ++x) rows[static_cast<size_t>(x)] = full_mask_for(x + 1);
    return TopSpace(point_count, std::move(rows));
}

namespace {

void check_member(const TopSpace& space, const PointSet& a) {
    if (a.universe != space.point_count())
        throw dimension_error("point set of universe " + std::to_string(a.universe) +
                              " used with a space of " + std::to_string(space.point_count()) + " points");
}

}   // namespace

PointSet closure(const TopSpace& space, const PointSet& a) {
    check_member(space, a);
    return PointSet(a.universe, space.closure_bits(a.bits));
}

PointSet interior(const TopSpace& space, const PointSet& a) {
    check_member(space, a);
    return PointSet(a.universe, space.interior_bits(a.bits));
}

PointSet complement(const TopSpace& space, const PointSet& a) {
    check_member(space, a);
    return PointSet(a.universe, space.complement_bits(a.bits));
}

PointSet meet(const TopSpace& space, const PointSet& a, const PointSet& b) {
    check_member(space, a);
    check_member(space, b);
    return PointSet(a.universe, a.bits & b.bits);
}

PointSet join(const TopSpace& space, const PointSet& a, const PointSet& b) {
    check_member(space, a);
    check_member(space, b);
    return PointSet(a.universe, a.bits | b.bits);
}

std::string ValidationReport::summary() const {
    if (valid) return exhaustive ? "valid (exhaustive)" : "valid (sampled)";
    std::string out = "invalid:";
    for (const auto& v : violations) out += " [" + v.axiom + "] " + v.detail + ";";
    return out;
}

namespace {

std::string mask_str(uint64_t bits) {
    PointSet p;
    p.bits = bits;
    p.universe = 64;
    return p.to_string();
}

}   // namespace

ValidationReport validate_space(const TopSpace& space, const ValidateOptions& opt) {
    ValidationReport rep;
    const int n = space.point_count();
    auto add = [&rep](std::string axiom, std::string detail) {
        rep.valid = false;
        rep.violations.push_back({std::move(axiom), std::move(detail)});
    };

    for (int x = 0; x < n && rep.violations.size() < 16; ++x)
        if (!space.spec(x, x)) add("reflexive", "point " + std::to_string(x + 1) + " not in closure of itself");
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            if (rep.violations.size() >= 16) break;
            if (!space.spec(x, y)) continue;
            // x in k{y}: every z with y in k{z} must also have x in k{z}.
            uint64_t ys = space.rows()[static_cast<size_t>(y)];
            uint64_t xs = space.rows()[static_cast<size_t>(x)];
            if (uint64_t missing = ys & ~xs) {
                int z = __builtin_ctzll(missing);
                add("transitive", "spec[" + std::to_string(x + 1) + "][" + std::to_string(y + 1) + "] and spec[" +
                                      std::to_string(y + 1) + "][" + std::to_string(z + 1) + "] hold but spec[" +
                                      std::to_string(x + 1) + "][" + std::to_string(z + 1) + "] does not");
            }
        }
    }

    // The four closure axioms.  k0 = 0 holds by construction of closure_bits
    // but is asserted anyway for the report.
    if (space.closure_bits(0) != 0) add("closure-empty", "closure of {} is " + mask_str(space.closure_bits(0)));

    auto check_unary = [&](uint64_t a) {
        uint64_t ka = space.closure_bits(a);
        if ((ka & a) != a) add("closure-extensive", "A = " + mask_str(a) + " not contained in kA = " + mask_str(ka));
        uint64_t kka = space.closure_bits(ka);
        if (kka != ka)
            add("closure-idempotent", "kkA = " + mask_str(kka) + " differs from kA = " + mask_str(ka) +
                                          " for A = " + mask_str(a));
    };
    auto check_union = [&](uint64_t a, uint64_t b) {
        uint64_t lhs = space.closure_bits(a | b);
        uint64_t rhs = space.closure_bits(a) | space.closure_bits(b);
        if (lhs != rhs)
            add("closure-additive", "k(A|B) = " + mask_str(lhs) + " differs from kA|kB = " + mask_str(rhs) +
                                        " for A = " + mask_str(a) + ", B = " + mask_str(b));
        ++rep.pairs_checked;
    };

    if (n <= opt.exhaustive_bound) {
        const uint64_t total = 1ull << n;
        std::vector<uint64_t> cl(static_cast<size_t>(total));
        for (uint64_t a = 0; a < total; ++a) {
            cl[static_cast<size_t>(a)] = space.closure_bits(a);
            check_unary(a);
            if (!rep.valid && rep.violations.size() >= 16) return rep;
        }
        for (uint64_t a = 0; a < total; ++a) {
            for (uint64_t b = a; b < total; ++b) {
                uint64_t lhs = space.closure_bits(a | b);
                if (lhs != (cl[static_cast<size_t>(a)] | cl[static_cast<size_t>(b)])) check_union(a, b);
                else ++rep.pairs_checked;
                if (!rep.valid && rep.violations.size() >= 16) return rep;
            }
        }
    } else {
        rep.exhaustive = false;
        std::mt19937_64 rng(opt.seed);
        uint64_t full = space.full_mask();
        for (int s = 0; s < opt.samples; ++s) {
            uint64_t a = rng() & full;
            uint64_t b = rng() & full;
            check_unary(a);
            check_union(a, b);
            if (!rep.valid && rep.violations.size() >= 16) return rep;
        }
    }
    return rep;
}

std::string space_to_json(const TopSpace& space) {
    nlohmann::json j;
    j["points"] = space.point_count();
    nlohmann::json rows = nlohmann::json::array();
    for (int x = 0; x < space.point_count(); ++x) {
        nlohmann::json row = nlohmann::json::array();
        for (int y = 0; y < space.point_count(); ++y) row.push_back(space.spec(x, y));
        rows.push_back(std::move(row));
    }
    j["closure"] = std::move(rows);
    return j.dump();
}

TopSpace space_from_json(const std::string& text, const ValidateOptions& opt) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw invalid_space_error(std::string("space file is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("points") || !j.contains("closure"))
        throw invalid_space_error("space file must be an object with \"points\" and \"closure\"");
    if (!j["points"].is_number_integer()) throw invalid_space_error("\"points\" must be an integer");
    int n = j["points"].get<int>();
    if (n < 1 || n > kMaxPoints)
        throw invalid_space_error("\"points\" must be between 1 and " + std::to_string(kMaxPoints));
    const auto& rows = j["closure"];
    if (!rows.is_array() || rows.size() != static_cast<size_t>(n))
        throw invalid_space_error("\"closure\" must be an array of " + std::to_string(n) + " rows");
    std::vector<uint64_t> spec_rows(static_cast<size_t>(n), 0);
    for (int x = 0; x < n; ++x) {
        const auto& row = rows[static_cast<size_t>(x)];
        if (!row.is_array() || row.size() != static_cast<size_t>(n))
            throw invalid_space_error("closure row " + std::to_string(x + 1) + " must have " + std::to_string(n) +
                                      " entries");
        for (int y = 0; y < n; ++y) {
            const auto& cell = row[static_cast<size_t>(y)];
            bool bit;
            if (cell.is_boolean()) bit = cell.get<bool>();
            else if (cell.is_number_integer() && (cell.get<int>() == 0 || cell.get<int>() == 1))
                bit = cell.get<int>() == 1;
            else
                throw invalid_space_error("closure entries must be booleans (or 0/1)");
            if (bit) spec_rows[static_cast<size_t>(x)] |= 1ull << y;
        }
    }
    TopSpace space(n, std::move(spec_rows));
    ValidationReport rep = validate_space(space, opt);
    if (!rep.valid) throw invalid_space_error("space file rejected: " + rep.summary());
    return space;
}

TopSpace load_space_file(const std::string& path, const ValidateOptions& opt) {
    std::ifstream in(path);
    if (!in) throw invalid_space_error("cannot open space file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return space_from_json(buf.str(), opt);
}

}   // namespace kurat
