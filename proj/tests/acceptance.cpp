// Acceptance gate: one line per criterion, exit code = number of failures.
#include <algorithm>
#include <array>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "kurat/defaults.hpp"
#include "kurat/poset.hpp"

#ifndef KURAT_BIN
#error "KURAT_BIN must point at the CLI binary"
#endif

using namespace kurat;
using namespace kurat::defaults;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& name, const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    std::printf("%s: %d. %s%s%s\n", ok ? "PASS" : "FAIL", number, name.c_str(),
                (!ok && !detail.empty()) ? " -- " : "", (!ok && !detail.empty()) ? detail.c_str() : "");
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(KURAT_BIN) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    RunResult r;
    if (!pipe) return r;
    std::array<char, 4096> buf;
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<uint64_t> signature(const TermPtr& t, int max_points) {
    std::vector<uint64_t> sig;
    for (int m = 1; m <= max_points; ++m)
        for (const TopSpace& sp : dedup_spaces(m))
            for (uint64_t a = 0; a < (1ull << m); ++a) sig.push_back(eval_bits(*t, sp, {a}));
    return sig;
}

uint64_t apply_word(const UnaryWord& w, const TopSpace& sp, uint64_t a) {
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        if (*it == 'k') a = sp.closure_bits(a);
        else if (*it == 'i') a = sp.interior_bits(a);
        else a = sp.complement_bits(a);
    }
    return a;
}

// Antichain count in the boolean lattice on [n]: an independent route to the
// free-distributive-lattice sizes that never touches the poset module.
unsigned long long antichain_count(int n) {
    int pts = 1 << n;
    unsigned long long total = 0;
    for (uint64_t f = 0; f < (1ull << pts); ++f) {
        bool anti = true;
        for (int x = 0; anti && x < pts; ++x) {
            if (!(f >> x & 1)) continue;
            for (int y = x + 1; anti && y < pts; ++y) {
                if (!(f >> y & 1)) continue;
                if ((x & ~y) == 0 || (y & ~x) == 0) anti = false;
            }
        }
        if (anti) ++total;
    }
    return total;
}

TermPtr random_term(std::mt19937_64& rng, int depth, int gens) {
    int pick = depth <= 0 ? 0 : static_cast<int>(rng() % 6);
    switch (pick) {
        case 1: return Term::k(random_term(rng, depth - 1, gens));
        case 2: return Term::i(random_term(rng, depth - 1, gens));
        case 3: return Term::c(random_term(rng, depth - 1, gens));
        case 4: return Term::meet(random_term(rng, depth - 1, gens), random_term(rng, depth - 1, gens));
        case 5: return Term::join(random_term(rng, depth - 1, gens), random_term(rng, depth - 1, gens));
        default: return Term::generator(1 + static_cast<int>(rng() % static_cast<uint64_t>(gens)));
    }
}

}   // namespace

int main() {
    criterion(1, "table1 reproduces all 24 single-generator counts", [](std::string& why) {
        RunResult r = run_cli("table1 --format json");
        if (r.exit_code != 0) {
            why = "exit code " + std::to_string(r.exit_code);
            return false;
        }
        nlohmann::json j = nlohmann::json::parse(r.output, nullptr, false);
        if (j.is_discarded()) {
            why = "output is not JSON";
            return false;
        }
        nlohmann::json want = {{1, 1, 1, 1},
                               {2, 2, 2, 2},
                               {2, 2, 2, 2},
                               {2, 4, 4, 4},
                               {7, 13, 13, 35},
                               {14, "inf", "inf", "inf"}};
        if (j["cells"] != want) {
            why = "cells differ: " + j["cells"].dump();
            return false;
        }
        return true;
    });

    criterion(2, "table2 reproduces the n-generator counts against an antichain oracle",
              [](std::string& why) {
                  for (int n : {1, 2}) {
                      RunResult r = run_cli("table2 --n " + std::to_string(n));
                      if (r.exit_code != 0) {
                          why = "table2 --n " + std::to_string(n) + " exit " + std::to_string(r.exit_code);
                          return false;
                      }
                  }
                  for (int n = 1; n <= 4; ++n) {
                      unsigned long long want = antichain_count(n) - 2;
                      if (dedekind_count(n) != want) {
                          why = "dedekind_count(" + std::to_string(n) + ") != antichain count";
                          return false;
                      }
                      CellCount cell = closed_form_counts(n, OpSet::parse("^v"));
                      if (cell.infinite || cell.value != want) {
                          why = "closed form lattice count differs at n=" + std::to_string(n);
                          return false;
                      }
                  }
                  return true;
              });

    criterion(3, "the operation monoids are exactly the classical 7 and 14", [](std::string& why) {
        std::vector<UnaryWord> ki = enumerate_unary_monoid("ki");
        std::sort(ki.begin(), ki.end());
        if (ki != std::vector<UnaryWord>{"", "i", "ik", "iki", "k", "ki", "kik"}) {
            why = "{k,i} monoid wrong";
            return false;
        }
        std::vector<UnaryWord> full = enumerate_unary_monoid("kic");
        std::vector<UnaryWord> want = {"",   "c",   "ci",  "cik", "ciki", "ck",  "cki",
                                       "ckik", "i",  "ik",  "iki", "k",   "ki",  "kik"};
        std::sort(full.begin(), full.end());
        std::sort(want.begin(), want.end());
        if (full != want) {
            why = "{k,i,c} monoid wrong";
            return false;
        }
        for (const char* alphabet : {"ic", "kc"}) {
            std::vector<UnaryWord> sub = enumerate_unary_monoid(alphabet);
            std::sort(sub.begin(), sub.end());
            if (sub != full) {
                why = std::string("{") + alphabet + "} does not regenerate the full monoid";
                return false;
            }
        }
        // Exhaustive soundness of the rewrite system.
        std::vector<UnaryWord> words = {""};
        size_t lo = 0;
        for (int len = 1; len <= 6; ++len) {
            size_t hi = words.size();
            for (size_t w = lo; w < hi; ++w)
                for (char ch : {'k', 'i', 'c'}) words.push_back(words[w] + ch);
            lo = hi;
        }
        for (const UnaryWord& w : words) {
            UnaryWord nf = normalize_unary(w);
            for (int m = 1; m <= 4; ++m)
                for (const TopSpace& sp : dedup_spaces(m))
                    for (uint64_t a = 0; a < (1ull << m); ++a)
                        if (apply_word(w, sp, a) != apply_word(nf, sp, a)) {
                            why = "normalization changed the meaning of \"" + w + "\"";
                            return false;
                        }
        }
        return true;
    });

    criterion(4, "the operation posets and the 35-element lattice are reproduced exactly",
              [](std::string& why) {
                  OperationPoset fig1 = build_order(unary_ki_terms(), kFig1ExactBound);
                  std::vector<std::pair<int, int>> want1 = {{0, 1}, {2, 0}, {2, 6}, {3, 5},
                                                            {4, 5}, {5, 1}, {6, 3}, {6, 4}};
                  if (fig1.hasse != want1) {
                      why = "unary poset covers differ";
                      return false;
                  }
                  DownSetLattice down = hereditary_subsets(fig1);
                  if (down.total() != 14 || down.nonempty() != 13) {
                      why = "downset counts differ";
                      return false;
                  }
                  OperationPoset meets = build_order(meet_ki_terms(), kFig2ExactBound);
                  if (meets.size() != 13 || meets.hasse.size() != 19) {
                      why = "meet semilattice shape differs";
                      return false;
                  }
                  DistributiveClosureResult dc = distributive_closure(meet_ki_terms(), kClosureCleanBound);
                  if (dc.elements.size() != 35 || !dc.collisions.empty()) {
                      why = "distributive closure is not clean 35";
                      return false;
                  }
                  std::set<std::vector<uint64_t>> sigs;
                  for (const TermPtr& t : dc.elements) sigs.insert(signature(t, kClosureCleanBound));
                  if (sigs.size() != 35) {
                      why = "closure elements collide at the bound";
                      return false;
                  }
                  const char* joins[] = {
                      "g1 ^ kikg1 v kig1 v ikg1",
                      "g1 ^ kikg1 v kig1",
                      "g1 ^ kikg1 v ikg1",
                      "g1 ^ kikg1 v kig1 ^ ikg1",
                      "g1 ^ kikg1 v ikig1",
                      "g1 ^ kig1 v g1 ^ ikg1 v kig1 ^ ikg1",
                      "g1 ^ kig1 v g1 ^ ikg1 v ikig1",
                      "g1 ^ kig1 v ikg1",
                      "g1 ^ kig1 v kig1 ^ ikg1",
                      "g1 ^ kig1 v ikig1",
                      "g1 ^ ikg1 v kig1",
                      "g1 ^ ikg1 v kig1 ^ ikg1",
                      "g1 ^ ikg1 v ikig1",
                      "g1 ^ kig1 ^ ikg1 v ikig1",
                  };
                  for (const char* text : joins)
                      if (!sigs.count(signature(parse_term(text), kClosureCleanBound))) {
                          why = std::string("missing join ") + text;
                          return false;
                      }
                  return true;
              });

    criterion(5, "the closure identities behind the bounds hold exhaustively", [](std::string& why) {
        const char* pairs[][2] = {
            {"k(g1 ^ ikg1)", "kikg1"},        {"k(g1 ^ kikg1)", "kikg1"},
            {"k(kig1 ^ ikg1)", "kig1"},       {"k(g1 ^ ikig1)", "kig1"},
            {"k(g1 ^ kig1 ^ ikg1)", "kig1"},  {"k(g1 ^ kig1)", "kig1"},
        };
        for (auto& p : pairs)
            if (!term_equal(parse_term(p[0]), parse_term(p[1]), 4).equal) {
                why = std::string(p[0]) + " != " + p[1];
                return false;
            }
        std::vector<TermPtr> base = meet_ki_terms();
        for (int m = 1; m <= 4; ++m)
            for (const TopSpace& sp : dedup_spaces(m))
                for (uint64_t a = 0; a < (1ull << m); ++a)
                    for (const TermPtr& x : base)
                        for (const TermPtr& y : base) {
                            uint64_t vx = eval_bits(*x, sp, {a});
                            uint64_t vy = eval_bits(*y, sp, {a});
                            if (sp.closure_bits(vx & vy) & ~(sp.closure_bits(vx) & sp.closure_bits(vy))) {
                                why = "k(x ^ y) escaped kx ^ ky";
                                return false;
                            }
                        }
        return true;
    });

    criterion(6, "the unbounded constructions iterate to their closed forms and keep growing",
              [](std::string& why) {
                  for (int N = 4; N <= 40; ++N) {
                      int max_steps = (N - 2) / 2;
                      std::vector<PointSet> phi = phi_iterate(N, max_steps);
                      std::vector<PointSet> ej = ej_sequence(N, max_steps);
                      uint64_t evens = 0;
                      for (int p = 2; p <= N; p += 2) evens |= 1ull << (p - 1);
                      for (int j = 1; j <= max_steps; ++j) {
                          uint64_t tail = 0;
                          for (int p = 2 * j + 2; p <= N; ++p) tail |= 1ull << (p - 1);
                          uint64_t want = evens & tail;
                          if (phi[static_cast<size_t>(j - 1)].bits != want ||
                              ej[static_cast<size_t>(j - 1)].bits != want) {
                              why = "closed form broke at N=" + std::to_string(N) +
                                    " j=" + std::to_string(j);
                              return false;
                          }
                      }
                  }
                  GrowthResult g1 = growth_probe(OpSet::parse("kc^"), 1, {6, 10, 14});
                  GrowthResult g2 = growth_probe(OpSet::parse("k^"), 2, {6, 10, 14});
                  if (!g1.known_infinite_construction || !g1.strictly_increasing) {
                      why = "{k,c,^} on one generator did not keep growing";
                      return false;
                  }
                  if (!g2.known_infinite_construction || !g2.strictly_increasing) {
                      why = "{k,^} on two generators did not keep growing";
                      return false;
                  }
                  return true;
              });

    criterion(7, "duality holds semantically and for whole family counts", [](std::string& why) {
        std::mt19937_64 rng(0x616363657074ull);
        int done = 0;
        while (done < 1000) {
            TermPtr t = random_term(rng, 3, 2);
            if (t->size() > 7) continue;
            ++done;
            int m = 1 + static_cast<int>(rng() % 4);
            const std::vector<TopSpace>& spaces = dedup_spaces(m);
            const TopSpace& sp = spaces[rng() % spaces.size()];
            std::vector<uint64_t> assign(2), coassign(2);
            for (int g = 0; g < 2; ++g) {
                assign[static_cast<size_t>(g)] = rng() & sp.full_mask();
                coassign[static_cast<size_t>(g)] = sp.complement_bits(assign[static_cast<size_t>(g)]);
            }
            if (eval_bits(*dual(t), sp, assign) !=
                sp.complement_bits(eval_bits(*t, sp, coassign))) {
                why = "dual(" + term_to_string(t) + ") violated the complement law";
                return false;
            }
        }
        for (int m = 1; m <= 4; ++m)
            for (const TopSpace& sp : dedup_spaces(m))
                for (uint64_t a = 0; a < (1ull << m); ++a)
                    if (saturate_count(sp, {a}, OpSet::parse("ki^")) !=
                        saturate_count(sp, {sp.complement_bits(a)}, OpSet::parse("kiv"))) {
                        why = "meet/join family sizes differ under complement";
                        return false;
                    }
        return true;
    });

    criterion(8, "space validation accepts every real space and rejects broken matrices",
              [](std::string& why) {
                  for (int m = 1; m <= 4; ++m)
                      for (const TopSpace& sp : dedup_spaces(m))
                          if (!validate_space(sp).valid) {
                              why = "a real " + std::to_string(m) + "-point space failed validation";
                              return false;
                          }
                  for (int N = 1; N <= 40; ++N)
                      if (!validate_space(TopSpace::prefix(N)).valid) {
                          why = "prefix(" + std::to_string(N) + ") failed validation";
                          return false;
                      }
                  try {
                      space_from_json(R"({"points":3,"closure":[[true,false,true],)"
                                      R"([true,true,false],[false,false,true]]})");
                      why = "non-transitive matrix was accepted";
                      return false;
                  } catch (const invalid_space_error& e) {
                      if (std::string(e.what()).find("transitive") == std::string::npos) {
                          why = "rejection did not name the broken axiom";
                          return false;
                      }
                  }
                  return true;
              });

    std::printf("%d/8 criteria passed\n", 8 - g_failures);
    return g_failures;
}
