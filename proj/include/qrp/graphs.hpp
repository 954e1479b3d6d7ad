#pragma once

/*
 * Residue 4-tuple graphs over F_p, p = 1 mod 4.
 *
 * A tuple of distinct residues (r_1..r_4) induces a simple graph on four
 * vertices: edge (i, j) iff r_i - r_j is a nonzero square (symmetric
 * because -1 is a square for p = 1 mod 4). Tuples are identified under
 * translation, so class counts n_p enumerate 4-subsets containing 0 and
 * divide by 4 (each translation class holds exactly four such subsets:
 * a nontrivial translation stabilizer would force the subset to be a union
 * of cosets of a subgroup of F_p^+, impossible for size 4 < p).
 *
 * Edge bit order over vertex pairs: (0,1) (0,2) (0,3) (1,2) (1,3) (2,3)
 * = bits 0..5. Canonical form of a mask is the smallest mask over the 24
 * vertex relabelings; the 11 classes are numbered by (edge count, canonical
 * mask) ascending.
 */

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ffield.hpp"

namespace qrp {

inline constexpr std::array<std::array<int, 2>, 6> kVertexPairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

struct FourGraph {
    int canonical_mask;
    int class_id;
};

struct GraphClassTable {
    std::array<int, 64> canon{};
    std::array<int, 64> class_of{};
    std::array<int, 11> canonical_mask{};
    std::array<int, 11> edge_count{};
    std::array<int, 11> aut_order{};
    std::array<int, 11> complement_id{};
    std::array<std::array<i64, 11>, 11> superset_mult{};  // m(class, superclass)
    std::array<std::array<int, 64>, 11> embed_count{};    // w(class, mask) = #{sigma: sigma(G0) inside mask}
    std::array<const char*, 11> name{};

    static const GraphClassTable& instance() {
        static const GraphClassTable t = build();
        return t;
    }

private:
    static int pair_bit(int a, int b) {
        for (int i = 0; i < 6; ++i) {
            if ((kVertexPairs[size_t(i)][0] == a && kVertexPairs[size_t(i)][1] == b) ||
                (kVertexPairs[size_t(i)][0] == b && kVertexPairs[size_t(i)][1] == a)) {
                return i;
            }
        }
        return -1;
    }

    static int permute_mask(int mask, const std::array<int, 4>& perm) {
        int out = 0;
        for (int i = 0; i < 6; ++i) {
            if (mask & (1 << i)) {
                out |= 1 << pair_bit(perm[size_t(kVertexPairs[size_t(i)][0])],
                                     perm[size_t(kVertexPairs[size_t(i)][1])]);
            }
        }
        return out;
    }

    static GraphClassTable build() {
        GraphClassTable t;
        std::vector<std::array<int, 4>> perms;
        std::array<int, 4> p{0, 1, 2, 3};
        do {
            perms.push_back(p);
        } while (std::next_permutation(p.begin(), p.end()));

        for (int mask = 0; mask < 64; ++mask) {
            int best = mask;
            for (const auto& perm : perms) best = std::min(best, permute_mask(mask, perm));
            t.canon[size_t(mask)] = best;
        }
        std::vector<int> reps;
        for (int mask = 0; mask < 64; ++mask) {
            if (t.canon[size_t(mask)] == mask) reps.push_back(mask);
        }
        std::sort(reps.begin(), reps.end(), [](int a, int b) {
            int ea = __builtin_popcount(unsigned(a)), eb = __builtin_popcount(unsigned(b));
            return ea != eb ? ea < eb : a < b;
        });
        if (reps.size() != 11) throw std::logic_error("GraphClassTable: expected 11 classes");
        for (int cid = 0; cid < 11; ++cid) t.canonical_mask[size_t(cid)] = reps[size_t(cid)];
        for (int mask = 0; mask < 64; ++mask) {
            int cid = int(std::find(reps.begin(), reps.end(), t.canon[size_t(mask)]) - reps.begin());
            t.class_of[size_t(mask)] = cid;
        }
        for (int cid = 0; cid < 11; ++cid) {
            int g0 = t.canonical_mask[size_t(cid)];
            t.edge_count[size_t(cid)] = __builtin_popcount(unsigned(g0));
            t.complement_id[size_t(cid)] = t.class_of[size_t(63 ^ g0)];
            int aut = 0;
            for (const auto& perm : perms) {
                if (permute_mask(g0, perm) == g0) ++aut;
            }
            t.aut_order[size_t(cid)] = aut;
            int free_bits = 63 & ~g0;
            for (int sub = free_bits;; sub = (sub - 1) & free_bits) {
                ++t.superset_mult[size_t(cid)][size_t(t.class_of[size_t(g0 | sub)])];
                if (sub == 0) break;
            }
            for (int mask = 0; mask < 64; ++mask) {
                int w = 0;
                for (const auto& perm : perms) {
                    int img = permute_mask(g0, perm);
                    if ((mask & img) == img) ++w;
                }
                t.embed_count[size_t(cid)][size_t(mask)] = w;
            }
        }
        t.name = {"empty", "edge", "cherry", "matching", "star", "triangle",
                  "path", "paw", "cycle4", "diamond", "K4"};
        return t;
    }
};

inline void require_unoriented(i64 p) {
    if (p % 4 != 1) {
        throw std::domain_error("residue graphs for p = 3 mod 4 are oriented; unsupported");
    }
}

inline FourGraph classify_tuple(const ResidueTable& t, const std::array<i64, 4>& r) {
    require_unoriented(t.p);
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            if ((r[size_t(i)] - r[size_t(j)]) % t.p == 0) {
                throw std::invalid_argument("classify_tuple: residues must be pairwise distinct mod p");
            }
        }
    }
    int mask = 0;
    for (int b = 0; b < 6; ++b) {
        i64 d = r[size_t(kVertexPairs[size_t(b)][0])] - r[size_t(kVertexPairs[size_t(b)][1])];
        if (t(d) == 1) mask |= 1 << b;
    }
    const auto& tab = GraphClassTable::instance();
    return FourGraph{tab.canon[size_t(mask)], tab.class_of[size_t(mask)]};
}

/*
 * Census over 4-subsets {0, a, b, c} of F_p, 0 < a < b < c < p, of the
 * induced edge mask. Everything else (class counts, n') folds from this.
 */
inline std::array<i64, 64> residue_subset_census(const ResidueTable& t) {
    require_unoriented(t.p);
    i64 p = t.p;
    std::vector<unsigned char> isR(size_t(p), 0);
    for (i64 x = 1; x < p; ++x) isR[size_t(x)] = t.at(x) == 1 ? 1 : 0;
    std::array<i64, 64> census{};
    for (i64 a = 1; a < p; ++a) {
        int bit_a = isR[size_t(a)];  // pair (0, a) -> bit 0
        for (i64 b = a + 1; b < p; ++b) {
            int base = bit_a | (isR[size_t(b)] << 1) | (isR[size_t(b - a)] << 3);
            const unsigned char* ra = isR.data() - a;  // ra[c] = isR[c - a]
            const unsigned char* rb = isR.data() - b;
            for (i64 c = b + 1; c < p; ++c) {
                int mask = base | (isR[size_t(c)] << 2) | (ra[c] << 4) | (rb[c] << 5);
                ++census[size_t(mask)];
            }
        }
    }
    return census;
}

struct GraphCountRecord {
    i64 p;
    std::array<i64, 11> counts;        // n_p per class id
    std::array<i64, 11> prime_counts;  // n'_p per class id
};

inline std::array<i64, 11> fold_census_to_counts(const std::array<i64, 64>& census) {
    const auto& tab = GraphClassTable::instance();
    std::array<i64, 11> per_class{};
    for (int mask = 0; mask < 64; ++mask) per_class[size_t(tab.class_of[size_t(mask)])] += census[size_t(mask)];
    for (auto& v : per_class) {
        if (v % 4 != 0) throw std::logic_error("gamma counts: class total not divisible by 4");
        v /= 4;
    }
    return per_class;
}

inline GraphCountRecord gamma_counts(const ResidueTable& t) {
    auto census = residue_subset_census(t);
    GraphCountRecord rec{};
    rec.p = t.p;
    rec.counts = fold_census_to_counts(census);
    const auto& tab = GraphClassTable::instance();
    for (int cid = 0; cid < 11; ++cid) {
        i64 np = 0;
        for (int other = 0; other < 11; ++other) {
            np += tab.superset_mult[size_t(cid)][size_t(other)] * rec.counts[size_t(other)];
        }
        rec.prime_counts[size_t(cid)] = np;
    }
    i64 total = 0;
    for (i64 v : rec.counts) total += v;
    i64 expect = (t.p - 1) * (t.p - 2) * (t.p - 3) / 24;
    if (total != expect) throw std::logic_error("gamma counts: conservation total mismatch");
    return rec;
}

/*
 * Independent n' route for cross-checking the superset transform. For a
 * subset with mask M, the number of labeled supersets of the fixed copy g0
 * that are isomorphic to M's class is, by orbit-stabilizer,
 *   #{M' >= g0 : M' ~ M} = #{sigma : sigma(g0) <= M} / |Aut(class(M))|
 *                        = w(class, M) / |Aut(class(M))|,
 * an integer per subset. Each translation class of subsets shows up four
 * times in the census (once per element translated to 0), so
 *   n'(class) = sum_M census[M] * w(class, M) * (24/|Aut(class(M))|) / 96.
 */
inline std::array<i64, 11> nprime_direct(const std::array<i64, 64>& census) {
    const auto& tab = GraphClassTable::instance();
    std::array<i64, 11> out{};
    for (int cid = 0; cid < 11; ++cid) {
        i64 acc = 0;
        for (int mask = 0; mask < 64; ++mask) {
            i64 aut_m = tab.aut_order[size_t(tab.class_of[size_t(mask)])];
            acc += census[size_t(mask)] * tab.embed_count[size_t(cid)][size_t(mask)] * (24 / aut_m);
        }
        if (acc % 96 != 0) throw std::logic_error("nprime_direct: non-integer count");
        out[size_t(cid)] = acc / 96;
    }
    return out;
}

// ------------------------------------------------------------- Paley cliques

struct PaleyBitset {
    i64 p;
    int words;
    std::vector<std::uint64_t> rows;  // row v: bit u set iff chi(u - v) = 1

    explicit PaleyBitset(const ResidueTable& t) : p(t.p), words(int((t.p + 63) / 64)) {
        rows.assign(size_t(p) * size_t(words), 0);
        for (i64 v = 0; v < p; ++v) {
            std::uint64_t* row = &rows[size_t(v) * size_t(words)];
            for (i64 u = 0; u < p; ++u) {
                i64 d = u - v;
                if (d < 0) d += p;
                if (t.at(d) == 1) row[u >> 6] |= std::uint64_t(1) << (u & 63);
            }
        }
    }

    const std::uint64_t* row(i64 v) const { return &rows[size_t(v) * size_t(words)]; }
};

inline i64 clique_count_paley(const ResidueTable& t, int l) {
    require_unoriented(t.p);
    if (l != 3 && l != 4) throw std::invalid_argument("clique_count_paley: l must be 3 or 4");
    PaleyBitset g(t);
    i64 p = t.p;
    int words = g.words;
    std::vector<std::uint64_t> uv(static_cast<size_t>(words));
    std::vector<std::uint64_t> uvw(static_cast<size_t>(words));
    auto above = [&](std::uint64_t* buf, i64 v) {
        // clear bits 0..v inclusive
        int w = int(v >> 6);
        int j = int(v & 63);
        for (int i = 0; i < w; ++i) buf[i] = 0;
        if (j == 63) {
            buf[w] = 0;
        } else {
            buf[w] &= ~((std::uint64_t(1) << (j + 1)) - 1);
        }
    };
    i64 total = 0;
    for (i64 u = 0; u < p; ++u) {
        const std::uint64_t* ru = g.row(u);
        for (i64 v = u + 1; v < p; ++v) {
            i64 d = v - u;
            if (t.at(d) != 1) continue;
            const std::uint64_t* rv = g.row(v);
            for (int i = 0; i < words; ++i) uv[size_t(i)] = ru[i] & rv[i];
            above(uv.data(), v);
            if (l == 3) {
                for (int i = 0; i < words; ++i) total += __builtin_popcountll(uv[size_t(i)]);
                continue;
            }
            for (int i = 0; i < words; ++i) {
                std::uint64_t bits = uv[size_t(i)];
                while (bits) {
                    int b = __builtin_ctzll(bits);
                    bits &= bits - 1;
                    i64 w = i64(i) * 64 + b;
                    const std::uint64_t* rw = g.row(w);
                    for (int j = 0; j < words; ++j) uvw[size_t(j)] = uv[size_t(j)] & rw[j];
                    above(uvw.data(), w);
                    for (int j = 0; j < words; ++j) total += __builtin_popcountll(uvw[size_t(j)]);
                }
            }
        }
    }
    return total;
}

// --------------------------------------------------------------- Goncharova

struct GoncharovaInputs {
    i64 p;
    i64 k;  // (p - 1) / 4
    i64 J;
    i64 d;  // (J^2 - 4) / 32
};

inline GoncharovaInputs goncharova_inputs(i64 p, i64 J) {
    if (p % 4 != 1) throw std::domain_error("goncharova_inputs: needs p = 1 mod 4");
    i64 num = J * J - 4;
    if (num < 0 || num % 32 != 0) {
        throw std::domain_error("goncharova_inputs: (J^2 - 4)/32 not a nonnegative integer");
    }
    return GoncharovaInputs{p, (p - 1) / 4, J, num / 32};
}

// n_p(K_4) = (k(k-1)(k-4) + 2 k d) / 24, necessarily a nonnegative integer.
inline i64 goncharova_K4(const GoncharovaInputs& in) {
    i64 num = in.k * (in.k - 1) * (in.k - 4) + 2 * in.k * in.d;
    if (num % 24 != 0 || num < 0) {
        throw std::domain_error("goncharova_K4: formula value is not a nonnegative integer");
    }
    return num / 24;
}

// ------------------------------------------------------------------- Eq. (K)

struct Y0Report {
    int l;
    i64 p;
    i64 lhs;  // |Y_0|
    i64 rhs;  // 2^d l! p n_p(K_l)
    i64 cliques;
    bool ok;
};

/*
 * |Y_0| sums 2^(edges of K_l) over l-tuples of distinct elements whose
 * pairwise differences are all nonzero squares. Translation invariance
 * pins r_1 = 0 and multiplies by p.
 */
inline Y0Report Y0_relation_check(const ResidueTable& t, int l) {
    require_unoriented(t.p);
    if (l != 3 && l != 4) throw std::invalid_argument("Y0_relation_check: l must be 3 or 4");
    i64 p = t.p;
    auto good = [&](i64 d) { return t.at(d < 0 ? d + p : d) == 1; };
    i64 tuples = 0;
    if (l == 3) {
        for (i64 a = 1; a < p; ++a) {
            if (!good(a)) continue;
            for (i64 b = 1; b < p; ++b) {
                if (b != a && good(b) && good(b - a)) ++tuples;
            }
        }
    } else {
        for (i64 a = 1; a < p; ++a) {
            if (!good(a)) continue;
            for (i64 b = 1; b < p; ++b) {
                if (b == a || !good(b) || !good(b - a)) continue;
                for (i64 c = 1; c < p; ++c) {
                    if (c != a && c != b && good(c) && good(c - a) && good(c - b)) ++tuples;
                }
            }
        }
    }
    int d = l * (l - 1) / 2;
    i64 fact = l == 3 ? 6 : 24;
    Y0Report rep{};
    rep.l = l;
    rep.p = p;
    rep.lhs = p * (i64(1) << d) * tuples;
    rep.cliques = clique_count_paley(t, l);
    if (rep.cliques % p != 0) throw std::logic_error("Y0_relation_check: clique count not divisible by p");
    rep.rhs = (i64(1) << d) * fact * p * (rep.cliques / p);
    rep.ok = rep.lhs == rep.rhs;
    return rep;
}

}  // namespace qrp
