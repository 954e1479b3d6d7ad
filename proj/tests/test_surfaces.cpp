#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <map>

#include "qrp/curves.hpp"
#include "qrp/surfaces.hpp"

using namespace qrp;

namespace {

// Brute-force projective count of S in P^5 straight from the three quadrics,
// with an optional all-coordinates-nonzero filter: enumerate the affine cone
// and divide the nonzero solutions by p - 1.
i64 brute_S(i64 p, bool torus_only) {
    i64 cone = 0;
    for (i64 x0 = 0; x0 < p; ++x0) {
        for (i64 x1 = 0; x1 < p; ++x1) {
            for (i64 x2 = 0; x2 < p; ++x2) {
                for (i64 x3 = 0; x3 < p; ++x3) {
                    if ((x3 * x3 - x1 * x1 + x2 * x2) % p != 0) continue;
                    for (i64 x4 = 0; x4 < p; ++x4) {
                        if ((x4 * x4 - x0 * x0 + x1 * x1) % p != 0) continue;
                        for (i64 x5 = 0; x5 < p; ++x5) {
                            if ((x5 * x5 - x0 * x0 + x2 * x2) % p != 0) continue;
                            if (torus_only && (x0 == 0 || x1 == 0 || x2 == 0 || x3 == 0 || x4 == 0 || x5 == 0)) {
                                continue;
                            }
                            ++cone;
                        }
                    }
                }
            }
        }
    }
    if (!torus_only) --cone;  // remove the zero tuple
    REQUIRE(cone % (p - 1) == 0);
    return cone / (p - 1);
}

i64 brute_M(i64 p) {
    i64 n = 0;
    for (i64 x = 0; x < p; ++x) {
        for (i64 y = 0; y < p; ++y) {
            i64 rhs = ((x * x % p) * (y * y % p) % p + 1) % p * ((x * x + y * y) % p) % p;
            for (i64 z = 0; z < p; ++z) {
                if ((z * z - rhs) % p == 0) ++n;
            }
        }
    }
    return n;
}

std::array<i64, 3> brute_Xprime(i64 p) {
    i64 affine = 0, zero_locus = 0, open_part = 0;
    for (i64 x1 = 0; x1 < p; ++x1) {
        for (i64 tt = 0; tt < p; ++tt) {
            i64 x4 = x1 * x1 % p * (x1 * x1 % p) % p;
            i64 rhs = (tt * tt % p * x4 % p + 1) % p * ((tt * tt + 1) % p) % p;
            for (i64 y1 = 0; y1 < p; ++y1) {
                if ((y1 * y1 - rhs) % p != 0) continue;
                ++affine;
                if (x1 == 0 || tt == 0 || y1 == 0) {
                    ++zero_locus;
                } else {
                    ++open_part;
                }
            }
        }
    }
    return {affine, zero_locus, open_part};
}

i64 brute_S22(i64 p) {
    i64 cone = 0;
    for (i64 x0 = 0; x0 < p; ++x0) {
        for (i64 x1 = 0; x1 < p; ++x1) {
            for (i64 x2 = 0; x2 < p; ++x2) {
                for (i64 x3 = 0; x3 < p; ++x3) {
                    if ((x1 * x1 - x0 * x0 - x3 * x3) % p != 0) continue;
                    for (i64 x4 = 0; x4 < p; ++x4) {
                        if ((x2 * x2 - x1 * x1 - x4 * x4) % p == 0) ++cone;
                    }
                }
            }
        }
    }
    --cone;
    REQUIRE(cone % (p - 1) == 0);
    return cone / (p - 1);
}

}  // namespace

TEST_CASE("frozen surface count table") {
    struct Row {
        i64 p, S, S0, M, Xp, Xp0, Np;
    };
    const Row rows[] = {{5, 40, 0, 41, 36, 20, 7},
                        {7, 64, 0, 65, 58, 18, 7},
                        {13, 232, 0, 233, 220, 76, 7},
                        {17, 328, 0, 329, 312, 104, 15},
                        {29, 1000, 384, 1001, 972, 188, 39}};
    for (const auto& r : rows) {
        auto rec = surface_count_record(ResidueTable::build(r.p));
        INFO("p = " << r.p);
        REQUIRE(rec.S_proj == r.S);
        REQUIRE(rec.S_torus == r.S0);
        REQUIRE(rec.M == r.M);
        REQUIRE(rec.Xp_affine == r.Xp);
        REQUIRE(rec.Xp0 == r.Xp0);
        REQUIRE(rec.N_e0 == r.Np);
    }
}

TEST_CASE("character-product counts agree with naive enumeration") {
    for (i64 p : {i64(5), i64(7), i64(11), i64(13)}) {
        auto t = ResidueTable::build(p);
        INFO("p = " << p);
        REQUIRE(count_S_proj(t) == brute_S(p, false));
        REQUIRE(count_S_torus(t) == brute_S(p, true));
        REQUIRE(count_X(t) == brute_M(p));
        auto xp = brute_Xprime(p);
        REQUIRE(count_Xprime_affine(t) == xp[0]);
        REQUIRE(count_Xprime0(t) == xp[1]);
        REQUIRE(count_Xprime_open(t) == xp[2]);
        REQUIRE(s22_counts(t).projective == brute_S22(p));
    }
}

TEST_CASE("X' splits into its zero locus and open part") {
    for (i64 p : sieve_primes(150)) {
        if (p < 5) continue;
        auto t = ResidueTable::build(p);
        REQUIRE(count_Xprime_affine(t) == count_Xprime0(t) + count_Xprime_open(t));
    }
}

TEST_CASE("frozen quartic twist table") {
    // per twist (1,1), (d,1), (1,d), (d,d): affine, boundary, inf, trace
    const std::map<i64, std::array<std::array<i64, 4>, 4>> expected{
        {5, {{{2, 2, 2, 2}, {8, 0, 0, -2}, {6, 6, 2, -2}, {4, 4, 0, 2}}}},
        {13, {{{18, 2, 2, -6}, {8, 0, 0, 6}, {6, 6, 2, 6}, {20, 4, 0, -6}}}},
        {17, {{{14, 6, 2, 2}, {20, 4, 0, -2}, {18, 2, 2, -2}, {16, 0, 0, 2}}}},
        {29, {{{18, 2, 2, 10}, {40, 0, 0, -10}, {38, 6, 2, -10}, {20, 4, 0, 10}}}},
    };
    for (const auto& [p, rows] : expected) {
        auto raw = quartic_twist_raw(ResidueTable::build(p));
        for (int i = 0; i < 4; ++i) {
            INFO("p = " << p << " twist " << i);
            REQUIRE(raw[size_t(i)].affine == rows[size_t(i)][0]);
            REQUIRE(raw[size_t(i)].boundary == rows[size_t(i)][1]);
            REQUIRE(raw[size_t(i)].inf_pts == rows[size_t(i)][2]);
            REQUIRE(raw[size_t(i)].trace == rows[size_t(i)][3]);
            REQUIRE(raw[size_t(i)].reduced == rows[size_t(i)][0] - rows[size_t(i)][1]);
        }
    }
}

TEST_CASE("twist boundary rows, trace signs and trace square") {
    for (i64 p : sieve_primes(500)) {
        if (p % 4 != 1) continue;
        auto t = ResidueTable::build(p);
        auto rep = quartic_twist_counts(t, e0_trace_fast(t));
        INFO("p = " << p);
        REQUIRE(rep.boundary_table_ok);
        REQUIRE(rep.trace_signs_ok);
        REQUIRE(rep.trace_square_ok);
    }
    REQUIRE_THROWS_AS(quartic_twist_counts(ResidueTable::build(7), 0), std::domain_error);
}

TEST_CASE("open part of X' equals a quarter of the twist square sum") {
    auto r5 = eq8_check(ResidueTable::build(5));
    REQUIRE(r5.lhs == 16);
    REQUIRE(r5.ok);
    for (i64 p : sieve_primes(300)) {
        if (p % 4 != 1) continue;
        REQUIRE(eq8_check(ResidueTable::build(p)).ok);
    }
}

TEST_CASE("frozen S_22 counts and the torus contraction") {
    const std::map<i64, std::pair<i64, i64>> expected{{5, {36, 0}}, {13, {196, 768}}, {17, {324, 2304}}};
    for (const auto& [p, pc] : expected) {
        auto c = s22_counts(ResidueTable::build(p));
        REQUIRE(c.projective == pc.first);
        REQUIRE(c.cone_torus == pc.second);
    }
    for (i64 p : sieve_primes(200)) {
        if (p < 5) continue;
        REQUIRE(s22_counts(ResidueTable::build(p)).torus_contract_ok);
    }
}

TEST_CASE("the five-identity lemma chain holds") {
    for (i64 p : sieve_primes(300)) {
        if (p < 5) continue;
        auto rep = lemma_chain_check(ResidueTable::build(p));
        INFO("p = " << p);
        REQUIRE(rep.s_eq_m_minus1);
        REQUIRE(rep.m_eq_np_form);
        REQUIRE(rep.torus_shift_ok);
        REQUIRE(rep.xp0_closed_ok);
        REQUIRE(rep.s_eq_j_form);
        REQUIRE(rep.m_supersingular);
        REQUIRE(rep.all_ok);
        REQUIRE(rep.rec.M == rep.rec.Xp_affine + p);
        if (p % 4 == 1) {
            // J recomputed inside the chain matches the standalone sum
            REQUIRE(rep.jacobsthal_J == jacobsthal(ResidueTable::build(p)).J);
        }
    }
}

TEST_CASE("sixteen listed singular points are rational when p = 1 mod 4") {
    for (i64 p : sieve_primes(200)) {
        if (p % 4 != 1) continue;
        REQUIRE(count_listed_singular_points(ResidueTable::build(p)) == 16);
    }
    REQUIRE_THROWS_AS(count_listed_singular_points(ResidueTable::build(7)), std::domain_error);
}
