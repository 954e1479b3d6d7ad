#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "qrp/curves.hpp"
#include "qrp/patterns.hpp"

using namespace qrp;

TEST_CASE("polynomial helpers work mod p") {
    // (x^2 + 1)(x + 2) = x^3 + 2x^2 + x + 2; x^2 + 1 is irreducible mod 7
    std::vector<i64> f{2, 1, 2, 1};
    REQUIRE(eval_poly(f, 1, 7) == (2 + 1 + 2 + 1) % 7);
    REQUIRE(squarefree_mod(f, 7));
    // but mod 5 it splits as (x + 2)^2 (x + 3), picking up a square factor
    REQUIRE_FALSE(squarefree_mod(f, 5));
    std::vector<i64> sq{0, 0, 1};  // x^2
    REQUIRE_FALSE(squarefree_mod(sq, 5));
    REQUIRE(poly_gcd_mod({0, 1}, {0, 0, 1}, 5) == std::vector<i64>{0, 1});
}

TEST_CASE("curve construction from subsets") {
    auto e0 = standard_curve(0, 7);  // x(x+1)(x+2) = x^3 + 3x^2 + 2x
    REQUIRE(e0.coeffs == std::vector<i64>{0, 2, 3, 1});
    REQUIRE(e0.degree() == 3);
    REQUIRE(e0.genus() == 1);
    auto c = CurveSpec::from_subset({1, 2, 3}, 13);
    REQUIRE(c.label == "T{123}");
    REQUIRE(c.coeffs == e0.coeffs);  // offsets t-1 = 0,1,2
    auto q = CurveSpec::from_subset({1, 2, 3, 4}, 13);
    REQUIRE(q.degree() == 4);
    REQUIRE(q.genus() == 1);
    auto g2 = CurveSpec::from_subset({1, 2, 3, 4, 5}, 13);
    REQUIRE(g2.genus() == 2);
    REQUIRE_THROWS_AS(CurveSpec::from_coeffs({0, 0, 0}, 5, "zero"), std::invalid_argument);
}

TEST_CASE("affine counts of the cubic on the smallest primes") {
    // y^2 = x(x+1)(x+2): 7 affine points over F_5 and F_7, 7 over F_13
    REQUIRE(affine_count(standard_curve(0, 5), ResidueTable::build(5), 1) == 7);
    REQUIRE(affine_count(standard_curve(0, 7), ResidueTable::build(7), 1) == 7);
    REQUIRE(affine_count(standard_curve(0, 13), ResidueTable::build(13), 1) == 7);
}

TEST_CASE("points at infinity by degree and leading coefficient") {
    auto t13 = ResidueTable::build(13);
    REQUIRE(points_at_infinity(standard_curve(0, 13), t13, 1) == 1);  // odd degree
    REQUIRE(points_at_infinity(standard_curve(4, 13), t13, 1) == 2);  // deg 4, lead 1 square
    // even degree, non-square lead: no rational points at infinity over F_p,
    // but two over F_{p^2} (every element of F_p is a square there)
    auto tw = CurveSpec::from_coeffs({1, 0, 0, 0, 2}, 13, "twist");  // 2 is a non-square mod 13
    REQUIRE(points_at_infinity(tw, t13, 1) == 0);
    REQUIRE(points_at_infinity(tw, t13, 2) == 2);
}

TEST_CASE("frobenius traces of the five standard curves are the frozen table") {
    const std::map<i64, std::array<i64, 5>> expected{
        {5, {-2, 2, 2, -2, -2}},  {7, {0, -4, 4, 0, 0}},    {11, {0, 4, -4, 0, 4}},
        {13, {6, -2, -2, 6, -2}}, {17, {2, -6, -6, 2, 2}},  {29, {-10, 2, 2, -10, 6}},
    };
    for (const auto& [p, traces] : expected) {
        auto t = ResidueTable::build(p);
        for (int k = 0; k <= 4; ++k) {
            auto rec = frobenius_trace(standard_curve(k, p), t);
            INFO("p=" << p << " curve E" << k);
            REQUIRE(rec.trace == traces[size_t(k)]);
            REQUIRE(rec.genus == 1);
        }
        auto quick = l4_traces(t);
        for (int k = 0; k <= 4; ++k) REQUIRE(quick[size_t(k)] == traces[size_t(k)]);
    }
}

TEST_CASE("trace relations among the quartic family") {
    for (i64 p : sieve_primes(500)) {
        if (p < 7) continue;
        auto t = ResidueTable::build(p);
        auto a = l4_traces(t);
        REQUIRE(a[3] == a[0]);
        if (p % 4 == 1) {
            REQUIRE(a[2] == a[1]);
        } else {
            REQUIRE(a[2] == -a[1]);
            REQUIRE(a[0] == 0);
            REQUIRE(a[3] == 0);
        }
        REQUIRE(e0_trace_fast(t) == a[0]);
    }
}

TEST_CASE("bad reduction is rejected, good traces satisfy the Weil bound") {
    auto t3 = ResidueTable::build(3);
    REQUIRE_THROWS_AS(frobenius_trace(standard_curve(1, 3), t3), std::domain_error);  // x^2(x+1)
    for (i64 p : sieve_primes(500)) {
        if (p < 5) continue;
        auto t = ResidueTable::build(p);
        for (int k = 0; k <= 4; ++k) REQUIRE_NOTHROW(frobenius_trace(standard_curve(k, p), t));
    }
}

TEST_CASE("jacobsthal pairs of the frozen primes") {
    const std::map<i64, std::pair<i64, i64>> expected{
        {5, {2, -4}}, {13, {-6, -4}}, {17, {-2, 8}}, {29, {10, -4}}};
    for (const auto& [p, jb] : expected) {
        auto got = jacobsthal(ResidueTable::build(p));
        REQUIRE(got.J == jb.first);
        REQUIRE(got.b == jb.second);
        REQUIRE(got.J * got.J + got.b * got.b == 4 * p);
    }
    REQUIRE_THROWS_AS(jacobsthal(ResidueTable::build(7)), std::domain_error);
}

TEST_CASE("jacobsthal sum is minus the cubic trace, both squares agree") {
    for (i64 p : sieve_primes(2000)) {
        if (p % 4 != 1) continue;
        auto t = ResidueTable::build(p);
        auto jb = jacobsthal(t);
        i64 a0 = e0_trace_fast(t);
        REQUIRE(jb.J == -a0);
        REQUIRE(jb.J * jb.J == a0 * a0);
        REQUIRE(jb.J % 2 == 0);
        REQUIRE(jb.J * jb.J <= 4 * p);
    }
}

TEST_CASE("gauss last-entry counts and the odd part of the two-square split") {
    const std::map<i64, std::pair<i64, i64>> expected{  // total, odd part
        {5, {8, 1}}, {13, {8, 3}}, {17, {16, 1}}, {29, {40, 5}}};
    for (const auto& [p, e] : expected) {
        auto t = ResidueTable::build(p);
        i64 total = gauss_last_entry_count(t);
        REQUIRE(total == e.first);
        i64 a = two_square_odd_part(p);
        REQUIRE(a == e.second);
        i64 dev = total - (p + 1);
        REQUIRE((dev < 0 ? -dev : dev) == 2 * a);
    }
}

TEST_CASE("pattern curve counts over F_p and F_p^2") {
    auto t13 = ResidueTable::build(13);
    auto t17 = ResidueTable::build(17);
    auto c313 = count_Cl(t13, 3, true);
    REQUIRE(c313.projective_p == 8);
    REQUIRE(c313.projective_p2 == 160);
    auto c317 = count_Cl(t17, 3, true);
    REQUIRE(c317.projective_p == 16);
    REQUIRE(c317.projective_p2 == 320);
    auto c413 = count_Cl(t13, 4, true);
    REQUIRE(c413.projective_p == 8);
    REQUIRE(c413.projective_p2 == 216);
    auto c417 = count_Cl(t17, 4, true);
    REQUIRE(c417.projective_p == 24);
    REQUIRE(c417.projective_p2 == 376);
    auto c513 = count_Cl(t13, 5, true);
    REQUIRE(c513.projective_p == 16);
    REQUIRE(c513.projective_p2 == 352);
    REQUIRE_THROWS_AS(count_Cl(t13, 7, false), std::out_of_range);  // needs p > 2l
}

TEST_CASE("torus part of the pattern curve counts the all-R windows") {
    for (i64 p : sieve_primes(200)) {
        auto t = ResidueTable::build(p);
        for (int l = 3; l <= 5; ++l) {
            if (p <= 2 * l) continue;
            auto c = count_Cl(t, l, false);
            REQUIRE(c.torus == (i64(1) << l) * count_R_run(t, l));
        }
    }
}

TEST_CASE("genus table of the pattern curves") {
    REQUIRE(genus_Cl(3) == 1);
    REQUIRE(genus_Cl(4) == 5);
    REQUIRE(genus_Cl(5) == 17);
    REQUIRE(genus_Cl(6) == 49);
    for (int l = 3; l <= 8; ++l) REQUIRE(genus_identity(l));
}

TEST_CASE("extension-field affine counts match the definitional character") {
    for (i64 p : {i64(5), i64(7)}) {
        auto t = ResidueTable::build(p);
        QuadExt F(t);
        auto f = standard_curve(0, p);
        i64 direct = 0;
        for (i64 a = 0; a < p; ++a) {
            for (i64 b = 0; b < p; ++b) {
                QuadExtElement x{a, b}, v{0, 0};
                for (size_t i = f.coeffs.size(); i-- > 0;) {
                    v = F.mul(v, x);
                    v = F.add(v, {f.coeffs[i] % p, 0});
                }
                direct += 1 + F.chi_by_pow(v);
            }
        }
        REQUIRE(affine_count(f, t, 2) == direct);
    }
}

TEST_CASE("trace decomposition over both fields on the frozen primes") {
    struct Case {
        int l;
        i64 p;
        i64 lhs_p;
        i64 lhs_p2;  // 0 when not checked
        bool ext;
    };
    const Case cases[] = {
        {4, 11, 4, 0, false},    {4, 13, 6, -46, true},  {4, 17, -6, -86, true},
        {5, 11, -4, 0, false},   {5, 13, -2, -182, true}, {5, 19, 4, 0, false},
    };
    for (const auto& c : cases) {
        auto t = ResidueTable::build(c.p);
        auto rep = trace_decomposition_check(t, c.l, c.ext);
        INFO("l=" << c.l << " p=" << c.p);
        REQUIRE(rep.lhs_p == c.lhs_p);
        REQUIRE(rep.ok_p);
        REQUIRE(rep.lhs_p == rep.rhs_p);
        if (c.ext) {
            REQUIRE(rep.lhs_p2 == c.lhs_p2);
            REQUIRE(rep.ok_p2);
        }
    }
}

TEST_CASE("trace decomposition holds across a range") {
    for (i64 p : primes_in_range(11, 150)) {
        auto t = ResidueTable::build(p);
        auto r4 = trace_decomposition_check(t, 4, true);
        REQUIRE(r4.ok_p);
        REQUIRE(r4.ok_p2);
        REQUIRE(r4.terms.size() == 5);  // subsets of [1,4] with at least 3 elements
        if (p >= 13) {
            auto r5 = trace_decomposition_check(t, 5, false);
            REQUIRE(r5.ok_p);
            REQUIRE(r5.terms.size() == 16);  // subsets of [1,5] with at least 3 elements
        }
    }
}

TEST_CASE("elliptic terms satisfy the quadratic extension relation") {
    for (i64 p : {i64(13), i64(17), i64(29), i64(53)}) {
        auto t = ResidueTable::build(p);
        auto rep = trace_decomposition_check(t, 4, true);
        for (const auto& term : rep.terms) {
            if (term.genus == 1) {
                REQUIRE(term.trace_p2 == term.trace_p * term.trace_p - 2 * p);
            }
        }
    }
}

TEST_CASE("quartic correction identity and the value census") {
    std::map<std::pair<i64, int>, i64> census;
    for (i64 p : sieve_primes(2000)) {
        if (p < 7) continue;
        auto res = l4_trace_identity(ResidueTable::build(p));
        REQUIRE(res.within_bound);
        REQUIRE(res.class3_traces_ok);
        census[{res.c.num, res.c.shift}]++;
    }
    REQUIRE(census.size() == 4);
    REQUIRE(census[{-7, 4}] == 195);
    REQUIRE(census[{-15, 4}] == 37);
    REQUIRE(census[{-23, 4}] == 38);
    REQUIRE(census[{-39, 4}] == 30);
}

TEST_CASE("correction evaluator is pure in its trace inputs") {
    auto t = ResidueTable::build(13);
    auto a = l4_traces(t);
    i64 n = count_R_run(t, 4);
    Dyadic c = l4_correction_from(13, n, a);
    REQUIRE(c.abs() <= Dyadic(5));
    auto negated = a;
    negated[4] = -negated[4];
    REQUIRE(l4_correction_from(13, n, negated) != c);
}
