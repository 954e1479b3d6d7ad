#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "qrp/ffield.hpp"

using namespace qrp;

TEST_CASE("prime sieve returns odd primes only") {
    auto ps = sieve_primes(100);
    REQUIRE(ps.size() == 24);  // pi(100) = 25, minus the even prime
    REQUIRE(ps.front() == 3);
    REQUIRE(ps.back() == 97);
    REQUIRE(sieve_primes(2).empty());
    auto r = primes_in_range(10, 30);
    REQUIRE(r == std::vector<i64>{11, 13, 17, 19, 23, 29});
}

TEST_CASE("prime modulus classifies residue classes") {
    PrimeModulus m(13);
    REQUIRE(m.mod4 == 1);
    REQUIRE(m.mod8 == 5);
    REQUIRE_THROWS_AS(PrimeModulus(2), std::invalid_argument);
    REQUIRE_THROWS_AS(PrimeModulus(1), std::invalid_argument);
}

TEST_CASE("mulmod and powmod match wide arithmetic") {
    i64 p = 2147483647;  // fits well inside the i64 range
    i64 a = 1234567891, b = 1987654321;
    REQUIRE(mulmod(a, b, p) == i64((__int128)a * b % p));
    REQUIRE(powmod(2, p - 1, p) == 1);  // Fermat
    REQUIRE(powmod(0, 0, 7) == 1);
}

TEST_CASE("legendre symbol: squares mod 17") {
    std::set<i64> squares;
    for (i64 x = 1; x < 17; ++x) squares.insert(x * x % 17);
    REQUIRE(squares == std::set<i64>{1, 2, 4, 8, 9, 13, 15, 16});
    for (i64 a = 1; a < 17; ++a) {
        REQUIRE(legendre(a, 17) == (squares.count(a) ? 1 : -1));
    }
    REQUIRE(legendre(0, 17) == 0);
    REQUIRE(legendre(17 + 2, 17) == legendre(2, 17));
    REQUIRE_THROWS_AS(legendre(3, 16), std::invalid_argument);
    REQUIRE_THROWS_AS(legendre(3, 1), std::invalid_argument);
}

TEST_CASE("residue table equals Euler criterion everywhere") {
    for (i64 p : sieve_primes(200)) {
        auto t = ResidueTable::build(p);
        i64 residues = 0, nonresidues = 0;
        for (i64 a = 0; a < p; ++a) {
            REQUIRE(int(t.at(a)) == legendre(a, p));
            if (t.at(a) == 1) ++residues;
            if (t.at(a) == -1) ++nonresidues;
        }
        REQUIRE(residues == (p - 1) / 2);
        REQUIRE(nonresidues == (p - 1) / 2);
        REQUIRE(t(p + 5) == t(5));  // operator() reduces mod p
    }
}

TEST_CASE("character is multiplicative") {
    auto t = ResidueTable::build(101);
    for (i64 a = 1; a < 101; ++a) {
        for (i64 b = 1; b < 101; b += 7) {
            REQUIRE(int(t.at(mulmod(a, b, 101))) == int(t.at(a)) * int(t.at(b)));
        }
    }
}

TEST_CASE("chi(-1) detects the residue class of p") {
    for (i64 p : sieve_primes(500)) {
        auto t = ResidueTable::build(p);
        REQUIRE(int(t.at(p - 1)) == (p % 4 == 1 ? 1 : -1));
    }
}

TEST_CASE("smallest nonresidues of the small primes") {
    REQUIRE(find_nonresidue(ResidueTable::build(5)) == 2);
    REQUIRE(find_nonresidue(ResidueTable::build(7)) == 3);
    REQUIRE(find_nonresidue(ResidueTable::build(13)) == 2);
    REQUIRE(find_nonresidue(ResidueTable::build(17)) == 3);
    REQUIRE(find_nonresidue(ResidueTable::build(29)) == 2);
}

TEST_CASE("quadratic extension: norm character equals the power character") {
    for (i64 p : {i64(5), i64(13), i64(17), i64(19)}) {
        auto t = ResidueTable::build(p);
        QuadExt F(t);
        i64 squares = 0;
        for (i64 a = 0; a < p; ++a) {
            for (i64 b = 0; b < p; ++b) {
                QuadExtElement x{a, b};
                int by_pow = F.chi_by_pow(x);
                int by_norm = F.chi_by_norm(x, t);
                REQUIRE(by_pow == by_norm);
                if (by_pow == 1) ++squares;
            }
        }
        // exactly half of the nonzero elements of F_{p^2} are squares
        REQUIRE(squares == (p * p - 1) / 2);
    }
}

TEST_CASE("quadratic extension arithmetic") {
    auto t = ResidueTable::build(13);
    QuadExt F(t);
    REQUIRE(int(t.at(F.delta)) == -1);
    // norm(a + b sqrt(delta)) = a^2 - delta b^2, multiplicative
    QuadExtElement x{3, 5}, y{7, 11};
    i64 nx = F.norm(x), ny = F.norm(y), nxy = F.norm(F.mul(x, y));
    REQUIRE(nxy == mulmod(nx, ny, 13));
    // squaring formula: (a, b)^2 = (a^2 + delta b^2, 2ab)
    auto sq = F.mul(x, x);
    REQUIRE(sq.a == (3 * 3 + F.delta * 5 * 5) % 13);
    REQUIRE(sq.b == 2 * 3 * 5 % 13);
    // Frobenius-fixed points of x^p are exactly F_p: (a,0)^p = (a,0)
    for (i64 a = 0; a < 13; ++a) {
        auto ppow = F.pow({a, 0}, 13);
        REQUIRE(ppow.a == a);
        REQUIRE(ppow.b == 0);
    }
}
