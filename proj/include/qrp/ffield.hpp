#pragma once

/*
 * Prime fields, Legendre symbols and the quadratic extension F_p^2.
 *
 * Everything downstream works off ResidueTable: a byte table with
 * chi[a] = +1 (nonzero square), -1 (non-square), 0 (a = 0). The table is
 * built by walking the squares incrementally: i^2 = (i-1)^2 + (2i-1), so a
 * single pass with one conditional subtract marks all (p-1)/2 squares
 * without any multiplication.
 */

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qrp {

using i64 = std::int64_t;

struct PrimeModulus {
    i64 p;
    int mod4;
    int mod8;

    explicit PrimeModulus(i64 prime) : p(prime), mod4(int(prime % 4)), mod8(int(prime % 8)) {
        if (prime < 3) throw std::invalid_argument("PrimeModulus: prime must be an odd prime >= 3");
    }
};

// Odd primes in [3, limit]. limit < 3 yields an empty list.
inline std::vector<i64> sieve_primes(i64 limit) {
    std::vector<i64> out;
    if (limit < 3) return out;
    std::vector<bool> composite(size_t(limit + 1), false);
    for (i64 i = 3; i * i <= limit; i += 2) {
        if (!composite[size_t(i)]) {
            for (i64 j = i * i; j <= limit; j += 2 * i) composite[size_t(j)] = true;
        }
    }
    for (i64 n = 3; n <= limit; n += 2) {
        if (!composite[size_t(n)]) out.push_back(n);
    }
    return out;
}

inline std::vector<i64> primes_in_range(i64 lo, i64 hi) {
    std::vector<i64> out;
    for (i64 p : sieve_primes(hi)) {
        if (p >= lo) out.push_back(p);
    }
    return out;
}

inline i64 mulmod(i64 a, i64 b, i64 m) {
    return i64((__int128)a * b % m);
}

inline i64 powmod(i64 base, i64 exp, i64 m) {
    i64 r = 1 % m;
    base %= m;
    if (base < 0) base += m;
    while (exp > 0) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

/*
 * Legendre symbol via Euler's criterion: a^((p-1)/2) is 1 for nonzero
 * squares, p-1 for non-squares, 0 when p | a.
 */
inline int legendre(i64 a, i64 p) {
    if (p < 3 || p % 2 == 0) throw std::invalid_argument("legendre: modulus must be an odd prime");
    a %= p;
    if (a < 0) a += p;
    if (a == 0) return 0;
    i64 r = powmod(a, (p - 1) / 2, p);
    return r == 1 ? 1 : -1;
}

struct ResidueTable {
    i64 p;
    std::vector<std::int8_t> chi;  // chi[a] for a in [0, p)

    static ResidueTable build(i64 p) {
        if (p < 3 || p % 2 == 0) throw std::invalid_argument("ResidueTable: modulus must be an odd prime");
        ResidueTable t;
        t.p = p;
        t.chi.assign(size_t(p), -1);
        t.chi[0] = 0;
        i64 s = 0;
        for (i64 i = 1; i <= (p - 1) / 2; ++i) {
            s += 2 * i - 1;  // s = i^2 mod p, maintained incrementally
            if (s >= p) s -= p;
            t.chi[size_t(s)] = 1;
        }
        return t;
    }

    int operator()(i64 a) const {
        a %= p;
        if (a < 0) a += p;
        return chi[size_t(a)];
    }

    // Unchecked lookup for hot loops; a must already be reduced to [0, p).
    int at(i64 a) const { return chi[size_t(a)]; }
};

// Smallest quadratic non-residue; exists for every odd prime.
inline i64 find_nonresidue(const ResidueTable& t) {
    for (i64 a = 2; a < t.p; ++a) {
        if (t.chi[size_t(a)] == -1) return a;
    }
    throw std::logic_error("find_nonresidue: no non-residue found (modulus not an odd prime?)");
}

/*
 * F_p^2 = F_p[sqrt(delta)] with delta the designated non-residue. Elements
 * are a + b*sqrt(delta). The quadratic character of the extension is
 * chi_{p^2}(x) = chi_p(N(x)) with the norm N(a + b*sqrt(delta)) = a^2 - delta b^2:
 * the norm maps F_{p^2}^* onto F_p^* with kernel of order p+1, and x is a
 * square in F_{p^2} exactly when N(x) is a square in F_p.
 */
struct QuadExtElement {
    i64 a;
    i64 b;
    bool operator==(const QuadExtElement&) const = default;
};

struct QuadExt {
    i64 p;
    i64 delta;

    explicit QuadExt(const ResidueTable& t) : p(t.p), delta(find_nonresidue(t)) {}
    QuadExt(i64 prime, i64 d) : p(prime), delta(d) {}

    QuadExtElement mul(QuadExtElement x, QuadExtElement y) const {
        i64 a = (mulmod(x.a, y.a, p) + mulmod(delta, mulmod(x.b, y.b, p), p)) % p;
        i64 b = (mulmod(x.a, y.b, p) + mulmod(x.b, y.a, p)) % p;
        return {a, b};
    }

    QuadExtElement add(QuadExtElement x, QuadExtElement y) const {
        i64 a = x.a + y.a;
        if (a >= p) a -= p;
        i64 b = x.b + y.b;
        if (b >= p) b -= p;
        return {a, b};
    }

    QuadExtElement pow(QuadExtElement x, i64 e) const {
        QuadExtElement r{1, 0};
        while (e > 0) {
            if (e & 1) r = mul(r, x);
            x = mul(x, x);
            e >>= 1;
        }
        return r;
    }

    i64 norm(QuadExtElement x) const {
        i64 n = (mulmod(x.a, x.a, p) - mulmod(delta, mulmod(x.b, x.b, p), p)) % p;
        if (n < 0) n += p;
        return n;
    }

    // Quadratic character of F_{p^2} by exponentiation: x^((p^2-1)/2).
    // The designated reference method; the norm shortcut below must agree.
    int chi_by_pow(QuadExtElement x) const {
        if (x.a == 0 && x.b == 0) return 0;
        i64 e = (p * p - 1) / 2;
        QuadExtElement r = pow(x, e);
        if (r.a == 1 && r.b == 0) return 1;
        return -1;
    }

    int chi_by_norm(QuadExtElement x, const ResidueTable& t) const {
        return t.at(norm(x));
    }
};

inline QuadExtElement quadext_mul(QuadExtElement x, QuadExtElement y, i64 p, i64 delta) {
    return QuadExt(p, delta).mul(x, y);
}

}  // namespace qrp
