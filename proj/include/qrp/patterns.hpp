#pragma once

/*
 * Residue/non-residue pattern counting.
 *
 * The residue word W_p is the string over {R,N} of length p-1 whose i-th
 * letter says whether i is a quadratic residue mod p. For a word S of
 * length l, n_p(S) counts occurrences of S as a consecutive subword, i.e.
 * start positions j with 1 <= j <= p-l.
 *
 * The character-sum formula replaces the indicator of "letter at i+j-1
 * equals S_i" by (1 + eps_i*chi(i+j-1))/2 with eps_i = +1 for R and -1 for
 * N, and sums j over 1..p-l-1 (one position short of the full scan range),
 * so scan and formula may differ, but never by more than 1 in absolute
 * value. All formula values are exact dyadic rationals over 2^l.
 */

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "exact.hpp"
#include "ffield.hpp"

namespace qrp {

struct PatternWord {
    std::string letters;  // over {R, N}

    static PatternWord parse(const std::string& s) {
        if (s.empty()) throw std::invalid_argument("PatternWord: empty word");
        for (char c : s) {
            if (c != 'R' && c != 'N') throw std::invalid_argument("PatternWord: letters must be R or N");
        }
        return PatternWord{s};
    }

    int length() const { return int(letters.size()); }

    // eps_i = +1 for R, -1 for N
    int eps(int i) const { return letters[size_t(i)] == 'R' ? 1 : -1; }

    /*
     * Bit encoding used by the all-words tables: first letter is the most
     * significant bit, R = 1. E.g. for l = 3, RRN -> 0b110 = 6.
     */
    int bit_index() const {
        int ix = 0;
        for (char c : letters) ix = (ix << 1) | (c == 'R' ? 1 : 0);
        return ix;
    }

    static PatternWord from_bits(int ix, int l) {
        std::string s(size_t(l), 'N');
        for (int i = 0; i < l; ++i) {
            if (ix & (1 << (l - 1 - i))) s[size_t(i)] = 'R';
        }
        return PatternWord{s};
    }
};

inline std::string residue_word(const ResidueTable& t) {
    std::string w(size_t(t.p - 1), '?');
    for (i64 i = 1; i < t.p; ++i) w[size_t(i - 1)] = t.at(i) == 1 ? 'R' : 'N';
    return w;
}

inline void check_word_length(const ResidueTable& t, int l) {
    if (l < 1) throw std::invalid_argument("pattern length must be >= 1");
    if (l > t.p - 2) throw std::invalid_argument("pattern longer than p-2 is not countable");
}

// Occurrences of S in W_p by direct scan over start positions 1..p-l.
inline i64 count_pattern_scan(const ResidueTable& t, const PatternWord& w) {
    int l = w.length();
    check_word_length(t, l);
    std::array<int, 8> want{};
    for (int i = 0; i < l && i < 8; ++i) want[size_t(i)] = w.eps(i);
    i64 count = 0;
    for (i64 j = 1; j + l - 1 <= t.p - 1; ++j) {
        bool match = true;
        for (int i = 0; i < l; ++i) {
            if (t.at(j + i) != w.eps(i)) {
                match = false;
                break;
            }
        }
        if (match) ++count;
    }
    return count;
}

// Scan counts for all 2^l words at once; index per PatternWord::bit_index.
inline std::vector<i64> count_all_patterns_scan(const ResidueTable& t, int l) {
    check_word_length(t, l);
    std::vector<i64> counts(size_t(1) << l, 0);
    int mask = (1 << l) - 1;
    int window = 0;
    for (i64 i = 1; i < t.p; ++i) {
        window = ((window << 1) | (t.at(i) == 1 ? 1 : 0)) & mask;
        if (i >= l) ++counts[size_t(window)];
    }
    return counts;
}

// Maximal-run count of R^l: scan runs of consecutive residues once.
inline i64 count_R_run(const ResidueTable& t, int l) {
    i64 run = 0, count = 0;
    for (i64 i = 1; i < t.p; ++i) {
        if (t.at(i) == 1) {
            ++run;
            if (run >= l) ++count;
        } else {
            run = 0;
        }
    }
    return count;
}

/*
 * Character-sum approximation: sum over j = 1..p-l-1 of
 * prod_i (1 + eps_i*chi(i+j-1))/2, exact over 2^l. The optional jmax widens
 * the window; with jmax = p-l (full scan range) the value equals the scan
 * count whenever no chi factor hits 0, i.e. whenever j+i-1 stays below p.
 */
inline Dyadic count_pattern_formula(const ResidueTable& t, const PatternWord& w, i64 jmax = -1) {
    int l = w.length();
    check_word_length(t, l);
    if (jmax < 0) jmax = t.p - l - 1;
    if (jmax > t.p - l) throw std::invalid_argument("count_pattern_formula: window exceeds scan range");
    i64 total = 0;  // numerator over 2^l
    for (i64 j = 1; j <= jmax; ++j) {
        i64 prod = 1;
        for (int i = 0; i < l; ++i) {
            prod *= 1 + w.eps(i) * t.at(j + i);  // argument i+j-1 with 1-based i is j+i here
            if (prod == 0) break;
        }
        total += prod;
    }
    return Dyadic(total, l);
}

/*
 * Boundary correction for the all-R word:
 *   c_p(l) = n_scan(R^l) - 2^-l * (p + sum over nonempty T of N_T),
 * where N_T = sum_x chi(prod_{t in T} (x+t-1)). The inner sum collapses to
 * one pass: sum_x prod_{i=1..l} (1 + chi(x+i-1)) = p + sum_{T nonempty} N_T.
 * The correction is minus a sum of l products in [-1,1], so it lies in
 * [-l, 0] and is an integer multiple of 2^-l.
 */
struct BoundaryCorrection {
    i64 p;
    int l;
    Dyadic c;
};

inline BoundaryCorrection boundary_correction(const ResidueTable& t, int l) {
    check_word_length(t, l);
    i64 full = 0;
    for (i64 x = 0; x < t.p; ++x) {
        i64 prod = 1;
        for (int i = 0; i < l; ++i) {
            i64 arg = x + i;
            if (arg >= t.p) arg -= t.p;
            prod *= 1 + t.at(arg);
            if (prod == 0) break;
        }
        full += prod;
    }
    Dyadic c = Dyadic(count_pattern_scan(t, PatternWord::parse(std::string(size_t(l), 'R')))) - Dyadic(full, l);
    BoundaryCorrection out{t.p, l, c};
    if (Dyadic(-l) <= out.c && out.c <= Dyadic(0)) return out;
    throw std::logic_error("boundary_correction: value escaped [-l, 0]");
}

/*
 * Exact pair frequencies (order RR, RN, NR, NN):
 *   p = 4k+1: n(RR) = (p-5)/4 and the other three equal (p-1)/4;
 *   p = 4k+3: n(RN) = (p+1)/4 and the other three equal (p-3)/4.
 */
inline std::array<i64, 4> aladov_counts(i64 p) {
    if (p < 3 || p % 2 == 0) throw std::invalid_argument("aladov_counts: need an odd prime >= 3");
    if (p % 4 == 1) {
        return {(p - 5) / 4, (p - 1) / 4, (p - 1) / 4, (p - 1) / 4};
    }
    return {(p - 3) / 4, (p + 1) / 4, (p - 3) / 4, (p - 3) / 4};
}

/*
 * Closed-form triple frequencies over 2^3, indexed by bit pattern
 * (RRR=7, RRN=6, RNR=5, RNN=4, NRR=3, NRN=2, NNR=1, NNN=0).
 *
 * p = 3 mod 4, with e = chi(2):
 *   RRR, NNN, NRR, NNR -> (p-3-2e)/8; RRN, NRN, RNR, RNN -> (p-1+2e)/8.
 * p = 1 mod 4, with e = chi(2) and a the Jacobsthal sum:
 *   RRN, NRR, RNR, NNN -> (p-5-a)/8; RNN, NNR -> (p+1+a)/8;
 *   RRR -> (p-11-4e+a)/8; NRN -> (p-3+4e+a)/8.
 * The closed forms track the scan counts to within 1.
 */
inline std::array<Dyadic, 8> jacobsthal_l3_counts(i64 p, int chi2, i64 jacobsthal_sum) {
    if (p < 5) throw std::invalid_argument("jacobsthal_l3_counts: need p >= 5");
    std::array<Dyadic, 8> n{};
    i64 e = chi2;
    if (p % 4 == 3) {
        Dyadic lo(p - 3 - 2 * e, 3), hi(p - 1 + 2 * e, 3);
        n[7] = lo; n[0] = lo; n[3] = lo; n[1] = lo;
        n[6] = hi; n[2] = hi; n[5] = hi; n[4] = hi;
    } else {
        i64 a = jacobsthal_sum;
        Dyadic base(p - 5 - a, 3), cross(p + 1 + a, 3);
        n[6] = base; n[3] = base; n[5] = base; n[0] = base;
        n[4] = cross; n[1] = cross;
        n[7] = Dyadic(p - 11 - 4 * e + a, 3);
        n[2] = Dyadic(p - 3 + 4 * e + a, 3);
    }
    return n;
}

/*
 * Weil-type bound |n_p(S) - p/2^l| < (l-1)*sqrt(p) + l/2, checked in exact
 * integer arithmetic: with A = |2^l n - p| and B = A - l*2^(l-1),
 * the bound holds iff B < 0 or B^2 < 4^l (l-1)^2 p. For l = 1 the statement
 * degenerates to |n - p/2| <= 1/2, i.e. A <= 1 (non-strict).
 */
struct WeilCheckRow {
    PatternWord word;
    i64 scan;
    bool ok;
    double margin;  // bound minus deviation, in units of n
};

struct WeilReport {
    i64 p;
    int l;
    bool all_ok;
    std::vector<WeilCheckRow> rows;
};

inline bool weil_bound_holds(i64 p, int l, i64 n) {
    i64 A = (i64(1) << l) * n - p;
    if (A < 0) A = -A;
    if (l == 1) return A <= 1;
    i64 B = A - i64(l) * (i64(1) << (l - 1));
    if (B < 0) return true;
    i64 rhs_sq = (i64(1) << (2 * l)) * i64(l - 1) * i64(l - 1) * p;
    return B * B < rhs_sq;
}

inline WeilReport weil_pattern_bound_check(const ResidueTable& t, int l) {
    check_word_length(t, l);
    auto counts = count_all_patterns_scan(t, l);
    WeilReport rep{t.p, l, true, {}};
    double bound = (l - 1) * std::sqrt(double(t.p)) + l / 2.0;
    for (int ix = 0; ix < (1 << l); ++ix) {
        i64 n = counts[size_t(ix)];
        bool ok = weil_bound_holds(t.p, l, n);
        double dev = std::abs(double(n) - double(t.p) / double(i64(1) << l));
        rep.rows.push_back({PatternWord::from_bits(ix, l), n, ok, bound - dev});
        if (!ok) rep.all_ok = false;
    }
    return rep;
}

}  // namespace qrp
