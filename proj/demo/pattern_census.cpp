/*
 * Residue-word census for one prime.
 *
 * W_p is the string over {R, N} recording quadratic residuosity of
 * 1, 2, ..., p-2 mod p. Window counts n_p(w):
 *
 *   l = 2: exact closed forms in p and chi(-1) (four words).
 *   l = 3: closed forms in p mod 8 and the Jacobsthal-type sum J,
 *          exact up to an error of at most 1.
 *   l = 4: n_p(RRRR) = (p - 2a_0 - 2a_1 - a_4)/16 + c_p(4) where the a_i
 *          are curve traces and the correction c_p(4) lies in [-39/16, 0].
 *
 * Usage: pattern_census [p]   (default p = 97)
 */

#include <cstdio>
#include <cstdlib>
#include <string>

#include "qrp/curves.hpp"
#include "qrp/patterns.hpp"

using namespace qrp;

int main(int argc, char** argv) {
    i64 p = argc > 1 ? std::atoll(argv[1]) : 97;
    ResidueTable t;
    try {
        t = ResidueTable::build(p);
        check_word_length(t, 4);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "pattern_census: %s\n", e.what());
        return 2;
    }

    std::string word = residue_word(t);
    std::printf("p = %lld  (p mod 8 = %lld)\n", (long long)p, (long long)(p % 8));
    if (word.size() <= 72) {
        std::printf("W_p = %s\n\n", word.c_str());
    } else {
        std::printf("W_p = %.72s... (%zu letters)\n\n", word.c_str(), word.size());
    }

    bool all_match = true;

    std::printf("%-6s %8s %10s %6s\n", "word", "scan", "closed", "diff");
    auto a2 = aladov_counts(p);  // RR, RN, NR, NN
    const char* w2[4] = {"RR", "RN", "NR", "NN"};
    for (int i = 0; i < 4; ++i) {
        i64 scan = count_pattern_scan(t, PatternWord::parse(w2[i]));
        i64 diff = scan - a2[size_t(i)];
        std::printf("%-6s %8lld %10lld %6lld\n", w2[i], (long long)scan, (long long)a2[size_t(i)],
                    (long long)diff);
        if (diff != 0) all_match = false;
    }

    i64 J = p % 4 == 1 ? jacobsthal(t).J : 0;
    auto a3 = jacobsthal_l3_counts(p, t.at(2), J);
    const char* w3[8] = {"RRR", "RRN", "RNR", "RNN", "NRR", "NRN", "NNR", "NNN"};
    for (int i = 0; i < 8; ++i) {
        PatternWord w = PatternWord::parse(w3[i]);
        i64 scan = count_pattern_scan(t, w);
        Dyadic closed = a3[size_t(w.bit_index())];
        Dyadic diff = Dyadic(scan) - closed;
        std::printf("%-6s %8lld %10s %6s\n", w3[i], (long long)scan,
                    closed.to_decimal_string().c_str(), diff.to_decimal_string().c_str());
        if (!(diff.abs() <= Dyadic(1))) all_match = false;
    }

    auto res = l4_trace_identity(t);
    std::printf("\nl = 4: n_p(RRRR) = %lld, traces a = {%lld, %lld, %lld, %lld, %lld}\n",
                (long long)res.n_r4, (long long)res.traces[0], (long long)res.traces[1],
                (long long)res.traces[2], (long long)res.traces[3], (long long)res.traces[4]);
    std::printf("trace-identity correction c_p(4) = %s\n", res.c.to_decimal_string().c_str());
    for (int l = 2; l <= 4; ++l) {
        auto bc = boundary_correction(t, l);
        std::printf("boundary correction, l = %d: %-8s  (scan count minus full sum / 2^%d)\n", l,
                    bc.c.to_decimal_string().c_str(), l);
        if (Dyadic(0) < bc.c || bc.c < Dyadic(-l)) all_match = false;
    }
    if (!res.within_bound || !res.class3_traces_ok) all_match = false;

    std::printf("\n%s pair counts exact, triples within 1, |c_p(4)| <= 5\n",
                all_match ? "[OK]" : "FAIL");
    return all_match ? 0 : 1;
}
