#pragma once

/*
 * Identity suites behind `verify`: each runs one family of checks over a
 * prime range and reports counterexample primes. Fault injection (test-only)
 * perturbs designated inputs so the exit-code contract can be exercised:
 *   clamp-jacobsthal: J -> sign(J)*2 inside the goncharova suite, which
 *     fails exactly at the primes with J != +-2;
 *   negate-trace: negates the E_4 trace inside l4-identity and the last
 *     decomposition term inside trace-decomposition.
 */

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "curves.hpp"
#include "ffield.hpp"
#include "graphs.hpp"
#include "parallel.hpp"
#include "patterns.hpp"
#include "stats.hpp"
#include "surfaces.hpp"

namespace qrp {

struct SuiteFailure {
    std::string identity;
    i64 p;
    std::string detail;
};

struct SuiteReport {
    std::string name;
    i64 lo = 0, hi = 0;
    i64 primes_checked = 0;
    std::vector<SuiteFailure> failures;

    bool pass() const { return failures.empty(); }
};

struct FaultConfig {
    bool clamp_jacobsthal = false;
    bool negate_trace = false;
};

namespace detail {

template <typename Fn>
SuiteReport run_over_primes(std::string name, i64 lo, i64 hi, int threads, Fn per_prime) {
    SuiteReport rep;
    rep.name = std::move(name);
    rep.lo = lo;
    rep.hi = hi;
    auto primes = primes_in_range(lo, hi);
    std::vector<std::vector<SuiteFailure>> slots(primes.size());
    std::vector<char> counted(primes.size(), 0);
    parallel_for_index(primes.size(), threads, [&](size_t i) {
        counted[i] = per_prime(primes[i], slots[i]) ? 1 : 0;
    });
    for (size_t i = 0; i < primes.size(); ++i) {
        if (counted[i]) ++rep.primes_checked;
        for (auto& f : slots[i]) rep.failures.push_back(std::move(f));
    }
    return rep;
}

}  // namespace detail

// Exact pair frequencies against the scan, every odd prime in range.
inline SuiteReport run_suite_aladov(i64 lo, i64 hi, int threads) {
    static const char* kWords[4] = {"NN", "NR", "RN", "RR"};
    return detail::run_over_primes("aladov", lo, hi, threads, [](i64 p, std::vector<SuiteFailure>& out) {
        if (p < 5) return false;  // length-2 scan needs p - 2 >= 2
        auto t = ResidueTable::build(p);
        auto scans = count_all_patterns_scan(t, 2);
        auto closed = aladov_counts(p);
        // closed-form order RR, RN, NR, NN; scan index bit order RR=3, RN=2, NR=1, NN=0
        std::array<i64, 4> expect{closed[3], closed[2], closed[1], closed[0]};
        for (int ix = 0; ix < 4; ++ix) {
            if (scans[size_t(ix)] != expect[size_t(ix)]) {
                out.push_back({std::string("aladov-") + kWords[ix], p,
                               "scan " + std::to_string(scans[size_t(ix)]) + " != closed " +
                                   std::to_string(expect[size_t(ix)])});
            }
        }
        return true;
    });
}

// Closed-form triple frequencies track the scan within 1.
inline SuiteReport run_suite_jacobsthal_l3(i64 lo, i64 hi, int threads) {
    return detail::run_over_primes("jacobsthal-l3", lo, hi, threads, [](i64 p, std::vector<SuiteFailure>& out) {
        if (p < 7) return false;
        auto t = ResidueTable::build(p);
        i64 J = 0;
        if (p % 4 == 1) J = jacobsthal(t).J;
        auto closed = jacobsthal_l3_counts(p, t.at(2), J);
        auto scans = count_all_patterns_scan(t, 3);
        for (int ix = 0; ix < 8; ++ix) {
            Dyadic diff = Dyadic(scans[size_t(ix)]) - closed[size_t(ix)];
            if (!(diff.abs() <= Dyadic(1))) {
                out.push_back({"jacobsthal-l3-" + PatternWord::from_bits(ix, 3).letters, p,
                               "scan " + std::to_string(scans[size_t(ix)]) + " vs closed " +
                                   closed[size_t(ix)].to_decimal_string()});
            }
        }
        return true;
    });
}

// Weil-type deviation bound for every word of lengths 2..6.
inline SuiteReport run_suite_weil_bound(i64 lo, i64 hi, int threads) {
    return detail::run_over_primes("weil-bound", lo, hi, threads, [](i64 p, std::vector<SuiteFailure>& out) {
        if (p < 5) return false;
        auto t = ResidueTable::build(p);
        for (int l = 2; l <= 6 && l <= p - 2; ++l) {
            auto rep = weil_pattern_bound_check(t, l);
            if (!rep.all_ok) {
                for (const auto& row : rep.rows) {
                    if (!row.ok) {
                        out.push_back({"weil-bound-" + row.word.letters, p, "count " + std::to_string(row.scan)});
                    }
                }
            }
        }
        return true;
    });
}

inline SuiteReport run_suite_trace_decomposition(i64 lo, i64 hi, int threads, FaultConfig fault = {}) {
    return detail::run_over_primes("trace-decomposition", lo, hi, threads,
                                   [fault](i64 p, std::vector<SuiteFailure>& out) {
        if (p <= 10) return false;
        auto t = ResidueTable::build(p);
        auto r4 = trace_decomposition_check(t, 4, true, fault.negate_trace ? 1 : 0);
        if (!r4.ok_p) {
            out.push_back({"trace-decomposition-l4-Fp", p,
                           std::to_string(r4.lhs_p) + " != " + std::to_string(r4.rhs_p)});
        }
        if (!r4.ok_p2) {
            out.push_back({"trace-decomposition-l4-Fp2", p,
                           std::to_string(r4.lhs_p2) + " != " + std::to_string(r4.rhs_p2)});
        }
        if (p > 10 + 2) {
            auto r5 = trace_decomposition_check(t, 5, false, fault.negate_trace ? 1 : 0);
            if (!r5.ok_p) {
                out.push_back({"trace-decomposition-l5-Fp", p,
                               std::to_string(r5.lhs_p) + " != " + std::to_string(r5.rhs_p)});
            }
        }
        return true;
    });
}

inline SuiteReport run_suite_l4_identity(i64 lo, i64 hi, int threads, FaultConfig fault = {}) {
    return detail::run_over_primes("l4-identity", lo, hi, threads, [fault](i64 p, std::vector<SuiteFailure>& out) {
        if (p < 7) return false;
        auto t = ResidueTable::build(p);
        auto traces = l4_traces(t);
        if (fault.negate_trace) traces[4] = -traces[4];
        i64 n = count_R_run(t, 4);
        Dyadic c = l4_correction_from(p, n, traces);
        if (!(c.abs() <= Dyadic(5))) {
            out.push_back({"l4-identity-bound", p, "c = " + c.to_decimal_string()});
        }
        if (p % 4 == 3) {
            if (traces[0] != 0) out.push_back({"l4-identity-supersingular-a0", p, std::to_string(traces[0])});
            if (traces[1] + traces[2] != 0) {
                out.push_back({"l4-identity-twist-sum", p,
                               std::to_string(traces[1]) + " + " + std::to_string(traces[2])});
            }
        }
        return true;
    });
}

inline SuiteReport run_suite_lemma_chain(i64 lo, i64 hi, int threads) {
    return detail::run_over_primes("lemma-chain", lo, hi, threads, [](i64 p, std::vector<SuiteFailure>& out) {
        if (p < 5) return false;
        auto t = ResidueTable::build(p);
        auto rep = lemma_chain_check(t);
        if (!rep.s_eq_m_minus1) out.push_back({"surface-S-eq-M-minus-1", p, ""});
        if (!rep.m_eq_np_form) out.push_back({"surface-M-trace-form", p, ""});
        if (!rep.torus_shift_ok) out.push_back({"surface-torus-shift", p, ""});
        if (!rep.xp0_closed_ok) out.push_back({"surface-Xp0-closed-form", p, ""});
        if (!rep.s_eq_j_form) out.push_back({"surface-S-jacobsthal-form", p, ""});
        if (!rep.m_supersingular) out.push_back({"surface-M-supersingular", p, ""});
        if (rep.rec.M != rep.rec.Xp_affine + p) out.push_back({"surface-X-Xprime-link", p, ""});
        if (p % 4 == 1) {
            auto tw = quartic_twist_counts(t, e0_trace_fast(t));
            if (!tw.boundary_table_ok) out.push_back({"twist-boundary-table", p, ""});
            if (!tw.trace_signs_ok) out.push_back({"twist-trace-signs", p, ""});
            if (!tw.trace_square_ok) out.push_back({"twist-trace-square", p, ""});
            auto eq8 = eq8_check(t);
            if (!eq8.ok) {
                out.push_back({"eq8", p,
                               std::to_string(eq8.lhs) + " != " + std::to_string(eq8.rhs_times4) + "/4"});
            }
        }
        return true;
    });
}

inline SuiteReport run_suite_goncharova(i64 lo, i64 hi, int threads, FaultConfig fault = {}) {
    return detail::run_over_primes("goncharova", lo, hi, threads, [fault](i64 p, std::vector<SuiteFailure>& out) {
        if (p % 4 != 1 || p < 13) return false;
        auto t = ResidueTable::build(p);
        i64 J = jacobsthal(t).J;
        if (fault.clamp_jacobsthal) J = J < 0 ? -2 : 2;
        i64 cliques = clique_count_paley(t, 4);
        if (cliques % p != 0) {
            out.push_back({"goncharova-clique-divisibility", p, std::to_string(cliques)});
            return true;
        }
        i64 n_k4_paley = cliques / p;
        i64 n_k4_gamma = gamma_counts(t).counts[10];
        i64 formula = -1;
        try {
            formula = goncharova_K4(goncharova_inputs(p, J));
        } catch (const std::domain_error& e) {
            out.push_back({"goncharova-integrality", p, e.what()});
            return true;
        }
        if (formula != n_k4_paley) {
            out.push_back({"goncharova-formula-vs-clique", p,
                           std::to_string(formula) + " != " + std::to_string(n_k4_paley)});
        }
        if (n_k4_gamma != n_k4_paley) {
            out.push_back({"goncharova-gamma-vs-clique", p,
                           std::to_string(n_k4_gamma) + " != " + std::to_string(n_k4_paley)});
        }
        return true;
    });
}

inline SuiteReport run_suite_eqK(i64 lo, i64 hi, int threads) {
    return detail::run_over_primes("eqK", lo, hi, threads, [](i64 p, std::vector<SuiteFailure>& out) {
        if (p % 4 != 1 || p < 13) return false;
        auto t = ResidueTable::build(p);
        for (int l : {3, 4}) {
            auto rep = Y0_relation_check(t, l);
            if (!rep.ok) {
                out.push_back({"eqK-l" + std::to_string(l), p,
                               std::to_string(rep.lhs) + " != " + std::to_string(rep.rhs)});
            }
        }
        return true;
    });
}

// Support containment of the n_p(R^4) statistic with the 5/sqrt(p) slack.
inline SuiteReport run_suite_stats_support(i64 lo, i64 hi, int threads) {
    return detail::run_over_primes("stats-support", lo, hi, threads, [](i64 p, std::vector<SuiteFailure>& out) {
        if (p < 7) return false;
        auto t = ResidueTable::build(p);
        i64 n = count_R_run(t, 4);
        double sp = std::sqrt(double(p));
        double stat = double(n) / sp - sp / 16.0;
        double bound = (p % 4 == 1 ? 5.0 / 8.0 : 1.0 / 8.0) + 5.0 / sp;
        if (std::abs(stat) > bound) {
            out.push_back({"stats-support-class" + std::to_string(p % 4), p, std::to_string(stat)});
        }
        return true;
    });
}

struct SuiteSpec {
    const char* name;
    i64 default_lo;
    i64 default_hi;
    bool capped;  // p <= 500 unless --force
};

inline const std::vector<SuiteSpec>& suite_catalog() {
    static const std::vector<SuiteSpec> catalog{
        {"aladov", 3, 2000, false},
        {"jacobsthal-l3", 7, 2000, false},
        {"weil-bound", 5, 2000, false},
        {"trace-decomposition", 11, 200, true},
        {"l4-identity", 7, 2000, false},
        {"lemma-chain", 5, 300, true},
        {"goncharova", 13, 500, true},
        {"eqK", 13, 300, true},
        {"stats-support", 7, 10000, false},
    };
    return catalog;
}

inline SuiteReport run_suite_by_name(const std::string& name, i64 lo, i64 hi, int threads, FaultConfig fault) {
    if (name == "aladov") return run_suite_aladov(lo, hi, threads);
    if (name == "jacobsthal-l3") return run_suite_jacobsthal_l3(lo, hi, threads);
    if (name == "weil-bound") return run_suite_weil_bound(lo, hi, threads);
    if (name == "trace-decomposition") return run_suite_trace_decomposition(lo, hi, threads, fault);
    if (name == "l4-identity") return run_suite_l4_identity(lo, hi, threads, fault);
    if (name == "lemma-chain") return run_suite_lemma_chain(lo, hi, threads);
    if (name == "goncharova") return run_suite_goncharova(lo, hi, threads, fault);
    if (name == "eqK") return run_suite_eqK(lo, hi, threads);
    if (name == "stats-support") return run_suite_stats_support(lo, hi, threads);
    throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace qrp
