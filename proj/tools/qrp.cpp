/*
 * qrp: command-line front end for the residue-pattern toolkit.
 *
 * Subcommands: patterns, curves, jacobsthal, surface, graphs, stats, verify.
 * Exit codes: 0 success, 1 identity violation (a machine-readable failure
 * report naming the identity and the prime is emitted), 2 usage error.
 * CSV output always starts with a header row and uses LF line endings; JSON
 * output is a single document {command, range, rows, failures, ...}.
 * Output is deterministic: rows are ordered by (p, secondary key) and the
 * thread count never changes the bytes emitted.
 */

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qrp/curves.hpp"
#include "qrp/exact.hpp"
#include "qrp/ffield.hpp"
#include "qrp/graphs.hpp"
#include "qrp/interpolate.hpp"
#include "qrp/io.hpp"
#include "qrp/parallel.hpp"
#include "qrp/patterns.hpp"
#include "qrp/stats.hpp"
#include "qrp/surfaces.hpp"
#include "qrp/verify.hpp"

using json = nlohmann::ordered_json;
using namespace qrp;

namespace {

constexpr i64 kHeavyRangeCap = 500;  // surface/graphs work is O(p^2)..O(p^3) per prime

struct CommonOpts {
    std::string range;
    std::string format = "csv";
    std::string out;
    std::string klass = "all";
    int threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_class = true) {
    cmd->add_option("--range", o.range, "prime range lo..hi (inclusive)");
    cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", o.out, "write output to PATH instead of stdout");
    cmd->add_option("--threads", o.threads, "worker threads (default: QRP_THREADS or hardware)");
    if (with_class) {
        cmd->add_option("--class", o.klass, "restrict to a residue class of p mod 4")
            ->check(CLI::IsMember({"all", "1", "3"}));
    }
}

std::pair<i64, i64> parse_range(const std::string& s, i64 def_lo, i64 def_hi) {
    if (s.empty()) return {def_lo, def_hi};
    auto pos = s.find("..");
    if (pos == std::string::npos) {
        throw CLI::ValidationError("--range", "expected lo..hi, got '" + s + "'");
    }
    try {
        i64 lo = std::stoll(s.substr(0, pos));
        i64 hi = std::stoll(s.substr(pos + 2));
        if (lo < 0 || hi < lo) throw std::invalid_argument("bad bounds");
        return {lo, hi};
    } catch (const std::exception&) {
        throw CLI::ValidationError("--range", "expected lo..hi with 0 <= lo <= hi, got '" + s + "'");
    }
}

int threads_of(const CommonOpts& o) { return o.threads > 0 ? o.threads : default_thread_count(); }

bool class_keeps(const std::string& klass, i64 p) {
    if (klass == "1") return p % 4 == 1;
    if (klass == "3") return p % 4 == 3;
    return true;
}

struct CommandOutput {
    CsvTable csv;
    json rows = json::array();
    std::vector<SuiteFailure> failures;
};

int emit(const std::string& command, const CommonOpts& o, i64 lo, i64 hi, CommandOutput& out,
         json extra = json::object()) {
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!o.out.empty()) {
        file.open(o.out, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot open " << o.out << " for writing\n";
            return 2;
        }
        os = &file;
    }
    if (o.format == "csv") {
        out.csv.write(*os);
        if (!out.failures.empty()) {
            std::cerr << "identity,p,detail\n";
            for (const auto& f : out.failures) {
                std::cerr << f.identity << ',' << f.p << ',' << f.detail << '\n';
            }
        }
    } else {
        json doc;
        doc["command"] = command;
        doc["range"] = {{"lo", lo}, {"hi", hi}};
        for (auto& [k, v] : extra.items()) doc[k] = v;
        doc["rows"] = out.rows;
        json fails = json::array();
        for (const auto& f : out.failures) {
            fails.push_back({{"identity", f.identity}, {"p", f.p}, {"detail", f.detail}});
        }
        doc["failures"] = fails;
        *os << doc.dump(2) << '\n';
    }
    return out.failures.empty() ? 0 : 1;
}

void warn_if_empty(const std::vector<i64>& primes) {
    if (primes.empty()) std::cerr << "warning: no primes in range, output is vacuous\n";
}

// ------------------------------------------------------------------ patterns

int cmd_patterns(const CommonOpts& o, const std::string& word_str) {
    auto [lo, hi] = parse_range(o.range, 3, 1000);
    PatternWord word = PatternWord::parse(word_str);  // throws invalid_argument on bad letters
    auto primes = primes_in_range(lo, hi);
    warn_if_empty(primes);

    struct Row {
        i64 p, scan;
        Dyadic formula, diff;
        bool used;
    };
    std::vector<Row> slots(primes.size());
    std::vector<SuiteFailure> fail_slots(primes.size(), SuiteFailure{"", 0, ""});
    parallel_for_index(primes.size(), threads_of(o), [&](size_t i) {
        i64 p = primes[i];
        slots[i].used = false;
        if (p - 2 < i64(word.length()) || !class_keeps(o.klass, p)) return;
        auto t = ResidueTable::build(p);
        i64 scan = count_pattern_scan(t, word);
        Dyadic formula = count_pattern_formula(t, word);
        Dyadic diff = Dyadic(scan) - formula;
        slots[i] = {p, scan, formula, diff, true};
        if (!(diff.abs() <= Dyadic(1))) {
            fail_slots[i] = {"pattern-formula-deviation", p, "diff " + diff.to_decimal_string()};
        }
    });

    CommandOutput out;
    out.csv.header = {"p", "word", "scan", "formula_num", "formula_den", "diff"};
    for (size_t i = 0; i < primes.size(); ++i) {
        if (!slots[i].used) continue;
        const auto& r = slots[i];
        out.csv.rows.push_back({std::to_string(r.p), word.letters, std::to_string(r.scan),
                                std::to_string(r.formula.num), std::to_string(r.formula.den()),
                                r.diff.to_decimal_string()});
        out.rows.push_back({{"p", r.p},
                            {"word", word.letters},
                            {"scan", r.scan},
                            {"formula", {{"num", r.formula.num}, {"den", r.formula.den()}}},
                            {"diff",
                             {{"num", r.diff.num}, {"den", r.diff.den()}, {"decimal", r.diff.to_decimal_string()}}}});
        if (!fail_slots[i].identity.empty()) out.failures.push_back(fail_slots[i]);
    }
    return emit("patterns", o, lo, hi, out, {{"word", word.letters}});
}

// -------------------------------------------------------------------- curves

int cmd_curves(const CommonOpts& o, int cl) {
    auto [lo, hi] = parse_range(o.range, 5, 200);
    auto primes = primes_in_range(lo, hi);
    warn_if_empty(primes);

    struct Row {
        std::string label;
        i64 N, trace, genus;
        int inf_pts;
    };
    std::vector<std::vector<Row>> slots(primes.size());
    std::vector<SuiteFailure> fail_slots(primes.size(), SuiteFailure{"", 0, ""});
    parallel_for_index(primes.size(), threads_of(o), [&](size_t i) {
        i64 p = primes[i];
        if (p < 5 || !class_keeps(o.klass, p)) return;
        try {
            for (int k = 0; k <= 4; ++k) {
                auto t = ResidueTable::build(p);
                auto rec = frobenius_trace(standard_curve(k, p), t);
                slots[i].push_back({rec.label, rec.affine + rec.inf_pts, rec.trace, rec.genus, rec.inf_pts});
            }
            if (cl >= 3 && p > 2 * cl) {
                auto t = ResidueTable::build(p);
                auto c = count_Cl(t, cl, false);
                slots[i].push_back(
                    {"C" + std::to_string(cl), c.projective_p, p + 1 - c.projective_p, c.genus, 0});
            }
        } catch (const std::exception& e) {
            slots[i].clear();
            fail_slots[i] = {"curve-count", p, e.what()};
        }
    });

    CommandOutput out;
    out.csv.header = {"p", "label", "N", "inf_pts", "trace", "genus"};
    for (size_t i = 0; i < primes.size(); ++i) {
        for (const auto& r : slots[i]) {
            out.csv.rows.push_back({std::to_string(primes[i]), r.label, std::to_string(r.N),
                                    std::to_string(r.inf_pts), std::to_string(r.trace), std::to_string(r.genus)});
            out.rows.push_back({{"p", primes[i]},
                                {"label", r.label},
                                {"N", r.N},
                                {"inf_pts", r.inf_pts},
                                {"trace", r.trace},
                                {"genus", r.genus}});
        }
        if (!fail_slots[i].identity.empty()) out.failures.push_back(fail_slots[i]);
    }
    return emit("curves", o, lo, hi, out);
}

// ---------------------------------------------------------------- jacobsthal

int cmd_jacobsthal(const CommonOpts& o) {
    if (o.klass == "3") {
        std::cerr << "error: the Jacobsthal pair (J, b) is defined for p = 1 mod 4 only\n";
        return 2;
    }
    auto [lo, hi] = parse_range(o.range, 5, 1000);
    auto primes = primes_in_range(lo, hi);
    warn_if_empty(primes);

    struct Row {
        i64 p, J, b, check;
        bool used;
    };
    std::vector<Row> slots(primes.size());
    std::vector<SuiteFailure> fail_slots(primes.size(), SuiteFailure{"", 0, ""});
    parallel_for_index(primes.size(), threads_of(o), [&](size_t i) {
        i64 p = primes[i];
        slots[i].used = false;
        if (p % 4 != 1) return;
        auto t = ResidueTable::build(p);
        try {
            auto jb = jacobsthal(t);
            slots[i] = {p, jb.J, jb.b, jb.J * jb.J + jb.b * jb.b - 4 * p, true};
        } catch (const std::exception& e) {
            fail_slots[i] = {"jacobsthal-four-square", p, e.what()};
        }
    });

    CommandOutput out;
    out.csv.header = {"p", "J", "b", "check"};
    for (size_t i = 0; i < primes.size(); ++i) {
        if (slots[i].used) {
            const auto& r = slots[i];
            out.csv.rows.push_back(
                {std::to_string(r.p), std::to_string(r.J), std::to_string(r.b), std::to_string(r.check)});
            out.rows.push_back({{"p", r.p}, {"J", r.J}, {"b", r.b}, {"check", r.check}});
        }
        if (!fail_slots[i].identity.empty()) out.failures.push_back(fail_slots[i]);
    }
    return emit("jacobsthal", o, lo, hi, out);
}

// ------------------------------------------------------------------- surface

int cmd_surface(const CommonOpts& o, bool force) {
    auto [lo, hi] = parse_range(o.range, 5, 100);
    if (hi > kHeavyRangeCap && !force) {
        std::cerr << "error: surface counts are O(p^2) per prime; range above " << kHeavyRangeCap
                  << " needs --force\n";
        return 2;
    }
    auto primes = primes_in_range(lo, hi);
    warn_if_empty(primes);

    std::vector<SurfaceCountRecord> slots(primes.size());
    std::vector<char> used(primes.size(), 0);
    parallel_for_index(primes.size(), threads_of(o), [&](size_t i) {
        i64 p = primes[i];
        if (p < 5 || !class_keeps(o.klass, p)) return;
        auto t = ResidueTable::build(p);
        slots[i] = surface_count_record(t);
        used[i] = 1;
    });

    CommandOutput out;
    out.csv.header = {"p", "S_proj", "S_torus", "M_p", "Xp", "Xp0", "t11", "td1", "t1d", "tdd", "N_p"};
    for (size_t i = 0; i < primes.size(); ++i) {
        if (!used[i]) continue;
        const auto& r = slots[i];
        out.csv.rows.push_back({std::to_string(r.p), std::to_string(r.S_proj), std::to_string(r.S_torus),
                                std::to_string(r.M), std::to_string(r.Xp_affine), std::to_string(r.Xp0),
                                std::to_string(r.twist_reduced[0]), std::to_string(r.twist_reduced[1]),
                                std::to_string(r.twist_reduced[2]), std::to_string(r.twist_reduced[3]),
                                std::to_string(r.N_e0)});
        out.rows.push_back({{"p", r.p},
                            {"S_proj", r.S_proj},
                            {"S_torus", r.S_torus},
                            {"M_p", r.M},
                            {"Xp", r.Xp_affine},
                            {"Xp0", r.Xp0},
                            {"twists", {r.twist_reduced[0], r.twist_reduced[1], r.twist_reduced[2],
                                        r.twist_reduced[3]}},
                            {"N_p", r.N_e0}});
    }
    return emit("surface", o, lo, hi, out);
}

// -------------------------------------------------------------------- graphs

std::vector<i64> class1_primes_from(i64 start, int count) {
    std::vector<i64> out;
    for (i64 p = start; int(out.size()) < count; ++p) {
        if (p % 4 != 1) continue;
        bool prime = p > 1;
        for (i64 d = 2; d * d <= p && prime; ++d) prime = p % d != 0;
        if (prime) out.push_back(p);
    }
    return out;
}

int cmd_graphs(const CommonOpts& o, bool force, const std::string& poly_out) {
    if (o.klass == "3") {
        std::cerr << "error: residue graphs for p = 3 mod 4 are oriented; unsupported\n";
        return 2;
    }
    auto [lo, hi] = parse_range(o.range, 13, 100);
    if (hi > kHeavyRangeCap && !force) {
        std::cerr << "error: graph counts are O(p^3) per prime; range above " << kHeavyRangeCap
                  << " needs --force\n";
        return 2;
    }
    auto primes = primes_in_range(lo, hi);
    warn_if_empty(primes);

    std::vector<GraphCountRecord> slots(primes.size());
    std::vector<char> used(primes.size(), 0);
    std::vector<SuiteFailure> fail_slots(primes.size(), SuiteFailure{"", 0, ""});
    parallel_for_index(primes.size(), threads_of(o), [&](size_t i) {
        i64 p = primes[i];
        if (p % 4 != 1 || p < 5) return;
        auto t = ResidueTable::build(p);
        try {
            slots[i] = gamma_counts(t);
            used[i] = 1;
        } catch (const std::exception& e) {
            fail_slots[i] = {"graph-count-conservation", p, e.what()};
        }
    });

    CommandOutput out;
    const auto& tab = GraphClassTable::instance();
    out.csv.header = {"p", "class", "n", "nprime"};
    for (size_t i = 0; i < primes.size(); ++i) {
        if (used[i]) {
            for (int cid = 0; cid < 11; ++cid) {
                out.csv.rows.push_back({std::to_string(primes[i]), tab.name[size_t(cid)],
                                        std::to_string(slots[i].counts[size_t(cid)]),
                                        std::to_string(slots[i].prime_counts[size_t(cid)])});
                out.rows.push_back({{"p", primes[i]},
                                    {"class", tab.name[size_t(cid)]},
                                    {"n", slots[i].counts[size_t(cid)]},
                                    {"nprime", slots[i].prime_counts[size_t(cid)]}});
            }
        }
        if (!fail_slots[i].identity.empty()) out.failures.push_back(fail_slots[i]);
    }

    if (!poly_out.empty()) {
        auto train_p = class1_primes_from(13, 12);
        auto hold_p = class1_primes_from(train_p.back() + 1, 12);
        auto make_rows = [&](const std::vector<i64>& ps) {
            std::vector<std::array<i64, 2>> kd;
            std::vector<std::array<i64, 11>> counts;
            for (i64 p : ps) {
                auto t = ResidueTable::build(p);
                i64 J = jacobsthal(t).J;
                auto in = goncharova_inputs(p, J);
                kd.push_back({in.k, in.d});
                counts.push_back(gamma_counts(t).counts);
            }
            return std::pair(kd, counts);
        };
        auto [train_kd, train_counts] = make_rows(train_p);
        auto [hold_kd, hold_counts] = make_rows(hold_p);
        json classes = json::array();
        bool all_ok = true;
        for (int cid = 0; cid < 11; ++cid) {
            std::vector<InterpRow> train, hold;
            for (size_t i = 0; i < train_p.size(); ++i) {
                train.push_back({train_p[i], train_kd[i][0], train_kd[i][1], train_counts[i][size_t(cid)]});
            }
            for (size_t i = 0; i < hold_p.size(); ++i) {
                hold.push_back({hold_p[i], hold_kd[i][0], hold_kd[i][1], hold_counts[i][size_t(cid)]});
            }
            auto res = interpolate_gamma_polynomial(cid, train, hold);
            json c = {{"id", cid}, {"name", tab.name[size_t(cid)]}, {"ok", res.ok}};
            if (res.ok) {
                c["coeffs24"] = res.coeffs24;
            } else {
                c["failure"] = res.failure;
                all_ok = false;
                out.failures.push_back({"interpolation-" + std::string(tab.name[size_t(cid)]),
                                        hold_p.front(), res.failure});
            }
            classes.push_back(c);
        }
        json doc = {{"command", "graphs-polynomials"},
                    {"basis", kInterpBasisNames},
                    {"denominator", 24},
                    {"training", train_p},
                    {"held_out", hold_p},
                    {"classes", classes},
                    {"ok", all_ok}};
        std::ofstream pf(poly_out, std::ios::binary);
        if (!pf) {
            std::cerr << "error: cannot open " << poly_out << " for writing\n";
            return 2;
        }
        pf << doc.dump(2) << '\n';
    }
    return emit("graphs", o, lo, hi, out);
}

// --------------------------------------------------------------------- stats

ReferenceMeasure trace_reference(int curve_index, const std::string& klass) {
    if (curve_index == 0) {
        // CM curve: ordinary primes follow the arcsine law, the full sample
        // the half-atom mixture.
        return klass == "1" ? ReferenceMeasure::arcsine() : ReferenceMeasure::lambda_cm();
    }
    return ReferenceMeasure::semicircle();
}

const char* family_name(const ReferenceMeasure& m) {
    switch (m.family) {
        case ReferenceMeasure::Family::Semicircle: return "semicircle";
        case ReferenceMeasure::Family::Arcsine: return "arcsine";
        case ReferenceMeasure::Family::LambdaCM: return "lambda_cm";
        default: return "grid";
    }
}

int cmd_stats(const CommonOpts& o, const std::string& statistic, const std::string& curve, int bins) {
    auto [lo, hi] = parse_range(o.range, 0, 10000);
    if (lo > 5) std::cerr << "warning: stats always samples from the smallest valid prime; lo ignored\n";

    EmpiricalDistribution emp;
    ReferenceMeasure ref;
    json extra;
    if (statistic == "traces") {
        int curve_index = curve == "E0" ? 0 : curve == "E1" ? 1 : 4;
        int class_mod4 = o.klass == "all" ? 0 : o.klass == "1" ? 1 : 3;
        emp = collect_traces(curve_index, hi, class_mod4, threads_of(o));
        ref = trace_reference(curve_index, o.klass);
        extra = {{"statistic", "traces"}, {"curve", curve}, {"class", o.klass}};
    } else {  // r4
        if (o.klass == "all") {
            std::cerr << "error: --statistic r4 needs --class 1 or --class 3 (the two limit laws differ)\n";
            return 2;
        }
        auto rep = np_R4_statistic(hi, threads_of(o));
        bool one = o.klass == "1";
        emp = one ? rep.class1 : rep.class3;
        if (one) {
            auto conv = build_mu1();
            if (conv.coarse_grid_warning) std::cerr << "warning: convolution grid is coarse\n";
            ref = ReferenceMeasure::from_grid(conv.measure.grid);
        } else {
            ref = ReferenceMeasure::semicircle(8.0);
        }
        extra = {{"statistic", "r4"},
                 {"class", o.klass},
                 {"contained", one ? rep.class1_contained : rep.class3_contained},
                 {"stat_min", one ? rep.class1_min : rep.class3_min},
                 {"stat_max", one ? rep.class1_max : rep.class3_max}};
    }
    if (emp.values.empty()) {
        std::cerr << "error: no sample points below " << hi << " for this statistic/class\n";
        return 2;
    }
    double ks = ks_distance(emp, ref);
    extra["N"] = emp.values.size();
    extra["ks"] = ks;
    extra["reference"] = {{"family", family_name(ref)}, {"scale", ref.scale}};
    extra["support"] = {{"emp_min", emp.values.front()}, {"emp_max", emp.values.back()}};

    CommandOutput out;
    out.csv.header = {"bin_left", "bin_right", "empirical_mass", "reference_mass"};
    for (const auto& row : histogram_against(emp, ref, bins)) {
        out.csv.rows.push_back({format_double(row.bin_left), format_double(row.bin_right),
                                format_double(row.empirical_mass), format_double(row.reference_mass)});
        out.rows.push_back({{"bin_left", row.bin_left},
                            {"bin_right", row.bin_right},
                            {"empirical_mass", row.empirical_mass},
                            {"reference_mass", row.reference_mass}});
    }
    return emit("stats", o, lo, hi, out, extra);
}

// -------------------------------------------------------------------- verify

int cmd_verify(const CommonOpts& o, std::vector<std::string> suites, bool force, const std::string& fault_name) {
    FaultConfig fault;
    if (fault_name == "negate-trace") fault.negate_trace = true;
    if (fault_name == "clamp-jacobsthal") fault.clamp_jacobsthal = true;

    if (suites.empty()) {
        for (const auto& s : suite_catalog()) suites.push_back(s.name);
    }
    bool range_given = !o.range.empty();
    auto [lo_override, hi_override] = parse_range(o.range, 0, 0);

    std::vector<SuiteReport> reports;
    for (const auto& name : suites) {
        const SuiteSpec* spec = nullptr;
        for (const auto& s : suite_catalog()) {
            if (name == s.name) spec = &s;
        }
        if (!spec) {
            std::cerr << "error: unknown suite '" << name << "'\n";
            return 2;
        }
        i64 lo = range_given ? lo_override : spec->default_lo;
        i64 hi = range_given ? hi_override : spec->default_hi;
        if (spec->capped && hi > kHeavyRangeCap && !force) {
            std::cerr << "error: suite " << name << " is capped at p <= " << kHeavyRangeCap
                      << " by default; pass --force to exceed it\n";
            return 2;
        }
        reports.push_back(run_suite_by_name(name, lo, hi, threads_of(o), fault));
    }

    bool all_pass = true;
    i64 total_checked = 0;
    json jsuites = json::array();
    CsvTable csv;
    csv.header = {"suite", "identity", "p", "detail"};
    for (const auto& rep : reports) {
        total_checked += rep.primes_checked;
        all_pass = all_pass && rep.pass();
        json fails = json::array();
        for (const auto& f : rep.failures) {
            fails.push_back({{"identity", f.identity}, {"p", f.p}, {"detail", f.detail}});
            csv.rows.push_back({rep.name, f.identity, std::to_string(f.p), f.detail});
        }
        jsuites.push_back({{"name", rep.name},
                           {"lo", rep.lo},
                           {"hi", rep.hi},
                           {"primes_checked", rep.primes_checked},
                           {"pass", rep.pass()},
                           {"failures", fails}});
        std::cerr << "suite " << rep.name << ": " << (rep.pass() ? "PASS" : "FAIL") << " ("
                  << rep.primes_checked << " primes";
        if (!rep.pass()) {
            std::cerr << "; " << rep.failures.size() << " failures, first " << rep.failures.front().identity
                      << " at p=" << rep.failures.front().p;
        }
        std::cerr << ")\n";
    }
    if (total_checked == 0) std::cerr << "warning: no primes checked in range, verification is vacuous\n";

    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!o.out.empty()) {
        file.open(o.out, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot open " << o.out << " for writing\n";
            return 2;
        }
        os = &file;
    }
    if (o.format == "csv") {
        csv.write(*os);
    } else {
        json doc = {{"command", "verify"},
                    {"fault", fault_name.empty() ? json(nullptr) : json(fault_name)},
                    {"suites", jsuites},
                    {"pass", all_pass}};
        *os << doc.dump(2) << '\n';
    }
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"residue-pattern toolkit: pattern counts, curve traces, surface counts, graph census"};
    app.require_subcommand(1);

    CommonOpts po;
    std::string word;
    auto* patterns = app.add_subcommand("patterns", "word frequencies: sliding scan vs character-sum formula");
    add_common(patterns, po);
    patterns->add_option("--word", word, "pattern over the letters R, N (e.g. RRN)")->required();

    CommonOpts co;
    int cl = 0;
    auto* curves = app.add_subcommand("curves", "point counts and Frobenius traces of the standard curves");
    add_common(curves, co);
    curves->add_option("--cl", cl, "also count the pattern curve C_l for this l (3..6)")
        ->check(CLI::Range(3, 6));

    CommonOpts jo;
    auto* jac = app.add_subcommand("jacobsthal", "Jacobsthal pair (J, b) with J^2 + b^2 = 4p");
    add_common(jac, jo);

    CommonOpts so;
    bool s_force = false;
    auto* surface = app.add_subcommand("surface", "K3 surface and twist family point counts");
    add_common(surface, so);
    surface->add_flag("--force", s_force, "allow ranges above the p <= 500 cap");

    CommonOpts go;
    bool g_force = false;
    std::string poly_out;
    auto* graphs = app.add_subcommand("graphs", "4-vertex residue graph census (p = 1 mod 4)");
    add_common(graphs, go);
    graphs->add_flag("--force", g_force, "allow ranges above the p <= 500 cap");
    graphs->add_option("--polynomials", poly_out, "also fit the class-count polynomials; write JSON to PATH");

    CommonOpts to;
    std::string statistic, curve = "E0";
    int bins = 40;
    auto* stats = app.add_subcommand("stats", "empirical distributions vs reference measures");
    add_common(stats, to);
    stats->add_option("--statistic", statistic, "traces: normalized Frobenius traces; r4: the n_p(RRRR) deviation")
        ->required()
        ->check(CLI::IsMember({"traces", "r4"}));
    stats->add_option("--curve", curve, "curve for --statistic traces")->check(CLI::IsMember({"E0", "E1", "E4"}));
    stats->add_option("--bins", bins, "histogram bin count")->check(CLI::Range(1, 100000));

    CommonOpts vo;
    vo.format = "json";
    std::vector<std::string> suites;
    bool v_force = false;
    std::string fault;
    auto* verify = app.add_subcommand("verify", "run identity suites and report counterexample primes");
    add_common(verify, vo, false);
    verify->add_option("--suite", suites, "suite name (repeatable; default: all)");
    verify->add_flag("--force", v_force, "allow capped suites to exceed p <= 500");
    verify->add_option("--fault-inject", fault, "test-only fault")
        ->check(CLI::IsMember({"negate-trace", "clamp-jacobsthal"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (patterns->parsed()) return cmd_patterns(po, word);
        if (curves->parsed()) return cmd_curves(co, cl);
        if (jac->parsed()) return cmd_jacobsthal(jo);
        if (surface->parsed()) return cmd_surface(so, s_force);
        if (graphs->parsed()) return cmd_graphs(go, g_force, poly_out);
        if (stats->parsed()) return cmd_stats(to, statistic, curve, bins);
        if (verify->parsed()) return cmd_verify(vo, suites, v_force, fault);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "identity violation: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
