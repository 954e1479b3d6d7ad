#pragma once

/*
 * Equidistribution statistics: normalized Frobenius traces t = a_p/(2 sqrt p)
 * and the pattern statistic n_p(R^4)/sqrt(p) - sqrt(p)/16, against the
 * semicircle / arcsine reference measures and their scaled convolutions.
 *
 * Closed forms on [-1, 1]:
 *   semicircle  density (2/pi) sqrt(1-t^2),   CDF 1/2 + (t sqrt(1-t^2) + asin t)/pi
 *   arcsine     density 1/(pi sqrt(1-t^2)),   CDF 1/2 + asin(t)/pi
 * A scale factor c turns density f into c f(ct) with support [-1/c, 1/c].
 * The half-and-half mixture with a Dirac at 0 adds a CDF jump of 1/2 there.
 *
 * Convolutions are gridded as node masses: node i sits at lo + i*h and
 * carries the member's exact CDF mass of [x - h/2, x + h/2]. Node positions
 * add exactly under convolution, so supports add to within one cell and
 * total mass is preserved to rounding.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "curves.hpp"
#include "ffield.hpp"
#include "parallel.hpp"
#include "patterns.hpp"

namespace qrp {

constexpr double kPi = 3.14159265358979323846;

struct GridDensity {
    double lo = 0;  // position of node 0
    double h = 0;
    std::vector<double> mass;
    std::vector<double> cum;  // inclusive prefix sums of mass

    double hi() const { return lo + h * double(mass.size() - 1); }

    void finalize() {
        cum.resize(mass.size());
        double acc = 0;
        for (size_t i = 0; i < mass.size(); ++i) {
            acc += mass[i];
            cum[i] = acc;
        }
    }

    // Piecewise-linear CDF: node i's mass spreads over [x_i - h/2, x_i + h/2].
    double cdf(double t) const {
        double start = lo - h / 2;
        if (t <= start) return 0.0;
        size_t i = size_t((t - start) / h);
        if (i >= mass.size()) return cum.back();
        double cell_lo = start + h * double(i);
        double before = i == 0 ? 0.0 : cum[i - 1];
        return before + mass[i] * (t - cell_lo) / h;
    }

    double total() const { return cum.empty() ? 0.0 : cum.back(); }
};

struct ReferenceMeasure {
    enum class Family { Semicircle, Arcsine, LambdaCM, Grid };

    Family family = Family::Semicircle;
    double scale = 1.0;  // density scale * f(scale * t); LambdaCM/Grid use scale 1
    GridDensity grid;

    static ReferenceMeasure semicircle(double c = 1.0) { return {Family::Semicircle, c, {}}; }
    static ReferenceMeasure arcsine(double c = 1.0) { return {Family::Arcsine, c, {}}; }
    static ReferenceMeasure lambda_cm() { return {Family::LambdaCM, 1.0, {}}; }
    static ReferenceMeasure from_grid(GridDensity g) { return {Family::Grid, 1.0, std::move(g)}; }

    static double semicircle_cdf1(double t) {  // unit scale
        if (t <= -1) return 0;
        if (t >= 1) return 1;
        return 0.5 + (t * std::sqrt(1 - t * t) + std::asin(t)) / kPi;
    }
    static double arcsine_cdf1(double t) {
        if (t <= -1) return 0;
        if (t >= 1) return 1;
        return 0.5 + std::asin(t) / kPi;
    }

    double cdf(double t) const {
        switch (family) {
            case Family::Semicircle: return semicircle_cdf1(scale * t);
            case Family::Arcsine: return arcsine_cdf1(scale * t);
            case Family::LambdaCM: return (t >= 0 ? 0.5 : 0.0) + 0.5 * arcsine_cdf1(t);
            case Family::Grid: return grid.cdf(t);
        }
        return 0;
    }

    // Left limit of the CDF; differs from cdf only at atoms (LambdaCM at 0).
    double cdf_left(double t) const {
        if (family == Family::LambdaCM && t == 0.0) return 0.5 * arcsine_cdf1(0.0);
        return cdf(t);
    }

    // Density where absolutely continuous; diverges at arcsine endpoints.
    double density(double t) const {
        double u = scale * t;
        switch (family) {
            case Family::Semicircle:
                if (u <= -1 || u >= 1) return 0;
                return scale * 2.0 / kPi * std::sqrt(1 - u * u);
            case Family::Arcsine:
                if (u <= -1 || u >= 1) return 0;
                return scale / (kPi * std::sqrt(1 - u * u));
            case Family::LambdaCM:
                throw std::domain_error("density: lambda_cm has a Dirac component");
            case Family::Grid: {
                double start = grid.lo - grid.h / 2;
                if (t < start || t > grid.hi() + grid.h / 2) return 0;
                size_t i = size_t((t - start) / grid.h);
                if (i >= grid.mass.size()) i = grid.mass.size() - 1;
                return grid.mass[i] / grid.h;
            }
        }
        return 0;
    }

    double support_lo() const {
        switch (family) {
            case Family::Semicircle:
            case Family::Arcsine: return -1.0 / scale;
            case Family::LambdaCM: return -1.0;
            case Family::Grid: return grid.lo - grid.h / 2;
        }
        return -1;
    }
    double support_hi() const { return -support_lo(); }

    bool absolutely_continuous() const { return family != Family::LambdaCM; }
};

inline double reference_cdf(const ReferenceMeasure& m, double t, bool* clamped = nullptr) {
    double lo = m.support_lo(), hi = m.support_hi();
    if (clamped) *clamped = t < lo || t > hi;
    return m.cdf(std::clamp(t, lo, hi));
}

// ---------------------------------------------------------------- convolution

struct ConvolutionResult {
    ReferenceMeasure measure;
    double total_mass;
    bool coarse_grid_warning;
};

inline GridDensity discretize_member(const ReferenceMeasure& m, double h) {
    if (!m.absolutely_continuous()) {
        throw std::invalid_argument("convolve_densities: members must be absolutely continuous");
    }
    double lo = m.support_lo(), hi = m.support_hi();
    size_t n = size_t(std::llround((hi - lo) / h)) + 1;
    GridDensity g;
    g.lo = lo;
    g.h = h;
    g.mass.resize(n);
    for (size_t i = 0; i < n; ++i) {
        double x = lo + h * double(i);
        g.mass[i] = m.cdf(std::min(hi, x + h / 2)) - m.cdf(std::max(lo, x - h / 2));
    }
    g.finalize();
    return g;
}

inline GridDensity convolve_grid(const GridDensity& a, const GridDensity& b) {
    GridDensity c;
    c.lo = a.lo + b.lo;
    c.h = a.h;
    c.mass.assign(a.mass.size() + b.mass.size() - 1, 0.0);
    for (size_t i = 0; i < a.mass.size(); ++i) {
        if (a.mass[i] == 0) continue;
        for (size_t j = 0; j < b.mass.size(); ++j) c.mass[i + j] += a.mass[i] * b.mass[j];
    }
    c.finalize();
    return c;
}

inline ConvolutionResult convolve_densities(const std::vector<ReferenceMeasure>& members, double h) {
    if (members.empty()) throw std::invalid_argument("convolve_densities: no members");
    ConvolutionResult res{};
    res.coarse_grid_warning = h > 1e-3;
    GridDensity acc = discretize_member(members[0], h);
    for (size_t i = 1; i < members.size(); ++i) acc = convolve_grid(acc, discretize_member(members[i], h));
    res.total_mass = acc.total();
    res.measure = ReferenceMeasure::from_grid(std::move(acc));
    return res;
}

// mu_1 = lambda'_cm * mu'_ST * mu''_ST with lambda'_cm(t) = 4 mu_cm(4t),
// mu'_ST(t) = 4 mu_ST(4t), mu''_ST(t) = 8 mu_ST(8t); support [-5/8, 5/8].
inline ConvolutionResult build_mu1(double h = 5e-4) {
    return convolve_densities(
        {ReferenceMeasure::arcsine(4.0), ReferenceMeasure::semicircle(4.0), ReferenceMeasure::semicircle(8.0)}, h);
}

// ------------------------------------------------------------------ sampling

struct EmpiricalDistribution {
    std::vector<double> values;  // sorted ascending

    size_t size() const { return values.size(); }
};

struct TraceSample {
    i64 p;
    double t;
    int mod4;
};

/*
 * Normalized traces a_p/(2 sqrt p) of one of E_0, E_1, E_4 over the good
 * primes up to the limit, filtered by residue class (1, 3, or 0 for all).
 */
inline EmpiricalDistribution collect_traces(int curve_index, i64 limit, int class_mod4, int threads) {
    if (curve_index != 0 && curve_index != 1 && curve_index != 4) {
        throw std::invalid_argument("collect_traces: curve must be one of E_0, E_1, E_4");
    }
    if (limit > 10'000'000) throw std::invalid_argument("collect_traces: limit above 10^7 unsupported");
    auto primes = sieve_primes(limit);
    std::vector<double> slots(primes.size(), 2.0);  // 2.0 = "no sample"
    parallel_for_index(primes.size(), threads, [&](size_t i) {
        i64 p = primes[i];
        if (p < 5) return;  // bad reduction for E_1 at p = 3
        if (class_mod4 != 0 && p % 4 != class_mod4) return;
        auto t = ResidueTable::build(p);
        i64 a = 0;
        const std::int8_t* chi = t.chi.data();
        if (curve_index == 0) {
            for (i64 x = 0; x + 2 < p; ++x) a += i64(chi[x]) * chi[x + 1] * chi[x + 2];
            a = -a;
        } else if (curve_index == 1) {
            i64 s = 0;
            for (i64 x = 0; x + 3 < p; ++x) s += i64(chi[x]) * chi[x + 1] * chi[x + 3];
            // wrapped windows: x = p-3 and p-1 hit chi(0) = 0, but x = p-2 does not
            s += i64(chi[p - 2]) * chi[p - 1] * chi[1];
            a = -s;
        } else {
            i64 s = 0;
            for (i64 x = 0; x + 3 < p; ++x) s += i64(chi[x]) * chi[x + 1] * chi[x + 2] * chi[x + 3];
            a = -1 - s;  // affine = p + s, two points at infinity
        }
        slots[i] = double(a) / (2.0 * std::sqrt(double(p)));
    });
    EmpiricalDistribution out;
    for (double v : slots) {
        if (v < 1.5) out.values.push_back(v);
    }
    std::sort(out.values.begin(), out.values.end());
    return out;
}

// ------------------------------------------------------------- KS distance

/*
 * Kolmogorov-Smirnov statistic: the empirical CDF steps from i/N to
 * (i+1)/N at the i-th sorted sample, so the supremum over sample points
 * compares both one-sided values against the reference CDF (left limit on
 * the lower side, which matters only at reference atoms).
 */
inline double ks_distance(const EmpiricalDistribution& emp, const ReferenceMeasure& ref) {
    if (emp.values.empty()) throw std::invalid_argument("ks_distance: empty sample");
    double n = double(emp.values.size());
    double worst = 0;
    for (size_t i = 0; i < emp.values.size(); ++i) {
        double x = emp.values[i];
        double hi = std::abs(double(i + 1) / n - ref.cdf(x));
        double lo = std::abs(double(i) / n - ref.cdf_left(x));
        worst = std::max({worst, hi, lo});
    }
    return worst;
}

// --------------------------------------------------- the n_p(R^4) statistic

struct R4StatisticReport {
    EmpiricalDistribution class1;  // p = 1 mod 4
    EmpiricalDistribution class3;  // p = 3 mod 4
    bool class1_contained;         // |stat| <= 5/8 + 5/sqrt(p) at every prime
    bool class3_contained;         // |stat| <= 1/8 + 5/sqrt(p)
    double class1_min, class1_max;
    double class3_min, class3_max;
};

inline R4StatisticReport np_R4_statistic(i64 limit, int threads) {
    if (limit < 100) throw std::invalid_argument("np_R4_statistic: limit must be >= 100");
    auto primes = sieve_primes(limit);
    struct Slot {
        double v;
        int mod4;
        bool contained;
        bool used;
    };
    std::vector<Slot> slots(primes.size(), {0, 0, true, false});
    parallel_for_index(primes.size(), threads, [&](size_t i) {
        i64 p = primes[i];
        if (p < 7) return;
        auto t = ResidueTable::build(p);
        i64 n = count_R_run(t, 4);
        double sp = std::sqrt(double(p));
        double stat = double(n) / sp - sp / 16.0;
        double bound = (p % 4 == 1 ? 5.0 / 8.0 : 1.0 / 8.0) + 5.0 / sp;
        slots[i] = {stat, int(p % 4), std::abs(stat) <= bound, true};
    });
    R4StatisticReport rep{};
    rep.class1_contained = rep.class3_contained = true;
    rep.class1_min = rep.class3_min = 1e9;
    rep.class1_max = rep.class3_max = -1e9;
    for (const auto& s : slots) {
        if (!s.used) continue;
        auto& dist = s.mod4 == 1 ? rep.class1 : rep.class3;
        dist.values.push_back(s.v);
        if (s.mod4 == 1) {
            rep.class1_contained = rep.class1_contained && s.contained;
            rep.class1_min = std::min(rep.class1_min, s.v);
            rep.class1_max = std::max(rep.class1_max, s.v);
        } else {
            rep.class3_contained = rep.class3_contained && s.contained;
            rep.class3_min = std::min(rep.class3_min, s.v);
            rep.class3_max = std::max(rep.class3_max, s.v);
        }
    }
    std::sort(rep.class1.values.begin(), rep.class1.values.end());
    std::sort(rep.class3.values.begin(), rep.class3.values.end());
    return rep;
}

// ------------------------------------------------------------------ histogram

struct HistogramRow {
    double bin_left;
    double bin_right;
    double empirical_mass;
    double reference_mass;
};

inline std::vector<HistogramRow> histogram_against(const EmpiricalDistribution& emp, const ReferenceMeasure& ref,
                                                   int bins) {
    if (bins < 1 || emp.values.empty()) throw std::invalid_argument("histogram_against: need bins and samples");
    double lo = std::min(ref.support_lo(), emp.values.front());
    double hi = std::max(ref.support_hi(), emp.values.back());
    std::vector<HistogramRow> rows;
    double n = double(emp.values.size());
    for (int i = 0; i < bins; ++i) {
        double a = lo + (hi - lo) * double(i) / double(bins);
        double b = lo + (hi - lo) * double(i + 1) / double(bins);
        auto it_a = std::lower_bound(emp.values.begin(), emp.values.end(), a);
        auto it_b = i + 1 == bins ? emp.values.end() : std::lower_bound(emp.values.begin(), emp.values.end(), b);
        double emp_mass = double(it_b - it_a) / n;
        double ref_mass = ref.cdf(b) - (i == 0 ? 0.0 : ref.cdf(a));
        rows.push_back({a, b, emp_mass, ref_mass});
    }
    return rows;
}

}  // namespace qrp
