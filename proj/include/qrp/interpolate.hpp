#pragma once

/*
 * Exact polynomial interpolation of the class counts n_p(Gamma) in the
 * variables k = (p-1)/4 and d = (J^2-4)/32.
 *
 * Basis: monomials k^i d^j with 3i + 2j <= 9 and j <= 1, i.e.
 *   { 1, k, k^2, k^3, d, k d, k^2 d }  (7 monomials),
 * matching the shape of the known K_4 polynomial (cubic in k, linear in d,
 * d itself quadratic in the underlying character sum). The solve fits
 * 24*n_p exactly over the rationals on the training primes and must then
 * reproduce every held-out prime exactly; a mismatch is reported, never
 * patched by enlarging the basis.
 */

#include <array>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "graphs.hpp"

namespace qrp {

using BigRat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline constexpr int kInterpBasisSize = 7;
inline constexpr std::array<const char*, 7> kInterpBasisNames{"1", "k", "k^2", "k^3", "d", "k*d", "k^2*d"};

struct InterpRow {
    i64 p;
    i64 k;
    i64 d;
    i64 n;  // n_p(class)
};

struct InterpolationResult {
    int class_id;
    bool ok;
    std::string failure;               // empty when ok
    std::array<i64, 7> coeffs24;       // coefficients of 24*n in the basis order
};

inline std::array<BigRat, 7> interp_basis_eval(i64 k, i64 d) {
    return {BigRat(1), BigRat(k), BigRat(k) * k, BigRat(k) * k * k, BigRat(d), BigRat(k) * d, BigRat(k) * k * d};
}

/*
 * Plain fraction-pivot Gaussian elimination on the augmented system.
 * Throws on rank deficiency (the basis cannot be identified from the
 * training data); returns false with a reason when the training rows are
 * inconsistent with any polynomial in the basis.
 */
inline bool solve_exact(std::vector<std::array<BigRat, 8>> rows, std::array<BigRat, 7>& out, std::string& why) {
    size_t nrows = rows.size();
    int rank = 0;
    std::array<int, 7> pivot_row{};
    for (int col = 0; col < 7; ++col) {
        size_t sel = size_t(rank);
        while (sel < nrows && rows[sel][size_t(col)] == 0) ++sel;
        if (sel == nrows) {
            throw std::domain_error("interpolation: singular system, basis-deficient training set");
        }
        std::swap(rows[size_t(rank)], rows[sel]);
        BigRat inv = rows[size_t(rank)][size_t(col)];
        for (int j = col; j < 8; ++j) rows[size_t(rank)][size_t(j)] /= inv;
        for (size_t r = 0; r < nrows; ++r) {
            if (int(r) == rank) continue;
            BigRat f = rows[r][size_t(col)];
            if (f == 0) continue;
            for (int j = col; j < 8; ++j) rows[r][size_t(j)] -= f * rows[size_t(rank)][size_t(j)];
        }
        pivot_row[size_t(col)] = rank;
        ++rank;
    }
    for (size_t r = size_t(rank); r < nrows; ++r) {
        if (rows[r][7] != 0) {
            why = "training rows inconsistent with the capped basis";
            return false;
        }
    }
    for (int col = 0; col < 7; ++col) out[size_t(col)] = rows[size_t(pivot_row[size_t(col)])][7];
    return true;
}

inline InterpolationResult interpolate_gamma_polynomial(int class_id, const std::vector<InterpRow>& training,
                                                        const std::vector<InterpRow>& held_out) {
    if (training.size() < 12) {
        throw std::invalid_argument("interpolate_gamma_polynomial: need at least 12 training primes");
    }
    InterpolationResult res{};
    res.class_id = class_id;
    std::vector<std::array<BigRat, 8>> rows;
    for (const auto& row : training) {
        std::array<BigRat, 8> r{};
        auto basis = interp_basis_eval(row.k, row.d);
        for (int j = 0; j < 7; ++j) r[size_t(j)] = basis[size_t(j)];
        r[7] = BigRat(24) * row.n;
        rows.push_back(std::move(r));
    }
    std::array<BigRat, 7> sol{};
    std::string why;
    if (!solve_exact(std::move(rows), sol, why)) {
        res.ok = false;
        res.failure = why;
        return res;
    }
    for (int j = 0; j < 7; ++j) {
        if (boost::multiprecision::denominator(sol[size_t(j)]) != 1) {
            res.ok = false;
            res.failure = "fitted coefficients of 24n are not integers";
            return res;
        }
        BigInt num = boost::multiprecision::numerator(sol[size_t(j)]);
        if (num > std::numeric_limits<std::int64_t>::max() || num < std::numeric_limits<std::int64_t>::min()) {
            res.ok = false;
            res.failure = "fitted coefficient overflows int64";
            return res;
        }
        res.coeffs24[size_t(j)] = i64(num);
    }
    for (const auto& row : held_out) {
        auto basis = interp_basis_eval(row.k, row.d);
        BigRat v = 0;
        for (int j = 0; j < 7; ++j) v += sol[size_t(j)] * basis[size_t(j)];
        if (v != BigRat(24) * row.n) {
            res.ok = false;
            res.failure = "held-out prime " + std::to_string(row.p) + " does not match the fitted polynomial";
            return res;
        }
    }
    res.ok = true;
    return res;
}

}  // namespace qrp
