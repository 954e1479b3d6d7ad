#pragma once

/*
 * Exact dyadic rationals num / 2^shift. Pattern-count formulas only ever
 * divide by powers of two (2^l for word length l), so int64 numerators with
 * a small shift cover everything exactly; no gcd machinery needed beyond
 * stripping common factors of two.
 */

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qrp {

struct Dyadic {
    std::int64_t num = 0;
    int shift = 0;  // value = num / 2^shift, 0 <= shift < 63

    Dyadic() = default;
    Dyadic(std::int64_t n) : num(n), shift(0) {}
    Dyadic(std::int64_t n, int s) : num(n), shift(s) { normalize(); }

    void normalize() {
        while (shift > 0 && num % 2 == 0) {
            num /= 2;
            --shift;
        }
        if (num == 0) shift = 0;
    }

    std::int64_t den() const { return std::int64_t(1) << shift; }

    friend Dyadic operator+(Dyadic a, Dyadic b) {
        int s = a.shift > b.shift ? a.shift : b.shift;
        return Dyadic((a.num << (s - a.shift)) + (b.num << (s - b.shift)), s);
    }
    friend Dyadic operator-(Dyadic a, Dyadic b) {
        int s = a.shift > b.shift ? a.shift : b.shift;
        return Dyadic((a.num << (s - a.shift)) - (b.num << (s - b.shift)), s);
    }
    friend Dyadic operator*(Dyadic a, Dyadic b) { return Dyadic(a.num * b.num, a.shift + b.shift); }
    friend bool operator==(Dyadic a, Dyadic b) { return a.num == b.num && a.shift == b.shift; }
    friend bool operator!=(Dyadic a, Dyadic b) { return !(a == b); }
    friend bool operator<(Dyadic a, Dyadic b) {
        int s = a.shift > b.shift ? a.shift : b.shift;
        return (a.num << (s - a.shift)) < (b.num << (s - b.shift));
    }
    friend bool operator<=(Dyadic a, Dyadic b) { return a < b || a == b; }

    bool is_integer() const { return shift == 0; }

    Dyadic abs() const { return num < 0 ? Dyadic(-num, shift) : *this; }

    double to_double() const { return double(num) / double(den()); }

    // Exact decimal form: dyadic rationals terminate (1/2^s = 5^s/10^s).
    std::string to_decimal_string() const {
        if (shift == 0) return std::to_string(num);
        std::int64_t n = num < 0 ? -num : num;
        std::int64_t ip = n >> shift;
        std::int64_t frac = n - (ip << shift);  // frac / 2^shift
        std::string digits;
        for (int i = 0; i < shift; ++i) {
            frac *= 5;  // frac/2^k -> (5*frac)/10 / 2^(k-1): peel one decimal digit
            std::int64_t unit = std::int64_t(1) << (shift - 1 - i);
            // digits so far consumed; current numerator frac over 10*2^(shift-1-i)
            digits.push_back(char('0' + frac / (unit)) );
            frac %= unit;
        }
        while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
        std::string s = (num < 0 ? "-" : "") + std::to_string(ip);
        s += ".";
        s += digits;
        return s;
    }
};

}  // namespace qrp
