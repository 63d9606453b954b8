#pragma once

/**
 * @brief Exact arbitrary-precision integers and unreduced ratios.
 *
 * Every quantity that feeds a comparison stays integral: ratios are kept as
 * numerator/denominator pairs and ordered by cross-multiplication, decimal
 * strings are produced by scaled integer division. Nothing here touches
 * machine floating point.
 */

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <compare>
#include <stdexcept>
#include <string>
#include <utility>

namespace gmn {

using Nat = boost::multiprecision::cpp_int;
using BigFloat = boost::multiprecision::cpp_bin_float_50;

enum class Ordering { Less, Equal, Greater };

/// Quotient of two exact naturals, stored as produced (never reduced:
/// gcd on huge operands costs more than it saves, and cross-multiplication
/// does not care).
struct ExactRatio {
    Nat num;
    Nat den;

    ExactRatio() : num(0), den(1) {}
    ExactRatio(Nat n, Nat d) : num(std::move(n)), den(std::move(d)) {
        if (den <= 0) throw std::invalid_argument("ExactRatio: denominator must be >= 1");
        if (num < 0) throw std::invalid_argument("ExactRatio: numerator must be >= 0");
    }

    friend bool operator==(const ExactRatio& a, const ExactRatio& b) {
        return a.num * b.den == b.num * a.den;
    }
};

inline Ordering compare_exact(const ExactRatio& a, const ExactRatio& b) {
    const Nat lhs = a.num * b.den;
    const Nat rhs = b.num * a.den;
    if (lhs < rhs) return Ordering::Less;
    if (lhs > rhs) return Ordering::Greater;
    return Ordering::Equal;
}

inline Ordering compare_to_one(const ExactRatio& r) {
    if (r.num < r.den) return Ordering::Less;
    if (r.num > r.den) return Ordering::Greater;
    return Ordering::Equal;
}

enum class Rounding { Truncate, Nearest };

/// Decimal expansion of num/den with `digits` places after the point.
/// Truncate chops toward zero; Nearest rounds half away from zero.
inline std::string decimal_of_quotient(const Nat& num, const Nat& den, unsigned digits,
                                       Rounding mode = Rounding::Truncate) {
    if (den <= 0) throw std::invalid_argument("decimal_of_quotient: denominator must be >= 1");
    if (num < 0) throw std::invalid_argument("decimal_of_quotient: numerator must be >= 0");
    Nat scale = 1;
    for (unsigned i = 0; i < digits; ++i) scale *= 10;
    Nat scaled = num * scale;
    Nat q = scaled / den;
    if (mode == Rounding::Nearest) {
        const Nat rem = scaled % den;
        if (2 * rem >= den) ++q;
    }
    std::string body = q.str();
    if (digits == 0) return body;
    if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
    body.insert(body.size() - digits, 1, '.');
    return body;
}

inline std::string to_decimal(const ExactRatio& r, unsigned digits) {
    return decimal_of_quotient(r.num, r.den, digits, Rounding::Truncate);
}

/// Floor square root of a nonnegative integer.
inline Nat isqrt_floor(const Nat& n) {
    if (n < 0) throw std::invalid_argument("isqrt_floor: negative argument");
    return boost::multiprecision::sqrt(n);
}

inline Nat pow10(unsigned k) {
    Nat p = 1;
    for (unsigned i = 0; i < k; ++i) p *= 10;
    return p;
}

/// Signed integer from a decimal string; rejects anything else.
inline Nat parse_integer(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("parse_integer: empty string");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("parse_integer: no digits in '" + s + "'");
    for (std::size_t j = i; j < s.size(); ++j)
        if (s[j] < '0' || s[j] > '9')
            throw std::invalid_argument("parse_integer: bad character in '" + s + "'");
    return Nat(s[0] == '+' ? s.substr(1) : s);
}

/// Exact rational from "n", "n/d", "1.25", or "3e-4" style text. Returns a
/// (num, den) pair with den >= 1, in lowest terms.
inline std::pair<Nat, Nat> parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
    const auto slash = s.find('/');
    Nat num, den;
    if (slash != std::string::npos) {
        num = parse_integer(s.substr(0, slash));
        den = parse_integer(s.substr(slash + 1));
    } else {
        std::size_t i = 0;
        bool neg = false;
        if (s[i] == '-' || s[i] == '+') neg = (s[i] == '-'), ++i;
        std::string digits;
        long frac_len = 0, exponent = 0;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') digits += s[i++];
        if (i < s.size() && s[i] == '.') {
            ++i;
            while (i < s.size() && s[i] >= '0' && s[i] <= '9') digits += s[i++], ++frac_len;
        }
        if (digits.empty()) throw std::invalid_argument("parse_rational: no digits in '" + s + "'");
        if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
            ++i;
            bool eneg = false;
            if (i < s.size() && (s[i] == '-' || s[i] == '+')) eneg = (s[i] == '-'), ++i;
            if (i == s.size()) throw std::invalid_argument("parse_rational: empty exponent in '" + s + "'");
            for (; i < s.size(); ++i) {
                if (s[i] < '0' || s[i] > '9')
                    throw std::invalid_argument("parse_rational: bad exponent in '" + s + "'");
                exponent = exponent * 10 + (s[i] - '0');
                if (exponent > 10000) throw std::invalid_argument("parse_rational: exponent too large");
            }
            if (eneg) exponent = -exponent;
        }
        if (i != s.size()) throw std::invalid_argument("parse_rational: trailing characters in '" + s + "'");
        num = Nat(digits);
        if (neg) num = -num;
        den = 1;
        const long shift = exponent - frac_len;
        if (shift >= 0)
            num *= pow10(static_cast<unsigned>(shift));
        else
            den = pow10(static_cast<unsigned>(-shift));
    }
    if (den == 0) throw std::invalid_argument("parse_rational: zero denominator in '" + s + "'");
    if (den < 0) { num = -num; den = -den; }
    const Nat g = boost::multiprecision::gcd(num < 0 ? Nat(-num) : num, den);
    if (g > 1) { num /= g; den /= g; }
    return {num, den};
}

}  // namespace gmn
