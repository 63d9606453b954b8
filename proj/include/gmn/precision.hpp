#pragma once

/**
 * @brief Scaled-integer high-precision arithmetic.
 *
 * Reals are carried as mantissa/10^scale pairs with directed rounding, so
 * every bound produced here is rigorous: a lower mantissa never exceeds the
 * true value, an upper one never undershoots it. The natural logarithm uses
 * the atanh series ln x = 2*sum z^(2k+1)/(2k+1) with z=(x-1)/(x+1), rounded
 * one-sidedly term by term. Quadratic irrationals (a+b*sqrt(d))/c get their
 * own exact type so inequalities against rationals need no rounding at all.
 */

#include "gmn/exact.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace gmn {

inline Nat floor_div(const Nat& a, const Nat& b) {
    Nat q = a / b;
    if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Nat ceil_div(const Nat& a, const Nat& b) {
    Nat q = a / b;
    if ((a % b) != 0 && ((a < 0) == (b < 0))) ++q;
    return q;
}

/// Closed interval [lo, hi]/10^scale enclosing a real value.
struct Ival {
    Nat lo;
    Nat hi;
    unsigned scale = 0;
};

inline Ival ival_from_rational(const Nat& num, const Nat& den, unsigned scale) {
    if (den <= 0) throw std::invalid_argument("ival_from_rational: den must be positive");
    const Nat scaled = num * pow10(scale);
    return {floor_div(scaled, den), ceil_div(scaled, den), scale};
}

/// Enclosure of sqrt(n) for integer n >= 0.
inline Ival ival_sqrt_int(const Nat& n, unsigned scale) {
    const Nat lo = isqrt_floor(n * pow10(2 * scale));
    const Nat hi = (lo * lo == n * pow10(2 * scale)) ? lo : lo + 1;
    return {lo, hi, scale};
}

/// Enclosure of (a + b*sqrt(d)) / c with c > 0.
inline Ival ival_surd(const Nat& a, const Nat& b, const Nat& d, const Nat& c, unsigned scale) {
    if (c <= 0) throw std::invalid_argument("ival_surd: c must be positive");
    const Ival rt = ival_sqrt_int(d, scale);
    const Nat base = a * pow10(scale);
    const Nat nlo = base + b * (b >= 0 ? rt.lo : rt.hi);
    const Nat nhi = base + b * (b >= 0 ? rt.hi : rt.lo);
    return {floor_div(nlo, c), ceil_div(nhi, c), scale};
}

namespace detail {

/// Directed ln of the rational num/den > 1, as a mantissa at `scale`.
inline Nat ln_directed(const Nat& num, const Nat& den, unsigned scale, bool round_up) {
    if (den <= 0 || num <= den)
        throw std::invalid_argument("ln_directed: argument must exceed 1");
    const Nat P = pow10(scale);
    const Nat zn = num - den;
    const Nat zd = num + den;
    const Nat z = round_up ? ceil_div(zn * P, zd) : floor_div(zn * P, zd);
    const Nat z2 = round_up ? ceil_div(z * z, P) : floor_div(z * z, P);
    if (z2 >= P) throw std::invalid_argument("ln_directed: argument too large for series");
    Nat pow = z;
    Nat sum = 0;
    Nat odd = 1;
    while (pow > 1 || (!round_up && pow > 0)) {
        sum += round_up ? ceil_div(pow, odd) : pow / odd;
        pow = round_up ? ceil_div(pow * z2, P) : floor_div(pow * z2, P);
        odd += 2;
    }
    if (round_up) sum += pow + 1;
    return 2 * sum;
}

}  // namespace detail

/// Enclosure of ln(x) for an enclosed x > 1 (monotonicity of ln).
inline Ival ival_ln(const Ival& x) {
    const Nat P = pow10(x.scale);
    return {detail::ln_directed(x.lo, P, x.scale, false),
            detail::ln_directed(x.hi, P, x.scale, true), x.scale};
}

inline Ival ival_neg(const Ival& a) { return {-a.hi, -a.lo, a.scale}; }

inline Ival ival_mul_int(const Ival& a, const Nat& k) {
    if (k >= 0) return {a.lo * k, a.hi * k, a.scale};
    return {a.hi * k, a.lo * k, a.scale};
}

/// Quotient of two positive enclosures.
inline Ival ival_div_pos(const Ival& a, const Ival& b) {
    if (a.scale != b.scale) throw std::invalid_argument("ival_div_pos: scale mismatch");
    if (a.lo < 0 || b.lo <= 0) throw std::invalid_argument("ival_div_pos: operands must be positive");
    const Nat P = pow10(a.scale);
    return {floor_div(a.lo * P, b.hi), ceil_div(a.hi * P, b.lo), a.scale};
}

/// Strict order between disjoint enclosures; nullopt-like -1/0/+1 with 0 = undecided.
inline int ival_compare(const Ival& a, const Ival& b) {
    if (a.scale != b.scale) throw std::invalid_argument("ival_compare: scale mismatch");
    if (a.hi < b.lo) return -1;
    if (a.lo > b.hi) return 1;
    return 0;
}

/// Round mant/10^scale to `digits` decimal places, nearest, half away from zero.
inline std::string scaled_to_decimal(Nat mant, unsigned scale, unsigned digits) {
    if (digits > scale) throw std::invalid_argument("scaled_to_decimal: digits exceed scale");
    const bool neg = mant < 0;
    if (neg) mant = -mant;
    const Nat drop = pow10(scale - digits);
    Nat q = mant / drop;
    if (2 * (mant % drop) >= drop) ++q;
    std::string body = q.str();
    if (digits > 0) {
        if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
        body.insert(body.size() - digits, 1, '.');
    }
    return (neg ? "-" : "") + body;
}

/// Nearest-rounded decimal of an enclosed value; widens until unambiguous.
/// `recompute` maps a scale to a fresh enclosure at that scale.
template <typename Recompute>
std::string decimal_from_enclosure(unsigned digits, unsigned start_scale, Recompute recompute) {
    for (unsigned scale = start_scale;; scale += 15) {
        const Ival iv = recompute(scale);
        const std::string lo = scaled_to_decimal(iv.lo, scale, digits);
        const std::string hi = scaled_to_decimal(iv.hi, scale, digits);
        if (lo == hi) return lo;
        if (scale > start_scale + 300)
            throw std::runtime_error("decimal_from_enclosure: failed to settle rounding");
    }
}

/// Exact quadratic irrational (a + b*sqrt(d)) / c with c >= 1 and d a
/// positive non-square integer. Closed under multiplication for a fixed d.
struct QuadSurd {
    Nat a;
    Nat b;
    Nat c;
    Nat d;

    QuadSurd(Nat a_, Nat b_, Nat c_, Nat d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
        if (c <= 0) throw std::invalid_argument("QuadSurd: c must be positive");
        if (d <= 1) throw std::invalid_argument("QuadSurd: d must exceed 1");
        const Nat r = isqrt_floor(d);
        if (r * r == d) throw std::invalid_argument("QuadSurd: d must not be a perfect square");
        normalize();
    }

    static QuadSurd from_rational(const Nat& num, const Nat& den, const Nat& d) {
        return QuadSurd(num, 0, den, d);
    }

    void normalize() {
        Nat g = boost::multiprecision::gcd(boost::multiprecision::gcd(abs(a), abs(b)), c);
        if (g > 1) { a /= g; b /= g; c /= g; }
    }

    QuadSurd operator*(const QuadSurd& o) const {
        if (d != o.d) throw std::invalid_argument("QuadSurd: mixed radicands");
        return QuadSurd(a * o.a + b * o.b * d, a * o.b + b * o.a, c * o.c, d);
    }

    friend bool operator==(const QuadSurd& x, const QuadSurd& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && (x.b == 0 || x.d == y.d);
    }

    QuadSurd pow(unsigned e) const {
        QuadSurd acc = from_rational(1, 1, d);
        QuadSurd base = *this;
        while (e > 0) {
            if (e & 1u) acc = acc * base;
            base = base * base;
            e >>= 1u;
        }
        return acc;
    }

private:
    static Nat abs(const Nat& v) { return v < 0 ? Nat(-v) : v; }
};

/// Sign of U + V*sqrt(d), exactly.
inline int surd_linear_sign(const Nat& U, const Nat& V, const Nat& d) {
    if (V == 0) return U == 0 ? 0 : (U > 0 ? 1 : -1);
    if (U == 0) return V > 0 ? 1 : -1;
    if (U > 0 && V > 0) return 1;
    if (U < 0 && V < 0) return -1;
    const Nat u2 = U * U;
    const Nat v2d = V * V * d;
    if (u2 == v2d) throw std::logic_error("surd_linear_sign: vanishing combination with non-square d");
    if (U > 0) return u2 > v2d ? 1 : -1;
    return v2d > u2 ? 1 : -1;
}

/// Exact order of a surd against a rational num/den (den > 0).
inline Ordering compare_surd_rational(const QuadSurd& s, const Nat& num, const Nat& den) {
    if (den <= 0) throw std::invalid_argument("compare_surd_rational: den must be positive");
    const int sgn = surd_linear_sign(s.a * den - num * s.c, s.b * den, s.d);
    if (sgn < 0) return Ordering::Less;
    if (sgn > 0) return Ordering::Greater;
    return Ordering::Equal;
}

/// Exact order of two surds over the same radicand.
inline Ordering compare_surd(const QuadSurd& s1, const QuadSurd& s2) {
    if (s1.d != s2.d) throw std::invalid_argument("compare_surd: mixed radicands");
    const int sgn = surd_linear_sign(s1.a * s2.c - s2.a * s1.c, s1.b * s2.c - s2.b * s1.c, s1.d);
    if (sgn < 0) return Ordering::Less;
    if (sgn > 0) return Ordering::Greater;
    return Ordering::Equal;
}

inline std::string surd_to_decimal(const QuadSurd& s, unsigned digits) {
    return decimal_from_enclosure(digits, digits + 12, [&](unsigned scale) {
        return ival_surd(s.a, s.b, s.d, s.c, scale);
    });
}

}  // namespace gmn
