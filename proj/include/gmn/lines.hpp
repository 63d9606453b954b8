#pragma once

/**
 * @brief Rational lines and their lattice points inside the index region.
 *
 * The region is {(x,y) : x > y >= 1}. A line y = k*x + b with rational k, b
 * meets it in lattice points whose x-coordinates form an arithmetic
 * progression: integrality of y is a single congruence mod the slope
 * denominator, and the region cuts the progression to a window. For k < 0
 * the window is finite; for k >= 0 an explicit cap on x is required to
 * enumerate.
 *
 * Two shift operations reappear throughout the monotonicity analysis: moving
 * the intercept along the x-axis (b -> b - k*t) and along the diagonal
 * (b -> b + t*(1-k)). The distinguished families l_n (through (n,1)) and
 * L_n (through (n, n-1)) are lines of the same slope anchored on the
 * region's lower and upper boundary.
 */

#include "gmn/exact.hpp"
#include "gmn/precision.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace gmn {

struct LatticePoint {
    Nat x;
    Nat y;

    friend bool operator==(const LatticePoint& a, const LatticePoint& b) {
        return a.x == b.x && a.y == b.y;
    }
};

inline bool region_contains(const LatticePoint& p) { return p.x > p.y && p.y >= 1; }

/// y = (kn/kd)*x + (bn/bd) with both fractions canonical: positive
/// denominators, lowest terms, zero stored as 0/1.
struct RationalLine {
    Nat kn;
    Nat kd;
    Nat bn;
    Nat bd;

    friend bool operator==(const RationalLine& a, const RationalLine& b) {
        return a.kn == b.kn && a.kd == b.kd && a.bn == b.bn && a.bd == b.bd;
    }
};

namespace detail {

inline std::pair<Nat, Nat> canonical_fraction(Nat num, Nat den) {
    if (den == 0) throw std::invalid_argument("canonical_fraction: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    if (num == 0) return {0, 1};
    const Nat g = boost::multiprecision::gcd(num < 0 ? Nat(-num) : num, den);
    return {num / g, den / g};
}

inline Nat mod_floor(const Nat& a, const Nat& m) {
    Nat r = a % m;
    if (r < 0) r += m;
    return r;
}

/// Inverse of a modulo m for gcd(a, m) = 1, m >= 1.
inline Nat mod_inverse(Nat a, const Nat& m) {
    if (m == 1) return 0;
    a = mod_floor(a, m);
    Nat old_r = a, r = m;
    Nat old_s = 1, s = 0;
    while (r != 0) {
        const Nat q = old_r / r;
        old_r -= q * r;
        std::swap(old_r, r);
        old_s -= q * s;
        std::swap(old_s, s);
    }
    if (old_r != 1) throw std::invalid_argument("mod_inverse: arguments not coprime");
    return mod_floor(old_s, m);
}

}  // namespace detail

inline RationalLine make_line(const Nat& kn, const Nat& kd, const Nat& bn, const Nat& bd) {
    auto [skn, skd] = detail::canonical_fraction(kn, kd);
    auto [sbn, sbd] = detail::canonical_fraction(bn, bd);
    return {skn, skd, sbn, sbd};
}

/// Exact y-value of the line at integer x, as an unreduced pair over kd*bd.
inline std::pair<Nat, Nat> line_value_at(const RationalLine& l, const Nat& x) {
    return {l.kn * l.bd * x + l.bn * l.kd, l.kd * l.bd};
}

inline bool line_contains(const RationalLine& l, const LatticePoint& p) {
    auto [num, den] = line_value_at(l, p.x);
    return num == p.y * den;
}

namespace detail {

/// Integer window [lo, hi] of x-values meeting the region constraints,
/// plus the congruence class of x mod kd carrying integer y. hi is absent
/// when the window is unbounded above. feasible=false means no solutions.
struct LineWindow {
    bool feasible = false;
    Nat x0;
    Nat stride = 1;
    Nat lo;
    std::optional<Nat> hi;
};

inline LineWindow line_window(const RationalLine& l) {
    LineWindow w;
    if (l.kd % l.bd != 0) return w;
    // kn*x == -bn*(kd/bd)  (mod kd) characterizes integer y.
    w.stride = l.kd;
    const Nat e = l.kd / l.bd;
    if (l.kd == 1) {
        w.x0 = 0;
    } else {
        const Nat inv = mod_inverse(l.kn, l.kd);
        w.x0 = mod_floor(-l.bn * e * inv, l.kd);
    }
    // x > y: bd*(kd-kn)*x > bn*kd.  y >= 1: kn*bd*x >= kd*(bd-bn).
    bool has_lo = false, has_hi = false;
    Nat lo, hi;
    auto add_bound = [&](const Nat& coef, const Nat& rhs, bool strict) -> bool {
        if (coef == 0) return strict ? rhs < 0 : rhs <= 0;
        if (coef > 0) {
            Nat m = strict ? floor_div(rhs, coef) + 1 : ceil_div(rhs, coef);
            if (!has_lo || m > lo) lo = m;
            has_lo = true;
        } else {
            Nat m = strict ? ceil_div(rhs, coef) - 1 : floor_div(rhs, coef);
            if (!has_hi || m < hi) hi = m;
            has_hi = true;
        }
        return true;
    };
    if (!add_bound(l.bd * (l.kd - l.kn), l.bn * l.kd, true)) return w;
    if (!add_bound(l.kn * l.bd, l.kd * (l.bd - l.bn), false)) return w;
    if (!has_lo)
        throw std::logic_error("line_window: region admits arbitrarily small x");
    if (has_hi && hi < lo) return w;
    w.feasible = true;
    w.lo = lo;
    if (has_hi) w.hi = hi;
    return w;
}

inline Nat first_admissible(const LineWindow& w) {
    return w.lo + mod_floor(w.x0 - w.lo, w.stride);
}

inline Nat last_admissible(const LineWindow& w, const Nat& hi) {
    return hi - mod_floor(hi - w.x0, w.stride);
}

}  // namespace detail

/// All region lattice points of the line, by increasing x. For k >= 0 the
/// set is infinite whenever nonempty, so x_cap is mandatory there.
inline std::vector<LatticePoint> region_points(const RationalLine& l,
                                               const std::optional<Nat>& x_cap = std::nullopt) {
    if (l.kn >= 0 && !x_cap)
        throw std::invalid_argument("region_points: x_cap is required when k >= 0");
    std::vector<LatticePoint> pts;
    const auto w = detail::line_window(l);
    if (!w.feasible) return pts;
    std::optional<Nat> hi = w.hi;
    if (x_cap && (!hi || *x_cap < *hi)) hi = *x_cap;
    if (!hi) throw std::invalid_argument("region_points: unbounded window without x_cap");
    Nat x = detail::first_admissible(w);
    for (; x <= *hi; x += w.stride) {
        auto [num, den] = line_value_at(l, x);
        pts.push_back({x, num / den});
    }
    return pts;
}

struct LineEndpoints {
    std::optional<LatticePoint> first;
    std::optional<LatticePoint> second;
    std::optional<LatticePoint> last;
    std::optional<LatticePoint> second_last;
};

/// First/second and (when the window is finite) last/second-last region
/// points. Needs no cap: for k >= 0 only the leading pair is reported.
inline LineEndpoints endpoints(const RationalLine& l) {
    LineEndpoints e;
    const auto w = detail::line_window(l);
    if (!w.feasible) return e;
    auto at = [&](const Nat& x) -> LatticePoint {
        auto [num, den] = line_value_at(l, x);
        return {x, num / den};
    };
    const Nat xf = detail::first_admissible(w);
    if (w.hi && xf > *w.hi) return e;
    e.first = at(xf);
    if (!w.hi || xf + w.stride <= *w.hi) e.second = at(xf + w.stride);
    if (w.hi) {
        const Nat xl = detail::last_admissible(w, *w.hi);
        e.last = at(xl);
        if (xl - w.stride >= w.lo) e.second_last = at(xl - w.stride);
    }
    return e;
}

enum class ShiftMode { XAxis, Diagonal };

/// Translate the line by t along the x-axis (b -> b - k*t) or along the
/// main diagonal (b -> b + t*(1-k)); the slope is unchanged.
inline RationalLine shift(const RationalLine& l, const Nat& t, ShiftMode mode) {
    Nat num;
    if (mode == ShiftMode::XAxis)
        num = l.bn * l.kd - l.kn * t * l.bd;
    else
        num = l.bn * l.kd + t * l.bd * (l.kd - l.kn);
    return make_line(l.kn, l.kd, num, l.bd * l.kd);
}

enum class Family { Lower, Upper };

/// l_n (lower: through (n,1)) or L_n (upper: through (n,n-1)) of slope k < 0.
inline RationalLine family_line(const Nat& kn, const Nat& kd, const Nat& n, Family family) {
    auto [skn, skd] = detail::canonical_fraction(kn, kd);
    if (skn >= 0) throw std::invalid_argument("family_line: slope must be negative");
    Nat num;
    if (family == Family::Lower)
        num = skd - skn * n;
    else
        num = n * (skd - skn) - skd;
    return make_line(skn, skd, num, skd);
}

}  // namespace gmn
