#pragma once

/**
 * @brief Ratios of neighbouring Markov numbers and their limiting values.
 *
 * Three ratio maps drive everything: the horizontal ratio m(q+1,p)/m(q,p),
 * the vertical ratio m(q,p+1)/m(q,p), and along a line the step ratio
 * m(P_{i+1})/m(P_i) between consecutive region points. Ratios are never
 * reduced; comparisons cross-multiply.
 *
 * For a negative slope -a1/a2 in lowest terms, the step ratios of the
 * boundary families converge to closed forms:
 *
 *   last steps of l_n   ->  ((5-sqrt(5))/6)^a1 * phi^(2*a2)        in Q(sqrt5)
 *   first steps of L_n  ->  (3/(2*sqrt2))^(a1+a2) * (1+sqrt2)^(a2-a1)  in Q(sqrt2)
 *
 * Each limit crosses 1 at an irrational critical slope; the two critical
 * slopes k_plus and k_minus split negative slopes into an increasing, a
 * mixed and a decreasing regime. Regime membership of a rational slope is
 * decided by enclosing the defining logarithmic inequality in intervals and
 * widening the precision until the comparison is strict.
 */

#include "gmn/exact.hpp"
#include "gmn/lines.hpp"
#include "gmn/markov.hpp"
#include "gmn/precision.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gmn {

inline Nat markov_at(const LatticePoint& p, MarkovCache* cache = nullptr) {
    return generalized_markov(p.x, p.y, cache);
}

/// m(q+1,p) / m(q,p) for 0 <= p <= q, q >= 1.
inline ExactRatio horizontal_ratio(const Nat& q, const Nat& p, MarkovCache* cache = nullptr) {
    if (q < 1 || p < 0 || p > q) throw std::invalid_argument("horizontal_ratio: need 0 <= p <= q, q >= 1");
    return {generalized_markov(q + 1, p, cache), generalized_markov(q, p, cache)};
}

/// m(q,p+1) / m(q,p) for 0 <= p < q.
inline ExactRatio vertical_ratio(const Nat& q, const Nat& p, MarkovCache* cache = nullptr) {
    if (q < 1 || p < 0 || p >= q) throw std::invalid_argument("vertical_ratio: need 0 <= p < q");
    return {generalized_markov(q, p + 1, cache), generalized_markov(q, p, cache)};
}

///// Step ratios along a line: entry i pairs the region point P_i with
/// m(P_{i+1})/m(P_i). Empty when the line has fewer than two region points.
inline std::vector<std::pair<LatticePoint, ExactRatio>> line_ratios(
    const RationalLine& l, const std::optional<Nat>& x_cap = std::nullopt,
    MarkovCache* cache = nullptr) {
    const auto pts = region_points(l, x_cap);
    std::vector<std::pair<LatticePoint, ExactRatio>> out;
    if (pts.size() < 2) return out;
    out.reserve(pts.size() - 1);
    Nat prev = markov_at(pts[0], cache);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        Nat next = markov_at(pts[i + 1], cache);
        out.emplace_back(pts[i], ExactRatio(next, prev));
        prev = std::move(next);
    }
    return out;
}

/// m(second)/m(first), absent when the line has fewer than two region points.
inline std::optional<ExactRatio> first_step_ratio(const RationalLine& l,
                                                  MarkovCache* cache = nullptr) {
    const auto ep = endpoints(l);
    if (!ep.first || !ep.second) return std::nullopt;
    return ExactRatio(markov_at(*ep.second, cache), markov_at(*ep.first, cache));
}

/// m(last)/m(second_last), absent when the window is infinite or < 2 points.
inline std::optional<ExactRatio> last_step_ratio(const RationalLine& l,
                                                 MarkovCache* cache = nullptr) {
    const auto ep = endpoints(l);
    if (!ep.last || !ep.second_last) return std::nullopt;
    return ExactRatio(markov_at(*ep.last, cache), markov_at(*ep.second_last, cache));
}

struct LimitValue {
    QuadSurd exact;
    unsigned digits;
    std::string decimal;
};

namespace detail {

inline void check_primitive_slope(const Nat& a1, const Nat& a2) {
    if (a1 < 1 || a2 < 1) throw std::invalid_argument("slope parts must be positive");
    if (boost::multiprecision::gcd(a1, a2) != 1)
        throw std::invalid_argument("slope -a1/a2 must be in lowest terms");
}

}  // namespace detail

/// Limit of the last step ratio of l_n as n grows, for slope -a1/a2.
inline LimitValue limit_last_ratio(const Nat& a1, const Nat& a2, unsigned digits) {
    detail::check_primitive_slope(a1, a2);
    const QuadSurd base(5, -1, 6, 5);
    const QuadSurd phi_sq(3, 1, 2, 5);
    QuadSurd exact = base.pow(a1.convert_to<unsigned>()) * phi_sq.pow(a2.convert_to<unsigned>());
    std::string decimal = surd_to_decimal(exact, digits);
    return {std::move(exact), digits, std::move(decimal)};
}

/// Limit of the first step ratio of L_n as n grows, for slope -a1/a2.
inline LimitValue limit_first_ratio(const Nat& a1, const Nat& a2, unsigned digits) {
    detail::check_primitive_slope(a1, a2);
    const QuadSurd base(0, 3, 4, 2);
    const QuadSurd silver(1, 1, 1, 2);
    const QuadSurd silver_inv(-1, 1, 1, 2);
    QuadSurd exact = base.pow((a1 + a2).convert_to<unsigned>());
    exact = exact * (a2 >= a1 ? silver.pow((a2 - a1).convert_to<unsigned>())
                              : silver_inv.pow((a1 - a2).convert_to<unsigned>()));
    std::string decimal = surd_to_decimal(exact, digits);
    return {std::move(exact), digits, std::move(decimal)};
}

inline QuadSurd surd_phi() { return {1, 1, 2, 5}; }
inline QuadSurd surd_phi_sq() { return {3, 1, 2, 5}; }
inline QuadSurd surd_silver() { return {1, 1, 1, 2}; }

namespace detail {

// Log arguments of the two critical-slope formulas:
//   k_plus  = -ln(3*(2+sqrt2)/4) / ln(2*(2+sqrt2)/3)
//   k_minus = -2*ln(phi) / ln(3*(1+sqrt5)/(2*sqrt5))
inline Ival ln_A(unsigned scale) { return ival_ln(ival_surd(6, 3, 2, 4, scale)); }
inline Ival ln_B(unsigned scale) { return ival_ln(ival_surd(4, 2, 2, 3, scale)); }
inline Ival ln_phi(unsigned scale) { return ival_ln(ival_surd(1, 1, 5, 2, scale)); }
inline Ival ln_C(unsigned scale) { return ival_ln(ival_surd(15, 3, 5, 10, scale)); }

inline Ival k_plus_enclosure(unsigned scale) {
    return ival_neg(ival_div_pos(ln_A(scale), ln_B(scale)));
}

inline Ival k_minus_enclosure(unsigned scale) {
    return ival_neg(ival_div_pos(ival_mul_int(ln_phi(scale), 2), ln_C(scale)));
}

}  // namespace detail

/// The four constants of the regime split, rendered to `digits` places.
struct ClosedFormConstants {
    unsigned digits;
    std::string phi;
    std::string silver;
    std::string k_plus;
    std::string k_minus;
};

inline ClosedFormConstants thresholds(unsigned digits) {
    ClosedFormConstants c;
    c.digits = digits;
    c.phi = surd_to_decimal(surd_phi(), digits);
    c.silver = surd_to_decimal(surd_silver(), digits);
    c.k_plus = decimal_from_enclosure(digits, digits + 15, detail::k_plus_enclosure);
    c.k_minus = decimal_from_enclosure(digits, digits + 15, detail::k_minus_enclosure);
    const unsigned s = 50;
    const Ival kp = detail::k_plus_enclosure(s);
    const Ival km = detail::k_minus_enclosure(s);
    if (!(km.hi < kp.lo) || !(kp.hi < -pow10(s)))
        throw std::logic_error("thresholds: expected k_minus < k_plus < -1");
    return c;
}

enum class Regime { Increasing, Mixed, Decreasing };

/// Which side of the critical slopes a rational slope kn/kd falls on.
/// Nonnegative slopes are increasing outright.
inline Regime slope_regime(const Nat& kn, const Nat& kd) {
    auto [skn, skd] = detail::canonical_fraction(kn, kd);
    if (skn >= 0) return Regime::Increasing;
    const Nat a1 = -skn, a2 = skd;
    for (unsigned scale = 40; scale <= 2000; scale *= 2) {
        // k >= k_plus  <=>  a1*ln(B) <= a2*ln(A)
        const int above = ival_compare(ival_mul_int(detail::ln_B(scale), a1),
                                       ival_mul_int(detail::ln_A(scale), a2));
        if (above == 0) continue;
        if (above < 0) return Regime::Increasing;
        // k <= k_minus  <=>  a1*ln(C) >= 2*a2*ln(phi)
        const int below = ival_compare(ival_mul_int(detail::ln_C(scale), a1),
                                       ival_mul_int(detail::ln_phi(scale), 2 * a2));
        if (below == 0) continue;
        return below > 0 ? Regime::Decreasing : Regime::Mixed;
    }
    throw std::logic_error("slope_regime: comparison did not resolve; slope may equal a threshold");
}

inline Regime slope_regime(const RationalLine& l) { return slope_regime(l.kn, l.kd); }

}  // namespace gmn
