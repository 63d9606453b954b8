#pragma once

/**
 * @brief Classification of Markov values along a line.
 *
 * Walking the region points of a line by increasing x, the value sequence
 * m(P_0), m(P_1), ... is Increasing, Decreasing, or NonMonotonic (down then
 * up, with a unique turning point). The step ratios decide it: a ratio >= 1
 * means the next value does not drop. The exhaustive mode compares every
 * ratio against 1 and re-verifies that the comparison signs change at most
 * once; the fast mode trusts that step ratios increase along the line, reads
 * only the first and last ratio, and locates the turning point by bisection.
 */

#include "gmn/exact.hpp"
#include "gmn/lines.hpp"
#include "gmn/markov.hpp"
#include "gmn/ratios.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gmn {

enum class LineClass { Empty, Singleton, Increasing, Decreasing, NonMonotonic };

inline const char* line_class_name(LineClass c) {
    switch (c) {
        case LineClass::Empty: return "Empty";
        case LineClass::Singleton: return "Singleton";
        case LineClass::Increasing: return "Increasing";
        case LineClass::Decreasing: return "Decreasing";
        case LineClass::NonMonotonic: return "NonMonotonic";
    }
    return "?";
}

enum class ClassifyMode { Exhaustive, Fast };

struct MonotonicityReport {
    RationalLine line;
    std::optional<Nat> x_cap;
    LineClass classification = LineClass::Empty;
    ClassifyMode mode = ClassifyMode::Exhaustive;
    std::vector<LatticePoint> points;
    /// Parallel to points; filled in exhaustive mode only.
    std::vector<Nat> values;
    /// ratios[i] = m(points[i+1]) / m(points[i]); exhaustive mode only.
    std::vector<ExactRatio> ratios;
    std::optional<ExactRatio> first_ratio;
    std::optional<ExactRatio> last_ratio;
    /// Argmin of the values, reported for NonMonotonic lines and for exact
    /// ties of the minimum; ties resolve to the smaller x.
    std::optional<LatticePoint> turning_point;
    bool tie_flag = false;
};

namespace detail {

inline LineClass class_of_comparisons(const std::vector<Ordering>& cmps) {
    bool any_less = false, any_greater = false;
    for (const Ordering c : cmps) {
        if (c == Ordering::Less) any_less = true;
        if (c == Ordering::Greater) any_greater = true;
    }
    if (any_less && any_greater) return LineClass::NonMonotonic;
    if (!any_less) return LineClass::Increasing;
    return LineClass::Decreasing;
}

}  // namespace detail

inline MonotonicityReport classify_line(const RationalLine& l,
                                        const std::optional<Nat>& x_cap = std::nullopt,
                                        ClassifyMode mode = ClassifyMode::Exhaustive,
                                        MarkovCache* cache = nullptr) {
    MonotonicityReport rep;
    rep.line = l;
    rep.x_cap = x_cap;
    rep.mode = mode;
    rep.points = region_points(l, x_cap);
    const std::size_t n = rep.points.size();
    if (n == 0) return rep;
    if (n == 1) {
        rep.classification = LineClass::Singleton;
        rep.values.push_back(markov_at(rep.points[0], cache));
        return rep;
    }

    if (mode == ClassifyMode::Exhaustive) {
        rep.values.reserve(n);
        for (const auto& p : rep.points) rep.values.push_back(markov_at(p, cache));
        rep.ratios.reserve(n - 1);
        std::vector<Ordering> cmps;
        cmps.reserve(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            rep.ratios.emplace_back(rep.values[i + 1], rep.values[i]);
            cmps.push_back(compare_to_one(rep.ratios.back()));
        }
        rep.first_ratio = rep.ratios.front();
        rep.last_ratio = rep.ratios.back();
        rep.classification = detail::class_of_comparisons(cmps);

        // The comparison signs must pass from "drop" to "no drop" at most
        // once; more than one change would contradict rising step ratios.
        for (std::size_t i = 0; i + 1 < cmps.size(); ++i)
            if (cmps[i] != Ordering::Less && cmps[i + 1] == Ordering::Less)
                throw std::logic_error("classify_line: value sequence is not unimodal");

        const auto min_it = std::min_element(rep.values.begin(), rep.values.end());
        const std::size_t argmin = static_cast<std::size_t>(min_it - rep.values.begin());
        rep.tie_flag = std::count(rep.values.begin(), rep.values.end(), *min_it) > 1;
        if (rep.classification == LineClass::NonMonotonic || rep.tie_flag)
            rep.turning_point = rep.points[argmin];
        return rep;
    }

    // Fast mode: values at probed points only.
    std::map<std::size_t, Nat> probed;
    auto value_at = [&](std::size_t i) -> const Nat& {
        auto it = probed.find(i);
        if (it == probed.end()) it = probed.emplace(i, markov_at(rep.points[i], cache)).first;
        return it->second;
    };
    auto ratio_at = [&](std::size_t i) { return ExactRatio(value_at(i + 1), value_at(i)); };
    const ExactRatio first = ratio_at(0);
    const ExactRatio last = ratio_at(n - 2);
    rep.first_ratio = first;
    rep.last_ratio = last;
    const Ordering cf = compare_to_one(first);
    const Ordering cl = compare_to_one(last);
    if (cf != Ordering::Less) {
        rep.classification = LineClass::Increasing;
        rep.tie_flag = (cf == Ordering::Equal);
        if (rep.tie_flag) rep.turning_point = rep.points[0];
        return rep;
    }
    if (cl != Ordering::Greater) {
        rep.classification = LineClass::Decreasing;
        rep.tie_flag = (cl == Ordering::Equal);
        if (rep.tie_flag) rep.turning_point = rep.points[n - 2];
        return rep;
    }
    rep.classification = LineClass::NonMonotonic;
    // Least i with ratio_i >= 1; ratios rise along the line, so bisect.
    std::size_t lo = 0, hi = n - 2;
    while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (compare_to_one(ratio_at(mid)) != Ordering::Less)
            hi = mid;
        else
            lo = mid;
    }
    rep.turning_point = rep.points[hi];
    rep.tie_flag = (compare_to_one(ratio_at(hi)) == Ordering::Equal);
    return rep;
}

/// Smallest positive integer c such that the line of slope kn/kd (which must
/// sit in the mixed regime) with intercept c/kd is NonMonotonic; nullopt if
/// no such c <= c_cap exists.
inline std::optional<MonotonicityReport> find_nonmonotonic_intercept(
    const Nat& kn, const Nat& kd, const Nat& c_cap, MarkovCache* cache = nullptr) {
    auto [skn, skd] = detail::canonical_fraction(kn, kd);
    if (slope_regime(skn, skd) != Regime::Mixed)
        throw std::invalid_argument("find_nonmonotonic_intercept: slope is not in the mixed regime");
    for (Nat c = 1; c <= c_cap; ++c) {
        auto rep = classify_line(make_line(skn, skd, c, skd), std::nullopt,
                                 ClassifyMode::Exhaustive, cache);
        if (rep.classification == LineClass::NonMonotonic) return rep;
    }
    return std::nullopt;
}

}  // namespace gmn
