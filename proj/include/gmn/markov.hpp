#pragma once

/**
 * @brief Markov numbers indexed by lattice points.
 *
 * m(q,p) is defined for 0 <= p <= q. The boundaries are classical: the
 * horizontal edge carries even-indexed Fibonacci numbers, the diagonal
 * even-indexed Pell numbers. Interior values come from the Markov tree:
 * descend the Stern-Brocot tree to the fraction p/q (in lowest terms),
 * mutating the triple along the way, and read off the mediant entry. A
 * non-coprime pair (q,p) = g*(q',p') is filled in by the three-term
 * recurrence f_n = 3*f_1*f_{n-1} - f_{n-2} seeded with f_0 = 0 and f_1 =
 * m(q',p').
 *
 * An independent route to the same interior values multiplies 2x2 matrices
 * along a Christoffel word and divides the trace by three; the two must
 * agree, which the verification suites exercise.
 */

#include "gmn/exact.hpp"
#include "gmn/precision.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gmn {

inline Nat fibonacci(unsigned long long n) {
    Nat a = 0, b = 1;
    for (unsigned long long i = 0; i < n; ++i) {
        Nat next = a + b;
        a = b;
        b = next;
    }
    return a;
}

inline Nat pell(unsigned long long n) {
    Nat a = 0, b = 1;
    for (unsigned long long i = 0; i < n; ++i) {
        Nat next = 2 * b + a;
        a = b;
        b = next;
    }
    return a;
}

struct Fraction {
    Nat num;
    Nat den;
};

/// A Markov triple together with the Stern-Brocot interval it sits on.
/// The entry z belongs to the mediant of [left, right]; x to the left
/// endpoint and y to the right endpoint.
struct MarkovTriple {
    Nat x;
    Nat y;
    Nat z;
    Fraction left;
    Fraction right;

    Fraction mediant() const { return {left.num + right.num, left.den + right.den}; }
};

namespace detail {

inline void check_markov_equation(const MarkovTriple& t) {
    if (t.x * t.x + t.y * t.y + t.z * t.z != 3 * t.x * t.y * t.z)
        throw std::logic_error("markov triple violates x^2+y^2+z^2=3xyz");
}

}  // namespace detail

/// Descent path from the root triple to the one indexed by p/q; the target
/// is the last element. Requires 0 < p < q with gcd(q,p) = 1.
inline std::vector<MarkovTriple> markov_triple_path(const Nat& q, const Nat& p) {
    if (q < 1 || p < 1 || p >= q) throw std::invalid_argument("markov_triple_path: need 0 < p < q");
    if (boost::multiprecision::gcd(q, p) != 1)
        throw std::invalid_argument("markov_triple_path: p/q must be in lowest terms");
    std::vector<MarkovTriple> path;
    path.push_back({1, 2, 5, {0, 1}, {1, 1}});
    detail::check_markov_equation(path.back());
    while (true) {
        const MarkovTriple& t = path.back();
        const Fraction med = t.mediant();
        const Nat lhs = p * med.den;
        const Nat rhs = q * med.num;
        if (lhs == rhs) return path;
        MarkovTriple next = t;
        if (lhs < rhs) {
            next.y = t.z;
            next.z = 3 * t.x * t.z - t.y;
            next.right = med;
        } else {
            next.x = t.z;
            next.z = 3 * t.y * t.z - t.x;
            next.left = med;
        }
        detail::check_markov_equation(next);
        if (next.z <= next.x || next.z <= next.y)
            throw std::logic_error("markov_triple_path: mediant entry is not the largest");
        path.push_back(next);
    }
}

inline MarkovTriple markov_triple_at(const Nat& q, const Nat& p) {
    return markov_triple_path(q, p).back();
}

/// Thread-safe store of already computed m(q,p) values, loadable from a
/// plain text file of "q,p,value" lines.
class MarkovCache {
public:
    std::optional<Nat> get(const Nat& q, const Nat& p) const {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = entries_.find({q, p});
        if (it == entries_.end()) return std::nullopt;
        return it->second;
    }

    void put(const Nat& q, const Nat& p, const Nat& value) {
        std::lock_guard<std::mutex> lock(mutex_);
        entries_[{q, p}] = value;
    }

    std::size_t size() const {
        std::lock_guard<std::mutex> lock(mutex_);
        return entries_.size();
    }

    void load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("MarkovCache: cannot open " + path);
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            std::istringstream row(line);
            std::string qs, ps, vs;
            if (!std::getline(row, qs, ',') || !std::getline(row, ps, ',') ||
                !std::getline(row, vs)) {
                throw std::runtime_error("MarkovCache: malformed line " + std::to_string(lineno) +
                                         " in " + path);
            }
            put(Nat(qs), Nat(ps), Nat(vs));
        }
    }

    void save(const std::string& path) const {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("MarkovCache: cannot open " + path + " for writing");
        std::lock_guard<std::mutex> lock(mutex_);
        for (const auto& [key, value] : entries_)
            out << key.first << ',' << key.second << ',' << value << '\n';
    }

private:
    mutable std::mutex mutex_;
    std::map<std::pair<Nat, Nat>, Nat> entries_;
};

/// m(q,p) for 0 <= p <= q. m(0,0) is 0 by convention.
inline Nat generalized_markov(const Nat& q, const Nat& p, MarkovCache* cache = nullptr) {
    if (p < 0 || q < p) throw std::invalid_argument("generalized_markov: need 0 <= p <= q");
    if (q == 0) return 0;
    if (cache) {
        if (auto hit = cache->get(q, p)) return *hit;
    }
    Nat result;
    if (p == 0) {
        result = fibonacci(2 * q.convert_to<unsigned long long>());
    } else if (p == q) {
        result = pell(2 * q.convert_to<unsigned long long>());
    } else {
        const Nat g = boost::multiprecision::gcd(q, p);
        const Nat f1 = markov_triple_at(q / g, p / g).z;
        Nat prev = 0, cur = f1;
        for (Nat i = 1; i < g; ++i) {
            Nat next = 3 * f1 * cur - prev;
            prev = cur;
            cur = next;
        }
        result = cur;
    }
    if (cache) cache->put(q, p, result);
    return result;
}

/// f_0..f_nmax for the primitive direction (q,p): f_n = m(n*q, n*p).
/// Requires gcd(q,p) = 1 and 0 <= p <= q, q >= 1.
inline std::vector<Nat> scaled_sequence(const Nat& q, const Nat& p, unsigned nmax) {
    if (q < 1 || p < 0 || p > q) throw std::invalid_argument("scaled_sequence: need 0 <= p <= q, q >= 1");
    if (boost::multiprecision::gcd(q, p) != 1)
        throw std::invalid_argument("scaled_sequence: direction must be primitive");
    const Nat f1 = generalized_markov(q, p);
    std::vector<Nat> seq;
    seq.reserve(nmax + 1);
    seq.push_back(0);
    if (nmax == 0) return seq;
    seq.push_back(f1);
    for (unsigned n = 2; n <= nmax; ++n) seq.push_back(3 * f1 * seq[n - 1] - seq[n - 2]);
    return seq;
}

/// Interior m(q,p) by a route independent of the tree: multiply the letter
/// matrices of the lower Christoffel word of slope p/(q-p) and take a third
/// of the trace. Requires 0 < p < q coprime.
inline Nat cohn_trace_oracle(const Nat& q, const Nat& p) {
    if (q < 1 || p < 1 || p >= q) throw std::invalid_argument("cohn_trace_oracle: need 0 < p < q");
    if (boost::multiprecision::gcd(q, p) != 1)
        throw std::invalid_argument("cohn_trace_oracle: p/q must be in lowest terms");
    Nat m00 = 1, m01 = 0, m10 = 0, m11 = 1;
    for (Nat i = 1; i <= q; ++i) {
        const bool rise = (i * p) / q > ((i - 1) * p) / q;
        const Nat a = rise ? 5 : 2, b = rise ? 2 : 1, c = rise ? 2 : 1, d = 1;
        Nat n00 = m00 * a + m01 * c;
        Nat n01 = m00 * b + m01 * d;
        Nat n10 = m10 * a + m11 * c;
        Nat n11 = m10 * b + m11 * d;
        m00 = std::move(n00);
        m01 = std::move(n01);
        m10 = std::move(n10);
        m11 = std::move(n11);
    }
    const Nat trace = m00 + m11;
    if (trace % 3 != 0) throw std::logic_error("cohn_trace_oracle: trace not divisible by 3");
    return trace / 3;
}

/// Dominant root of t^2 - 3*f1*t + 1, i.e. the per-step growth factor of
/// the scaled sequence with seed f1.
struct GrowthConstant {
    Nat f1;
    unsigned digits;
    QuadSurd alpha_exact;
    std::string alpha;
};

inline GrowthConstant growth_alpha(const Nat& f1, unsigned digits) {
    if (f1 < 1) throw std::invalid_argument("growth_alpha: f1 must be >= 1");
    QuadSurd alpha(3 * f1, 1, 2, 9 * f1 * f1 - 4);
    std::string rendered = surd_to_decimal(alpha, digits);
    return {f1, digits, std::move(alpha), std::move(rendered)};
}

}  // namespace gmn
