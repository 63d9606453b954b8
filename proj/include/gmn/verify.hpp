#pragma once

/**
 * @brief Named property suites over the whole library.
 *
 * Each suite scans a documented finite domain, checks its claims with exact
 * arithmetic (tolerances appear only where a limit is approximated), and
 * reports every failure with the first witness in scan order. Scan order is
 * fixed, so reports are reproducible; sharded runs split the outermost loop
 * into contiguous chunks and merge results in chunk order, which preserves
 * the sequential report byte for byte.
 *
 * Some suites additionally run an inequality in the direction a source
 * states it even though that direction is wrong; those produce audit
 * records carrying the refuting counterexample. An audit that unexpectedly
 * fails to find its counterexample turns into a violation.
 */

#include "gmn/exact.hpp"
#include "gmn/lines.hpp"
#include "gmn/markov.hpp"
#include "gmn/monotonicity.hpp"
#include "gmn/precision.hpp"
#include "gmn/ratios.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <future>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gmn {

struct Violation {
    std::string claim;
    std::string witness;
    std::string lhs;
    std::string rhs;
};

struct AuditRecord {
    std::string claim;
    std::string status;  // "refuted", "measured", or "unrefuted"
    std::string witness;
    std::string detail;
};

struct ViolationReport {
    std::string suite;
    std::vector<std::pair<std::string, std::string>> bounds;
    unsigned long long checks = 0;
    std::vector<Violation> violations;
    std::vector<AuditRecord> audits;
    long long elapsed_ms = 0;

    bool passed() const { return violations.empty(); }
};

using BoundMap = std::vector<std::pair<std::string, std::string>>;

struct BracketIndex {
    Nat n;
    bool coincident;
};

/// Index N such that the line lies strictly between family lines N-1 and N;
/// coincident is set (with the matching index) when the line *is* a family
/// line, in which case callers skip bracket comparisons.
inline BracketIndex bracket_index(const RationalLine& l, Family family) {
    if (l.kn >= 0) throw std::invalid_argument("bracket_index: slope must be negative");
    const Nat a1 = -l.kn, a2 = l.kd;
    Nat num, den;
    if (family == Family::Lower) {
        num = a2 * (l.bn - l.bd);
        den = a1 * l.bd;
    } else {
        num = a2 * (l.bn + l.bd);
        den = (a1 + a2) * l.bd;
    }
    if (num % den == 0) {
        Nat n = num / den;
        if (n >= 1) return {n, true};
    }
    Nat n = floor_div(num, den) + 1;
    if (n < 1) n = 1;
    return {n, false};
}

/// Smallest t <= t_cap whose shift pushes the line's end ratio past the
/// family line's end ratio (x-shift/last ratio for the lower family,
/// diagonal shift/first ratio for the upper). Absent if either line is too
/// short or the cap is exhausted.
inline std::optional<Nat> empirical_shift_threshold(const RationalLine& l, const Nat& n,
                                                    Family family, const Nat& t_cap,
                                                    MarkovCache* cache = nullptr) {
    if (l.kn >= 0)
        throw std::invalid_argument("empirical_shift_threshold: slope must be negative");
    const RationalLine fam = family_line(l.kn, l.kd, n, family);
    const auto target =
        family == Family::Lower ? last_step_ratio(fam, cache) : first_step_ratio(fam, cache);
    if (!target) return std::nullopt;
    for (Nat t = 1; t <= t_cap; ++t) {
        const RationalLine moved =
            shift(l, t, family == Family::Lower ? ShiftMode::XAxis : ShiftMode::Diagonal);
        const auto r = family == Family::Lower ? last_step_ratio(moved, cache)
                                               : first_step_ratio(moved, cache);
        if (!r) continue;
        const Ordering cmp = compare_exact(*r, *target);
        if (family == Family::Lower ? cmp == Ordering::Greater : cmp == Ordering::Less) return t;
    }
    return std::nullopt;
}

struct CorpusLine {
    RationalLine line;
    std::optional<Nat> cap;
};

/// The fixed 215-line classification corpus: five increasing-regime slopes,
/// three decreasing-regime slopes, a mixed-regime window that exhibits all
/// three classes, x-shifts of its non-monotonic witness, and through-origin
/// lines of six primitive directions.
inline const std::vector<CorpusLine>& corpus() {
    static const std::vector<CorpusLine> lines = [] {
        std::vector<CorpusLine> v;
        auto block = [&v](long kn, long kd, long c0, long c1, long bd,
                          std::optional<long> cap) {
            for (long c = c0; c <= c1; ++c)
                v.push_back({make_line(kn, kd, c, bd),
                             cap ? std::optional<Nat>(*cap) : std::nullopt});
        };
        block(-1, 1, 5, 29, 1, std::nullopt);
        block(-9, 8, 401, 425, 8, std::nullopt);
        block(-1, 2, 11, 35, 2, std::nullopt);
        block(0, 1, 1, 13, 1, 40);
        block(1, 3, 1, 6, 1, 40);
        block(-2, 1, 13, 37, 1, std::nullopt);
        block(-5, 4, 161, 185, 4, std::nullopt);
        block(-3, 2, 61, 85, 2, std::nullopt);
        block(-6, 5, 120, 154, 5, std::nullopt);
        for (long c : {155, 161, 167, 173, 179})
            v.push_back({make_line(-6, 5, c, 5), std::nullopt});
        for (auto [p, q] : {std::pair<long, long>{1, 2}, {1, 3}, {2, 5}, {3, 5}, {1, 4}, {2, 7}})
            v.push_back({make_line(p, q, 0, 1), Nat(40)});
        return v;
    }();
    return lines;
}

namespace detail {

struct ShardResult {
    std::vector<Violation> violations;
    unsigned long long checks = 0;
};

/// Runs body(i, sink) for i in [0, n), split into `jobs` contiguous chunks;
/// violations merge in chunk order, reproducing the sequential scan order.
template <typename Body>
inline void run_sharded(std::size_t n, unsigned jobs, ViolationReport& rep, const Body& body) {
    if (jobs <= 1 || n <= 1) {
        ShardResult r;
        for (std::size_t i = 0; i < n; ++i) body(i, r);
        rep.checks += r.checks;
        for (auto& v : r.violations) rep.violations.push_back(std::move(v));
        return;
    }
    const std::size_t chunks = std::min<std::size_t>(jobs, n);
    std::vector<std::future<ShardResult>> futures;
    futures.reserve(chunks);
    for (std::size_t j = 0; j < chunks; ++j) {
        const std::size_t lo = n * j / chunks, hi = n * (j + 1) / chunks;
        futures.push_back(std::async(std::launch::async, [lo, hi, &body] {
            ShardResult r;
            for (std::size_t i = lo; i < hi; ++i) body(i, r);
            return r;
        }));
    }
    for (auto& f : futures) {
        ShardResult r = f.get();
        rep.checks += r.checks;
        for (auto& v : r.violations) rep.violations.push_back(std::move(v));
    }
}

/// Dense triangle of m(q,p) for 0 <= p <= q <= qmax.
class MarkovTable {
public:
    explicit MarkovTable(unsigned qmax, unsigned jobs = 1) : rows_(qmax + 1) {
        rows_[0] = {Nat(0)};
        auto fill_row = [this](std::size_t q) {
            rows_[q].reserve(q + 1);
            for (unsigned p = 0; p <= q; ++p) rows_[q].push_back(generalized_markov(q, p));
        };
        if (jobs <= 1) {
            for (std::size_t q = 1; q <= qmax; ++q) fill_row(q);
        } else {
            std::vector<std::future<void>> futures;
            const std::size_t chunks = std::min<std::size_t>(jobs, qmax);
            for (std::size_t j = 0; j < chunks; ++j) {
                const std::size_t lo = 1 + (qmax * j) / chunks, hi = 1 + (qmax * (j + 1)) / chunks;
                futures.push_back(std::async(std::launch::async, [lo, hi, &fill_row] {
                    for (std::size_t q = lo; q < hi; ++q) fill_row(q);
                }));
            }
            for (auto& f : futures) f.get();
        }
    }

    const Nat& at(std::size_t q, std::size_t p) const { return rows_[q][p]; }
    std::size_t qmax() const { return rows_.size() - 1; }

private:
    std::vector<std::vector<Nat>> rows_;
};

constexpr unsigned kWitnessDigits = 12;

inline std::string dec(const ExactRatio& r) { return to_decimal(r, kWitnessDigits); }

inline std::string point_str(const LatticePoint& p) {
    return "(" + p.x.str() + "," + p.y.str() + ")";
}

inline std::string line_str(const RationalLine& l) {
    return "k=" + l.kn.str() + "/" + l.kd.str() + ",b=" + l.bn.str() + "/" + l.bd.str();
}

inline void fail(ShardResult& r, std::string claim, std::string witness, std::string lhs,
                 std::string rhs) {
    r.violations.push_back({std::move(claim), std::move(witness), std::move(lhs), std::move(rhs)});
}

/// Expect a < b (or a <= b when allow_equal) and record a violation otherwise.
inline void expect_less(ShardResult& r, const ExactRatio& a, const ExactRatio& b,
                        const std::string& claim, const std::string& witness,
                        bool allow_equal = false) {
    ++r.checks;
    const Ordering c = compare_exact(a, b);
    if (c == Ordering::Less || (allow_equal && c == Ordering::Equal)) return;
    fail(r, claim, witness, dec(a), dec(b));
}

inline BoundMap merge_bounds(BoundMap defaults, const BoundMap& overrides) {
    for (const auto& [key, value] : overrides) {
        auto it = std::find_if(defaults.begin(), defaults.end(),
                               [&](const auto& kv) { return kv.first == key; });
        if (it == defaults.end())
            throw std::invalid_argument("unknown bound '" + key + "' for this suite");
        it->second = value;
    }
    return defaults;
}

inline std::string bound_of(const BoundMap& b, const std::string& key) {
    for (const auto& [k, v] : b)
        if (k == key) return v;
    throw std::logic_error("missing bound " + key);
}

inline unsigned bound_uint(const BoundMap& b, const std::string& key) {
    const Nat v = parse_integer(bound_of(b, key));
    if (v < 0 || v > 1000000) throw std::invalid_argument("bound " + key + " out of range");
    return v.convert_to<unsigned>();
}

// ---------------------------------------------------------------- suites --

inline void suite_identities(ViolationReport& rep, unsigned jobs) {
    const unsigned qmax = bound_uint(rep.bounds, "qmax");
    run_sharded(qmax, jobs, rep, [&](std::size_t i, ShardResult& r) {
        const unsigned q = static_cast<unsigned>(i) + 1;
        auto check_eq = [&](const Nat& got, const Nat& want, const char* claim) {
            ++r.checks;
            if (got != want)
                fail(r, claim, "q=" + std::to_string(q), got.str(), want.str());
        };
        check_eq(generalized_markov(q, 0), fibonacci(2ULL * q), "fib-edge");
        check_eq(generalized_markov(q, q), pell(2ULL * q), "pell-edge");
        check_eq(generalized_markov(q, 1), fibonacci(2ULL * q + 1), "fib-column");
        if (q >= 2) check_eq(generalized_markov(q, q - 1), pell(2ULL * q - 1), "pell-diagonal");
    });
    // Multiples of a primitive direction agree with the scaled recurrence.
    ShardResult r;
    for (auto [q, p] : {std::pair<unsigned, unsigned>{2, 1}, {3, 1}, {3, 2}, {5, 2}}) {
        const auto seq = scaled_sequence(q, p, 6);
        for (unsigned n = 1; n <= 6; ++n) {
            ++r.checks;
            const Nat direct = generalized_markov(Nat(n) * q, Nat(n) * p);
            if (direct != seq[n])
                fail(r, "scaled-multiples",
                     "q=" + std::to_string(q) + ",p=" + std::to_string(p) + ",n=" + std::to_string(n),
                     direct.str(), seq[n].str());
        }
    }
    rep.checks += r.checks;
    for (auto& v : r.violations) rep.violations.push_back(std::move(v));
}

inline void suite_markov_equation(ViolationReport& rep, unsigned jobs) {
    const unsigned qmax = bound_uint(rep.bounds, "qmax");
    run_sharded(qmax < 2 ? 0 : qmax - 1, jobs, rep, [&](std::size_t i, ShardResult& r) {
        const unsigned q = static_cast<unsigned>(i) + 2;
        for (unsigned p = 1; p < q; ++p) {
            if (boost::multiprecision::gcd(Nat(q), Nat(p)) != 1) continue;
            const auto path = markov_triple_path(q, p);
            for (const auto& t : path) {
                ++r.checks;
                if (t.x * t.x + t.y * t.y + t.z * t.z != 3 * t.x * t.y * t.z)
                    fail(r, "markov-equation",
                         "q=" + std::to_string(q) + ",p=" + std::to_string(p),
                         Nat(t.x * t.x + t.y * t.y + t.z * t.z).str(),
                         Nat(3 * t.x * t.y * t.z).str());
            }
            const Fraction med = path.back().mediant();
            ++r.checks;
            if (med.num * q != med.den * p)
                fail(r, "target-fraction", "q=" + std::to_string(q) + ",p=" + std::to_string(p),
                     med.num.str() + "/" + med.den.str(),
                     std::to_string(p) + "/" + std::to_string(q));
        }
    });
}

inline void suite_oracle_equivalence(ViolationReport& rep, unsigned jobs) {
    const unsigned qmax = bound_uint(rep.bounds, "qmax");
    run_sharded(qmax < 2 ? 0 : qmax - 1, jobs, rep, [&](std::size_t i, ShardResult& r) {
        const unsigned q = static_cast<unsigned>(i) + 2;
        for (unsigned p = 1; p < q; ++p) {
            if (boost::multiprecision::gcd(Nat(q), Nat(p)) != 1) continue;
            ++r.checks;
            const Nat tree = markov_triple_at(q, p).z;
            const Nat trace = cohn_trace_oracle(q, p);
            if (tree != trace)
                fail(r, "tree-vs-trace", "q=" + std::to_string(q) + ",p=" + std::to_string(p),
                     tree.str(), trace.str());
        }
    });
}

inline void suite_h_monotonicity(ViolationReport& rep, unsigned jobs) {
    const unsigned qmax = bound_uint(rep.bounds, "qmax");
    const MarkovTable table(qmax + 2, jobs);
    auto h = [&](unsigned q, unsigned p) { return ExactRatio(table.at(q + 1, p), table.at(q, p)); };
    run_sharded(qmax, jobs, rep, [&](std::size_t i, ShardResult& r) {
        const unsigned q = static_cast<unsigned>(i) + 1;
        const std::string qs = "q=" + std::to_string(q);
        for (unsigned p = 1; p <= q; ++p)
            expect_less(r, h(q, p), h(q + 1, p), "h-increasing-in-q", qs + ",p=" + std::to_string(p));
        for (unsigned p = 0; p < q; ++p)
            expect_less(r, h(q, p + 1), h(q, p), "h-decreasing-in-p", qs + ",p=" + std::to_string(p));
    });
}

inline void suite_v_monotonicity(ViolationReport& rep, unsigned jobs) {
    const unsigned qmax = bound_uint(rep.bounds, "qmax");
    const MarkovTable table(qmax + 1, jobs);
    auto v = [&](unsigned q, unsigned p) { return ExactRatio(table.at(q, p + 1), table.at(q, p)); };
    run_sharded(qmax, jobs, rep, [&](std::size_t i, ShardResult& r) {
        const unsigned q = static_cast<unsigned>(i) + 1;
        const std::string qs = "q=" + std::to_string(q);
        for (unsigned p = 0; p + 1 < q; ++p)
            expect_less(r, v(q, p), v(q, p + 1), "v-increasing-in-p", qs + ",p=" + std::to_string(p));
        if (q <= qmax - 1)
            for (unsigned p = 0; p < q; ++p)
                expect_less(r, v(q + 1, p), v(q, p), "v-decreasing-in-q",
                            qs + ",p=" + std::to_string(p));
    });
    // Audit: the increasing q-direction as printed elsewhere is false.
    AuditRecord audit{"printed: v(q,p) < v(q+1,p)", "unrefuted", "", ""};
    for (unsigned q = 1; q + 1 <= qmax && audit.status == "unrefuted"; ++q)
        for (unsigned p = 0; p < q; ++p)
            if (compare_exact(v(q, p), v(q + 1, p)) != Ordering::Less) {
                audit.status = "refuted";
                audit.witness = "q=" + std::to_string(q) + ",p=" + std::to_string(p);
                audit.detail = "v(q,p)=" + dec(v(q, p)) + " >= v(q+1,p)=" + dec(v(q + 1, p));
                break;
            }
    if (audit.status == "unrefuted")
        rep.violations.push_back({"audit: printed v-direction lacks counterexample", "", "", ""});
    rep.audits.push_back(std::move(audit));
}

inline void suite_ratio_bounds(ViolationReport& rep, unsigned jobs) {
    const unsigned qmax = bound_uint(rep.bounds, "qmax");
    const MarkovTable table(qmax + 1, jobs);
    const QuadSurd phi = surd_phi(), phi2 = surd_phi_sq(), silver = surd_silver();
    auto h = [&](unsigned q, unsigned p) { return ExactRatio(table.at(q + 1, p), table.at(q, p)); };
    auto v = [&](unsigned q, unsigned p) { return ExactRatio(table.at(q, p + 1), table.at(q, p)); };
    auto expect_surd = [&](ShardResult& r, const QuadSurd& s, const ExactRatio& x, Ordering want,
                           const char* claim, const std::string& witness) {
        ++r.checks;
        if (compare_surd_rational(s, x.num, x.den) != want)
            fail(r, claim, witness, dec(x), surd_to_decimal(s, kWitnessDigits));
    };
    run_sharded(qmax, jobs, rep, [&](std::size_t i, ShardResult& r) {
        const unsigned q = static_cast<unsigned>(i) + 1;
        const std::string qs = "q=" + std::to_string(q);
        for (unsigned p = 1; p <= q && q + 1 <= qmax; ++p) {
            expect_surd(r, silver, h(q, p), Ordering::Less, "h-above-silver",
                        qs + ",p=" + std::to_string(p));
            expect_surd(r, phi2, h(q, p), Ordering::Greater, "h-below-phi-squared",
                        qs + ",p=" + std::to_string(p));
        }
        if (q + 1 <= qmax) {
            expect_surd(r, phi2, h(q, 0), Ordering::Less, "h-top-row-above-phi-squared", qs);
            if (q + 2 <= qmax) expect_less(r, h(q + 1, 0), h(q, 0), "h-top-row-decreasing", qs);
        }
        for (unsigned p = 0; p < q; ++p) {
            expect_surd(r, phi, v(q, p), Ordering::Less, "v-above-phi",
                        qs + ",p=" + std::to_string(p));
            expect_surd(r, silver, v(q, p), Ordering::Greater, "v-below-silver",
                        qs + ",p=" + std::to_string(p));
        }
    });
    // Audits: two printed vertical bounds fail on small indices.
    auto audit_scan = [&](const std::string& claim, unsigned pmin,
                          const std::function<bool(unsigned, unsigned)>& holds) {
        AuditRecord a{claim, "unrefuted", "", ""};
        for (unsigned q = 1; q <= qmax && a.status == "unrefuted"; ++q)
            for (unsigned p = pmin; p < q; ++p)
                if (!holds(q, p)) {
                    a.status = "refuted";
                    a.witness = "q=" + std::to_string(q) + ",p=" + std::to_string(p);
                    a.detail = "v=" + v(q, p).num.str() + "/" + v(q, p).den.str() + " = " + dec(v(q, p));
                    break;
                }
        if (a.status == "unrefuted")
            rep.violations.push_back({"audit: " + claim + " lacks counterexample", "", "", ""});
        rep.audits.push_back(std::move(a));
    };
    audit_scan("printed: v(q,p) < phi for p >= 1", 1, [&](unsigned q, unsigned p) {
        return compare_surd_rational(phi, v(q, p).num, v(q, p).den) == Ordering::Greater;
    });
    audit_scan("printed: 1+sqrt2 < v(q,p)", 0, [&](unsigned q, unsigned p) {
        return compare_surd_rational(silver, v(q, p).num, v(q, p).den) == Ordering::Less;
    });
}

inline void suite_line_ratio_monotonicity(ViolationReport& rep, unsigned jobs) {
    const auto& lines = corpus();
    run_sharded(lines.size(), jobs, rep, [&](std::size_t i, ShardResult& r) {
        const auto& [line, cap] = lines[i];
        const auto rs = line_ratios(line, cap);
        if (rs.size() < 2 && !(line.bn == 0 && rs.size() == 1)) return;
        const std::string w = line_str(line);
        if (line.bn == 0) {
            // Through-origin lines: ratios sink toward the growth constant
            // of the primitive direction, staying strictly above it.
            const Nat f1 = generalized_markov(line.kd, line.kn);
            const QuadSurd alpha(3 * f1, 1, 2, 9 * f1 * f1 - 4);
            for (std::size_t j = 0; j + 1 < rs.size(); ++j)
                expect_less(r, rs[j + 1].second, rs[j].second, "step-ratios-decrease-to-alpha",
                            w + ",i=" + std::to_string(j));
            for (std::size_t j = 0; j < rs.size(); ++j) {
                ++r.checks;
                if (compare_surd_rational(alpha, rs[j].second.num, rs[j].second.den) !=
                    Ordering::Less)
                    fail(r, "step-ratio-above-alpha", w + ",i=" + std::to_string(j),
                         dec(rs[j].second), surd_to_decimal(alpha, kWitnessDigits));
            }
        } else {
            for (std::size_t j = 0; j + 1 < rs.size(); ++j)
                expect_less(r, rs[j].second, rs[j + 1].second, "step-ratios-increase",
                            w + ",i=" + std::to_string(j));
        }
    });
}

inline void suite_parallel_line_comparisons(ViolationReport& rep, unsigned jobs) {
    const unsigned box = bound_uint(rep.bounds, "box");
    static constexpr std::pair<unsigned, unsigned> kSlopes[] = {{1, 1}, {9, 8}, {1, 2}, {2, 1},
                                                                {5, 4}, {3, 2}, {6, 5}};
    unsigned max_a2 = 0;
    for (auto [a1, a2] : kSlopes) max_a2 = std::max(max_a2, a2);
    const MarkovTable table(box + max_a2, jobs);
    run_sharded(std::size(kSlopes), jobs, rep, [&](std::size_t i, ShardResult& r) {
        const auto [a1, a2] = kSlopes[i];
        const std::string ks = "k=-" + std::to_string(a1) + "/" + std::to_string(a2);
        auto ratio = [&](unsigned x, unsigned y) {
            return ExactRatio(table.at(x + a2, y - a1), table.at(x, y));
        };
        auto in_domain = [&](unsigned x, unsigned y) { return y >= a1 && y <= x && x <= box; };
        for (unsigned x = 1; x <= box; ++x)
            for (unsigned y = a1; y <= x; ++y) {
                const std::string w =
                    ks + ",x=" + std::to_string(x) + ",y=" + std::to_string(y);
                if (in_domain(x + 1, y))
                    expect_less(r, ratio(x, y), ratio(x + 1, y), "successor-ratio-grows-with-x", w);
                if (in_domain(x, y + 1))
                    expect_less(r, ratio(x, y + 1), ratio(x, y), "successor-ratio-falls-with-y", w);
                if (in_domain(x + 1, y + 1))
                    expect_less(r, ratio(x + 1, y + 1), ratio(x, y), "successor-ratio-falls-on-diagonal", w);
            }
    });
}

inline void suite_midpoint_inequality(ViolationReport& rep, unsigned jobs) {
    const unsigned qmax = bound_uint(rep.bounds, "qmax");
    const MarkovTable table(qmax, jobs);
    std::vector<std::pair<unsigned, unsigned>> pts;
    for (unsigned x = 0; x <= qmax; ++x)
        for (unsigned y = 0; y <= x; ++y) pts.emplace_back(x, y);
    run_sharded(pts.size(), jobs, rep, [&](std::size_t i, ShardResult& r) {
        const auto [x1, y1] = pts[i];
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const auto [x2, y2] = pts[j];
            if ((x1 + x2) % 2 || (y1 + y2) % 2) continue;
            ++r.checks;
            const Nat sum = table.at(x1, y1) + table.at(x2, y2);
            const Nat twice = 2 * table.at((x1 + x2) / 2, (y1 + y2) / 2);
            if (sum <= twice)
                fail(r, "midpoint-strict-convexity",
                     "P=(" + std::to_string(x1) + "," + std::to_string(y1) + "),Q=(" +
                         std::to_string(x2) + "," + std::to_string(y2) + ")",
                     sum.str(), twice.str());
        }
    });
}

inline void suite_shift_consistency(ViolationReport& rep, unsigned jobs) {
    const unsigned tmax = bound_uint(rep.bounds, "tmax");
    std::vector<const CorpusLine*> neg;
    for (const auto& cl : corpus())
        if (cl.line.kn < 0) neg.push_back(&cl);
    auto plus = [](const LatticePoint& p, const Nat& dx, const Nat& dy) {
        return LatticePoint{p.x + dx, p.y + dy};
    };
    run_sharded(neg.size(), jobs, rep, [&](std::size_t i, ShardResult& r) {
        const RationalLine& l = neg[i]->line;
        const auto ep = endpoints(l);
        if (!ep.first) return;
        for (unsigned t = 1; t <= tmax; ++t) {
            const std::string w = line_str(l) + ",t=" + std::to_string(t);
            const auto diag = endpoints(shift(l, t, ShiftMode::Diagonal));
            const auto xsh = endpoints(shift(l, t, ShiftMode::XAxis));
            auto expect_point = [&](const std::optional<LatticePoint>& got,
                                    const LatticePoint& want, const char* claim) {
                ++r.checks;
                if (!got || !(*got == want))
                    fail(r, claim, w, got ? point_str(*got) : "absent", point_str(want));
            };
            expect_point(diag.first, plus(*ep.first, t, t), "diagonal-shift-first");
            if (ep.second) expect_point(diag.second, plus(*ep.second, t, t), "diagonal-shift-second");
            if (ep.last) expect_point(xsh.last, plus(*ep.last, t, 0), "x-shift-last");
            if (ep.second_last)
                expect_point(xsh.second_last, plus(*ep.second_last, t, 0), "x-shift-second-last");
        }
    });
    // Audit: pairing the diagonal shift with the last point fails at once.
    AuditRecord audit{"printed: last point of diagonal shift moves by (t,0)", "unrefuted", "", ""};
    for (const auto* cl : neg) {
        const auto ep = endpoints(cl->line);
        if (!ep.last) continue;
        for (unsigned t = 1; t <= tmax && audit.status == "unrefuted"; ++t) {
            const auto got = endpoints(shift(cl->line, t, ShiftMode::Diagonal)).last;
            const LatticePoint want = plus(*ep.last, t, 0);
            if (!got || !(*got == want)) {
                audit.status = "refuted";
                audit.witness = line_str(cl->line) + ",t=" + std::to_string(t);
                audit.detail = "actual " + (got ? point_str(*got) : "absent") + ", printed " +
                               point_str(want);
            }
        }
        if (audit.status == "refuted") break;
    }
    if (audit.status == "unrefuted")
        rep.violations.push_back({"audit: printed shift pairing lacks counterexample", "", "", ""});
    rep.audits.push_back(std::move(audit));
}

inline void suite_bracket_inequalities(ViolationReport& rep, unsigned jobs) {
    std::vector<const CorpusLine*> neg;
    for (const auto& cl : corpus())
        if (cl.line.kn < 0) neg.push_back(&cl);
    run_sharded(neg.size(), jobs, rep, [&](std::size_t i, ShardResult& r) {
        const RationalLine& l = neg[i]->line;
        const std::string w = line_str(l);
        const auto r_last = last_step_ratio(l);
        const auto r_first = first_step_ratio(l);
        if (!r_last || !r_first) return;
        const auto lower = bracket_index(l, Family::Lower);
        if (!lower.coincident) {
            const auto fam = last_step_ratio(family_line(l.kn, l.kd, lower.n, Family::Lower));
            if (fam)
                expect_less(r, *r_last, *fam, "last-ratio-below-lower-bracket",
                            w + ",n=" + lower.n.str());
        }
        const auto upper = bracket_index(l, Family::Upper);
        if (!upper.coincident) {
            const auto fam = first_step_ratio(family_line(l.kn, l.kd, upper.n, Family::Upper));
            if (fam)
                expect_less(r, *fam, *r_first, "first-ratio-above-upper-bracket",
                            w + ",n=" + upper.n.str());
        }
    });
}

inline void suite_tail_convergence(ViolationReport& rep, unsigned jobs) {
    (void)jobs;
    const auto [a1, a2] = parse_rational(bound_of(rep.bounds, "slope"));
    const unsigned nmax = bound_uint(rep.bounds, "nmax");
    const auto [tol_num, tol_den] = parse_rational(bound_of(rep.bounds, "tol"));
    if (a1 < 1 || a2 < 1) throw std::invalid_argument("tail_convergence: slope must be positive a1/a2");
    if (tol_num < 0) throw std::invalid_argument("tail_convergence: negative tolerance");
    const Nat kn = -a1, kd = a2;
    const unsigned n0 = (a1 + a2 + 2).convert_to<unsigned>();
    if (nmax < n0 + 1) throw std::invalid_argument("tail_convergence: nmax too small for slope");
    const LimitValue lower_limit = limit_last_ratio(a1, a2, kWitnessDigits);
    const LimitValue upper_limit = limit_first_ratio(a1, a2, kWitnessDigits);
    const std::string ks = "k=-" + a1.str() + "/" + a2.str();

    ShardResult r;
    auto surd_scaled = [](const QuadSurd& s, const Nat& num, const Nat& den) {
        return s * QuadSurd::from_rational(num, den, s.d);
    };
    std::vector<ExactRatio> lower_seq, upper_seq;
    for (unsigned n = n0; n <= nmax; ++n) {
        const auto rl = last_step_ratio(family_line(kn, kd, n, Family::Lower));
        const auto ru = first_step_ratio(family_line(kn, kd, n, Family::Upper));
        if (!rl || !ru) {
            fail(r, "family-line-too-short", ks + ",n=" + std::to_string(n), "", "");
            continue;
        }
        const std::string w = ks + ",n=" + std::to_string(n);
        if (!lower_seq.empty())
            expect_less(r, lower_seq.back(), *rl, "lower-last-ratio-increasing", w);
        if (!upper_seq.empty())
            expect_less(r, *ru, upper_seq.back(), "upper-first-ratio-decreasing", w);
        ++r.checks;
        if (compare_surd_rational(lower_limit.exact, rl->num, rl->den) != Ordering::Greater)
            fail(r, "lower-last-ratio-below-limit", w, dec(*rl), lower_limit.decimal);
        ++r.checks;
        if (compare_surd_rational(upper_limit.exact, ru->num, ru->den) != Ordering::Less)
            fail(r, "upper-first-ratio-above-limit", w, dec(*ru), upper_limit.decimal);
        lower_seq.push_back(*rl);
        upper_seq.push_back(*ru);
    }
    if (!lower_seq.empty()) {
        // Relative tolerance at nmax: limit*(1 -/+ tol) must bracket the ratio.
        const std::string w = ks + ",n=" + std::to_string(nmax);
        const auto& rl = lower_seq.back();
        const auto& ru = upper_seq.back();
        ++r.checks;
        if (compare_surd_rational(surd_scaled(lower_limit.exact, tol_den - tol_num, tol_den),
                                  rl.num, rl.den) != Ordering::Less)
            fail(r, "lower-last-ratio-near-limit", w, dec(rl), lower_limit.decimal);
        ++r.checks;
        if (compare_surd_rational(surd_scaled(upper_limit.exact, tol_den + tol_num, tol_den),
                                  ru.num, ru.den) != Ordering::Greater)
            fail(r, "upper-first-ratio-near-limit", w, dec(ru), upper_limit.decimal);
    }
    // Audit: a printed claim has the shifted last ratio falling with t; the
    // family identity l_n[t] = l_{n+t} makes it rise instead.
    AuditRecord audit{"printed: last ratio of l[t] decreasing in t", "unrefuted", "", ""};
    {
        const RationalLine base = family_line(kn, kd, n0, Family::Lower);
        const auto r1 = last_step_ratio(shift(base, 1, ShiftMode::XAxis));
        const auto r2 = last_step_ratio(shift(base, 2, ShiftMode::XAxis));
        if (r1 && r2 && compare_exact(*r2, *r1) == Ordering::Greater) {
            audit.status = "refuted";
            audit.witness = ks + ",base n=" + std::to_string(n0) + ",t=1..2";
            audit.detail = "r(t=1)=" + dec(*r1) + " < r(t=2)=" + dec(*r2);
        }
    }
    if (audit.status == "unrefuted")
        rep.violations.push_back({"audit: printed shift-ratio direction lacks counterexample", "", "", ""});
    rep.audits.push_back(std::move(audit));
    // Record the observed geometric rate of the lower-family gaps.
    if (lower_seq.size() >= 3) {
        const auto& r1 = lower_seq[lower_seq.size() - 3];
        const auto& r2 = lower_seq[lower_seq.size() - 2];
        const auto& r3 = lower_seq[lower_seq.size() - 1];
        const Nat g1_num = r2.num * r1.den - r1.num * r2.den;
        const Nat g2_num = r3.num * r2.den - r2.num * r3.den;
        if (g1_num > 0 && g2_num > 0) {
            const ExactRatio rate(g2_num * r1.den, g1_num * r3.den);
            rep.audits.push_back({"geometric-convergence-rate", "measured",
                                  ks + ",n=" + std::to_string(nmax),
                                  "gap(n)/gap(n-1) = " + to_decimal(rate, 6)});
        }
    }
    rep.checks += r.checks;
    for (auto& v : r.violations) rep.violations.push_back(std::move(v));
}

inline void suite_classifier_regime_agreement(ViolationReport& rep, unsigned jobs) {
    (void)jobs;
    const auto& lines = corpus();
    std::vector<RationalLine> shifted_witnesses;
    for (long c : {155, 161, 167, 173, 179}) shifted_witnesses.push_back(make_line(-6, 5, c, 5));
    bool mixed_inc = false, mixed_dec = false, mixed_non = false;
    ShardResult r;
    for (const auto& [line, cap] : lines) {
        const std::string w = line_str(line);
        const Regime regime = slope_regime(line);
        const auto rep_ex = classify_line(line, cap, ClassifyMode::Exhaustive);
        const auto rep_fast = classify_line(line, cap, ClassifyMode::Fast);

        ++r.checks;
        if (rep_ex.classification != rep_fast.classification ||
            rep_ex.turning_point.has_value() != rep_fast.turning_point.has_value() ||
            (rep_ex.turning_point && !(*rep_ex.turning_point == *rep_fast.turning_point)) ||
            rep_ex.tie_flag != rep_fast.tie_flag)
            fail(r, "fast-exhaustive-agreement", w, line_class_name(rep_ex.classification),
                 line_class_name(rep_fast.classification));

        const bool degenerate = rep_ex.classification == LineClass::Empty ||
                                rep_ex.classification == LineClass::Singleton;
        if (!degenerate) {
            if (regime == Regime::Increasing) {
                ++r.checks;
                if (rep_ex.classification != LineClass::Increasing)
                    fail(r, "increasing-regime", w, line_class_name(rep_ex.classification),
                         "Increasing");
            } else if (regime == Regime::Decreasing) {
                ++r.checks;
                if (rep_ex.classification != LineClass::Decreasing)
                    fail(r, "decreasing-regime", w, line_class_name(rep_ex.classification),
                         "Decreasing");
            } else {
                if (rep_ex.classification == LineClass::Increasing) mixed_inc = true;
                if (rep_ex.classification == LineClass::Decreasing) mixed_dec = true;
                if (rep_ex.classification == LineClass::NonMonotonic) mixed_non = true;
            }
            // First/last ratio criterion decides the class on its own.
            LineClass expected;
            if (compare_to_one(*rep_ex.first_ratio) != Ordering::Less)
                expected = LineClass::Increasing;
            else if (compare_to_one(*rep_ex.last_ratio) != Ordering::Greater)
                expected = LineClass::Decreasing;
            else
                expected = LineClass::NonMonotonic;
            ++r.checks;
            if (expected != rep_ex.classification)
                fail(r, "endpoint-criterion", w, line_class_name(rep_ex.classification),
                     line_class_name(expected));
        }
        ++r.checks;
        if (rep_ex.tie_flag) fail(r, "no-ratio-ties", w, "tie", "none");
        ++r.checks;
        if (rep_ex.turning_point.has_value() !=
            (rep_ex.classification == LineClass::NonMonotonic))
            fail(r, "turning-point-iff-nonmonotonic", w,
                 rep_ex.turning_point ? point_str(*rep_ex.turning_point) : "absent",
                 line_class_name(rep_ex.classification));
        if (std::find(shifted_witnesses.begin(), shifted_witnesses.end(), line) !=
            shifted_witnesses.end()) {
            ++r.checks;
            if (rep_ex.classification != LineClass::NonMonotonic)
                fail(r, "shifted-witnesses-nonmonotonic", w,
                     line_class_name(rep_ex.classification), "NonMonotonic");
        }
    }
    ++r.checks;
    if (!(mixed_inc && mixed_dec && mixed_non))
        fail(r, "mixed-regime-all-classes", "k=-6/5 block",
             std::string(mixed_inc ? "inc" : "-") + (mixed_dec ? ",dec" : ",-") +
                 (mixed_non ? ",non" : ",-"),
             "inc,dec,non");
    rep.checks += r.checks;
    for (auto& v : r.violations) rep.violations.push_back(std::move(v));
}

inline void suite_uniqueness_scan(ViolationReport& rep, unsigned jobs) {
    const unsigned qmax = bound_uint(rep.bounds, "qmax");
    const MarkovTable table(qmax, jobs);
    std::map<Nat, std::pair<unsigned, unsigned>> seen;
    ShardResult r;
    for (unsigned q = 1; q <= qmax; ++q)
        for (unsigned p = 1; p <= q; ++p) {
            ++r.checks;
            const auto [it, fresh] = seen.emplace(table.at(q, p), std::make_pair(q, p));
            if (!fresh)
                fail(r, "distinct-values",
                     "q=" + std::to_string(q) + ",p=" + std::to_string(p) + " vs q=" +
                         std::to_string(it->second.first) + ",p=" + std::to_string(it->second.second),
                     table.at(q, p).str(), it->first.str());
        }
    rep.checks += r.checks;
    for (auto& v : r.violations) rep.violations.push_back(std::move(v));
}

}  // namespace detail

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "identities",           "markov_equation",
        "oracle_equivalence",   "h_monotonicity",
        "v_monotonicity",       "ratio_bounds",
        "line_ratio_monotonicity", "parallel_line_comparisons",
        "midpoint_inequality",  "shift_consistency",
        "bracket_inequalities", "tail_convergence",
        "classifier_regime_agreement", "uniqueness_scan"};
    return names;
}

inline ViolationReport run_suite(const std::string& name, const BoundMap& overrides = {},
                                 unsigned jobs = 1) {
    using Suite = void (*)(ViolationReport&, unsigned);
    struct Entry {
        BoundMap defaults;
        Suite fn;
    };
    static const std::map<std::string, Entry> registry = {
        {"identities", {{{"qmax", "60"}}, detail::suite_identities}},
        {"markov_equation", {{{"qmax", "40"}}, detail::suite_markov_equation}},
        {"oracle_equivalence", {{{"qmax", "25"}}, detail::suite_oracle_equivalence}},
        {"h_monotonicity", {{{"qmax", "40"}}, detail::suite_h_monotonicity}},
        {"v_monotonicity", {{{"qmax", "40"}}, detail::suite_v_monotonicity}},
        {"ratio_bounds", {{{"qmax", "40"}}, detail::suite_ratio_bounds}},
        {"line_ratio_monotonicity", {{{"corpus", "default"}}, detail::suite_line_ratio_monotonicity}},
        {"parallel_line_comparisons", {{{"box", "26"}}, detail::suite_parallel_line_comparisons}},
        {"midpoint_inequality", {{{"qmax", "30"}}, detail::suite_midpoint_inequality}},
        {"shift_consistency", {{{"corpus", "default"}, {"tmax", "3"}}, detail::suite_shift_consistency}},
        {"bracket_inequalities", {{{"corpus", "default"}}, detail::suite_bracket_inequalities}},
        {"tail_convergence",
         {{{"slope", "1/1"}, {"nmax", "30"}, {"tol", "1e-6"}}, detail::suite_tail_convergence}},
        {"classifier_regime_agreement",
         {{{"corpus", "default"}}, detail::suite_classifier_regime_agreement}},
        {"uniqueness_scan", {{{"qmax", "40"}}, detail::suite_uniqueness_scan}},
    };
    const auto it = registry.find(name);
    if (it == registry.end()) throw std::invalid_argument("unknown suite '" + name + "'");
    ViolationReport rep;
    rep.suite = name;
    rep.bounds = detail::merge_bounds(it->second.defaults, overrides);
    for (const auto& [key, value] : rep.bounds)
        if (key == "corpus" && value != "default")
            throw std::invalid_argument("bound corpus only accepts 'default'");
    const auto t0 = std::chrono::steady_clock::now();
    it->second.fn(rep, jobs);
    rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return rep;
}

}  // namespace gmn
