#pragma once

/**
 * @brief CSV / JSON / plain-text renderers for every CLI document.
 *
 * Two rules hold everywhere: big integers cross the boundary as decimal
 * strings (JSON numbers would quietly round them), and column orders are
 * frozen (extensions append). Ratio decimals truncate at the requested
 * digit count; closed-form constants (limits, thresholds, growth rates)
 * round to nearest instead, since they stand for irrational values.
 */

#include "gmn/exact.hpp"
#include "gmn/lines.hpp"
#include "gmn/markov.hpp"
#include "gmn/monotonicity.hpp"
#include "gmn/precision.hpp"
#include "gmn/ratios.hpp"
#include "gmn/verify.hpp"

#include <json.hpp>

#include <cstddef>
#include <future>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace gmn {

using ordered_json = nlohmann::ordered_json;

inline std::string fraction_text(const Nat& num, const Nat& den) {
    return num.str() + "/" + den.str();
}

/// "kn/kd,bn/bd"; the embedded comma means CSV cells quote this.
inline std::string line_text(const RationalLine& l) {
    return fraction_text(l.kn, l.kd) + "," + fraction_text(l.bn, l.bd);
}

inline std::string csv_cell(const std::string& value) {
    if (value.find_first_of(",\"\n") == std::string::npos) return value;
    std::string out = "\"";
    for (const char c : value) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline ordered_json line_to_json(const RationalLine& l) {
    return {{"k", {l.kn.str(), l.kd.str()}}, {"b", {l.bn.str(), l.bd.str()}}};
}

inline ordered_json ratio_to_json(const ExactRatio& r, unsigned digits) {
    return {{"num", r.num.str()}, {"den", r.den.str()}, {"decimal", to_decimal(r, digits)}};
}

inline std::string json_text(const ordered_json& doc) { return doc.dump(2) + "\n"; }

// ---------------------------------------------------------------- markov --

inline std::string render_markov_plain(const Nat& m) { return m.str() + "\n"; }

inline std::string render_markov_csv(const Nat& q, const Nat& p, const Nat& m) {
    return "q,p,m\n" + q.str() + "," + p.str() + "," + m.str() + "\n";
}

inline std::string render_markov_json(const Nat& q, const Nat& p, const Nat& m) {
    return json_text({{"q", q.str()}, {"p", p.str()}, {"m", m.str()}});
}

// ----------------------------------------------------------------- table --

struct TableRow {
    Nat q;
    Nat p;
    Nat m;
};

inline std::vector<TableRow> build_table(unsigned qmax, MarkovCache* cache = nullptr,
                                         unsigned jobs = 1) {
    std::vector<std::vector<TableRow>> by_q(qmax + 1);
    auto fill = [&by_q, cache](unsigned q) {
        by_q[q].reserve(q + 1);
        for (unsigned p = 0; p <= q; ++p)
            by_q[q].push_back({q, p, generalized_markov(q, p, cache)});
    };
    if (jobs <= 1 || qmax < 2) {
        for (unsigned q = 1; q <= qmax; ++q) fill(q);
    } else {
        std::vector<std::future<void>> futures;
        const unsigned stride = std::min(jobs, qmax);
        for (unsigned j = 0; j < stride; ++j)
            futures.push_back(std::async(std::launch::async, [&fill, j, stride, qmax] {
                for (unsigned q = 1 + j; q <= qmax; q += stride) fill(q);
            }));
        for (auto& f : futures) f.get();
    }
    std::vector<TableRow> rows;
    rows.reserve((std::size_t(qmax) * (qmax + 3)) / 2);
    for (auto& row : by_q)
        for (auto& e : row) rows.push_back(std::move(e));
    return rows;
}

inline std::string render_table_csv(const std::vector<TableRow>& rows) {
    std::string out = "q,p,m\n";
    for (const auto& r : rows) out += r.q.str() + "," + r.p.str() + "," + r.m.str() + "\n";
    return out;
}

inline std::string render_table_plain(const std::vector<TableRow>& rows) {
    std::string out;
    for (const auto& r : rows)
        out += "m(" + r.q.str() + "," + r.p.str() + ") = " + r.m.str() + "\n";
    return out;
}

inline std::string render_table_json(const std::vector<TableRow>& rows) {
    ordered_json entries = ordered_json::array();
    for (const auto& r : rows)
        entries.push_back({{"q", r.q.str()}, {"p", r.p.str()}, {"m", r.m.str()}});
    return json_text({{"entries", std::move(entries)}});
}

// ---------------------------------------------------------------- ratios --

struct RatioRow {
    LatticePoint point;
    Nat m;
    std::optional<ExactRatio> ratio;  // step to the next point; absent on the last row
};

inline std::vector<RatioRow> build_ratio_rows(const RationalLine& l,
                                              const std::optional<Nat>& x_cap,
                                              MarkovCache* cache = nullptr) {
    const auto pts = region_points(l, x_cap);
    std::vector<RatioRow> rows;
    rows.reserve(pts.size());
    for (const auto& pt : pts) rows.push_back({pt, markov_at(pt, cache), std::nullopt});
    for (std::size_t i = 0; i + 1 < rows.size(); ++i)
        rows[i].ratio = ExactRatio(rows[i + 1].m, rows[i].m);
    return rows;
}

inline std::string render_ratios_csv(const std::vector<RatioRow>& rows, unsigned digits) {
    std::string out = "x,y,m,ratio,ratio_decimal\n";
    for (const auto& r : rows) {
        out += r.point.x.str() + "," + r.point.y.str() + "," + r.m.str() + ",";
        if (r.ratio)
            out += csv_cell(fraction_text(r.ratio->num, r.ratio->den)) + "," +
                   to_decimal(*r.ratio, digits);
        else
            out += ",";
        out += "\n";
    }
    return out;
}

inline std::string render_ratios_plain(const std::vector<RatioRow>& rows, unsigned digits) {
    std::string out;
    for (const auto& r : rows) {
        out += "(" + r.point.x.str() + "," + r.point.y.str() + ")  m=" + r.m.str();
        if (r.ratio)
            out += "  next/this=" + fraction_text(r.ratio->num, r.ratio->den) + " = " +
                   to_decimal(*r.ratio, digits);
        out += "\n";
    }
    return out;
}

inline std::string render_ratios_json(const RationalLine& l, const std::optional<Nat>& x_cap,
                                      const std::vector<RatioRow>& rows, unsigned digits) {
    ordered_json pts = ordered_json::array();
    for (const auto& r : rows) {
        ordered_json e = {{"x", r.point.x.str()}, {"y", r.point.y.str()}, {"m", r.m.str()}};
        e["ratio"] = r.ratio ? ratio_to_json(*r.ratio, digits) : ordered_json(nullptr);
        pts.push_back(std::move(e));
    }
    ordered_json doc = {{"line", line_to_json(l)},
                        {"x_cap", x_cap ? ordered_json(x_cap->str()) : ordered_json(nullptr)},
                        {"digits", digits},
                        {"points", std::move(pts)}};
    return json_text(doc);
}

// -------------------------------------------------------------- classify --

inline ordered_json classify_to_json(const MonotonicityReport& rep, unsigned digits) {
    ordered_json pts = ordered_json::array();
    const bool with_values = rep.values.size() == rep.points.size();
    for (std::size_t i = 0; i < rep.points.size(); ++i) {
        ordered_json e = {{"x", rep.points[i].x.str()}, {"y", rep.points[i].y.str()}};
        if (with_values) e["m"] = rep.values[i].str();
        pts.push_back(std::move(e));
    }
    ordered_json ratios = ordered_json::array();
    for (const auto& r : rep.ratios) ratios.push_back(ratio_to_json(r, digits));
    return {{"line", line_to_json(rep.line)},
            {"x_cap", rep.x_cap ? ordered_json(rep.x_cap->str()) : ordered_json(nullptr)},
            {"mode", rep.mode == ClassifyMode::Exhaustive ? "exhaustive" : "fast"},
            {"classification", line_class_name(rep.classification)},
            {"n_points", rep.points.size()},
            {"points", std::move(pts)},
            {"ratios", std::move(ratios)},
            {"first_ratio",
             rep.first_ratio ? ratio_to_json(*rep.first_ratio, digits) : ordered_json(nullptr)},
            {"last_ratio",
             rep.last_ratio ? ratio_to_json(*rep.last_ratio, digits) : ordered_json(nullptr)},
            {"turning_point", rep.turning_point ? ordered_json{{"x", rep.turning_point->x.str()},
                                                               {"y", rep.turning_point->y.str()}}
                                                : ordered_json(nullptr)},
            {"tie", rep.tie_flag},
            {"digits", digits}};
}

inline std::string render_classify_json(const MonotonicityReport& rep, unsigned digits) {
    return json_text(classify_to_json(rep, digits));
}

inline std::string classify_summary_header() {
    return "line,classification,n_points,turning_x,turning_y,first_ratio_decimal,last_ratio_decimal\n";
}

inline std::string classify_summary_row(const MonotonicityReport& rep, unsigned digits) {
    std::string out = csv_cell(line_text(rep.line)) + "," + line_class_name(rep.classification) +
                      "," + std::to_string(rep.points.size()) + ",";
    if (rep.turning_point)
        out += rep.turning_point->x.str() + "," + rep.turning_point->y.str();
    else
        out += ",";
    out += ",";
    out += rep.first_ratio ? to_decimal(*rep.first_ratio, digits) : "";
    out += ",";
    out += rep.last_ratio ? to_decimal(*rep.last_ratio, digits) : "";
    return out + "\n";
}

inline std::string render_classify_csv(const MonotonicityReport& rep, unsigned digits) {
    return classify_summary_header() + classify_summary_row(rep, digits);
}

inline std::string render_classify_plain(const MonotonicityReport& rep, unsigned digits) {
    std::string out = "line " + line_text(rep.line) + ": " + line_class_name(rep.classification) +
                      " (" + std::to_string(rep.points.size()) + " points)\n";
    if (rep.first_ratio) out += "first ratio " + to_decimal(*rep.first_ratio, digits) + "\n";
    if (rep.last_ratio) out += "last ratio  " + to_decimal(*rep.last_ratio, digits) + "\n";
    if (rep.turning_point)
        out += "turning point (" + rep.turning_point->x.str() + "," + rep.turning_point->y.str() +
               ")" + (rep.tie_flag ? " [tied minimum]" : "") + "\n";
    return out;
}

// ---------------------------------------------------------------- limits --

struct LimitsRow {
    Nat n;
    LatticePoint point;
    ExactRatio ratio;
};

struct LimitsDocument {
    Nat a1, a2;
    unsigned nmax = 0;
    unsigned digits = 0;
    std::vector<LimitsRow> lower;  // last step ratio of each l_n
    std::vector<LimitsRow> upper;  // first step ratio of each L_n
    LimitValue lower_limit;
    LimitValue upper_limit;
};

inline LimitsDocument build_limits_document(const Nat& a1, const Nat& a2, unsigned nmax,
                                            unsigned digits, MarkovCache* cache = nullptr) {
    LimitsDocument doc{a1, a2, nmax, digits, {}, {}, limit_last_ratio(a1, a2, digits),
                       limit_first_ratio(a1, a2, digits)};
    const Nat kn = -a1, kd = a2;
    const Nat n_start = a1 + a2 + 2;
    for (Nat n = n_start; n <= nmax; ++n) {
        const RationalLine low = family_line(kn, kd, n, Family::Lower);
        const RationalLine up = family_line(kn, kd, n, Family::Upper);
        const auto el = endpoints(low);
        if (const auto r = last_step_ratio(low, cache))
            doc.lower.push_back({n, *el.last, *r});
        const auto eu = endpoints(up);
        if (const auto r = first_step_ratio(up, cache))
            doc.upper.push_back({n, *eu.first, *r});
    }
    return doc;
}

/// Exact column for a closed-form limit: rational ones print as "a/c",
/// genuinely irrational ones leave the cell empty.
inline std::string limit_exact_text(const LimitValue& v) {
    if (v.exact.b != 0) return "";
    return fraction_text(v.exact.a, v.exact.c);
}

inline std::string render_limits_csv(const LimitsDocument& doc) {
    std::string out = "family,n,x,y,ratio,ratio_decimal\n";
    auto rows = [&](const char* family, const std::vector<LimitsRow>& v) {
        for (const auto& r : v)
            out += std::string(family) + "," + r.n.str() + "," + r.point.x.str() + "," +
                   r.point.y.str() + "," + csv_cell(fraction_text(r.ratio.num, r.ratio.den)) +
                   "," + to_decimal(r.ratio, doc.digits) + "\n";
    };
    rows("lower", doc.lower);
    rows("upper", doc.upper);
    out += "lower_limit,,,," + csv_cell(limit_exact_text(doc.lower_limit)) + "," +
           doc.lower_limit.decimal + "\n";
    out += "upper_limit,,,," + csv_cell(limit_exact_text(doc.upper_limit)) + "," +
           doc.upper_limit.decimal + "\n";
    return out;
}

inline ordered_json surd_to_json(const QuadSurd& s) {
    return {{"a", s.a.str()}, {"b", s.b.str()}, {"c", s.c.str()}, {"d", s.d.str()}};
}

inline std::string render_limits_json(const LimitsDocument& doc) {
    auto rows = [&](const std::vector<LimitsRow>& v) {
        ordered_json arr = ordered_json::array();
        for (const auto& r : v)
            arr.push_back({{"n", r.n.str()},
                           {"x", r.point.x.str()},
                           {"y", r.point.y.str()},
                           {"ratio", ratio_to_json(r.ratio, doc.digits)}});
        return arr;
    };
    auto limit = [&](const LimitValue& v) {
        return ordered_json{{"exact", surd_to_json(v.exact)}, {"decimal", v.decimal}};
    };
    ordered_json j = {{"slope", {doc.a1.str(), doc.a2.str()}},
                      {"nmax", doc.nmax},
                      {"digits", doc.digits},
                      {"lower", rows(doc.lower)},
                      {"upper", rows(doc.upper)},
                      {"lower_limit", limit(doc.lower_limit)},
                      {"upper_limit", limit(doc.upper_limit)}};
    return json_text(j);
}

inline std::string render_limits_plain(const LimitsDocument& doc) {
    std::string out = "slope -" + doc.a1.str() + "/" + doc.a2.str() + ", n up to " +
                      std::to_string(doc.nmax) + "\n";
    for (const auto& r : doc.lower)
        out += "lower n=" + r.n.str() + " last-step ratio at (" + r.point.x.str() + "," +
               r.point.y.str() + ") = " + to_decimal(r.ratio, doc.digits) + "\n";
    for (const auto& r : doc.upper)
        out += "upper n=" + r.n.str() + " first-step ratio at (" + r.point.x.str() + "," +
               r.point.y.str() + ") = " + to_decimal(r.ratio, doc.digits) + "\n";
    out += "lower limit = " + doc.lower_limit.decimal + "\n";
    out += "upper limit = " + doc.upper_limit.decimal + "\n";
    return out;
}

// ------------------------------------------------------------ thresholds --

inline std::string render_thresholds_plain(const ClosedFormConstants& c) {
    return "phi     = " + c.phi + "\nsilver  = " + c.silver + "\nk_plus  = " + c.k_plus +
           "\nk_minus = " + c.k_minus + "\n";
}

inline std::string render_thresholds_csv(const ClosedFormConstants& c) {
    return "name,value\nphi," + c.phi + "\nsilver," + c.silver + "\nk_plus," + c.k_plus +
           "\nk_minus," + c.k_minus + "\n";
}

inline std::string render_thresholds_json(const ClosedFormConstants& c) {
    return json_text({{"digits", c.digits},
                      {"phi", c.phi},
                      {"silver", c.silver},
                      {"k_plus", c.k_plus},
                      {"k_minus", c.k_minus}});
}

// --------------------------------------------------------- search-nonmono --

inline std::string render_search_json(const Nat& a1, const Nat& a2, const Nat& c_cap,
                                      const std::optional<MonotonicityReport>& found,
                                      unsigned digits) {
    ordered_json doc = {{"slope", {a1.str(), a2.str()}}, {"c_cap", c_cap.str()}};
    doc["found"] = found.has_value();
    if (found) {
        doc["intercept"] = {found->line.bn.str(), found->line.bd.str()};
        doc["report"] = classify_to_json(*found, digits);
    }
    return json_text(doc);
}

inline std::string render_search_plain(const Nat& a1, const Nat& a2, const Nat& c_cap,
                                       const std::optional<MonotonicityReport>& found,
                                       unsigned digits) {
    if (!found)
        return "no non-monotonic line with intercept c/" + a2.str() + ", c <= " + c_cap.str() +
               "\n";
    return "smallest non-monotonic intercept: b = " +
           fraction_text(found->line.bn, found->line.bd) + "\n" +
           render_classify_plain(*found, digits);
}

inline std::string render_search_csv(const Nat& a1, const Nat& a2, const Nat& c_cap,
                                     const std::optional<MonotonicityReport>& found,
                                     unsigned digits) {
    (void)a1;
    (void)a2;
    (void)c_cap;
    std::string out = classify_summary_header();
    if (found) out += classify_summary_row(*found, digits);
    return out;
}

// ---------------------------------------------------------------- verify --

inline std::string render_verify_json(const ViolationReport& rep) {
    ordered_json bounds = ordered_json::object();
    for (const auto& [k, v] : rep.bounds) bounds[k] = v;
    ordered_json violations = ordered_json::array();
    for (const auto& v : rep.violations)
        violations.push_back(
            {{"claim", v.claim}, {"witness", v.witness}, {"lhs", v.lhs}, {"rhs", v.rhs}});
    ordered_json audits = ordered_json::array();
    for (const auto& a : rep.audits)
        audits.push_back({{"claim", a.claim},
                          {"status", a.status},
                          {"witness", a.witness},
                          {"detail", a.detail}});
    return json_text({{"suite", rep.suite},
                      {"bounds", std::move(bounds)},
                      {"checks", rep.checks},
                      {"violations", std::move(violations)},
                      {"audits", std::move(audits)},
                      {"passed", rep.passed()},
                      {"elapsed_ms", rep.elapsed_ms}});
}

inline std::string render_verify_plain(const ViolationReport& rep) {
    std::ostringstream out;
    out << "suite " << rep.suite << "\n";
    for (const auto& [k, v] : rep.bounds) out << "  bound " << k << " = " << v << "\n";
    out << "  checks: " << rep.checks << "\n";
    if (rep.violations.empty()) {
        out << "  violations: none\n";
    } else {
        out << "  violations: " << rep.violations.size() << "\n";
        for (const auto& v : rep.violations) {
            out << "    " << v.claim << " at " << v.witness;
            if (!v.lhs.empty() || !v.rhs.empty()) out << ": " << v.lhs << " vs " << v.rhs;
            out << "\n";
        }
    }
    for (const auto& a : rep.audits) {
        out << "  audit [" << a.status << "] " << a.claim;
        if (!a.witness.empty()) out << " at " << a.witness;
        if (!a.detail.empty()) out << " (" << a.detail << ")";
        out << "\n";
    }
    out << "  result: " << (rep.passed() ? "PASSED" : "FAILED") << "\n";
    out << "  elapsed_ms: " << rep.elapsed_ms << "\n";
    return out.str();
}

inline std::string render_verify_csv(const ViolationReport& rep) {
    std::string out = "claim,witness,lhs,rhs\n";
    for (const auto& v : rep.violations)
        out += csv_cell(v.claim) + "," + csv_cell(v.witness) + "," + csv_cell(v.lhs) + "," +
               csv_cell(v.rhs) + "\n";
    return out;
}

}  // namespace gmn
