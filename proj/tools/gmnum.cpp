// gmnum: generalized Markov numbers, line ratio sequences, monotonicity
// classification, closed-form limits and thresholds, and property suites.
//
// Exit codes: 0 success, 1 verification found violations, 2 usage error.

#include "gmn/serialize.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace gmn;

struct GlobalOptions {
    unsigned digits = 12;
    std::string format;  // empty: use the subcommand's default
    std::string out_path;
    std::string cache_path;
    unsigned jobs = 1;
};

std::string pick_format(const GlobalOptions& g, const char* preferred) {
    return g.format.empty() ? preferred : g.format;
}

void emit(const GlobalOptions& g, const std::string& doc) {
    if (g.out_path.empty()) {
        std::cout << doc;
        return;
    }
    std::ofstream out(g.out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + g.out_path + " for writing");
    out << doc;
}

struct CacheSession {
    explicit CacheSession(const std::string& path) : path_(path) {
        if (!path_.empty() && std::filesystem::exists(path_)) cache_.load(path_);
    }
    ~CacheSession() {
        if (path_.empty()) return;
        try {
            cache_.save(path_);
        } catch (...) {
        }
    }
    MarkovCache* get() { return path_.empty() ? nullptr : &cache_; }

private:
    std::string path_;
    MarkovCache cache_;
};

RationalLine parse_line_spec(const std::string& k, const std::string& b) {
    const auto [kn, kd] = parse_rational(k);
    const auto [bn, bd] = parse_rational(b);
    return make_line(kn, kd, bn, bd);
}

std::pair<Nat, Nat> parse_slope_spec(const std::string& slope) {
    const auto [a1, a2] = parse_rational(slope);
    if (a1 < 1 || a2 < 1)
        throw std::invalid_argument("--slope expects a positive rational a1/a2 (line slope -a1/a2)");
    return {a1, a2};
}

BoundMap parse_bounds(const std::vector<std::string>& specs) {
    BoundMap overrides;
    for (const auto& spec : specs) {
        std::size_t start = 0;
        while (start <= spec.size()) {
            const std::size_t comma = spec.find(',', start);
            const std::string item =
                spec.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            if (!item.empty()) {
                const std::size_t eq = item.find('=');
                if (eq == std::string::npos || eq == 0)
                    throw std::invalid_argument("--bounds expects key=value, got '" + item + "'");
                overrides.emplace_back(item.substr(0, eq), item.substr(eq + 1));
            }
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }
    return overrides;
}

unsigned env_default_digits() {
    if (const char* env = std::getenv("GMNUM_DIGITS")) {
        try {
            const unsigned long v = std::stoul(env);
            if (v >= 1 && v <= 200) return static_cast<unsigned>(v);
        } catch (...) {
        }
        std::cerr << "gmnum: ignoring invalid GMNUM_DIGITS value '" << env << "'\n";
    }
    return 12;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized Markov numbers: values, line ratios, classification, verification"};
    app.require_subcommand(1);

    GlobalOptions g;
    g.digits = env_default_digits();
    app.add_option("--digits", g.digits, "decimal digits in rendered ratios and constants")
        ->check(CLI::Range(1u, 200u));
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"plain", "csv", "json"}));
    app.add_option("--out", g.out_path, "write the document to this path instead of stdout");
    app.add_option("--cache", g.cache_path, "m(q,p) cache file (one q,p,value line each)");
    app.add_option("--jobs", g.jobs, "worker threads for table and verify")
        ->check(CLI::Range(1u, 64u));

    auto* cmd_markov = app.add_subcommand("markov", "print one generalized Markov number m(q,p)");
    std::string arg_q, arg_p;
    cmd_markov->add_option("q", arg_q, "column index")->required();
    cmd_markov->add_option("p", arg_p, "row index, 0 <= p <= q")->required();

    auto* cmd_table = app.add_subcommand("table", "m(q,p) over the triangle 0 <= p <= q <= Q");
    unsigned arg_qmax = 0;
    cmd_table->add_option("--qmax", arg_qmax, "largest q")->required()->check(CLI::Range(1u, 500u));

    std::string arg_k, arg_b, arg_cap;
    auto add_line_options = [&](CLI::App* cmd) {
        cmd->add_option("--k", arg_k, "slope as an exact rational kn/kd")->required();
        cmd->add_option("--b", arg_b, "intercept as an exact rational bn/bd")->required();
        cmd->add_option("--cap", arg_cap, "largest x to enumerate (required when k >= 0)");
    };
    auto* cmd_ratios =
        app.add_subcommand("ratios", "lattice points and step ratios along a rational line");
    add_line_options(cmd_ratios);

    auto* cmd_classify =
        app.add_subcommand("classify", "monotonicity class of m along a rational line");
    add_line_options(cmd_classify);
    bool arg_fast = false;
    cmd_classify->add_flag("--fast", arg_fast, "probe endpoint ratios only (skips full certification)");

    auto* cmd_limits = app.add_subcommand(
        "limits", "family end-ratio sequences and their closed-form limits for slope -a1/a2");
    std::string arg_slope;
    unsigned arg_nmax = 30;
    cmd_limits->add_option("--slope", arg_slope, "positive rational a1/a2")->required();
    cmd_limits->add_option("--nmax", arg_nmax, "largest family index")->check(CLI::Range(1u, 2000u));

    auto* cmd_thresholds =
        app.add_subcommand("thresholds", "the two slope thresholds separating the regimes");

    auto* cmd_search = app.add_subcommand(
        "search-nonmono", "smallest non-monotonic intercept c/a2 for a mixed-regime slope");
    std::string arg_search_slope, arg_search_cap = "10000";
    cmd_search->add_option("--slope", arg_search_slope, "positive rational a1/a2")->required();
    cmd_search->add_option("--cap", arg_search_cap, "largest intercept numerator to try");

    auto* cmd_verify = app.add_subcommand("verify", "run a named property suite");
    std::string arg_suite;
    std::vector<std::string> arg_bounds;
    cmd_verify->add_option("--suite", arg_suite, "suite name")
        ->required()
        ->check(CLI::IsMember(suite_names()));
    cmd_verify->add_option("--bounds", arg_bounds,
                           "override suite bounds as key=value[,key=value...]");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        CacheSession cache(g.cache_path);

        if (*cmd_markov) {
            const Nat q = parse_integer(arg_q), p = parse_integer(arg_p);
            const Nat m = generalized_markov(q, p, cache.get());
            const std::string fmt = pick_format(g, "plain");
            emit(g, fmt == "plain"  ? render_markov_plain(m)
                    : fmt == "csv" ? render_markov_csv(q, p, m)
                                   : render_markov_json(q, p, m));
        } else if (*cmd_table) {
            const auto rows = build_table(arg_qmax, cache.get(), g.jobs);
            const std::string fmt = pick_format(g, "csv");
            emit(g, fmt == "csv"      ? render_table_csv(rows)
                    : fmt == "plain" ? render_table_plain(rows)
                                     : render_table_json(rows));
        } else if (*cmd_ratios) {
            const RationalLine line = parse_line_spec(arg_k, arg_b);
            const std::optional<Nat> cap =
                arg_cap.empty() ? std::nullopt : std::optional<Nat>(parse_integer(arg_cap));
            const auto rows = build_ratio_rows(line, cap, cache.get());
            const std::string fmt = pick_format(g, "csv");
            emit(g, fmt == "csv"      ? render_ratios_csv(rows, g.digits)
                    : fmt == "plain" ? render_ratios_plain(rows, g.digits)
                                     : render_ratios_json(line, cap, rows, g.digits));
        } else if (*cmd_classify) {
            const RationalLine line = parse_line_spec(arg_k, arg_b);
            const std::optional<Nat> cap =
                arg_cap.empty() ? std::nullopt : std::optional<Nat>(parse_integer(arg_cap));
            const auto report = classify_line(
                line, cap, arg_fast ? ClassifyMode::Fast : ClassifyMode::Exhaustive, cache.get());
            const std::string fmt = pick_format(g, "json");
            emit(g, fmt == "json"     ? render_classify_json(report, g.digits)
                    : fmt == "csv"   ? render_classify_csv(report, g.digits)
                                     : render_classify_plain(report, g.digits));
        } else if (*cmd_limits) {
            const auto [a1, a2] = parse_slope_spec(arg_slope);
            const auto doc = build_limits_document(a1, a2, arg_nmax, g.digits, cache.get());
            const std::string fmt = pick_format(g, "csv");
            emit(g, fmt == "csv"      ? render_limits_csv(doc)
                    : fmt == "plain" ? render_limits_plain(doc)
                                     : render_limits_json(doc));
        } else if (*cmd_thresholds) {
            const ClosedFormConstants c = thresholds(g.digits);
            const std::string fmt = pick_format(g, "plain");
            emit(g, fmt == "plain"    ? render_thresholds_plain(c)
                    : fmt == "csv"   ? render_thresholds_csv(c)
                                     : render_thresholds_json(c));
        } else if (*cmd_search) {
            const auto [a1, a2] = parse_slope_spec(arg_search_slope);
            const Nat cap = parse_integer(arg_search_cap);
            const auto found = find_nonmonotonic_intercept(-a1, a2, cap, cache.get());
            const std::string fmt = pick_format(g, "json");
            emit(g, fmt == "json"     ? render_search_json(a1, a2, cap, found, g.digits)
                    : fmt == "plain" ? render_search_plain(a1, a2, cap, found, g.digits)
                                     : render_search_csv(a1, a2, cap, found, g.digits));
        } else if (*cmd_verify) {
            const ViolationReport report = run_suite(arg_suite, parse_bounds(arg_bounds), g.jobs);
            const std::string fmt = pick_format(g, "json");
            emit(g, fmt == "json"     ? render_verify_json(report)
                    : fmt == "plain" ? render_verify_plain(report)
                                     : render_verify_csv(report));
            return report.passed() ? 0 : 1;
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "gmnum: " << e.what() << "\n";
        return 2;
    }
}
