#include "gmn/verify.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

using namespace gmn;

TEST_CASE("corpus size is frozen") { REQUIRE(corpus().size() == 215); }

TEST_CASE("bracketing family index") {
    const auto a = bracket_index(make_line(-1, 1, 13, 2), Family::Lower);
    REQUIRE(a.n == 6);
    REQUIRE(!a.coincident);

    const auto b = bracket_index(make_line(-1, 1, 7, 1), Family::Lower);
    REQUIRE(b.n == 6);
    REQUIRE(b.coincident);

    const auto c = bracket_index(make_line(-2, 1, 21, 1), Family::Lower);
    REQUIRE(c.n == 10);
    REQUIRE(c.coincident);

    const auto d = bracket_index(make_line(-2, 1, 41, 2), Family::Lower);
    REQUIRE(d.n == 10);
    REQUIRE(!d.coincident);

    REQUIRE_THROWS_AS(bracket_index(make_line(1, 2, 3, 1), Family::Lower), std::invalid_argument);
}

TEST_CASE("non-coincident lines sit strictly between bracketing intercepts") {
    auto intercept_less = [](const RationalLine& a, const RationalLine& b) {
        return a.bn * b.bd < b.bn * a.bd;
    };
    for (const auto& l : {make_line(-1, 1, 13, 2), make_line(-2, 1, 41, 2)}) {
        for (Family fam : {Family::Lower, Family::Upper}) {
            const auto idx = bracket_index(l, fam);
            REQUIRE(!idx.coincident);
            REQUIRE(intercept_less(family_line(l.kn, l.kd, idx.n - 1, fam), l));
            REQUIRE(intercept_less(l, family_line(l.kn, l.kd, idx.n, fam)));
        }
    }
}

TEST_CASE("smallest shift that overtakes a family line") {
    const RationalLine steep = make_line(-2, 1, 20, 1);
    const std::vector<Nat> lower_expected{1, 1, 1, 3, 4, 5, 7, 8};
    const std::vector<Nat> upper_expected{1, 1, 1, 2, 3, 4, 5, 6};
    for (unsigned n = 5; n <= 12; ++n) {
        REQUIRE(empirical_shift_threshold(steep, n, Family::Lower, 20).value() ==
                lower_expected[n - 5]);
        REQUIRE(empirical_shift_threshold(steep, n, Family::Upper, 20).value() ==
                upper_expected[n - 5]);
    }

    const RationalLine unit = make_line(-1, 1, 8, 1);
    const std::vector<Nat> unit_expected{1, 1, 1, 1, 2, 3};
    for (unsigned n = 4; n <= 9; ++n)
        REQUIRE(empirical_shift_threshold(unit, n, Family::Lower, 20).value() ==
                unit_expected[n - 4]);

    REQUIRE(!empirical_shift_threshold(steep, 4, Family::Lower, 20).has_value());
    REQUIRE_THROWS_AS(empirical_shift_threshold(make_line(1, 2, 0, 1), 5, Family::Lower, 20),
                      std::invalid_argument);
}

TEST_CASE("every suite passes at reduced bounds") {
    const std::vector<std::pair<std::string, BoundMap>> runs = {
        {"identities", {{"qmax", "10"}}},
        {"markov_equation", {{"qmax", "12"}}},
        {"oracle_equivalence", {{"qmax", "10"}}},
        {"h_monotonicity", {{"qmax", "10"}}},
        {"v_monotonicity", {{"qmax", "10"}}},
        {"ratio_bounds", {{"qmax", "12"}}},
        {"line_ratio_monotonicity", {}},
        {"parallel_line_comparisons", {{"box", "10"}}},
        {"midpoint_inequality", {{"qmax", "10"}}},
        {"shift_consistency", {}},
        {"bracket_inequalities", {}},
        {"tail_convergence", {}},
        {"classifier_regime_agreement", {}},
        {"uniqueness_scan", {{"qmax", "12"}}},
    };
    for (const auto& [name, bounds] : runs) {
        INFO(name);
        const auto rep = run_suite(name, bounds, 2);
        for (const auto& v : rep.violations) INFO(v.claim + " @ " + v.witness);
        REQUIRE(rep.passed());
        REQUIRE(rep.checks > 0);
        REQUIRE(rep.suite == name);
    }
}

TEST_CASE("printed claims carry recorded counterexamples") {
    const auto v = run_suite("v_monotonicity", {{"qmax", "8"}});
    REQUIRE(v.audits.size() == 1);
    REQUIRE(v.audits[0].claim == "printed: v(q,p) < v(q+1,p)");
    REQUIRE(v.audits[0].status == "refuted");
    REQUIRE(v.audits[0].witness == "q=1,p=0");

    const auto rb = run_suite("ratio_bounds", {{"qmax", "8"}});
    REQUIRE(rb.audits.size() == 2);
    REQUIRE(rb.audits[0].claim == "printed: v(q,p) < phi for p >= 1");
    REQUIRE(rb.audits[0].status == "refuted");
    REQUIRE(rb.audits[0].witness == "q=2,p=1");
    REQUIRE(rb.audits[1].claim == "printed: 1+sqrt2 < v(q,p)");
    REQUIRE(rb.audits[1].status == "refuted");
    REQUIRE(rb.audits[1].witness == "q=1,p=0");

    const auto sh = run_suite("shift_consistency");
    REQUIRE(sh.passed());
    REQUIRE(sh.audits.size() == 1);
    REQUIRE(sh.audits[0].claim == "printed: last point of diagonal shift moves by (t,0)");
    REQUIRE(sh.audits[0].status == "refuted");
    REQUIRE(sh.audits[0].witness == "k=-1/1,b=5/1,t=1");

    const auto tail = run_suite("tail_convergence");
    REQUIRE(tail.passed());
    REQUIRE(tail.audits.size() == 2);
    REQUIRE(tail.audits[0].claim == "printed: last ratio of l[t] decreasing in t");
    REQUIRE(tail.audits[0].status == "refuted");
    REQUIRE(tail.audits[0].witness == "k=-1/1,base n=4,t=1..2");
    REQUIRE(tail.audits[1].claim == "geometric-convergence-rate");
    REQUIRE(tail.audits[1].status == "measured");
}

TEST_CASE("slow convergence stays outside a tight tolerance") {
    const auto rep = run_suite("tail_convergence", {{"slope", "6/5"}});
    REQUIRE(!rep.passed());
    REQUIRE(rep.violations.size() == 2);
    REQUIRE(rep.violations[0].claim == "lower-last-ratio-near-limit");
    REQUIRE(rep.violations[1].claim == "upper-first-ratio-near-limit");
    REQUIRE(rep.audits[0].status == "refuted");
}

TEST_CASE("suite and bound validation") {
    REQUIRE_THROWS_AS(run_suite("nope"), std::invalid_argument);
    REQUIRE_THROWS_AS(run_suite("identities", {{"box", "3"}}), std::invalid_argument);
    REQUIRE_THROWS_AS(run_suite("bracket_inequalities", {{"corpus", "mine"}}),
                      std::invalid_argument);
    const auto rep = run_suite("identities", {{"qmax", "5"}});
    REQUIRE(rep.bounds == BoundMap{{"qmax", "5"}});
}

TEST_CASE("sharding does not change the outcome") {
    for (const auto& name : {"identities", "parallel_line_comparisons", "v_monotonicity"}) {
        const BoundMap bounds = {{std::string(name) == "parallel_line_comparisons" ? "box" : "qmax",
                                  "12"}};
        const auto one = run_suite(name, bounds, 1);
        const auto four = run_suite(name, bounds, 4);
        REQUIRE(one.checks == four.checks);
        REQUIRE(one.violations.size() == four.violations.size());
    }
}

TEST_CASE("frozen check counts at default bounds") {
    REQUIRE(run_suite("parallel_line_comparisons", {}, 4).checks == 5460);
    REQUIRE(run_suite("midpoint_inequality", {}, 4).checks == 30600);
}
