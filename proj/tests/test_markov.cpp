#include "gmn/markov.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace gmn;

TEST_CASE("fibonacci and pell seeds and values") {
    REQUIRE(fibonacci(0) == 0);
    REQUIRE(fibonacci(1) == 1);
    REQUIRE(fibonacci(10) == 55);
    REQUIRE(fibonacci(20) == 6765);
    REQUIRE(pell(0) == 0);
    REQUIRE(pell(1) == 1);
    REQUIRE(pell(2) == 2);
    REQUIRE(pell(3) == 5);
    REQUIRE(pell(4) == 12);
    REQUIRE(pell(7) == 169);
    REQUIRE(pell(13) == 33461);
}

TEST_CASE("tree descent reaches 2/9 through the recorded triples") {
    const auto path = markov_triple_path(9, 2);
    REQUIRE(path.size() == 5);
    const Nat expected_z[] = {5, 13, 34, 89, 9077};
    for (std::size_t i = 0; i < path.size(); ++i) {
        const auto& t = path[i];
        REQUIRE(t.z == expected_z[i]);
        REQUIRE(t.x * t.x + t.y * t.y + t.z * t.z == 3 * t.x * t.y * t.z);
    }
    const auto& leaf = path.back();
    REQUIRE(leaf.x == 89);
    REQUIRE(leaf.y == 34);
    const Fraction med = leaf.mediant();
    REQUIRE(med.num == 2);
    REQUIRE(med.den == 9);
    // The interval endpoints straddle the target fraction.
    REQUIRE(leaf.left.num * 9 <= leaf.left.den * 2);
    REQUIRE(leaf.right.num * 9 >= leaf.right.den * 2);
}

TEST_CASE("the root triple handles 1/2 directly") {
    const auto path = markov_triple_path(2, 1);
    REQUIRE(path.size() == 1);
    REQUIRE(path.back().z == 5);
}

TEST_CASE("descent rejects bad fractions") {
    REQUIRE_THROWS_AS(markov_triple_path(4, 2), std::invalid_argument);
    REQUIRE_THROWS_AS(markov_triple_path(3, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(markov_triple_path(3, 3), std::invalid_argument);
}

TEST_CASE("generalized values: edges, columns, and gcd reduction") {
    REQUIRE(generalized_markov(0, 0) == 0);
    REQUIRE(generalized_markov(1, 0) == 1);
    REQUIRE(generalized_markov(1, 1) == 2);
    REQUIRE(generalized_markov(5, 2) == 194);
    REQUIRE(generalized_markov(5, 3) == 433);
    REQUIRE(generalized_markov(9, 2) == 9077);
    REQUIRE(generalized_markov(7, 0) == fibonacci(14));
    REQUIRE(generalized_markov(7, 7) == pell(14));
    REQUIRE(generalized_markov(6, 1) == fibonacci(13));
    REQUIRE(generalized_markov(7, 6) == pell(13));
    REQUIRE(generalized_markov(8, 4) == 16725);
    REQUIRE(generalized_markov(6, 4) == 2523);
    REQUIRE(generalized_markov(10, 4) == 112908);
    REQUIRE_THROWS_AS(generalized_markov(3, 4), std::invalid_argument);
}

TEST_CASE("scaled sequence along a primitive direction") {
    const auto seq = scaled_sequence(2, 1, 4);
    REQUIRE(seq.size() == 5);
    REQUIRE(seq[0] == 0);
    REQUIRE(seq[1] == 5);
    REQUIRE(seq[2] == 75);
    REQUIRE(seq[3] == 1120);
    REQUIRE(seq[4] == 16725);
    for (unsigned n = 1; n <= 4; ++n)
        REQUIRE(seq[n] == generalized_markov(2 * n, n));
    REQUIRE_THROWS_AS(scaled_sequence(4, 2, 3), std::invalid_argument);
}

TEST_CASE("trace oracle agrees with the tree") {
    REQUIRE(cohn_trace_oracle(2, 1) == 5);
    REQUIRE(cohn_trace_oracle(5, 2) == 194);
    REQUIRE(cohn_trace_oracle(9, 2) == 9077);
    for (unsigned q = 2; q <= 12; ++q)
        for (unsigned p = 1; p < q; ++p) {
            if (boost::multiprecision::gcd(Nat(q), Nat(p)) != 1) continue;
            REQUIRE(cohn_trace_oracle(q, p) == markov_triple_at(q, p).z);
        }
}

TEST_CASE("growth constant of a scaled direction") {
    const auto a1 = growth_alpha(1, 12);
    REQUIRE(a1.alpha == "2.618033988750");
    REQUIRE(a1.alpha_exact.a == 3);
    REQUIRE(a1.alpha_exact.b == 1);
    REQUIRE(a1.alpha_exact.c == 2);
    REQUIRE(a1.alpha_exact.d == 5);
    REQUIRE(growth_alpha(2, 12).alpha == "5.828427124746");
    REQUIRE(growth_alpha(5, 6).alpha == "14.933034");
}

TEST_CASE("cache stores, persists, and is trusted on hits") {
    MarkovCache cache;
    REQUIRE(!cache.get(5, 2).has_value());
    REQUIRE(generalized_markov(5, 2, &cache) == 194);
    REQUIRE(cache.get(5, 2).value() == 194);
    REQUIRE(cache.size() >= 1);

    const auto dir = std::filesystem::temp_directory_path();
    const auto path = (dir / "gmn_cache_roundtrip.txt").string();
    cache.put(100, 1, Nat("123456789123456789123456789"));
    cache.save(path);

    MarkovCache loaded;
    loaded.load(path);
    REQUIRE(loaded.get(5, 2).value() == 194);
    REQUIRE(loaded.get(100, 1).value() == Nat("123456789123456789123456789"));
    std::filesystem::remove(path);

    // A preloaded entry short-circuits the computation.
    MarkovCache planted;
    planted.put(5, 2, 42);
    REQUIRE(generalized_markov(5, 2, &planted) == 42);
}

TEST_CASE("malformed cache files are rejected") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto path = (dir / "gmn_cache_bad.txt").string();
    {
        std::ofstream out(path);
        out << "5,2\n";
    }
    MarkovCache cache;
    REQUIRE_THROWS_AS(cache.load(path), std::runtime_error);
    std::filesystem::remove(path);
}
