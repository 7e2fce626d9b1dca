#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "eqfour/arith.hpp"

using namespace eqfour;
using arith::build_sieve;
using arith::integer_fourth_root;
using arith::is_fourth_power;
using arith::prime_factors_3mod4;

TEST_CASE("integer_fourth_root exact cases") {
    CHECK(integer_fourth_root(Int(0)) == Int(0));
    CHECK(integer_fourth_root(Int(1)) == Int(1));
    CHECK(integer_fourth_root(Int(16)) == Int(2));

    // 2361^4, the f value reached by the h = 4117 residue walk
    const Int f = pow4(Int(2361));
    CHECK(f == Int("31073054611041"));
    CHECK(integer_fourth_root(f) == Int(2361));

    // 1297 = 6^4 + 1 sits strictly between consecutive fourth powers
    CHECK_FALSE(integer_fourth_root(Int(1297)).has_value());
    for (int r = 0; r <= 7; ++r) CHECK(pow4(Int(r)) != 1297);

    CHECK_THROWS_AS(integer_fourth_root(Int(-1)), std::invalid_argument);
}

TEST_CASE("is_fourth_power applies the mod-16 sieve") {
    CHECK(is_fourth_power(Int(16)));
    CHECK_FALSE(is_fourth_power(Int(17))); // passes the sieve, fails the root
    for (int n = 2; n < 200; ++n) {
        if (n % 16 != 0 && n % 16 != 1) CHECK_FALSE(is_fourth_power(Int(n)));
    }
}

TEST_CASE("fourth power round trip on random n") {
    std::mt19937_64 rng(20240117);
    std::uniform_int_distribution<std::int64_t> dist(2, 1'000'000'000);
    for (int i = 0; i < 1'000'000; ++i) {
        const Int n(dist(rng));
        const Int n4 = pow4(n);
        REQUIRE(integer_fourth_root(n4) == n);
        REQUIRE(is_fourth_power(n4));
        REQUIRE_FALSE(is_fourth_power(n4 + 1));
        REQUIRE_FALSE(is_fourth_power(n4 - 1));
    }
}

TEST_CASE("build_sieve") {
    const auto s16 = build_sieve(16);
    CHECK(s16.admissible == std::vector<std::int64_t>{0, 1});
    CHECK(build_sieve(2).admissible == std::vector<std::int64_t>{0, 1});
    CHECK(build_sieve(5).admissible == std::vector<std::int64_t>{0, 1});
    CHECK_THROWS_AS(build_sieve(1), std::invalid_argument);

    // completeness: n^4 mod m is always admissible
    for (std::int64_t m = 2; m <= 64; ++m) {
        const auto s = build_sieve(m);
        for (std::int64_t n = 0; n < 10'000; ++n)
            REQUIRE(s.admits(static_cast<std::uint64_t>(n * n % m * (n * n % m))));
    }
    // no extras: every admissible residue has a witness
    for (std::int64_t m : {2, 5, 13, 16, 29, 64}) {
        const auto s = build_sieve(m);
        for (const auto r : s.admissible) {
            bool hit = false;
            for (std::int64_t n = 0; n < m && !hit; ++n)
                hit = static_cast<std::int64_t>(pow4_u128(static_cast<std::uint64_t>(n)) %
                                                static_cast<std::uint64_t>(m)) == r;
            REQUIRE(hit);
        }
    }
}

TEST_CASE("prime_factors_3mod4") {
    using factors = std::vector<std::pair<std::int64_t, int>>;
    CHECK(prime_factors_3mod4(4117) == factors{{23, 1}, {179, 1}});
    CHECK(prime_factors_3mod4(2) == factors{});
    CHECK(prime_factors_3mod4(9) == factors{{3, 2}});
    CHECK(prime_factors_3mod4(21) == factors{{3, 1}, {7, 1}});
    CHECK(prime_factors_3mod4(1) == factors{});

    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> dist(1, 500'000);
    for (int i = 0; i < 300; ++i) {
        const std::int64_t h = dist(rng);
        Int product = 1;
        std::int64_t last = 0;
        for (const auto& [p, e] : prime_factors_3mod4(h)) {
            REQUIRE(p % 4 == 3);
            REQUIRE(arith::is_prime(p));
            REQUIRE(p > last);
            last = p;
            for (int k = 0; k < e; ++k) product *= p;
        }
        REQUIRE(Int(h) % product == 0);
    }
}

TEST_CASE("128-bit fourth root agrees with the exact one") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::uint64_t> dist(0, (std::uint64_t(1) << 60));
    for (int i = 0; i < 50'000; ++i) {
        const std::uint64_t v = dist(rng);
        const uint128 n = (uint128(v) << 32) ^ dist(rng);
        std::uint64_t root = 0;
        const bool got = arith::fourth_root_u128(n, root);
        Int big = static_cast<std::uint64_t>(n >> 64);
        big <<= 64;
        big += static_cast<std::uint64_t>(n);
        const auto expected = integer_fourth_root(big);
        REQUIRE(got == expected.has_value());
        if (got) REQUIRE(Int(root) == *expected);
    }
}

TEST_CASE("integer_sqrt and is_square") {
    CHECK(arith::integer_sqrt(Int(0)) == 0);
    CHECK(arith::integer_sqrt(Int(15)) == 3);
    CHECK(arith::is_square(Int("137899225464") * Int("137899225464")));
    CHECK_FALSE(arith::is_square(Int(2)));
    CHECK_FALSE(arith::is_square(Int(-4)));
}

TEST_CASE("make_rational normalizes the denominator sign") {
    CHECK(make_rational(Int(21), Int(-21)) == Rat(-1));
    CHECK(make_rational(Int(-3), Int(-6)) == Rat(1, 2));
    CHECK(make_rational(Int(3), Int(6)) == Rat(1, 2));
    CHECK_THROWS_AS(make_rational(Int(1), Int(0)), std::invalid_argument);
}
