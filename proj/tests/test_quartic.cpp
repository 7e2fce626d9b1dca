#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "eqfour/quartic.hpp"

using namespace eqfour;
using namespace eqfour::quartic;

TEST_CASE("build_quartic coefficients") {
    SECTION("the h = 2572 curve") {
        const auto c = build_quartic(15, 14, 2572);
        CHECK(c.c4 == -50625);
        CHECK(c.c3 == 105863520);  // 2572 * 14^3 * 15
        CHECK(c.c2 == 0);
        CHECK(c.c1 == 121527000);  // 15^3 * 2572 * 14
        CHECK(c.c0 == Int("-254128908544")); // -2572^2 * 14^4
    }
    SECTION("unit substitution") {
        const auto c = build_quartic(1, 1, 7);
        CHECK(c.c4 == -1);
        CHECK(c.c3 == 7);
        CHECK(c.c1 == 7);
        CHECK(c.c0 == -49);
    }
    CHECK_THROWS_AS(build_quartic(0, 1, 7), std::invalid_argument);
}

TEST_CASE("evaluate") {
    const auto c = build_quartic(15, 14, 2572);
    const Rat U(9002, 267);
    const Rat V(Int("45966408488"), 23763);
    CHECK(evaluate(c, U) == V * V);

    const auto unit = build_quartic(1, 1, 5);
    CHECK(evaluate(unit, Rat(5)) == 0);
    CHECK(evaluate(unit, Rat(0)) == -25); // the negative constant term

    // homogenized form agrees with the rational evaluation
    CHECK(homogeneous_value(c, 9002, 267) == Int("137899225464") * Int("137899225464"));
}

TEST_CASE("rational_points finds the known point at q = 267") {
    const auto c = build_quartic(15, 14, 2572);
    const auto pts = rational_points_for_q(c, 267, 10000);
    bool found = false;
    for (const auto& pt : pts) {
        REQUIRE(Rat(pt.v * pt.v) == evaluate(c, Rat(pt.u.p, pt.u.q)));
        if (pt.u.p == 9002 && pt.u.q == 267) {
            found = true;
            CHECK(pt.v == Rat(Int("45966408488"), 23763));
        }
    }
    CHECK(found);
}

TEST_CASE("rational_points on the unit curve") {
    const auto c = build_quartic(1, 1, 5);
    const auto pts = rational_points(c, 5);
    bool found = false;
    for (const auto& pt : pts)
        if (pt.u.p == 5 && pt.u.q == 1 && pt.v == 0) found = true;
    CHECK(found);

    // a tiny box may legitimately be empty; the contract still holds
    for (const auto& pt : rational_points(build_quartic(1, 1, 2), 1))
        CHECK(Rat(pt.v * pt.v) == evaluate(build_quartic(1, 1, 2), Rat(pt.u.p, pt.u.q)));
}

TEST_CASE("rational_points grows monotonically with the height") {
    const auto c = build_quartic(1, 1, 5);
    auto key_set = [&](std::int64_t H) {
        std::set<std::tuple<Int, Int, Rat>> s;
        for (const auto& pt : rational_points(c, H)) s.insert({pt.u.p, pt.u.q, pt.v});
        return s;
    };
    const auto small = key_set(5), big = key_set(9);
    CHECK(std::includes(big.begin(), big.end(), small.begin(), small.end()));
    CHECK(big.size() >= small.size());
}

TEST_CASE("recover_solution reproduces the h = 2572 quadruple") {
    const auto c = build_quartic(15, 14, 2572);
    const RationalU u{9002, 267};
    const Rat V(Int("45966408488"), 23763);

    // x = v / (a p^3 - h b q^3) solves the displayed quadratic
    const Int v = numerator(Rat(V * Rat(267 * 267)));
    const Int den = c.a * Int(9002) * 9002 * 9002 - c.h * c.b * Int(267) * 267 * 267;
    CHECK(v == Int("137899225464"));
    CHECK(den == Int("10256909478816"));
    const Rat x(v, den);
    CHECK(x == Rat(79, 5876));
    const Int rhs = c.h * c.b * c.b * c.b * 267 - c.a * c.a * c.a * 9002;
    CHECK(Rat(x * x) * Rat(den) == Rat(rhs));

    const auto sol = recover_solution(c, u, V);
    REQUIRE(sol);
    CHECK(sol->A == 799298);
    CHECK(sol->B == 61171);
    CHECK(sol->C == 623018);
    CHECK(sol->D == 103357);
    CHECK(sol->method == "quartic");
    CHECK(model::verify(sol->h, sol->A, sol->B, sol->C, sol->D));

    // the negated root recovers the same normalized solution
    const auto neg = recover_solution(c, u, -V);
    REQUIRE(neg);
    CHECK(model::key(*neg) == model::key(*sol));
}

TEST_CASE("recover_solution reproduces the h = 9069 quadruple") {
    const auto c = build_quartic(3, 1, 9069);
    const Int p("74903894"), q("2701177");
    const Int n = homogeneous_value(c, p, q);
    REQUIRE(n > 0);
    const Int v = sqrt(n);
    REQUIRE(v * v == n);
    // x = +-119/825696345
    const Int den = c.a * p * p * p - c.h * c.b * q * q * q;
    CHECK(abs(Rat(v, den)) == Rat(119, Int("825696345")));

    const auto sol = recover_solution(c, RationalU{p, q}, Rat(v, q * q));
    REQUIRE(sol);
    CHECK(sol->A == Int("11390652421"));
    CHECK(sol->B == Int("504256282"));
    CHECK(sol->C == Int("6436474351"));
    CHECK(sol->D == Int("1147136408"));
}

TEST_CASE("recover_solution handles a negative x-denominator") {
    // curve (3, 1, 3) at U = 1/2: v = 21, a p^3 - h b q^3 = -21, x = -1
    const auto c = build_quartic(3, 1, 3);
    REQUIRE(homogeneous_value(c, 1, 2) == 441);
    const auto sol = recover_solution(c, RationalU{1, 2}, Rat(21, 4));
    REQUIRE(sol);
    CHECK(sol->A == 4);
    CHECK(sol->B == 1);
    CHECK(sol->C == 2);
    CHECK(sol->D == 3);
}

TEST_CASE("recover_solution degenerate and contract cases") {
    const auto unit = build_quartic(1, 1, 5);
    // (U, V) = (h, 0): v = 0 is degenerate (x = 0 gives A = -C)
    CHECK_FALSE(recover_solution(unit, RationalU{5, 1}, Rat(0)).has_value());
    // off-curve input is a contract violation
    CHECK_THROWS_AS(recover_solution(unit, RationalU{5, 1}, Rat(1)), std::invalid_argument);
    const auto c = build_quartic(15, 14, 2572);
    CHECK_THROWS_AS(recover_solution(c, RationalU{9002, 267}, Rat(Int("45966408488"), 23764)),
                    std::invalid_argument);
}

TEST_CASE("sign consistency of the recovered x") {
    // x^2 (a p^3 - h b q^3) = h b^3 q - a^3 p for every point on the curve
    const auto c = build_quartic(15, 14, 2572);
    for (const auto& pt : rational_points_for_q(c, 267, 10000)) {
        const Int v = numerator(Rat(pt.v * Rat(pt.u.q * pt.u.q)));
        const Int den = c.a * pt.u.p * pt.u.p * pt.u.p - c.h * c.b * pt.u.q * pt.u.q * pt.u.q;
        if (den == 0) continue;
        const Rat x(v, den);
        CHECK(Rat(x * x) * Rat(den) == Rat(c.h * c.b * c.b * c.b * pt.u.q - c.a * c.a * c.a * pt.u.p));
    }
}
