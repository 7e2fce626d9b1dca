// Genus-1 quartic model. The substitution A = px+a, B = qx-b, C = px-a,
// D = qx+b collapses the equation to
//     (8ap^3 - 8hbq^3) x^2 + (-8hb^3q + 8a^3p) = 0,
// whose discriminant condition is v^2 = -a^4p^4 + hb^3aqp^3 + a^3hbpq^3
// - h^2b^4q^4. With U = p/q, V = v/q^2 this is the quartic
//     V^2 = -a^4 U^4 + h b^3 a U^3 + a^3 h b U - h^2 b^4.
// A rational point (U, V) gives x = v / (a p^3 - h b q^3) and from it an
// integer solution by clearing denominators (the equation is homogeneous of
// degree 4 in A, B, C, D).
#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "eqfour/arith.hpp"
#include "eqfour/model.hpp"

namespace eqfour::quartic {

struct QuarticCurve {
    Int a, b, h;
    Int c4, c3, c2, c1, c0; // V^2 = c4 U^4 + c3 U^3 + c2 U^2 + c1 U + c0
};

// U = p/q in lowest terms, q >= 1.
struct RationalU {
    Int p;
    Int q = 1;
};

struct QuarticPoint {
    RationalU u;
    Rat v; // nonnegative root
};

inline QuarticCurve build_quartic(const Int& a, const Int& b, const Int& h) {
    if (a < 1 || b < 1 || h < 1)
        throw std::invalid_argument("build_quartic: a, b, h must be >= 1");
    QuarticCurve c;
    c.a = a; c.b = b; c.h = h;
    c.c4 = -pow4(a);
    c.c3 = h * b * b * b * a;
    c.c2 = 0;
    c.c1 = a * a * a * h * b;
    c.c0 = -(h * h) * pow4(b);
    return c;
}

inline Rat evaluate(const QuarticCurve& c, const Rat& U) {
    const Rat u2 = U * U;
    return Rat(c.c4) * u2 * u2 + Rat(c.c3) * u2 * U + Rat(c.c1) * U + Rat(c.c0);
}

// Homogenized right-hand side: q^4 * evaluate(p/q), an integer.
inline Int homogeneous_value(const QuarticCurve& c, const Int& p, const Int& q) {
    const Int p2 = p * p, q2 = q * q;
    return c.c4 * p2 * p2 + c.c3 * p2 * p * q + c.c1 * p * q2 * q + c.c0 * q2 * q2;
}

namespace detail {

// Residue prefilter for the square test: N(p, q) mod 16 and mod 9 as a
// function of p mod m for fixed q.
struct SquarePrefilter {
    std::uint8_t ok16[16];
    std::uint8_t ok9[9];

    SquarePrefilter(const QuarticCurve& c, const Int& q) {
        build<16>(c, q, ok16, 0x0213u); // squares mod 16: {0,1,4,9}
        build<9>(c, q, ok9, 0x0093u);   // squares mod 9: {0,1,4,7}
    }

    template <int M>
    static void build(const QuarticCurve& c, const Int& q, std::uint8_t* ok, unsigned mask) {
        auto red = [](const Int& v) {
            return static_cast<std::uint64_t>(((v % M) + M) % M);
        };
        const std::uint64_t c4 = red(c.c4), c3 = red(c.c3), c1 = red(c.c1), c0 = red(c.c0);
        const std::uint64_t qm = red(q);
        for (std::uint64_t r = 0; r < M; ++r) {
            const std::uint64_t n =
                (c4 * r % M * r % M * r % M * r + c3 * r % M * r % M * r % M * qm +
                 c1 * r % M * qm % M * qm % M * qm + c0 * qm % M * qm % M * qm % M * qm) % M;
            ok[r] = (mask >> n) & 1u;
        }
    }

    bool pass(const Int& p) const {
        const auto r16 = static_cast<std::size_t>(((p % 16) + 16) % 16);
        if (!ok16[r16]) return false;
        const auto r9 = static_cast<std::size_t>(((p % 9) + 9) % 9);
        return ok9[r9] != 0;
    }
    bool pass(std::int64_t p) const {
        return ok16[static_cast<std::size_t>((p % 16 + 16) % 16)] &&
               ok9[static_cast<std::size_t>((p % 9 + 9) % 9)];
    }
};

} // namespace detail

// Points with denominator exactly q and |numerator| <= p_max.
inline std::vector<QuarticPoint> rational_points_for_q(const QuarticCurve& c,
                                                       std::int64_t q, std::int64_t p_max) {
    if (q < 1 || p_max < 1) throw std::invalid_argument("rational_points_for_q: bounds must be >= 1");
    std::vector<QuarticPoint> out;
    const Int qi(q), q2 = Int(q) * q;
    const detail::SquarePrefilter filter(c, qi);

    // 128-bit evaluation whenever the coefficients fit 64 bits and no term of
    // N(p, q) can reach 2^124
    const Int cap = Int(1) << 124;
    const Int coef_cap = Int(1) << 62;
    const Int pb(p_max);
    const bool fast = abs(c.c4) < coef_cap && abs(c.c3) < coef_cap && abs(c.c1) < coef_cap &&
                      abs(c.c0) < coef_cap && abs(c.c4) * pow4(pb) < cap &&
                      abs(c.c3) * pb * pb * pb * qi < cap && abs(c.c1) * pb * q2 * qi < cap &&
                      abs(c.c0) * q2 * q2 < cap;
    if (fast) {
        using i128 = __int128;
        const auto c4 = c.c4.convert_to<std::int64_t>();
        const auto c3 = c.c3.convert_to<std::int64_t>();
        const auto c1 = c.c1.convert_to<std::int64_t>();
        const auto c0 = c.c0.convert_to<std::int64_t>();
        const i128 q3 = i128(q) * q * q;
        const i128 c0q4 = i128(c0) * q * q3;
        const i128 c1q3 = i128(c1) * q3;
        for (std::int64_t p = -p_max; p <= p_max; ++p) {
            if (!filter.pass(p)) continue;
            if (std::gcd(p, q) != 1) continue;
            const i128 p2 = i128(p) * p;
            const i128 p3 = p2 * p;
            const i128 n = c4 * (p2 * p2) + c3 * p3 * q + c1q3 * p + c0q4;
            if (n < 0) continue;
            const auto un = static_cast<uint128>(n);
            const std::uint64_t s = arith::isqrt_u128(un);
            if (uint128(s) * s != un) continue;
            out.push_back({RationalU{p, qi}, Rat(Int(s), q2)});
        }
        return out;
    }
    for (Int p = -pb; p <= pb; ++p) {
        if (!filter.pass(p)) continue;
        if (gcd(p, qi) != 1) continue;
        const Int n = homogeneous_value(c, p, qi);
        if (n < 0) continue;
        const Int v = sqrt(n);
        if (v * v != n) continue;
        out.push_back({RationalU{p, qi}, Rat(v, q2)});
    }
    return out;
}

// All U = p/q in lowest terms with |p| <= H, 1 <= q <= H whose right-hand
// side is a rational square; V is the nonnegative root.
inline std::vector<QuarticPoint> rational_points(const QuarticCurve& c, std::int64_t height) {
    if (height < 1) throw std::invalid_argument("rational_points: height must be >= 1");
    std::vector<QuarticPoint> out;
    for (std::int64_t q = 1; q <= height; ++q) {
        auto pts = rational_points_for_q(c, q, height);
        out.insert(out.end(), pts.begin(), pts.end());
    }
    return out;
}

// Back-map to an integer solution; nullopt marks a degenerate point (v = 0,
// vanishing x-denominator, or a trivial quadruple).
inline std::optional<model::Solution> recover_solution(const QuarticCurve& c,
                                                       const RationalU& u, const Rat& V) {
    Int p = u.p, q = u.q;
    if (q < 1) throw std::invalid_argument("recover_solution: q must be >= 1");
    const Int g = gcd(p, q);
    if (g > 1) { p /= g; q /= g; }
    const Rat v_rat = V * Rat(q * q);
    if (denominator(v_rat) != 1)
        throw std::invalid_argument("recover_solution: (U, V) is not on the curve");
    const Int v = numerator(v_rat);
    if (v * v != homogeneous_value(c, p, q))
        throw std::invalid_argument("recover_solution: (U, V) is not on the curve");
    if (v == 0) return std::nullopt;
    const Int den = c.a * p * p * p - c.h * c.b * q * q * q;
    if (den == 0) return std::nullopt;
    const Rat x = make_rational(v, den);
    const Rat A = Rat(p) * x + Rat(c.a);
    const Rat B = Rat(q) * x - Rat(c.b);
    const Rat C = Rat(p) * x - Rat(c.a);
    const Rat D = Rat(q) * x + Rat(c.b);
    // degree-4 homogeneity: scaling all four entries preserves the equation
    Int L = lcm(denominator(A), denominator(B));
    L = lcm(L, denominator(C));
    L = lcm(L, denominator(D));
    const Rat scale(L);
    return model::normalize(c.h, numerator(Rat(A * scale)), numerator(Rat(B * scale)),
                            numerator(Rat(C * scale)), numerator(Rat(D * scale)), "quartic");
}

} // namespace eqfour::quartic
