// Short Weierstrass model of the quartic,
//     Y^2 = X^3 - 3 h^2 b^4 a^4 X - b^2 h^2 a^2 (a^8 + b^8 h^2),
// with exact rational chord-tangent arithmetic and the back-map
//     U = (-1/2) (2bha^6 + 2b^3hX) / (-ab^6h^2 - a^3X)
//     V = bh (a^8 - b^8h^2) Y / (a b^12 h^4 + 2 X a^3 h^2 b^6 + X^2 a^5)
// to quartic points (the V denominator is a (b^6 h^2 + a^2 X)^2, so both
// maps degenerate at the single abscissa X = -b^6 h^2 / a^2).
//
// Rank and generator computation stays out of scope; callers supply seed
// points or use the bounded small_point_search.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <set>

#include "eqfour/arith.hpp"
#include "eqfour/brute.hpp" // SolutionSink
#include "eqfour/model.hpp"
#include "eqfour/quartic.hpp"

namespace eqfour::elliptic {

constexpr std::int64_t kDefaultCoordinateBitLimit = 1'000'000;

struct singular_curve_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when group-law results exceed the coordinate bit-length cap.
struct coordinate_limit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct WeierstrassCurve {
    Int a, b, h;
    Int coef_a, coef_b; // Y^2 = X^3 + coef_a X + coef_b
};

struct CurvePoint {
    bool infinity = true;
    Rat X, Y;

    CurvePoint() = default;
    CurvePoint(Rat x, Rat y) : infinity(false), X(std::move(x)), Y(std::move(y)) {}
    static CurvePoint at_infinity() { return CurvePoint{}; }

    friend bool operator==(const CurvePoint& p, const CurvePoint& q) {
        if (p.infinity || q.infinity) return p.infinity == q.infinity;
        return p.X == q.X && p.Y == q.Y;
    }
};

inline WeierstrassCurve build_curve(const Int& a, const Int& b, const Int& h) {
    if (a < 1 || b < 1 || h < 1)
        throw std::invalid_argument("build_curve: a, b, h must be >= 1");
    WeierstrassCurve c;
    c.a = a; c.b = b; c.h = h;
    const Int a4 = pow4(a), b4 = pow4(b), h2 = h * h;
    c.coef_a = -3 * h2 * b4 * a4;
    c.coef_b = -(b * b) * h2 * (a * a) * (a4 * a4 + b4 * b4 * h2);
    if (4 * c.coef_a * c.coef_a * c.coef_a + 27 * c.coef_b * c.coef_b == 0)
        throw singular_curve_error("build_curve: curve is singular (zero discriminant)");
    return c;
}

inline bool on_curve(const WeierstrassCurve& c, const CurvePoint& P) {
    if (P.infinity) return true;
    return P.Y * P.Y == P.X * P.X * P.X + Rat(c.coef_a) * P.X + Rat(c.coef_b);
}

inline CurvePoint negate(const CurvePoint& P) {
    if (P.infinity) return P;
    return CurvePoint(P.X, -P.Y);
}

// Chord-tangent group law. Inputs must lie on the curve; this is not
// re-checked per operation.
inline CurvePoint add(const WeierstrassCurve& c, const CurvePoint& P, const CurvePoint& Q) {
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    Rat lambda;
    if (P.X == Q.X) {
        if (P.Y != Q.Y || P.Y == 0) return CurvePoint::at_infinity();
        lambda = (Rat(3) * P.X * P.X + Rat(c.coef_a)) / (Rat(2) * P.Y);
    } else {
        lambda = (Q.Y - P.Y) / (Q.X - P.X);
    }
    const Rat X3 = lambda * lambda - P.X - Q.X;
    const Rat Y3 = lambda * (P.X - X3) - P.Y;
    return CurvePoint(X3, Y3);
}

inline CurvePoint double_point(const WeierstrassCurve& c, const CurvePoint& P) {
    return add(c, P, P);
}

namespace detail {

inline std::size_t bit_length(const Int& v) {
    return v == 0 ? 0 : static_cast<std::size_t>(msb(abs(v))) + 1;
}

inline void check_size(const CurvePoint& P, std::int64_t max_bits) {
    if (P.infinity) return;
    const auto limit = static_cast<std::size_t>(max_bits);
    if (bit_length(numerator(P.X)) > limit || bit_length(denominator(P.X)) > limit ||
        bit_length(numerator(P.Y)) > limit || bit_length(denominator(P.Y)) > limit)
        throw coordinate_limit_error("multiply: coordinate bit-length limit exceeded");
}

} // namespace detail

// n*P by double-and-add; negative n negates the result. Doubling roughly
// squares the coordinate height, so every intermediate is checked against
// the max_bits cap.
inline CurvePoint multiply(const WeierstrassCurve& c, std::int64_t n, const CurvePoint& P,
                           std::int64_t max_bits = kDefaultCoordinateBitLimit) {
    if (!on_curve(c, P)) throw std::invalid_argument("multiply: point is not on the curve");
    if (n == 0 || P.infinity) return CurvePoint::at_infinity();
    bool neg = n < 0;
    std::uint64_t k = neg ? -static_cast<std::uint64_t>(n) : static_cast<std::uint64_t>(n);
    CurvePoint acc = CurvePoint::at_infinity();
    CurvePoint base = P;
    while (k != 0) {
        if (k & 1u) {
            acc = add(c, acc, base);
            detail::check_size(acc, max_bits);
        }
        k >>= 1u;
        if (k != 0) {
            base = double_point(c, base);
            detail::check_size(base, max_bits);
        }
    }
    return neg ? negate(acc) : acc;
}

// Back-map to the quartic; nullopt when the shared denominator vanishes.
inline std::optional<std::pair<Rat, Rat>> to_quartic(const WeierstrassCurve& c,
                                                     const CurvePoint& P) {
    if (P.infinity) throw std::invalid_argument("to_quartic: point must be finite");
    const Rat a(c.a), b(c.b), h(c.h);
    const Rat a2 = a * a, a3 = a2 * a;
    const Rat b6 = b * b * b * b * b * b;
    const Rat u_den = -a * b6 * h * h - a3 * P.X;
    if (u_den == 0) return std::nullopt;
    const Rat a6 = a3 * a3;
    const Rat U = Rat(-1, 2) * (Rat(2) * b * h * a6 + Rat(2) * b * b * b * h * P.X) / u_den;
    const Rat a8 = a6 * a2, b8 = b6 * b * b, b12 = b6 * b6;
    const Rat v_den = a * b12 * h * h * h * h + Rat(2) * P.X * a3 * h * h * b6 + P.X * P.X * a3 * a2;
    const Rat V = b * h * (a8 - b8 * h * h) * P.Y / v_den;
    return std::make_pair(U, V);
}

// Bounded scan for finite points: X = m/e^2 with |m| <= num_bound,
// 1 <= e <= den_bound (x-denominators of rational points are squares).
// Returns the representative with Y >= 0.
inline std::vector<CurvePoint> small_point_search(const WeierstrassCurve& c,
                                                  std::int64_t num_bound,
                                                  std::int64_t den_bound) {
    if (num_bound < 1 || den_bound < 1)
        throw std::invalid_argument("small_point_search: bounds must be >= 1");
    std::vector<CurvePoint> out;
    for (std::int64_t e = 1; e <= den_bound; ++e) {
        const Int e2 = Int(e) * e;
        const Int e4 = e2 * e2, e6 = e4 * e2;
        for (std::int64_t m = -num_bound; m <= num_bound; ++m) {
            if (gcd(Int(m), Int(e)) != 1) continue;
            const Int num = Int(m) * m * m + c.coef_a * m * e4 + c.coef_b * e6;
            if (num < 0) continue;
            if (!arith::is_square(num)) continue;
            out.emplace_back(Rat(Int(m), e2), Rat(sqrt(num), e2 * e));
        }
    }
    return out;
}

// Walks n*P and -(n*P) for n = 1..max_multiple through the quartic back-map
// and solution recovery; emits distinct primitive nontrivial solutions.
inline std::size_t solutions_from_point(const Int& a, const Int& b, const Int& h,
                                        const CurvePoint& P, std::int64_t max_multiple,
                                        const brute::SolutionSink& emit,
                                        std::int64_t max_bits = kDefaultCoordinateBitLimit) {
    if (max_multiple < 1) throw std::invalid_argument("solutions_from_point: max_multiple must be >= 1");
    const WeierstrassCurve curve = build_curve(a, b, h);
    if (!on_curve(curve, P)) throw std::invalid_argument("solutions_from_point: seed is not on the curve");
    const quartic::QuarticCurve qc = quartic::build_quartic(a, b, h);

    std::set<model::SolutionKey> seen;
    std::size_t found = 0;
    CurvePoint Q = CurvePoint::at_infinity();
    for (std::int64_t n = 1; n <= max_multiple; ++n) {
        Q = add(curve, Q, P);
        detail::check_size(Q, max_bits);
        if (Q.infinity) continue;
        for (const CurvePoint& S : {Q, negate(Q)}) {
            const auto uv = to_quartic(curve, S);
            if (!uv) continue;
            const quartic::RationalU u{numerator(uv->first), denominator(uv->first)};
            auto sol = quartic::recover_solution(qc, u, uv->second);
            if (!sol) continue;
            sol->method = "elliptic";
            if (!seen.insert(model::key(*sol)).second) continue;
            ++found;
            if (!emit(*sol)) return found;
        }
    }
    return found;
}

} // namespace eqfour::elliptic
