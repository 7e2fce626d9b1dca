// Solution data model for A^4 + h*B^4 = C^4 + h*D^4: exact verification,
// canonical normalization (absolute values, primitive gcd, A > C
// orientation), triviality, and the weight A^4 + h*B^4 used to rank
// solutions per h.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>

#include "eqfour/arith.hpp"

namespace eqfour::model {

// Verified nontrivial primitive solution. Invariants (enforced by
// normalize, the only intended producer):
//   A^4 + h*B^4 == C^4 + h*D^4, entries >= 0, A > C, gcd(A,B,C,D) = 1.
struct Solution {
    Int h;
    Int A, B, C, D;
    std::string method; // brute | meet | quartic | elliptic | family:<name> | imported
};

struct Weight {
    Int value;
    friend bool operator==(const Weight& x, const Weight& y) { return x.value == y.value; }
    friend bool operator<(const Weight& x, const Weight& y) { return x.value < y.value; }
};

inline bool verify(const Int& h, const Int& A, const Int& B, const Int& C, const Int& D) {
    if (h < 1) throw std::invalid_argument("verify: h must be >= 1");
    return pow4(A) + h * pow4(B) == pow4(C) + h * pow4(D);
}

namespace detail {
inline Int gcd4(const Int& a, const Int& b, const Int& c, const Int& d) {
    return gcd(gcd(a, b), gcd(c, d));
}
} // namespace detail

// Canonical form, or nullopt when the quadruple is trivial (both sides
// identical after reduction, which forces A == C and B == D).
inline std::optional<Solution> normalize(const Int& h, const Int& A, const Int& B,
                                         const Int& C, const Int& D,
                                         std::string method = {}) {
    if (!verify(h, A, B, C, D)) throw std::invalid_argument("normalize: quadruple does not satisfy the equation");
    Int a = abs(A), b = abs(B), c = abs(C), d = abs(D);
    const Int g = detail::gcd4(a, b, c, d);
    if (g == 0) return std::nullopt; // all-zero
    if (g > 1) { a /= g; b /= g; c /= g; d /= g; }
    // A == C forces B == D (h >= 1), i.e. the trivial solution.
    if (a == c) return std::nullopt;
    if (a < c) { swap(a, c); swap(b, d); }
    return Solution{h, a, b, c, d, std::move(method)};
}

inline bool is_trivial(const Int& h, const Int& A, const Int& B, const Int& C, const Int& D) {
    return !normalize(h, A, B, C, D).has_value();
}

inline Weight weight(const Solution& s) {
    return Weight{pow4(s.A) + s.h * pow4(s.B)};
}

// Deterministic total order for "smallest" reports: (weight, A, B).
inline bool weight_less(const Solution& x, const Solution& y) {
    const Int wx = weight(x).value, wy = weight(y).value;
    if (wx != wy) return wx < wy;
    if (x.A != y.A) return x.A < y.A;
    return x.B < y.B;
}

using SolutionKey = std::tuple<Int, Int, Int, Int, Int>;

inline SolutionKey key(const Solution& s) { return {s.h, s.A, s.B, s.C, s.D}; }

} // namespace eqfour::model
