// Exact integer arithmetic shared by every search method: fourth powers and
// roots, fourth-power residue sieves, and prime classification by p mod 4.
// Everything here decides with integer arithmetic only; floating point is
// never on a decision path.
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace eqfour {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using uint128 = unsigned __int128;

inline Int pow4(const Int& n) { Int s = n * n; return s * s; }

inline uint128 pow4_u128(std::uint64_t n) {
    uint128 s = uint128(n) * n;
    return s * s;
}

// The wrapped boost::rational rejects negative denominators outright for
// unbounded integers, so the sign moves to the numerator before construction.
inline Rat make_rational(Int num, Int den) {
    if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    return Rat(std::move(num), std::move(den));
}

namespace arith {

// floor(sqrt(n)); boost's sqrt on cpp_int is already the integer square root.
inline Int integer_sqrt(const Int& n) {
    if (n < 0) throw std::invalid_argument("integer_sqrt: negative input");
    return sqrt(n);
}

inline bool is_square(const Int& n) {
    if (n < 0) return false;
    // squares are 0,1,4,9 mod 16 and 0,1,4,7 mod 9
    const unsigned r16 = static_cast<unsigned>(n & 15);
    if (r16 != 0 && r16 != 1 && r16 != 4 && r16 != 9) return false;
    const unsigned r9 = static_cast<unsigned>(n % 9);
    if (r9 != 0 && r9 != 1 && r9 != 4 && r9 != 7) return false;
    const Int r = sqrt(n);
    return r * r == n;
}

// floor(n^(1/4)) via two integer square roots.
inline Int fourth_root_floor(const Int& n) {
    if (n < 0) throw std::invalid_argument("fourth_root_floor: negative input");
    return sqrt(Int(sqrt(n)));
}

// r such that r^4 == n exactly, or empty.
inline std::optional<Int> integer_fourth_root(const Int& n) {
    if (n < 0) throw std::invalid_argument("integer_fourth_root: negative input");
    const Int r = fourth_root_floor(n);
    if (pow4(r) == n) return r;
    return std::nullopt;
}

// Fourth powers are 0 or 1 mod 16; the sieve runs before any root extraction.
inline bool is_fourth_power(const Int& n) {
    if (n < 0) return false;
    const unsigned r16 = static_cast<unsigned>(n & 15);
    if (r16 > 1) return false;
    return integer_fourth_root(n).has_value();
}

// Residues mod `modulus` attainable as n^4; the set is complete by
// construction (every n in [0, modulus) is raised).
struct Sieve {
    std::int64_t modulus = 0;
    std::vector<std::uint8_t> mask;       // mask[r] != 0 iff r admissible
    std::vector<std::int64_t> admissible; // ascending

    bool admits(const Int& n) const {
        return mask[static_cast<std::size_t>(n % modulus)] != 0;
    }
    bool admits(std::uint64_t n) const { return mask[n % modulus] != 0; }
};

inline Sieve build_sieve(std::int64_t modulus) {
    if (modulus < 2) throw std::invalid_argument("build_sieve: modulus must be >= 2");
    Sieve s;
    s.modulus = modulus;
    s.mask.assign(static_cast<std::size_t>(modulus), 0);
    const auto m = static_cast<std::uint64_t>(modulus);
    for (std::uint64_t n = 0; n < m; ++n) {
        const std::uint64_t r = static_cast<std::uint64_t>(pow4_u128(n % m) % m);
        s.mask[r] = 1;
    }
    for (std::int64_t r = 0; r < modulus; ++r)
        if (s.mask[static_cast<std::size_t>(r)]) s.admissible.push_back(r);
    return s;
}

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::int64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

// Full trial-division factorization, ascending primes.
inline std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("factorize: input must be >= 1");
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

// Prime-power factors of h whose prime is 3 mod 4, ascending.
inline std::vector<std::pair<std::int64_t, int>> prime_factors_3mod4(std::int64_t h) {
    std::vector<std::pair<std::int64_t, int>> out;
    for (const auto& [p, e] : factorize(h))
        if (p % 4 == 3) out.emplace_back(p, e);
    return out;
}

// Exact square/fourth-power tests on 128 bits (hot loops; the float below is
// only a seed, the decision is integral). Callers keep n < 2^127 so r+1 and
// (r+1)^2 cannot wrap.
inline std::uint64_t isqrt_u128(uint128 n) {
    if (n == 0) return 0;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && uint128(r) * r > n) --r;
    while (uint128(r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline bool fourth_root_u128(uint128 n, std::uint64_t& root) {
    if ((n & 15) > 1) return false;
    const std::uint64_t r = isqrt_u128(n);
    if (uint128(r) * r != n) return false;
    const std::uint64_t s = isqrt_u128(r);
    if (uint128(s) * s != uint128(r)) return false;
    root = s;
    return true;
}

} // namespace arith
} // namespace eqfour
