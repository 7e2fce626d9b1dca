// Exhaustive search over (A, B, C) with A stepped through the congruence
// classes forced by the prime factors p = 3 (mod 4) of h.
//
// For such p, p | A^4 - C^4 implies p | A-C or p | A+C (p cannot divide
// A^2 + C^2 unless it divides both A and C, and then it divides A-C too).
// Combining the two choices per prime by CRT gives at most 2^k residue
// classes mod the product of the distinct primes; these are necessary
// conditions only, so h | A^4 - C^4 is re-checked exactly before the B loop.
// f = (A^4 - C^4)/h + B^4 is then tested for fourth-power-ness behind the
// mod-16 sieve.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <stdexcept>
#include <vector>

#include "eqfour/arith.hpp"
#include "eqfour/model.hpp"

namespace eqfour::brute {

struct ResidueClass {
    std::int64_t modulus = 1;
    std::int64_t residue = 0; // in [0, modulus)
};

struct BruteBounds {
    std::int64_t a_min = 1;
    std::int64_t a_max = 0;
    std::int64_t b_max = 0;
    std::int64_t c_max = 0;
};

// Sink returns false to stop the search early.
using SolutionSink = std::function<bool(const model::Solution&)>;

namespace detail {

inline std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
    std::int64_t t = 0, nt = 1, r = m, nr = a % m;
    if (nr < 0) nr += m;
    while (nr != 0) {
        const std::int64_t q = r / nr;
        const std::int64_t t2 = t - q * nt;
        t = nt; nt = t2;
        const std::int64_t r2 = r - q * nr;
        r = nr; nr = r2;
    }
    return t < 0 ? t + m : t;
}

inline std::int64_t mulmod_i64(std::int64_t a, std::int64_t b, std::int64_t m) {
    return static_cast<std::int64_t>(static_cast<uint128>(a) * static_cast<std::uint64_t>(b) % static_cast<std::uint64_t>(m));
}

// CRT combination of A = +/-C mod each prime, deduplicated and sorted.
inline std::vector<ResidueClass> classes_from_primes(const std::vector<std::int64_t>& primes,
                                                     std::int64_t C) {
    std::vector<std::int64_t> residues{0};
    std::int64_t modulus = 1;
    for (const std::int64_t p : primes) {
        std::vector<std::int64_t> next;
        const std::int64_t inv = mod_inverse(modulus % p, p);
        for (const std::int64_t r : residues) {
            for (const std::int64_t target : {C % p, (p - C % p) % p}) {
                // x = r (mod modulus), x = target (mod p)
                std::int64_t d = (target - r % p) % p;
                if (d < 0) d += p;
                next.push_back(r + modulus * mulmod_i64(d, inv, p));
            }
        }
        modulus *= p;
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        residues = std::move(next);
    }
    std::vector<ResidueClass> out;
    out.reserve(residues.size());
    for (const std::int64_t r : residues) out.push_back({modulus, r});
    return out;
}

} // namespace detail

inline std::vector<ResidueClass> residue_classes_for_A(std::int64_t h, std::int64_t C) {
    std::vector<std::int64_t> primes;
    for (const auto& [p, e] : arith::prime_factors_3mod4(h)) primes.push_back(p);
    return detail::classes_from_primes(primes, C);
}

inline std::size_t brute_search(std::int64_t h, const BruteBounds& bounds,
                                const SolutionSink& emit) {
    if (h < 2) throw std::invalid_argument("brute_search: h must be >= 2");
    if (arith::is_fourth_power(Int(h)))
        throw std::invalid_argument("brute_search: h is a perfect fourth power, excluded from searching");
    if (bounds.a_min < 1 || bounds.a_min > bounds.a_max || bounds.b_max < 1 || bounds.c_max < 1)
        throw std::invalid_argument("brute_search: empty or invalid bounds");
    // engine works in 128-bit; guard so no intermediate can reach 2^127
    if (pow4(Int(bounds.a_max)) + Int(h) * pow4(Int(bounds.b_max)) >= (Int(1) << 127))
        throw std::invalid_argument("brute_search: bounds exceed the 128-bit engine range");

    std::vector<std::int64_t> primes;
    for (const auto& [p, e] : arith::prime_factors_3mod4(h)) primes.push_back(p);

    std::vector<uint128> b4(static_cast<std::size_t>(bounds.b_max) + 1);
    for (std::int64_t B = 1; B <= bounds.b_max; ++B)
        b4[static_cast<std::size_t>(B)] = pow4_u128(static_cast<std::uint64_t>(B));

    const auto uh = static_cast<std::uint64_t>(h);
    std::set<model::SolutionKey> seen;
    std::size_t found = 0;
    std::vector<std::int64_t> candidates;

    for (std::int64_t C = 1; C <= bounds.c_max; ++C) {
        const uint128 c4 = pow4_u128(static_cast<std::uint64_t>(C));
        const std::int64_t a_lo = std::max(bounds.a_min, C + 1);

        candidates.clear();
        for (const auto& cls : detail::classes_from_primes(primes, C)) {
            std::int64_t A = a_lo + (cls.residue - a_lo % cls.modulus + cls.modulus) % cls.modulus;
            for (; A <= bounds.a_max; A += cls.modulus) candidates.push_back(A);
        }
        std::sort(candidates.begin(), candidates.end());

        for (const std::int64_t A : candidates) {
            const uint128 diff = pow4_u128(static_cast<std::uint64_t>(A)) - c4;
            if (diff % uh != 0) continue;
            const uint128 base = diff / uh;
            for (std::int64_t B = 1; B <= bounds.b_max; ++B) {
                const uint128 f = base + b4[static_cast<std::size_t>(B)];
                if ((static_cast<unsigned>(f) & 15u) > 1u) continue;
                std::uint64_t D = 0;
                if (!arith::fourth_root_u128(f, D)) continue;
                auto sol = model::normalize(Int(h), Int(A), Int(B), Int(C), Int(D), "brute");
                if (!sol) continue;
                if (!seen.insert(model::key(*sol)).second) continue;
                ++found;
                if (!emit(*sol)) return found;
            }
        }
    }
    return found;
}

} // namespace eqfour::brute
