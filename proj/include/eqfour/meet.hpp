// Sorted-sum collision search: values A^4 + h*B^4 are generated bucket by
// bucket, where a bucket fixes the pair of residues (rp mod p, rq mod q) for
// two primes p, q = 3 (mod 4). Equal values inside a sorted bucket are exact
// collisions, i.e. solutions. Sweeping all p*q buckets partitions the whole
// (A, B) box, so peak memory is one bucket plus the residue tables, never
// the box.
//
// Bucket membership is enumerated without big-integer reductions: for each B
// the required residue of A^4 is looked up in precomputed fourth-power root
// tables mod p and mod q, and the admissible A are reconstructed by CRT.
#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "eqfour/arith.hpp"
#include "eqfour/brute.hpp" // SolutionSink, mod_inverse
#include "eqfour/model.hpp"

namespace eqfour::meet {

using brute::SolutionSink;

struct BucketKey {
    std::int64_t p = 0, q = 0; // distinct primes, both 3 mod 4
    std::int64_t rp = 0, rq = 0;
};

struct Entry {
    Int value; // A^4 + h*B^4
    std::int64_t A = 0, B = 0;
};

namespace detail {

struct EntryU128 {
    uint128 value;
    std::int64_t A, B;
    friend bool operator<(const EntryU128& x, const EntryU128& y) {
        if (x.value != y.value) return x.value < y.value;
        if (x.A != y.A) return x.A < y.A;
        return x.B < y.B;
    }
};

// fourth-power root lookup mod a prime: roots_for(r) = { x : x^4 = r (mod p) }
struct RootTable {
    std::int64_t p;
    std::vector<std::uint32_t> offsets; // size p+1
    std::vector<std::uint32_t> roots;   // size p, grouped by residue

    explicit RootTable(std::int64_t prime) : p(prime), offsets(static_cast<std::size_t>(p) + 1, 0) {
        std::vector<std::uint32_t> r4(static_cast<std::size_t>(p));
        for (std::int64_t x = 0; x < p; ++x) {
            r4[static_cast<std::size_t>(x)] =
                static_cast<std::uint32_t>(pow4_u128(static_cast<std::uint64_t>(x)) % static_cast<std::uint64_t>(p));
            ++offsets[r4[static_cast<std::size_t>(x)] + 1];
        }
        for (std::size_t i = 1; i < offsets.size(); ++i) offsets[i] += offsets[i - 1];
        roots.resize(static_cast<std::size_t>(p));
        std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
        for (std::int64_t x = 0; x < p; ++x)
            roots[cursor[r4[static_cast<std::size_t>(x)]]++] = static_cast<std::uint32_t>(x);
    }
};

struct Enumerator {
    std::int64_t h, p, q, a_max, b_max, pq;
    std::int64_t inv_p_mod_q; // p^{-1} (mod q)
    RootTable rtp, rtq;
    std::vector<std::uint32_t> hb4p, hb4q; // (h*B^4) mod p / mod q, index B
    std::vector<uint128> hb4;              // exact h*B^4, index B

    Enumerator(std::int64_t h_, std::int64_t p_, std::int64_t q_,
               std::int64_t a_max_, std::int64_t b_max_)
        : h(h_), p(p_), q(q_), a_max(a_max_), b_max(b_max_), pq(p_ * q_),
          inv_p_mod_q(brute::detail::mod_inverse(p_ % q_, q_)), rtp(p_), rtq(q_),
          hb4p(static_cast<std::size_t>(b_max_) + 1), hb4q(static_cast<std::size_t>(b_max_) + 1),
          hb4(static_cast<std::size_t>(b_max_) + 1) {
        const auto hp = static_cast<std::uint64_t>(h % p), hq = static_cast<std::uint64_t>(h % q);
        for (std::int64_t B = 1; B <= b_max; ++B) {
            const auto i = static_cast<std::size_t>(B);
            const auto b4p = static_cast<std::uint64_t>(pow4_u128(static_cast<std::uint64_t>(B % p)) % static_cast<std::uint64_t>(p));
            const auto b4q = static_cast<std::uint64_t>(pow4_u128(static_cast<std::uint64_t>(B % q)) % static_cast<std::uint64_t>(q));
            hb4p[i] = static_cast<std::uint32_t>(hp * b4p % static_cast<std::uint64_t>(p));
            hb4q[i] = static_cast<std::uint32_t>(hq * b4q % static_cast<std::uint64_t>(q));
            hb4[i] = uint128(h) * pow4_u128(static_cast<std::uint64_t>(B));
        }
    }

    std::int64_t crt(std::int64_t alpha, std::int64_t beta) const {
        std::int64_t d = (beta - alpha % q) % q;
        if (d < 0) d += q;
        return alpha + p * brute::detail::mulmod_i64(d, inv_p_mod_q, q);
    }

    // all (A, B) in the box with value = (rp, rq) mod (p, q), sorted
    void fill_bucket(std::int64_t rp, std::int64_t rq, std::vector<EntryU128>& out) const {
        out.clear();
        for (std::int64_t B = 1; B <= b_max; ++B) {
            const auto i = static_cast<std::size_t>(B);
            std::int64_t tp = rp - hb4p[i];
            if (tp < 0) tp += p;
            const auto p0 = rtp.offsets[static_cast<std::size_t>(tp)], p1 = rtp.offsets[static_cast<std::size_t>(tp) + 1];
            if (p0 == p1) continue;
            std::int64_t tq = rq - hb4q[i];
            if (tq < 0) tq += q;
            const auto q0 = rtq.offsets[static_cast<std::size_t>(tq)], q1 = rtq.offsets[static_cast<std::size_t>(tq) + 1];
            if (q0 == q1) continue;
            for (auto ip = p0; ip < p1; ++ip) {
                for (auto iq = q0; iq < q1; ++iq) {
                    const std::int64_t A0 = crt(rtp.roots[ip], rtq.roots[iq]);
                    for (std::int64_t A = (A0 == 0 ? pq : A0); A <= a_max; A += pq)
                        out.push_back({pow4_u128(static_cast<std::uint64_t>(A)) + hb4[i],
                                       A, B});
                }
            }
        }
        std::sort(out.begin(), out.end());
    }
};

inline void validate(std::int64_t h, std::int64_t p, std::int64_t q,
                     std::int64_t a_max, std::int64_t b_max) {
    if (h < 2) throw std::invalid_argument("meet: h must be >= 2");
    if (p == q) throw std::invalid_argument("meet: p and q must be distinct");
    if (p % 4 != 3 || q % 4 != 3) throw std::invalid_argument("meet: p and q must be 3 mod 4");
    if (!arith::is_prime(p) || !arith::is_prime(q)) throw std::invalid_argument("meet: p and q must be prime");
    if (p >= (std::int64_t(1) << 31) || q >= (std::int64_t(1) << 31))
        throw std::invalid_argument("meet: p*q out of range");
    if (a_max < 1 || b_max < 1) throw std::invalid_argument("meet: bounds must be >= 1");
    if (pow4(Int(a_max)) + Int(h) * pow4(Int(b_max)) >= (Int(1) << 127))
        throw std::invalid_argument("meet: bounds exceed the 128-bit engine range");
}

} // namespace detail

inline std::vector<Entry> bucket_enumerate(std::int64_t h, const BucketKey& key,
                                           std::int64_t a_max, std::int64_t b_max) {
    detail::validate(h, key.p, key.q, a_max, b_max);
    if (key.rp < 0 || key.rp >= key.p || key.rq < 0 || key.rq >= key.q)
        throw std::invalid_argument("bucket_enumerate: residues out of range");
    detail::Enumerator e(h, key.p, key.q, a_max, b_max);
    std::vector<detail::EntryU128> raw;
    e.fill_bucket(key.rp, key.rq, raw);
    std::vector<Entry> out;
    out.reserve(raw.size());
    for (const auto& r : raw) {
        Int v = static_cast<std::uint64_t>(r.value >> 64);
        v <<= 64;
        v += static_cast<std::uint64_t>(r.value);
        out.push_back({std::move(v), r.A, r.B});
    }
    return out;
}

// Sweeps all p*q buckets row-major (rp outer, rq inner); equal-value runs in
// each sorted bucket yield solutions. Returns the count of distinct
// primitive nontrivial solutions emitted.
inline std::size_t meet_search(std::int64_t h, std::int64_t p, std::int64_t q,
                               std::int64_t a_max, std::int64_t b_max,
                               const SolutionSink& emit) {
    detail::validate(h, p, q, a_max, b_max);
    detail::Enumerator e(h, p, q, a_max, b_max);
    std::vector<detail::EntryU128> bucket;
    std::set<model::SolutionKey> seen;
    std::size_t found = 0;

    // per rp-row, only the B whose required A^4 residue has roots mod p
    struct RowEntry {
        std::int64_t B;
        std::uint32_t p0, p1;
    };
    std::vector<RowEntry> row;
    row.reserve(static_cast<std::size_t>(b_max));

    for (std::int64_t rp = 0; rp < p; ++rp) {
        row.clear();
        for (std::int64_t B = 1; B <= b_max; ++B) {
            std::int64_t tp = rp - e.hb4p[static_cast<std::size_t>(B)];
            if (tp < 0) tp += p;
            const auto p0 = e.rtp.offsets[static_cast<std::size_t>(tp)];
            const auto p1 = e.rtp.offsets[static_cast<std::size_t>(tp) + 1];
            if (p0 != p1) row.push_back({B, p0, p1});
        }
        for (std::int64_t rq = 0; rq < q; ++rq) {
            bucket.clear();
            for (const auto& re : row) {
                const auto i = static_cast<std::size_t>(re.B);
                std::int64_t tq = rq - e.hb4q[i];
                if (tq < 0) tq += q;
                const auto q0 = e.rtq.offsets[static_cast<std::size_t>(tq)];
                const auto q1 = e.rtq.offsets[static_cast<std::size_t>(tq) + 1];
                if (q0 == q1) continue;
                for (auto ip = re.p0; ip < re.p1; ++ip) {
                    for (auto iq = q0; iq < q1; ++iq) {
                        const std::int64_t A0 = e.crt(e.rtp.roots[ip], e.rtq.roots[iq]);
                        for (std::int64_t A = (A0 == 0 ? e.pq : A0); A <= a_max; A += e.pq)
                            bucket.push_back({pow4_u128(static_cast<std::uint64_t>(A)) + e.hb4[i],
                                              A, re.B});
                    }
                }
            }
            std::sort(bucket.begin(), bucket.end());
            for (std::size_t i = 0; i < bucket.size();) {
                std::size_t j = i + 1;
                while (j < bucket.size() && bucket[j].value == bucket[i].value) ++j;
                for (std::size_t x = i; x < j; ++x) {
                    for (std::size_t y = x + 1; y < j; ++y) {
                        auto sol = model::normalize(Int(h), Int(bucket[x].A), Int(bucket[x].B),
                                                    Int(bucket[y].A), Int(bucket[y].B), "meet");
                        if (!sol) continue;
                        if (!seen.insert(model::key(*sol)).second) continue;
                        ++found;
                        if (!emit(*sol)) return found;
                    }
                }
                i = j;
            }
        }
    }
    return found;
}

} // namespace eqfour::meet
