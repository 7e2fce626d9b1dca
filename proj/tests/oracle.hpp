// Independent reference for the search engines: a literal quadruple loop
// over the box with no congruence filtering and no sorting. The only
// concessions to speed are precomputed fourth powers, the canonical A > C
// orientation, and breaking the innermost loop once its strictly increasing
// value passes the target.
#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "eqfour/model.hpp"

namespace eqfour::testing {

using SolutionSet = std::set<model::SolutionKey>;

inline SolutionSet oracle_solutions(std::int64_t h, std::int64_t box) {
    if (h < 1 || box < 1 || box > 2000)
        throw std::invalid_argument("oracle_solutions: out of the u64-safe range");
    std::vector<std::uint64_t> p4(static_cast<std::size_t>(box) + 1);
    for (std::int64_t n = 0; n <= box; ++n)
        p4[static_cast<std::size_t>(n)] = static_cast<std::uint64_t>(n) * n * n * n;
    const auto uh = static_cast<std::uint64_t>(h);

    SolutionSet out;
    for (std::int64_t A = 2; A <= box; ++A) {
        for (std::int64_t B = 1; B <= box; ++B) {
            const std::uint64_t lhs = p4[static_cast<std::size_t>(A)] + uh * p4[static_cast<std::size_t>(B)];
            for (std::int64_t C = 1; C < A; ++C) {
                for (std::int64_t D = 1; D <= box; ++D) {
                    const std::uint64_t rhs = p4[static_cast<std::size_t>(C)] + uh * p4[static_cast<std::size_t>(D)];
                    if (rhs > lhs) break;
                    if (rhs != lhs) continue;
                    auto sol = model::normalize(Int(h), Int(A), Int(B), Int(C), Int(D));
                    if (sol) out.insert(model::key(*sol));
                }
            }
        }
    }
    return out;
}

} // namespace eqfour::testing
