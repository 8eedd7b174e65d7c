#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "fermat/errors.hpp"
#include "fermat/params.hpp"

namespace fermat::testing {

inline constexpr std::uint64_t kSmallOddPrimes[] = {3, 5, 7, 11, 13, 17, 19, 23};

// Random valid curve parameters; rejection sampling over raw tuples.
inline CurveParams random_params(std::mt19937_64& rng, std::uint64_t max_power = 2000,
                                 std::uint64_t max_delta = 1'000'000) {
    while (true) {
        std::uint64_t ell = kSmallOddPrimes[rng() % std::size(kSmallOddPrimes)];
        int N = 1 + static_cast<int>(rng() % 3);
        std::uint64_t power = 1;
        for (int i = 0; i < N; ++i) power *= ell;
        if (power > max_power) continue;
        std::uint64_t r = 1 + rng() % (power - 2);
        std::uint64_t s = 1 + rng() % (power - 1 - r);
        std::uint64_t t = power - r - s;
        std::uint64_t delta = 1 + rng() % max_delta;
        try {
            return CurveParams::validate(ell, N, delta, r, s, t);
        } catch (const Error&) {
        }
    }
}

}  // namespace fermat::testing
