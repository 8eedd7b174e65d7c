#include <doctest.h>

#include <random>

#include "fermat/arith.hpp"
#include "fermat/errors.hpp"
#include "fermat/point_count.hpp"
#include "generators.hpp"

using namespace fermat;

namespace {

struct Instance {
    std::uint64_t ell;
    int N;
    std::uint64_t r, s, delta, p;
    int k;
    std::uint64_t expected;
};

// Values from a direct (x, y) double loop in an independent implementation.
const Instance kFrozen[] = {
    {3, 1, 1, 1, 1, 2, 1, 3},    {3, 1, 1, 1, 1, 7, 1, 9},    {3, 1, 1, 1, 1, 13, 1, 9},
    {3, 2, 1, 1, 5, 19, 1, 3},   {5, 1, 1, 1, 2, 11, 1, 8},   {3, 1, 1, 1, 1, 2, 2, 9},
    {3, 1, 1, 1, 5, 2, 4, 9},    {3, 2, 1, 1, 5, 2, 6, 129},  {3, 2, 1, 4, 2, 37, 1, 75},
    {3, 2, 2, 2, 7, 2, 6, 129},  {5, 1, 1, 2, 3, 2, 4, 33},   {5, 2, 1, 1, 3, 101, 1, 203},
    {3, 1, 1, 1, 1, 5, 1, 6},
};

CurveParams params_of(const Instance& in) {
    return CurveParams::validate(in.ell, in.N, in.delta, in.r, in.s, checked_pow(in.ell, in.N) - in.r - in.s);
}

}  // namespace

TEST_CASE("counts agree with frozen enumeration values") {
    for (const auto& in : kFrozen) {
        auto params = params_of(in);
        auto F = build_field(in.p, in.k);
        CAPTURE(in.ell);
        CAPTURE(in.p);
        CAPTURE(in.k);
        CHECK(count_bruteforce(params, *F) == in.expected);
        CHECK(count_formula(params, F) == in.expected);
    }
}

TEST_CASE("q + 1 when ell does not divide q - 1") {
    auto params = CurveParams::validate(3, 1, 1, 1, 1, 1);
    auto F5 = build_field(5, 1);
    CHECK(count_formula(params, F5) == 6);
    CHECK(count_bruteforce(params, *F5) == 6);
}

TEST_CASE("bad reduction and budget") {
    auto params = CurveParams::validate(3, 2, 10, 1, 1, 7);
    CHECK_THROWS_AS(count_formula(params, build_field(3, 1)), Error);
    CHECK_THROWS_AS(count_formula(params, build_field(5, 1)), Error);
    CHECK_THROWS_AS(count_bruteforce(params, *build_field(2, 3)), Error);
    try {
        count_bruteforce(CurveParams::validate(3, 1, 1, 1, 1, 1), *build_field(7, 2), 10);
        FAIL("expected BudgetExceeded");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BudgetExceeded);
    }
    auto partial = count_points(CurveParams::validate(3, 1, 1, 1, 1, 1), build_field(7, 2), kDefaultBudget, 10);
    CHECK(!partial.brute.has_value());
    CHECK(partial.formula == count_bruteforce(CurveParams::validate(3, 1, 1, 1, 1, 1), *build_field(7, 2)));
}

TEST_CASE("brute force equals the character sum on random instances") {
    std::mt19937_64 rng(29);
    const std::uint64_t primes[] = {2, 3, 5, 7, 11, 13, 19, 31, 37, 41, 61, 71, 73, 101, 109, 127, 163, 181, 251};
    for (int trial = 0; trial < 150; ++trial) {
        auto params = testing::random_params(rng, 30, 500);
        std::uint64_t p = primes[rng() % std::size(primes)];
        if (p == params.ell() || params.delta() % p == 0) continue;
        int k = 1 + static_cast<int>(rng() % 3);
        if (checked_pow(p, static_cast<unsigned>(k)) > 200'000) k = 1;
        auto F = build_field(p, k);
        auto result = count_points(params, F);
        CAPTURE(params.ell());
        CAPTURE(F->order());
        REQUIRE(result.brute.has_value());
        CHECK(*result.brute == result.formula);
        CHECK(within_hasse_weil(params, F->order(), result.formula));
    }
}
