#include <doctest.h>

#include <random>
#include <set>

#include "fermat/errors.hpp"
#include "fermat/reference_tables.hpp"
#include "fermat/root_number.hpp"
#include "generators.hpp"

using namespace fermat;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::InternalAssertion;
}

CurveParams ell3(std::uint64_t r, std::uint64_t s, std::uint64_t delta) {
    return CurveParams::validate(3, 2, delta, r, s, 9 - r - s);
}

const int kPrec = default_precision(2);

}  // namespace

TEST_CASE("legendre and mu4") {
    CHECK(legendre(1, 7) == 1);
    CHECK(legendre(2, 7) == 1);
    CHECK(legendre(3, 5) == -1);
    CHECK(legendre(-1, 3) == -1);
    CHECK(legendre(-1, 5) == 1);
    CHECK(code_of([] { (void)legendre(14, 7); }) == ErrorCode::NotCoprime);

    CHECK(Mu4(-1).exponent() == 3);
    CHECK((Mu4(1) * Mu4(3)).to_sign() == 1);
    CHECK(Mu4::sign(-1).to_string() == "-1");
    CHECK(code_of([] { (void)Mu4(1).to_sign(); }) == ErrorCode::InternalAssertion);
}

TEST_CASE("local root numbers") {
    auto a = local_root_numbers(CurveParams::validate(3, 1, 1, 1, 1, 1));
    CHECK(a.w_infinity.exponent() == 3);
    CHECK(a.finite.empty());
    auto b = local_root_numbers(ell3(1, 1, 5));
    CHECK(b.finite.at(5) == -1);
    CHECK(b.w_infinity.exponent() == 1);
    auto c = local_root_numbers(ell3(1, 1, 30));
    CHECK(c.finite.size() == 2);
    CHECK(c.finite.at(2) == -1);
    CHECK(c.finite.at(5) == -1);
}

TEST_CASE("ell factor branches") {
    auto ramified = w_ell(ell3(1, 1, 3), kPrec);
    CHECK(ramified.branch == WellBranch::DeltaDivisible);
    CHECK(!ramified.j_residue);

    auto wild = w_ell(ell3(1, 1, 1), kPrec);
    CHECK(wild.branch == WellBranch::Ramified);
    CHECK(wild.data.ord_c == 1);
    CHECK(wild.j_residue == 1u);

    auto tame = w_ell(ell3(1, 1, 2), kPrec);
    CHECK(tame.branch == WellBranch::Unramified);
    CHECK(tame.sign == -1);
}

TEST_CASE("global root numbers at ell = 3, N = 2") {
    CHECK(global_root_number(ell3(2, 2, 6), kPrec).W == -1);
    CHECK(global_root_number(ell3(1, 1, 1), kPrec).W == 1);
    CHECK(global_root_number(ell3(1, 1, 7), kPrec).W == -1);
    CHECK(global_root_number(ell3(1, 4, 3), kPrec).W == 1);
    // Ramified rows whose unit part of c' is 1 mod 3; the published tables list the opposite sign.
    CHECK(global_root_number(ell3(1, 1, 4), kPrec).W == 1);
    CHECK(global_root_number(ell3(1, 4, 2), kPrec).W == -1);
    CHECK(global_root_number(ell3(2, 2, 1), kPrec).W == 1);
}

TEST_CASE("global conductors") {
    CHECK(global_conductor(ell3(1, 1, 2), kPrec).factored() == "2^36 * 3^10");
    CHECK(global_conductor(ell3(1, 1, 7), kPrec).factored() == "3^11 * 7^336");
    CHECK(global_conductor(ell3(1, 1, 1), kPrec).factored() == "3^15");
    CHECK(global_conductor(ell3(1, 1, 3), kPrec).factored() == "3^21");
    auto c = global_conductor(ell3(1, 4, 2), kPrec);
    CHECK(c.f_ell == 2);
    CHECK(c.disc_exponent == 9);
    CHECK(c.warnings.empty());
}

TEST_CASE("verbatim f_p away from delta") {
    auto params = ell3(1, 1, 2);
    // p = 5 does not divide delta: the remaining branches are exercised directly.
    auto pc = prime_conductor_verbatim(params, 5);
    CHECK((pc.branch == 2 || pc.branch == 3));
    CHECK(prime_conductor_verbatim(params, 2).branch == 1);
    CHECK(prime_conductor_verbatim(params, 2).f_p == 6);
    CHECK(code_of([&] { (void)prime_conductor_verbatim(params, 7); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([&] { (void)prime_conductor_verbatim(params, 3); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("conjectured ell factor") {
    for (std::uint64_t d = 1; d <= 8; ++d) {
        for (auto [r, s] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{{1, 1}, {1, 4}, {2, 2}}) {
            auto p = ell3(r, s, d);
            CHECK(w_ell_conjectured(p, kPrec).value == w_ell(p, kPrec).value);
        }
    }
    CHECK(w_ell_conjectured(ell3(1, 1, 3), kPrec).branch == 1);
}

TEST_CASE("addend congruences") {
    for (auto [ell, N, o] : std::vector<std::tuple<std::uint64_t, int, int>>{
             {3, 2, 1}, {3, 2, 2}, {5, 2, 1}, {5, 3, 1}, {5, 3, 2}, {5, 3, 3}, {7, 4, 2}}) {
        auto a = check_addends(ell, N, o);
        CHECK_MESSAGE(a.passed, a.witness);
        if (o < N) {
            CHECK(a.r0.has_value());
            CHECK(a.r1.has_value());
        }
    }
    auto rep = verify_conjecture(23, 2, 1, 2, 5, 2);
    CHECK(rep.addends.size() == 16);
    CHECK(rep.samples.size() == 40);
    CHECK(rep.violations() == 0);
}

TEST_CASE("structural invariants") {
    std::mt19937_64 rng(5);
    std::set<int> seen_branches;
    for (int it = 0; it < 400; ++it) {
        auto params = testing::random_params(rng);
        auto rep = global_root_number(params, default_precision(params.N()));
        CHECK((rep.W == 1 || rep.W == -1));
        CHECK((rep.local.w_infinity.exponent() + rep.ell_factor.i_part.exponent()) % 4 == 0);
        seen_branches.insert(static_cast<int>(rep.ell_factor.branch));
        auto sw = params.swapped();
        CHECK(global_root_number(sw, default_precision(sw.N())).W == rep.W);
        CHECK(global_conductor(sw, default_precision(sw.N())).factored() ==
              global_conductor(params, default_precision(params.N())).factored());
    }
    CHECK(seen_branches.size() == 3);
}

TEST_CASE("published tables") {
    auto rows = compare_reference_tables(kPrec);
    CHECK(rows.size() == 51);
    std::vector<std::string> mismatched;
    for (const auto& r : rows)
        if (!r.match) mismatched.push_back(std::to_string(r.table) + ":" + r.key);
    const std::vector<std::string> expected = {
        "3:(r,s)=(1,1) delta=4", "3:(r,s)=(1,1) delta=5", "4:(r,s)=(1,4) delta=2",
        "4:(r,s)=(1,4) delta=4", "4:(r,s)=(1,4) delta=5", "4:(r,s)=(1,4) delta=7",
        "5:(r,s)=(2,2) delta=1", "5:(r,s)=(2,2) delta=7", "5:(r,s)=(2,2) delta=8"};
    CHECK(mismatched == expected);
}
