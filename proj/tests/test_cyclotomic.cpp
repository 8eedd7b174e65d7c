#include <doctest.h>

#include <cmath>
#include <random>

#include "fermat/cyclotomic.hpp"
#include "fermat/errors.hpp"

using namespace fermat;

namespace {

CycInt from_coeffs(std::uint64_t ell, int level, const std::vector<long>& c) {
    CycInt out(ell, level);
    for (std::size_t i = 0; i < c.size(); ++i) out += CycInt::zeta_power(ell, level, static_cast<std::int64_t>(i)) * mpz_class(c[i]);
    return out;
}

CycInt random_element(std::mt19937_64& rng, std::uint64_t ell, int level, long bound = 20) {
    CycInt out(ell, level);
    for (std::size_t i = 0; i < out.degree(); ++i)
        out += CycInt::zeta_power(ell, level, static_cast<std::int64_t>(i)) *
               mpz_class(static_cast<long>(rng() % (2 * bound + 1)) - bound);
    return out;
}

std::vector<long> as_longs(const CycInt& x) {
    std::vector<long> out;
    for (const auto& c : x.coefficients()) out.push_back(c.get_si());
    return out;
}

}  // namespace

TEST_CASE("ring laws and reduction") {
    std::mt19937_64 rng(1);
    for (auto [ell, m] : {std::pair<std::uint64_t, int>{3, 1}, {3, 2}, {5, 1}, {5, 2}, {7, 1}, {3, 3}}) {
        CycInt zeta = CycInt::zeta_power(ell, m, 1);
        CHECK(zeta.pow(checked_pow(ell, static_cast<unsigned>(m))) == CycInt::from_integer(ell, m, 1));
        CycInt sum(ell, m);
        for (std::uint64_t j = 0; j < ell; ++j)
            sum += CycInt::zeta_power(ell, m, static_cast<std::int64_t>(j * checked_pow(ell, static_cast<unsigned>(m - 1))));
        CHECK(sum.is_zero());
        for (int i = 0; i < 20; ++i) {
            CycInt x = random_element(rng, ell, m), y = random_element(rng, ell, m), z = random_element(rng, ell, m);
            CHECK((x + y) * (x + y) == x * x + x * y * mpz_class(2) + y * y);
            CHECK(x * (y + z) == x * y + x * z);
            CHECK((x * y) * z == x * (y * z));
            CHECK(x - x == CycInt(ell, m));
        }
    }
    CHECK(CycInt::zeta_power(3, 1, -1) == CycInt::zeta_power(3, 1, 2));
    CHECK(CycInt::zeta_power(3, 1, 2) == from_coeffs(3, 1, {-1, -1}));
}

TEST_CASE("lifting between levels is a ring map") {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 20; ++i) {
        CycInt x = random_element(rng, 5, 1), y = random_element(rng, 5, 1);
        CHECK((x * y).lift(2) == x.lift(2) * y.lift(2));
        CHECK(trace(x.lift(2)) == trace(x) * 5);
    }
    CHECK(CycInt::zeta_power(3, 1, 1).lift(2) == CycInt::zeta_power(3, 2, 3));
}

TEST_CASE("Galois action") {
    std::mt19937_64 rng(4);
    CycInt x = random_element(rng, 3, 2);
    CHECK(galois_conjugate(x, 1) == x);
    CHECK_THROWS_AS(galois_conjugate(x, 3), Error);
    for (int i = 0; i < 30; ++i) {
        CycInt y = random_element(rng, 7, 1);
        std::int64_t a = 1 + static_cast<std::int64_t>(rng() % 6), b = 1 + static_cast<std::int64_t>(rng() % 6);
        CHECK(galois_conjugate(galois_conjugate(y, a), b) == galois_conjugate(y, a * b));
    }
}

TEST_CASE("norms and traces") {
    CHECK(trace(CycInt::from_integer(3, 2, 1)) == 6);
    CHECK(trace(CycInt::zeta_power(3, 2, 3)) == -3);
    CHECK(trace(CycInt::zeta_power(3, 2, 1)) == 0);
    CHECK(trace_of_zeta_power(5, 2, 25) == 20);
    CHECK(trace_of_zeta_power(5, 2, 10) == -5);
    CHECK(trace_of_zeta_power(5, 2, 7) == 0);
    for (auto [ell, m] : {std::pair<std::uint64_t, int>{3, 1}, {3, 2}, {5, 1}, {5, 2}, {7, 1}, {11, 1}, {3, 3}}) {
        CycInt one_minus_zeta = CycInt::from_integer(ell, m, 1) - CycInt::zeta_power(ell, m, 1);
        CHECK(norm(one_minus_zeta) == static_cast<long>(ell));
        CHECK(pi_prime_valuation(one_minus_zeta) == 1L);
        CHECK(pi_prime_valuation(CycInt::from_integer(ell, m, static_cast<long>(ell))) ==
              static_cast<long>(one_minus_zeta.degree()));
    }
    CHECK(!pi_prime_valuation(CycInt(5, 1)).has_value());

    std::mt19937_64 rng(9);
    for (auto [ell, m] : {std::pair<std::uint64_t, int>{3, 1}, {3, 2}, {5, 1}, {7, 1}, {5, 2}}) {
        for (int i = 0; i < 10; ++i) {
            CycInt x = random_element(rng, ell, m, 5);
            CHECK(norm(x) == norm_by_conjugates(x));
            CHECK(trace(x) == trace_by_conjugates(x));
            CycInt y = random_element(rng, ell, m, 5);
            CHECK(trace(x + y * mpz_class(3)) == trace(x) + 3 * trace(y));
            CHECK(norm(x * y) == norm(x) * norm(y));
        }
    }
}

TEST_CASE("complex embeddings") {
    CHECK(std::abs(complex_embed(CycInt::from_integer(5, 2, 1), 7) - std::complex<double>(1, 0)) < 1e-15);
    auto w = complex_embed(CycInt::zeta_power(3, 1, 1), 1);
    CHECK(std::abs(w - std::polar(1.0, 2 * M_PI / 3)) < 1e-12);
    CHECK_THROWS_AS(complex_embed(CycInt::zeta_power(3, 1, 1), 3), Error);
}

TEST_CASE("Jacobi sums against a brute-force oracle") {
    auto F7 = build_field(7, 1);
    MultChar chi7(F7, 3, 1, 1);
    CHECK(as_longs(jacobi_sum(chi7, chi7)) == std::vector<long>{-1, -3});
    CHECK(as_longs(jacobi_sum(chi7.power(2), chi7.power(2))) == std::vector<long>{2, 3});

    auto F19 = build_field(19, 1);
    MultChar chi19(F19, 3, 2, 1);
    CHECK(as_longs(jacobi_sum(chi19, chi19)) == std::vector<long>{2, 1, 4, 0, -1, 2});
    CHECK(as_longs(jacobi_sum(chi19, chi19.power(4))) == std::vector<long>{2, 1, -2, 0, 2, -4});

    auto F4 = build_field(2, 2);
    MultChar chi4(F4, 3, 1, 1);
    CHECK(as_longs(jacobi_sum(chi4, chi4)) == std::vector<long>{2, 0});

    auto F16 = build_field(2, 4);
    MultChar chi16(F16, 5, 1, 1);
    CHECK(as_longs(jacobi_sum(chi16, chi16.power(2))) == std::vector<long>{4, 0, 0, 0});

    auto F13 = build_field(13, 1);
    MultChar chi13(F13, 3, 1, 1);
    CHECK(as_longs(jacobi_sum(chi13, chi13)) == std::vector<long>{-4, -3});

    CHECK_THROWS_AS(jacobi_sum(chi7, chi7.power(2)), Error);
    CHECK_THROWS_AS(jacobi_sum(chi7, chi7.power(3)), Error);
}

TEST_CASE("Jacobi sum properties") {
    for (auto [p, n, ell, t] : {std::tuple<std::uint64_t, int, std::uint64_t, int>{7, 1, 3, 1},
                                {19, 1, 3, 2},
                                {31, 1, 5, 1},
                                {2, 4, 5, 1},
                                {3, 4, 5, 1},
                                {101, 1, 5, 2},
                                {109, 1, 3, 3}}) {
        auto F = build_field(p, n);
        MultChar chi(F, ell, t, 1);
        JacobiHistogram hist(F, ell, t);
        const std::uint64_t m = chi.modulus();
        for (std::uint64_t a = 1; a < m; ++a) {
            for (std::uint64_t b = 1; b < m; ++b) {
                if (a % ell == 0 || b % ell == 0 || (a + b) % m == 0) continue;
                CycInt J = jacobi_sum(chi.power(static_cast<std::int64_t>(a)), chi.power(static_cast<std::int64_t>(b)));
                CHECK(J == hist.jacobi(a, b));
                CHECK(J == jacobi_sum(chi.power(static_cast<std::int64_t>(b)), chi.power(static_cast<std::int64_t>(a))));
                if ((a + b) % ell == 0) continue;
                mpz_class N = norm(J);
                mpz_class expected = 1;
                for (std::size_t i = 0; i < J.degree() / 2; ++i) expected *= static_cast<unsigned long>(F->order());
                CHECK(abs(N) == expected);
                for (std::int64_t h = 1; h < static_cast<std::int64_t>(m); ++h) {
                    if (h % static_cast<std::int64_t>(ell) == 0) continue;
                    CHECK(std::norm(complex_embed(J, h)) == doctest::Approx(static_cast<double>(F->order())).epsilon(1e-9));
                }
                auto v = pi_prime_valuation(J + CycInt::from_integer(ell, t, 1));
                REQUIRE(v.has_value());
                CHECK(*v >= 2);
            }
        }
    }
}

TEST_CASE("Gauss sums") {
    MultChar quadratic5(build_field(5, 1), 2, 1, 1);
    CHECK(std::norm(gauss_sum_complex(quadratic5)) == doctest::Approx(5.0).epsilon(1e-9));
    // chi(-1) = -1 for the quadratic character of F_7.
    MultChar quadratic7(build_field(7, 1), 2, 1, 1);
    auto G7 = gauss_sum_complex(quadratic7);
    CHECK(std::abs(G7 * G7 - std::complex<double>(-7, 0)) < 1e-9);

    auto F11 = build_field(11, 1);
    MultChar chi(F11, 5, 1, 1);
    auto G = gauss_sum_complex(chi);
    CHECK(std::norm(G) == doctest::Approx(11.0).epsilon(1e-9));
    auto Gbar = gauss_sum_complex(chi.power(-1));
    CHECK(std::abs(G * Gbar - std::complex<double>(11, 0)) < 1e-9);

    // Hasse-Davenport: -G(chi o N) = (-G(chi))^k.
    for (auto [p, a, k, ell] : {std::tuple<std::uint64_t, int, int, std::uint64_t>{7, 1, 2, 3},
                                {7, 1, 3, 3},
                                {11, 1, 2, 5},
                                {2, 2, 2, 3},
                                {2, 2, 3, 3},
                                {3, 4, 2, 5}}) {
        auto sub = build_field(p, a), sup = build_field(p, a * k);
        auto emb = embed(sub, sup);
        MultChar c(sub, ell, 1, 1);
        auto lhs = -gauss_sum_complex(lift_through_norm(c, emb));
        auto rhs = std::pow(-gauss_sum_complex(c), k);
        CHECK(std::abs(lhs - rhs) < 1e-7 * std::abs(rhs));
    }
}

TEST_CASE("Hasse-Davenport lift of Jacobi sums is exact") {
    for (auto [p, a, k, ell] : {std::tuple<std::uint64_t, int, int, std::uint64_t>{7, 1, 2, 3},
                                {7, 1, 3, 3},
                                {13, 1, 2, 3},
                                {11, 1, 2, 5},
                                {2, 2, 2, 3},
                                {2, 2, 3, 3},
                                {2, 4, 2, 5}}) {
        auto sub = build_field(p, a), sup = build_field(p, a * k);
        auto emb = embed(sub, sup);
        MultChar chi(sub, ell, 1, 1);
        MultChar lifted = lift_through_norm(chi, emb);
        for (std::int64_t r = 1; r < static_cast<std::int64_t>(ell); ++r) {
            for (std::int64_t s = 1; s < static_cast<std::int64_t>(ell); ++s) {
                if ((r + s) % static_cast<std::int64_t>(ell) == 0) continue;
                CycInt base = jacobi_sum(chi.power(r), chi.power(s));
                CycInt expected = base.pow(static_cast<unsigned long>(k));
                if (k % 2 == 0) expected = -expected;
                CHECK(jacobi_sum(lifted.power(r), lifted.power(s)) == expected);
            }
        }
    }
}
