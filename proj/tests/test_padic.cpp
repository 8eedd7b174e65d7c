#include <doctest.h>

#include <random>

#include "fermat/errors.hpp"
#include "fermat/padic.hpp"
#include "fermat/params.hpp"
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

std::uint64_t conductor_of(long delta, std::uint64_t ell, int N) {
    return hilbert_conductor(decompose(mpq_class(delta), ell, default_precision(N)), N).exponent;
}

}  // namespace

TEST_CASE("padic arithmetic") {
    auto a = PadicNumber::from_integer(45, 3, 5);
    CHECK(a.valuation() == 2);
    CHECK(a.unit() == 5);
    CHECK(a.absolute_precision() == 7);
    CHECK(a.residue(3) == 18);
    CHECK(a.unit_digits() == std::vector<unsigned>{2, 1, 0, 0, 0});

    auto half = PadicNumber::from_rational(mpq_class(1, 2), 5, 4);
    CHECK(half.valuation() == 0);
    CHECK((half * PadicNumber::from_integer(2, 5, 4)).congruent(PadicNumber::from_integer(1, 5, 4)));

    auto third = PadicNumber::from_rational(mpq_class(2, 9), 3, 4);
    CHECK(third.valuation() == -2);
    CHECK((third * PadicNumber::from_integer(9, 3, 6)).residue(4) == 2);

    auto x = PadicNumber::from_integer(10, 3, 4);
    auto y = PadicNumber::from_integer(1, 3, 4);
    auto d = x - y;
    CHECK(d.valuation() == 2);
    CHECK(d.unit() == 1);
    CHECK(d.relative_precision() == 2);

    auto z = PadicNumber::from_integer(82, 3, 4) - y;
    CHECK(z.is_zero_to_precision());
    CHECK(z.valuation_lower_bound() == 4);
    CHECK(code_of([&] { (void)z.valuation(); }) == ErrorCode::PrecisionExhausted);

    CHECK(PadicNumber::from_integer(0, 3, 4).is_exact_zero());
    CHECK((x + PadicNumber::exact_zero(3)).congruent(x));
    CHECK((x * x.inverse()).congruent(y));
    CHECK(code_of([] { (void)PadicNumber::exact_zero(3).inverse(); }) == ErrorCode::ZeroInput);
}

TEST_CASE("teichmuller representatives") {
    CHECK(teichmuller(PadicNumber::from_integer(2, 5, 3)).unit() == 57);
    CHECK(teichmuller(PadicNumber::from_integer(1, 7, 6)).unit() == 1);
    CHECK(teichmuller(PadicNumber::from_integer(2, 3, 6)).unit() == 728);
    CHECK(teichmuller(PadicNumber::from_integer(-4, 3, 6)).unit() == 728);
    CHECK(code_of([] { (void)teichmuller(PadicNumber::from_integer(3, 3, 4)); }) == ErrorCode::NotAUnit);

    for (std::uint64_t ell : {3u, 5u, 7u, 11u, 13u}) {
        for (long u = 1; u < 40; ++u) {
            if (u % static_cast<long>(ell) == 0) continue;
            auto e = teichmuller(PadicNumber::from_integer(u, ell, 8));
            mpz_class m = 1;
            for (int i = 0; i < 8; ++i) m *= static_cast<unsigned long>(ell);
            mpz_class p;
            mpz_class ex(static_cast<unsigned long>(ell - 1));
            mpz_powm(p.get_mpz_t(), e.unit().get_mpz_t(), ex.get_mpz_t(), m.get_mpz_t());
            CHECK(p == 1);
            CHECK(mpz_mod_u64(e.unit(), ell) == static_cast<std::uint64_t>(u) % ell);
        }
    }
}

TEST_CASE("decompose") {
    auto d3 = decompose(mpq_class(3), 3, 10);
    CHECK(d3.b == 1);
    CHECK(d3.epsilon_residue == 1);
    CHECK(d3.c.is_exact_zero());
    CHECK(d3.w == 0);
    CHECK(d3.w_exact);

    auto d128 = decompose(mpq_class(128), 3, 10);
    CHECK(d128.b == 0);
    CHECK(d128.epsilon_residue == 2);
    CHECK(d128.c.congruent(PadicNumber::from_integer(-129, 3, 10)));
    CHECK(d128.c.valuation() == 1);
    CHECK(d128.w == 1);

    auto d512 = decompose(mpq_class(512), 3, 10);
    CHECK(d512.c.valuation() == 3);
    CHECK(d512.c.congruent(PadicNumber::from_integer(-513, 3, 10)));

    CHECK(code_of([] { (void)decompose(mpq_class(0), 3, 10); }) == ErrorCode::ZeroInput);

    std::mt19937_64 rng(11);
    for (int it = 0; it < 400; ++it) {
        std::uint64_t ell = std::array<std::uint64_t, 5>{3, 5, 7, 11, 13}[rng() % 5];
        long num = static_cast<long>(rng() % 100000) + 1;
        long den = static_cast<long>(rng() % 1000) + 1;
        if (rng() % 2) num = -num;
        mpq_class x(num, den);
        x.canonicalize();
        auto dec = decompose(x, ell, 12);
        auto back = dec.recombine();
        CHECK(back.congruent(PadicNumber::from_rational(x, ell, 12)));
        CHECK(dec.c.valuation_lower_bound() >= 1);
    }
}

TEST_CASE("hilbert conductor rows") {
    CHECK(conductor_of(3, 3, 2) == 12);
    CHECK(conductor_of(4, 3, 2) == 6);
    CHECK(conductor_of(10, 3, 2) == 2);

    auto row = [](long delta, std::uint64_t ell, int N) {
        return hilbert_conductor(decompose(mpq_class(delta), ell, default_precision(N)), N).row;
    };
    CHECK(row(3, 3, 2) == 1);
    CHECK(row(4, 3, 2) == 2);
    CHECK(row(10, 3, 2) == 4);
    CHECK(row(28, 3, 2) == 5);
    CHECK(row(1, 3, 2) == 5);
    CHECK(row(2, 3, 2) == 2);
    // b = 3 with unit 1 + 6: ord(b + c) = ord(3 + 6) = 2 > w = 1
    auto dec = decompose(mpq_class(27 * 7), 3, default_precision(3));
    CHECK(dec.b == 3);
    CHECK(dec.w == 1);
    auto hc = hilbert_conductor(dec, 3);
    CHECK(hc.row == 3);
    CHECK(hc.exponent == 6);

    // Monotone non-increasing in w for fixed N: rows sampled along c = 3^w.
    for (std::uint64_t ell : {3u, 5u, 7u}) {
        for (int N = 1; N <= 4; ++N) {
            std::uint64_t prev = ~std::uint64_t{0};
            for (int w = 0; w <= N + 2; ++w) {
                mpz_class v = 1;
                for (int i = 0; i < w; ++i) v *= static_cast<unsigned long>(ell);
                // w = 0 via a valuation-one Delta; otherwise Delta = 1 + ell^w.
                mpq_class delta = w == 0 ? mpq_class(static_cast<unsigned long>(ell)) : mpq_class(v + 1);
                auto e = hilbert_conductor(decompose(delta, ell, default_precision(N)), N).exponent;
                CHECK(e <= prev);
                prev = e;
            }
        }
    }
}

TEST_CASE("hilbert conductor precision") {
    auto dec = decompose(PadicNumber::from_integer(1 + 3 * 3 * 3, 3, 2), 2);
    CHECK(!dec.w_exact);
    CHECK(code_of([&] { (void)hilbert_conductor(dec, 2); }) == ErrorCode::PrecisionExhausted);
    CHECK(hilbert_conductor(dec, 1).row == 5);
}

TEST_CASE("delta prime data") {
    auto one = delta_prime_data(CurveParams::validate(3, 2, 1, 1, 1, 7), default_precision(2));
    CHECK(one.b_prime == 0);
    CHECK(one.ord_c == 1);
    CHECK(one.ord_c_exact);
    CHECK(one.decomposition.c.congruent(PadicNumber::from_integer(-129, 3, 10)));

    auto two = delta_prime_data(CurveParams::validate(3, 2, 2, 1, 1, 7), default_precision(2));
    CHECK(two.ord_c == 3);

    auto seven = delta_prime_data(CurveParams::validate(3, 2, 7, 1, 4, 4), default_precision(2));
    CHECK(seven.ord_c == 3);

    auto ramified = delta_prime_data(CurveParams::validate(3, 2, 3, 1, 1, 7), default_precision(2));
    CHECK(ramified.b_prime == 2);
    CHECK(!ramified.has_v_ell);

    std::mt19937_64 rng(23);
    int checked = 0;
    for (int it = 0; it < 300; ++it) {
        auto params = testing::random_params(rng);
        try {
            auto data = delta_prime_data(params, default_precision(params.N()));
            CHECK(data.ord_c >= 1);
            if (data.has_v_ell && data.v_ell_exact) {
                CHECK(data.v_ell == data.ord_c);
                CHECK(data.u_prime == data.c_unit);
                ++checked;
            }
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::PrecisionExhausted);
        }
    }
    CHECK(checked > 100);
}
