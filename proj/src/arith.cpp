#include "fermat/arith.hpp"

#include <limits>
#include <numeric>

#include "fermat/errors.hpp"

namespace fermat {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d <= n / d; d += 2)
        if (n % d == 0) return false;
    return true;
}

Factorization factorize(std::uint64_t n) {
    if (n == 0) fail(ErrorCode::ZeroInput, "factorize(0)");
    Factorization out;
    for (std::uint64_t d = 2; d <= n / d; d += (d == 2 ? 1 : 2)) {
        if (n % d) continue;
        int e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        out.push_back({d, e});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

int valuation(std::uint64_t n, std::uint64_t p) {
    if (n == 0) fail(ErrorCode::ZeroInput, "valuation of 0");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

long valuation(const mpz_class& n, std::uint64_t p) {
    if (n == 0) fail(ErrorCode::ZeroInput, "valuation of 0");
    mpz_class pz(static_cast<unsigned long>(p));
    mpz_class rest;
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t()));
}

long valuation(const mpq_class& x, std::uint64_t p) {
    return valuation(mpz_class(x.get_num()), p) - valuation(mpz_class(x.get_den()), p);
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
    std::int64_t old_r = static_cast<std::int64_t>(a % m), r = static_cast<std::int64_t>(m);
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::int64_t tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1) fail(ErrorCode::NotAUnit, "no inverse modulo " + std::to_string(m));
    return static_cast<std::uint64_t>(mod(old_s, static_cast<std::int64_t>(m)));
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::uint64_t checked_pow(std::uint64_t base, unsigned exp) {
    std::uint64_t result = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && result > std::numeric_limits<std::uint64_t>::max() / base)
            fail(ErrorCode::InvalidArgument, "integer power overflows 64 bits");
        result *= base;
    }
    return result;
}

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m) {
    if (std::gcd(a, m) != 1) fail(ErrorCode::NotAUnit, "order of a non-unit");
    if (m == 1) return 1;
    // phi(m) and its prime factors, then strip factors while a^k stays 1.
    std::uint64_t phi = 1;
    for (auto [p, e] : factorize(m)) phi *= (p - 1) * checked_pow(p, e - 1);
    std::uint64_t order = phi;
    for (auto [p, e] : factorize(phi)) {
        for (int i = 0; i < e; ++i) {
            if (powmod(a, order / p, m) == 1)
                order /= p;
            else
                break;
        }
    }
    return order;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

mpz_class mpz_pow(std::uint64_t base, unsigned long exp) {
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), exp);
    return out;
}

std::uint64_t mpz_mod_u64(const mpz_class& x, std::uint64_t m) {
    mpz_class r;
    mpz_class mz(static_cast<unsigned long>(m));
    mpz_mod(r.get_mpz_t(), x.get_mpz_t(), mz.get_mpz_t());
    return r.get_ui();
}

Reducer::Reducer(std::uint32_t m) : m_(m) {
    if (m < 2) fail(ErrorCode::InvalidArgument, "modulus below 2");
    magic_ = static_cast<std::uint64_t>((static_cast<unsigned __int128>(1) << 64) / m);
}

}  // namespace fermat
