#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace fermat {

struct PrimePower {
    std::uint64_t prime;
    int exponent;
    bool operator==(const PrimePower&) const = default;
};

using Factorization = std::vector<PrimePower>;

// Trial division; intended for n below roughly 10^14.
bool is_prime(std::uint64_t n);
Factorization factorize(std::uint64_t n);

// Exponent of p in n (n != 0).
int valuation(std::uint64_t n, std::uint64_t p);
long valuation(const mpz_class& n, std::uint64_t p);
long valuation(const mpq_class& x, std::uint64_t p);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m);

// Non-negative residue of a mod m.
std::int64_t mod(std::int64_t a, std::int64_t m);

// Throws InvalidArgument on 64-bit overflow.
std::uint64_t checked_pow(std::uint64_t base, unsigned exp);

// Smallest k >= 1 with a^k = 1 mod m (gcd(a, m) = 1).
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m);

std::int64_t floor_div(std::int64_t a, std::int64_t b);
std::int64_t ceil_div(std::int64_t a, std::int64_t b);

mpz_class mpz_pow(std::uint64_t base, unsigned long exp);
std::uint64_t mpz_mod_u64(const mpz_class& x, std::uint64_t m);

// Barrett reduction for moduli below 2^32.
class Reducer {
public:
    explicit Reducer(std::uint32_t m);
    std::uint32_t modulus() const { return m_; }
    std::uint32_t reduce(std::uint64_t x) const {
        std::uint64_t q = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * magic_) >> 64);
        std::uint64_t r = x - q * m_;
        return static_cast<std::uint32_t>(r >= m_ ? r - m_ : r);
    }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return reduce(static_cast<std::uint64_t>(a) * b);
    }

private:
    std::uint32_t m_;
    std::uint64_t magic_;
};

}  // namespace fermat
