#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "fermat/finite_field.hpp"

namespace fermat {

// Element of Z[zeta] with zeta a primitive ell^level-th root of unity, stored
// in the power basis 1, zeta, ..., zeta^(phi-1).
class CycInt {
public:
    CycInt(std::uint64_t ell, int level);

    static CycInt from_integer(std::uint64_t ell, int level, const mpz_class& n);
    static CycInt zeta_power(std::uint64_t ell, int level, std::int64_t k);
    // sum counts[e] zeta^e over 0 <= e < ell^level.
    static CycInt from_exponent_counts(std::uint64_t ell, int level, const std::vector<std::int64_t>& counts);

    std::uint64_t ell() const { return ell_; }
    int level() const { return level_; }
    std::uint64_t conductor() const { return conductor_; }
    std::size_t degree() const { return coeffs_.size(); }
    const std::vector<mpz_class>& coefficients() const { return coeffs_; }

    bool is_zero() const;
    bool is_rational_integer() const;
    // Throws NonIntegerResult unless the element lies in Z.
    mpz_class to_integer() const;

    // Image under Z[zeta_{ell^level}] -> Z[zeta_{ell^new_level}].
    CycInt lift(int new_level) const;
    CycInt pow(unsigned long e) const;

    CycInt& operator+=(const CycInt& o);
    CycInt& operator-=(const CycInt& o);
    CycInt& operator*=(const CycInt& o);
    CycInt& operator*=(const mpz_class& c);
    CycInt operator-() const;
    friend CycInt operator+(CycInt a, const CycInt& b) { return a += b; }
    friend CycInt operator-(CycInt a, const CycInt& b) { return a -= b; }
    friend CycInt operator*(CycInt a, const CycInt& b) { return a *= b; }
    friend CycInt operator*(CycInt a, const mpz_class& c) { return a *= c; }
    bool operator==(const CycInt& o) const;

    std::string to_string() const;

private:
    friend CycInt galois_conjugate(const CycInt& x, std::int64_t a);
    // Reduces a vector indexed by exponents mod ell^level.
    static std::vector<mpz_class> reduce_full(std::uint64_t ell, int level, std::vector<mpz_class> full);
    void check_compatible(const CycInt& o) const;

    std::uint64_t ell_;
    int level_;
    std::uint64_t conductor_;
    std::vector<mpz_class> coeffs_;
};

// zeta -> zeta^a; a must be prime to ell.
CycInt galois_conjugate(const CycInt& x, std::int64_t a);

mpz_class norm(const CycInt& x);
mpz_class norm_by_conjugates(const CycInt& x);
mpz_class trace(const CycInt& x);
mpz_class trace_of_zeta_power(std::uint64_t ell, int level, std::int64_t n);
mpz_class trace_by_conjugates(const CycInt& x);

// Valuation at the prime (1 - zeta); nullopt encodes +infinity.
std::optional<long> pi_prime_valuation(const CycInt& x);

std::complex<double> complex_embed(const CycInt& x, std::int64_t h);

CycInt jacobi_sum(const MultChar& chi_a, const MultChar& chi_b, std::uint64_t budget = kDefaultBudget);
std::complex<double> gauss_sum_complex(const MultChar& chi, std::uint64_t budget = kDefaultBudget);

// Counts of (log x mod ell^t, log(1-x) mod ell^t) over x != 0, 1; every Jacobi
// sum of characters of ell-power order on the field follows from it.
class JacobiHistogram {
public:
    JacobiHistogram(FieldPtr field, std::uint64_t ell, int level, std::uint64_t budget = kDefaultBudget);

    std::uint64_t modulus() const { return modulus_; }
    int level() const { return level_; }
    std::uint64_t ell() const { return ell_; }

    // J(chi^a, chi^b) where chi(g) = zeta_{ell^t}.
    CycInt jacobi(std::uint64_t a, std::uint64_t b) const;
    // Adds count(e1, e2) at exponent a*e1 + b*e2 + shift mod ell^t.
    void accumulate(std::uint64_t a, std::uint64_t b, std::uint64_t shift, std::vector<std::int64_t>& out) const;

private:
    std::uint64_t ell_;
    int level_;
    std::uint64_t modulus_;
    std::vector<std::int64_t> hist_;
};

}  // namespace fermat
