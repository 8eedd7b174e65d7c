#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include <gmpxx.h>

#include "fermat/params.hpp"

namespace fermat {

inline constexpr long kInfiniteValuation = std::numeric_limits<long>::max();

// ell^valuation * unit with the unit known modulo ell^relative_precision.
// A value whose known digits all cancelled is "zero to precision": only a
// lower bound for its valuation is known.
class PadicNumber {
public:
    static PadicNumber from_integer(const mpz_class& n, std::uint64_t ell, int precision);
    static PadicNumber from_rational(const mpq_class& x, std::uint64_t ell, int precision);
    static PadicNumber exact_zero(std::uint64_t ell);
    // ell^valuation * unit, unit reduced mod ell^relative_precision (unit prime to ell).
    static PadicNumber from_unit(std::uint64_t ell, long valuation, const mpz_class& unit, int relative_precision);

    std::uint64_t ell() const { return ell_; }
    bool is_exact_zero() const { return exact_zero_; }
    bool is_zero_to_precision() const { return !exact_zero_ && rel_precision_ == 0; }

    // Throws PrecisionExhausted for a zero-to-precision value.
    long valuation() const;
    long valuation_lower_bound() const { return exact_zero_ ? kInfiniteValuation : valuation_; }
    int relative_precision() const { return rel_precision_; }
    long absolute_precision() const;

    const mpz_class& unit() const { return unit_; }
    // Base-ell digits of the unit, least significant first.
    std::vector<unsigned> unit_digits() const;
    // value mod ell^k for a value of valuation >= 0 and k <= absolute precision.
    mpz_class residue(long k) const;

    PadicNumber operator+(const PadicNumber& o) const;
    PadicNumber operator-(const PadicNumber& o) const;
    PadicNumber operator-() const;
    PadicNumber operator*(const PadicNumber& o) const;
    PadicNumber inverse() const;
    // Equality of all known digits.
    bool congruent(const PadicNumber& o) const;

private:
    PadicNumber() = default;
    std::uint64_t ell_ = 0;
    long valuation_ = 0;
    int rel_precision_ = 0;
    mpz_class unit_;
    bool exact_zero_ = false;
};

// Fixed point of x -> x^ell congruent to the unit u mod ell.
PadicNumber teichmuller(const PadicNumber& u);

// x = eps * ell^b * (1 + c) with eps^(ell-1) = 1 and ord(c) >= 1.
struct PadicDecomposition {
    std::uint64_t ell;
    int precision;
    std::uint64_t epsilon_residue;
    PadicNumber epsilon;
    long b;
    PadicNumber c;
    // min(ord(b), ord(c)) with ord(0) = infinity; a lower bound when !w_exact.
    long w;
    bool w_exact;

    long ord_b() const;
    PadicNumber recombine() const;
};

PadicDecomposition decompose(const mpq_class& x, std::uint64_t ell, int precision);
// For a value only known ell-adically; c is never taken to be exactly zero.
PadicDecomposition decompose(const PadicNumber& x, int precision);

struct HilbertConductor {
    std::uint64_t exponent;
    // 1: w = 0; 2: 1 <= w < N, ord(b+c) = w; 3: 1 <= w < N, ord(b+c) > w;
    // 4: w = N = ord(c); 5: w > N; 6: w = N != ord(c).
    int row;
    // Digits of c known beyond the deepest valuation the decision looked at.
    long margin;
};

HilbertConductor hilbert_conductor(const PadicDecomposition& dec, int N);

inline int default_precision(int N) { return 2 * N + 6; }

struct DeltaPrimeData {
    long b_prime;  // (r + s) ord_ell(delta)
    PadicDecomposition decomposition;
    long ord_c;        // lower bound when !ord_c_exact
    bool ord_c_exact;
    std::uint64_t c_unit;  // (c / ell^ord_c) mod ell, valid when ord_c_exact
    // Only when ord_ell(delta) = 0: v = ord(A^(ell-1) - 1), u' = -(A^(ell-1) - 1) / ell^v mod ell.
    bool has_v_ell;
    long v_ell;  // lower bound when !v_ell_exact
    bool v_ell_exact;
    std::uint64_t u_prime;
    long margin;
};

// Decomposes A = r^r s^s (ell^N - t)^t delta^(r+s) from its ell-adic unit part.
DeltaPrimeData delta_prime_data(const CurveParams& params, int precision);

}  // namespace fermat
