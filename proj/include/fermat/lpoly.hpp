#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "fermat/finite_field.hpp"
#include "fermat/params.hpp"

namespace fermat {

class LPolynomial {
public:
    LPolynomial(CurveParams params, std::uint64_t p, std::vector<mpz_class> coefficients);

    const CurveParams& params() const { return params_; }
    std::uint64_t p() const { return p_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<mpz_class>& coefficients() const { return coeffs_; }
    const mpz_class& operator[](std::size_t i) const { return coeffs_[i]; }
    bool operator==(const LPolynomial& o) const { return p_ == o.p_ && coeffs_ == o.coeffs_; }
    std::string to_string() const;

private:
    CurveParams params_;
    std::uint64_t p_;
    std::vector<mpz_class> coeffs_;
};

struct LPolyOptions {
    std::uint64_t budget = kDefaultBudget;
    // Uses chi^relabel in place of the default character on every level.
    std::uint64_t relabel = 1;
};

// Product over levels j and orbits of units i mod ell^j under i -> p i of
// 1 + chi_j(delta)^((r+s) i) J(chi_j^(r i), chi_j^(s i)) T^(d_j), with chi_j
// of order ell^j on F_{p^(d_j)}.
LPolynomial l_polynomial(const CurveParams& params, std::uint64_t p, const LPolyOptions& options = {});

// exp(sum_k (#C(F_{p^k}) - p^k - 1) T^k / k) truncated after T^degree,
// from enumerated counts.
std::vector<mpq_class> l_polynomial_series_oracle(const CurveParams& params, std::uint64_t p, int degree,
                                                  std::uint64_t budget = kDefaultBudget);

struct WeilReport {
    // Reciprocal roots, with multiplicity.
    std::vector<std::complex<long double>> reciprocal_roots;
    double max_modulus_error = 0;  // max | |alpha| / sqrt(q) - 1 |
    double max_pairing_error = 0;  // distance between {alpha} and {q / alpha}, scaled by sqrt(q)
};

// Throws WeilViolation when either error exceeds the tolerance.
WeilReport weil_check(const LPolynomial& lp, double tolerance = 1e-6);

}  // namespace fermat
