#pragma once

#include <cstdint>
#include <vector>

#include "fermat/arith.hpp"

namespace fermat {

// Parameters of y^(ell^N) = x^r (delta - x)^s with r + s + t = ell^N.
class CurveParams {
public:
    static CurveParams validate(std::uint64_t ell, int N, std::uint64_t delta, std::uint64_t r,
                                std::uint64_t s, std::uint64_t t);

    std::uint64_t ell() const { return ell_; }
    int N() const { return N_; }
    std::uint64_t delta() const { return delta_; }
    std::uint64_t r() const { return r_; }
    std::uint64_t s() const { return s_; }
    std::uint64_t t() const { return t_; }

    std::uint64_t ell_power() const { return ell_power_; }
    std::uint64_t genus() const { return (ell_power_ - 1) / 2; }
    const Factorization& delta_factors() const { return delta_factors_; }
    int delta_ell_valuation() const { return delta_ell_valuation_; }

    CurveParams swapped() const;

    bool operator==(const CurveParams&) const = default;

private:
    CurveParams() = default;

    std::uint64_t ell_ = 0;
    int N_ = 0;
    std::uint64_t delta_ = 0, r_ = 0, s_ = 0, t_ = 0;
    std::uint64_t ell_power_ = 0;
    Factorization delta_factors_;
    int delta_ell_valuation_ = 0;
};

struct QuotientLevelData {
    int level;
    std::uint64_t r, s, t;
    bool operator==(const QuotientLevelData&) const = default;
};

std::vector<QuotientLevelData> quotient_levels(const CurveParams& params);

struct CMType {
    int level;
    std::uint64_t modulus;
    std::vector<std::uint64_t> members;  // sorted
    bool contains(std::uint64_t unit) const;
};

// Fractional-part test applied to the level-i exponents (r_i, s_i, t_i).
CMType cm_type(const CurveParams& params, int level);
// Same test applied to (r, s, t) reduced mod ell^i.
CMType cm_type_raw(const CurveParams& params, int level);

}  // namespace fermat
