#pragma once

#include <cstdint>
#include <optional>

#include "fermat/finite_field.hpp"
#include "fermat/params.hpp"

namespace fermat {

struct CountResult {
    std::uint64_t q;
    std::optional<std::uint64_t> brute;
    std::uint64_t formula;
    bool consistent() const { return !brute || *brute == formula; }
};

// Throws BadReduction unless p does not divide ell * delta.
void require_good_reduction(const CurveParams& params, std::uint64_t p);

// Affine solutions plus one point at infinity, by enumeration of x.
std::uint64_t count_bruteforce(const CurveParams& params, const FiniteField& field,
                               std::uint64_t budget = kDefaultBudget);

// q + 1 + sum over nontrivial chi with chi^(ell^N) = 1 of chi(delta)^(r+s) J(chi^r, chi^s).
std::uint64_t count_formula(const CurveParams& params, const FieldPtr& field, std::uint64_t budget = kDefaultBudget);

// Brute force is skipped (left empty) when q exceeds brute_budget.
CountResult count_points(const CurveParams& params, const FieldPtr& field, std::uint64_t budget = kDefaultBudget,
                         std::uint64_t brute_budget = kDefaultBudget);

// |count - (q + 1)| <= 2 g sqrt(q), decided in exact integer arithmetic.
bool within_hasse_weil(const CurveParams& params, std::uint64_t q, std::uint64_t count);

}  // namespace fermat
