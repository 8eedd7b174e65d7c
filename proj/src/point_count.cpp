#include "fermat/point_count.hpp"

#include <numeric>
#include <string>
#include <vector>

#include "fermat/cyclotomic.hpp"
#include "fermat/errors.hpp"

namespace fermat {

namespace {

void check_budget(std::uint64_t q, std::uint64_t budget) {
    if (q > budget)
        fail(ErrorCode::BudgetExceeded, "q = " + std::to_string(q) + " exceeds budget " + std::to_string(budget));
}

// table[x] = x^e for every x, by walking powers of the generator.
std::vector<Elem> power_table(const FiniteField& F, std::uint64_t e) {
    std::vector<Elem> table(F.order(), 0);
    const Elem g = F.generator(), ge = F.pow(g, e);
    // Walk g^k and fill x^e lane by lane: each lane keeps its own y = x^e.
    std::vector<Elem> by_exponent(F.order() - 1);
    for_each_power(F, ge, F.order() - 1, [&](std::uint64_t k, Elem y) { by_exponent[k] = y; });
    for_each_power(F, g, F.order() - 1, [&](std::uint64_t k, Elem x) { table[x] = by_exponent[k]; });
    table[0] = e == 0 ? 1 : 0;
    return table;
}

}  // namespace

void require_good_reduction(const CurveParams& params, std::uint64_t p) {
    if (p == params.ell() || params.delta() % p == 0)
        fail(ErrorCode::BadReduction, "p = " + std::to_string(p) + " divides ell * delta");
}

std::uint64_t count_bruteforce(const CurveParams& params, const FiniteField& F, std::uint64_t budget) {
    require_good_reduction(params, F.p());
    const std::uint64_t q = F.order();
    check_budget(q, budget);
    const std::uint64_t g = std::gcd(params.ell_power(), q - 1);

    // y^M = c with c != 0 has g solutions when c is a g-th power, else none.
    std::vector<std::uint8_t> is_power(q, 0);
    for_each_power(F, F.pow(F.generator(), g), (q - 1) / g, [&](std::uint64_t, Elem y) { is_power[y] = 1; });

    const auto xr = power_table(F, params.r());
    const auto xs = params.s() == params.r() ? xr : power_table(F, params.s());
    const Elem delta = F.from_int(static_cast<std::int64_t>(params.delta() % F.p()));

    std::uint64_t affine = 0;
    if (F.degree() == 1) {
        for (std::uint64_t x = 0; x < q; ++x) {
            std::uint64_t other = delta >= x ? delta - x : delta + q - x;
            Elem c = F.mul(xr[x], xs[other]);
            if (c == 0) affine += 1;
            else if (is_power[c]) affine += g;
        }
    } else {
        for (Elem x = 0; x < q; ++x) {
            Elem c = F.mul(xr[x], xs[F.sub(delta, x)]);
            if (c == 0) affine += 1;
            else if (is_power[c]) affine += g;
        }
    }
    return affine + 1;
}

std::uint64_t count_formula(const CurveParams& params, const FieldPtr& field, std::uint64_t budget) {
    const FiniteField& F = *field;
    require_good_reduction(params, F.p());
    const std::uint64_t q = F.order(), ell = params.ell();
    if ((q - 1) % ell != 0) return q + 1;
    const int t = std::min(params.N(), valuation(q - 1, ell));
    const JacobiHistogram hist(field, ell, t, budget);
    const std::uint64_t m = hist.modulus();
    const Elem delta = F.from_int(static_cast<std::int64_t>(params.delta() % F.p()));
    const std::uint64_t log_delta = F.log_table(budget).log(delta) % m;
    const std::uint64_t r = params.r() % m, s = params.s() % m;
    std::vector<std::int64_t> counts(m, 0);
    for (std::uint64_t a = 1; a < m; ++a) {
        const std::uint64_t shift = a * ((r + s) % m) % m * log_delta % m;
        hist.accumulate(a * r % m, a * s % m, shift, counts);
    }
    const mpz_class sum = CycInt::from_exponent_counts(ell, t, counts).to_integer();
    const mpz_class total = sum + static_cast<unsigned long>(q + 1);
    ensure(total >= 0 && total.fits_ulong_p(), "point count out of range");
    return total.get_ui();
}

CountResult count_points(const CurveParams& params, const FieldPtr& field, std::uint64_t budget,
                         std::uint64_t brute_budget) {
    CountResult out{field->order(), std::nullopt, 0};
    out.formula = count_formula(params, field, budget);
    if (field->order() <= brute_budget) out.brute = count_bruteforce(params, *field, brute_budget);
    return out;
}

bool within_hasse_weil(const CurveParams& params, std::uint64_t q, std::uint64_t count) {
    mpz_class a = mpz_class(static_cast<unsigned long>(count)) - static_cast<unsigned long>(q) - 1;
    mpz_class g = static_cast<unsigned long>(params.genus());
    return a * a <= 4 * g * g * static_cast<unsigned long>(q);
}

}  // namespace fermat
