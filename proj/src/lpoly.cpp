#include "fermat/lpoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fermat/cyclotomic.hpp"
#include "fermat/errors.hpp"
#include "fermat/point_count.hpp"
#include "fermat/qpoly.hpp"

namespace fermat {

LPolynomial::LPolynomial(CurveParams params, std::uint64_t p, std::vector<mpz_class> coefficients)
    : params_(std::move(params)), p_(p), coeffs_(std::move(coefficients)) {
    if (coeffs_.empty() || coeffs_[0] != 1) fail(ErrorCode::InvalidArgument, "L-polynomial must have constant term 1");
}

std::string LPolynomial::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i == 0) {
            os << coeffs_[0];
            continue;
        }
        if (coeffs_[i] == 0) continue;
        os << (coeffs_[i] < 0 ? " - " : " + ");
        mpz_class a = abs(coeffs_[i]);
        if (a != 1) os << a << "*";
        os << "T";
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

LPolynomial l_polynomial(const CurveParams& params, std::uint64_t p, const LPolyOptions& options) {
    require_good_reduction(params, p);
    const std::uint64_t ell = params.ell();
    const int N = params.N();
    if (options.relabel % ell == 0) fail(ErrorCode::NotAUnit, "relabeling exponent must be prime to ell");
    const SplittingData split = splitting_data(p, ell, N);
    const std::size_t total_degree = params.ell_power() - 1;

    std::vector<CycInt> poly(total_degree + 1, CycInt(ell, N));
    poly[0] = CycInt::from_integer(ell, N, 1);

    for (int j = 1; j <= N; ++j) {
        const std::uint64_t m = checked_pow(ell, static_cast<unsigned>(j));
        const std::uint64_t d = split.residue_degree(j);
        if (d > 31) fail(ErrorCode::BudgetExceeded, "residue degree " + std::to_string(d) + " too large");
        const std::uint64_t q = checked_pow(p, static_cast<unsigned>(d));
        if (q > options.budget)
            fail(ErrorCode::BudgetExceeded, "field F_" + std::to_string(p) + "^" + std::to_string(d) + " exceeds budget");
        const FieldPtr F = build_field(p, static_cast<int>(d));
        const JacobiHistogram hist(F, ell, j, options.budget);
        const std::uint64_t log_delta =
            F->log_table(options.budget).log(F->from_int(static_cast<std::int64_t>(params.delta() % p))) % m;
        const std::uint64_t u = options.relabel % m, r = params.r() % m, s = params.s() % m;

        auto coefficient = [&](std::uint64_t i) {
            const std::uint64_t a = u * i % m;
            std::vector<std::int64_t> counts(m, 0);
            hist.accumulate(a * r % m, a * s % m, a * ((r + s) % m) % m * log_delta % m, counts);
            return CycInt::from_exponent_counts(ell, j, counts);
        };

        std::vector<bool> seen(m, false);
        for (std::uint64_t i = 1; i < m; ++i) {
            if (i % ell == 0 || seen[i]) continue;
            const CycInt alpha = coefficient(i);
            std::uint64_t orbit = 0;
            for (std::uint64_t k = i; !seen[k]; k = k * (p % m) % m) {
                seen[k] = true;
                ++orbit;
                ensure(coefficient(k) == alpha, "Jacobi coefficient must be constant on Frobenius orbits");
            }
            ensure(orbit == d, "orbit size must equal the residue degree");
            const CycInt lifted = alpha.lift(N);
            for (std::size_t k = total_degree; k >= d; --k) {
                if (!poly[k - d].is_zero()) poly[k] += lifted * poly[k - d];
                if (k == d) break;
            }
        }
    }

    std::vector<mpz_class> coeffs;
    for (const auto& c : poly) {
        if (!c.is_rational_integer())
            fail(ErrorCode::NonIntegerResult, "L-polynomial coefficient " + c.to_string() + " is not an integer");
        coeffs.push_back(c.to_integer());
    }
    return LPolynomial(params, p, std::move(coeffs));
}

std::vector<mpq_class> l_polynomial_series_oracle(const CurveParams& params, std::uint64_t p, int degree,
                                                  std::uint64_t budget) {
    require_good_reduction(params, p);
    std::vector<mpq_class> a(degree + 1, mpq_class(0));
    for (int k = 1; k <= degree; ++k) {
        const std::uint64_t q = checked_pow(p, static_cast<unsigned>(k));
        if (q > budget)
            fail(ErrorCode::BudgetExceeded, "count over F_" + std::to_string(q) + " exceeds budget");
        const FieldPtr F = build_field(p, k);
        const std::uint64_t count = count_bruteforce(params, *F, budget);
        a[k] = mpq_class(mpz_class(static_cast<unsigned long>(count)) - static_cast<unsigned long>(q) - 1);
    }
    // L' = L * (log L)', so n L_n = sum_{k=1}^{n} a_k L_{n-k}.
    std::vector<mpq_class> L(degree + 1, mpq_class(0));
    L[0] = 1;
    for (int n = 1; n <= degree; ++n) {
        mpq_class acc = 0;
        for (int k = 1; k <= n; ++k) acc += a[k] * L[n - k];
        L[n] = acc / n;
    }
    return L;
}

namespace {

using Complex = std::complex<long double>;

Complex horner(const std::vector<Complex>& c, Complex z) {
    Complex v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * z + c[i];
    return v;
}

// Aberth-Ehrlich iteration on a polynomial with roots near the unit circle.
std::vector<Complex> find_roots(const std::vector<Complex>& c) {
    const int n = static_cast<int>(c.size()) - 1;
    std::vector<Complex> dc(n);
    for (int i = 1; i <= n; ++i) dc[i - 1] = c[i] * static_cast<long double>(i);
    std::vector<Complex> z(n);
    for (int k = 0; k < n; ++k)
        z[k] = std::polar(0.9L, 2 * std::numbers::pi_v<long double> * k / n + 0.4L);
    for (int iter = 0; iter < 2000; ++iter) {
        long double biggest = 0;
        for (int k = 0; k < n; ++k) {
            Complex ratio = horner(c, z[k]) / horner(dc, z[k]);
            Complex sum = 0;
            for (int j = 0; j < n; ++j)
                if (j != k) sum += 1.0L / (z[k] - z[j]);
            Complex w = ratio / (1.0L - ratio * sum);
            z[k] -= w;
            biggest = std::max(biggest, std::abs(w));
        }
        if (biggest < 1e-18L) break;
    }
    return z;
}

}  // namespace

WeilReport weil_check(const LPolynomial& lp, double tolerance) {
    WeilReport report;
    qpoly::Poly f;
    for (const auto& c : lp.coefficients()) f.push_back(mpq_class(c));
    qpoly::trim(f);
    if (qpoly::degree(f) < 1) return report;

    // Reciprocal roots of L are the roots of its reversal.
    std::reverse(f.begin(), f.end());
    qpoly::trim(f);
    const long double sqrt_q = std::sqrt(static_cast<long double>(lp.p()));
    for (const auto& [factor, multiplicity] : qpoly::square_free_decomposition(f)) {
        // Substitute x = sqrt(q) y so that the roots y lie on the unit circle.
        std::vector<Complex> scaled(factor.size());
        long double scale = 1;
        for (std::size_t i = 0; i < factor.size(); ++i) {
            scaled[i] = static_cast<long double>(factor[i].get_d()) * scale;
            scale *= sqrt_q;
        }
        for (const Complex& y : find_roots(scaled))
            for (int m = 0; m < multiplicity; ++m) report.reciprocal_roots.push_back(y * sqrt_q);
    }

    const std::size_t n = report.reciprocal_roots.size();
    std::vector<Complex> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = report.reciprocal_roots[i] / sqrt_q;
        report.max_modulus_error = std::max(report.max_modulus_error, static_cast<double>(std::abs(std::abs(y[i]) - 1)));
    }
    // Match every y with a distinct root closest to 1/y.
    std::vector<bool> used(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        const Complex target = 1.0L / y[i];
        std::size_t best = n;
        long double best_dist = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j]) continue;
            long double dist = std::abs(y[j] - target);
            if (best == n || dist < best_dist) {
                best = j;
                best_dist = dist;
            }
        }
        used[best] = true;
        report.max_pairing_error = std::max(report.max_pairing_error, static_cast<double>(best_dist));
    }

    if (report.max_modulus_error > tolerance || report.max_pairing_error > tolerance) {
        std::ostringstream os;
        os << "reciprocal roots off the circle |alpha| = sqrt(" << lp.p() << "): modulus error "
           << report.max_modulus_error << ", pairing error " << report.max_pairing_error;
        fail(ErrorCode::WeilViolation, os.str());
    }
    return report;
}

}  // namespace fermat
