#include "fermat/padic.hpp"

#include <algorithm>
#include <string>

#include "fermat/arith.hpp"
#include "fermat/errors.hpp"

namespace fermat {

namespace {

mpz_class ell_pow(std::uint64_t ell, long k) { return mpz_pow(ell, static_cast<unsigned long>(std::max(0L, k))); }

mpz_class reduce(const mpz_class& x, const mpz_class& m) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Removes all factors of ell from n != 0; returns the count.
long strip(mpz_class& n, std::uint64_t ell) {
    mpz_class e(static_cast<unsigned long>(ell));
    return static_cast<long>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), e.get_mpz_t()));
}

}  // namespace

PadicNumber PadicNumber::exact_zero(std::uint64_t ell) {
    PadicNumber z;
    z.ell_ = ell;
    z.exact_zero_ = true;
    return z;
}

PadicNumber PadicNumber::from_unit(std::uint64_t ell, long valuation, const mpz_class& unit, int relative_precision) {
    PadicNumber out;
    out.ell_ = ell;
    out.valuation_ = valuation;
    out.rel_precision_ = std::max(0, relative_precision);
    out.unit_ = reduce(unit, ell_pow(ell, out.rel_precision_));
    if (out.rel_precision_ > 0 && mpz_mod_u64(out.unit_, ell) == 0)
        fail(ErrorCode::NotAUnit, "unit part divisible by ell");
    return out;
}

PadicNumber PadicNumber::from_integer(const mpz_class& n, std::uint64_t ell, int precision) {
    if (n == 0) return exact_zero(ell);
    mpz_class u = n;
    long v = strip(u, ell);
    return from_unit(ell, v, u, precision);
}

PadicNumber PadicNumber::from_rational(const mpq_class& x, std::uint64_t ell, int precision) {
    if (x == 0) return exact_zero(ell);
    mpz_class num = x.get_num(), den = x.get_den();
    long v = strip(num, ell) - strip(den, ell);
    mpz_class m = ell_pow(ell, precision), inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
    return from_unit(ell, v, num * inv, precision);
}

long PadicNumber::valuation() const {
    if (exact_zero_) return kInfiniteValuation;
    if (rel_precision_ == 0)
        fail(ErrorCode::PrecisionExhausted,
             "value is zero to the available precision (valuation >= " + std::to_string(valuation_) + ")");
    return valuation_;
}

long PadicNumber::absolute_precision() const {
    return exact_zero_ ? kInfiniteValuation : valuation_ + rel_precision_;
}

std::vector<unsigned> PadicNumber::unit_digits() const {
    std::vector<unsigned> out;
    mpz_class u = unit_;
    for (int i = 0; i < rel_precision_; ++i) {
        out.push_back(static_cast<unsigned>(mpz_mod_u64(u, ell_)));
        u /= static_cast<unsigned long>(ell_);
    }
    return out;
}

mpz_class PadicNumber::residue(long k) const {
    if (exact_zero_) return 0;
    if (valuation_ < 0) fail(ErrorCode::InvalidArgument, "residue of a non-integral value");
    if (k > absolute_precision()) fail(ErrorCode::PrecisionExhausted, "residue beyond the known digits");
    if (valuation_ >= k) return 0;
    return reduce(unit_ * ell_pow(ell_, valuation_), ell_pow(ell_, k));
}

PadicNumber PadicNumber::operator+(const PadicNumber& o) const {
    if (exact_zero_) return o;
    if (o.exact_zero_) return *this;
    const long A = std::min(absolute_precision(), o.absolute_precision());
    const long vmin = std::min(valuation_, o.valuation_);
    const mpz_class m = ell_pow(ell_, A - vmin);
    mpz_class sum = 0;
    if (rel_precision_ > 0) sum += unit_ * ell_pow(ell_, valuation_ - vmin);
    if (o.rel_precision_ > 0) sum += o.unit_ * ell_pow(ell_, o.valuation_ - vmin);
    sum = reduce(sum, m);
    PadicNumber out;
    out.ell_ = ell_;
    if (sum == 0) {
        out.valuation_ = A;
        out.rel_precision_ = 0;
        out.unit_ = 0;
        return out;
    }
    long k = strip(sum, ell_);
    return from_unit(ell_, vmin + k, sum, static_cast<int>(A - vmin - k));
}

PadicNumber PadicNumber::operator-() const {
    if (exact_zero_ || rel_precision_ == 0) return *this;
    return from_unit(ell_, valuation_, -unit_, rel_precision_);
}

PadicNumber PadicNumber::operator-(const PadicNumber& o) const { return *this + (-o); }

PadicNumber PadicNumber::operator*(const PadicNumber& o) const {
    if (exact_zero_ || o.exact_zero_) return exact_zero(ell_);
    const int rel = std::min(rel_precision_, o.rel_precision_);
    if (rel == 0) {
        PadicNumber out;
        out.ell_ = ell_;
        out.valuation_ = valuation_ + o.valuation_;
        out.unit_ = 0;
        return out;
    }
    return from_unit(ell_, valuation_ + o.valuation_, unit_ * o.unit_, rel);
}

PadicNumber PadicNumber::inverse() const {
    if (exact_zero_) fail(ErrorCode::ZeroInput, "inverse of zero");
    valuation();
    mpz_class m = ell_pow(ell_, rel_precision_), inv;
    mpz_invert(inv.get_mpz_t(), unit_.get_mpz_t(), m.get_mpz_t());
    return from_unit(ell_, -valuation_, inv, rel_precision_);
}

bool PadicNumber::congruent(const PadicNumber& o) const {
    PadicNumber d = *this - o;
    return d.is_exact_zero() || d.is_zero_to_precision();
}

PadicNumber teichmuller(const PadicNumber& u) {
    if (u.is_exact_zero() || u.is_zero_to_precision() || u.valuation() != 0)
        fail(ErrorCode::NotAUnit, "Teichmuller representative of a non-unit");
    const int P = u.relative_precision();
    const mpz_class m = ell_pow(u.ell(), P), e(static_cast<unsigned long>(u.ell()));
    mpz_class x = u.unit();
    bool stable = false;
    for (int i = 0; i <= P && !stable; ++i) {
        mpz_class y;
        mpz_powm(y.get_mpz_t(), x.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
        stable = (y == x);
        x = y;
    }
    ensure(stable, "Teichmuller iteration did not stabilise");
    return PadicNumber::from_unit(u.ell(), 0, x, P);
}

long PadicDecomposition::ord_b() const {
    return b == 0 ? kInfiniteValuation : valuation(static_cast<std::uint64_t>(b < 0 ? -b : b), ell);
}

PadicNumber PadicDecomposition::recombine() const {
    PadicNumber one = PadicNumber::from_integer(1, ell, precision);
    return PadicNumber::from_unit(ell, b, 1, precision) * epsilon * (one + c);
}

namespace {

PadicDecomposition finish(std::uint64_t ell, int precision, long b, const PadicNumber& epsilon, const PadicNumber& c) {
    PadicDecomposition dec{ell, precision, mpz_mod_u64(epsilon.unit(), ell), epsilon, b, c, 0, true};
    const long ob = dec.ord_b();
    if (c.is_zero_to_precision()) {
        const long bound = c.valuation_lower_bound();
        if (ob < bound) {
            dec.w = ob;
        } else {
            dec.w = bound;
            dec.w_exact = false;
        }
    } else {
        dec.w = std::min(ob, c.valuation());
    }
    ensure(c.valuation_lower_bound() >= 1, "c must lie in ell Z_ell");
    return dec;
}

}  // namespace

PadicDecomposition decompose(const mpq_class& x, std::uint64_t ell, int precision) {
    if (x == 0) fail(ErrorCode::ZeroInput, "decomposition of zero");
    const long b = valuation(x, ell);
    mpq_class unit = x;
    if (b > 0) unit /= mpq_class(ell_pow(ell, b));
    if (b < 0) unit *= mpq_class(ell_pow(ell, -b));
    if (unit == 1 || unit == -1) {
        // Rational roots of unity are their own Teichmuller representatives.
        PadicNumber eps = PadicNumber::from_integer(unit.get_num(), ell, precision);
        return finish(ell, precision, b, eps, PadicNumber::exact_zero(ell));
    }
    return decompose(PadicNumber::from_rational(x, ell, precision), precision);
}

PadicDecomposition decompose(const PadicNumber& x, int precision) {
    if (x.is_exact_zero()) fail(ErrorCode::ZeroInput, "decomposition of zero");
    const long b = x.valuation();
    const int P = std::min(precision, x.relative_precision());
    PadicNumber u = PadicNumber::from_unit(x.ell(), 0, x.unit(), P);
    PadicNumber eps = teichmuller(u);
    PadicNumber c = u * eps.inverse() - PadicNumber::from_integer(1, x.ell(), P);
    return finish(x.ell(), P, b, eps, c);
}

HilbertConductor hilbert_conductor(const PadicDecomposition& dec, int N) {
    const std::uint64_t ell = dec.ell;
    const long margin = dec.c.is_exact_zero() ? kInfiniteValuation : dec.c.absolute_precision() - (N + 1);
    auto ell_to = [&](long k) { return checked_pow(ell, static_cast<unsigned>(k)); };
    if (!dec.w_exact) {
        if (dec.w <= N)
            fail(ErrorCode::PrecisionExhausted, "cannot decide whether w exceeds N; raise the precision");
        return {0, 5, margin};
    }
    const long w = dec.w;
    if (w == 0) return {ell_to(N - 1) * (ell + 1), 1, margin};
    if (w > N) return {0, 5, margin};
    if (w < N) {
        const int bprec = static_cast<int>(std::min<long>(dec.c.absolute_precision(), N + 2)) + 1;
        PadicNumber sum = PadicNumber::from_integer(dec.b, ell, bprec) + dec.c;
        const long lower = sum.valuation_lower_bound();
        ensure(lower >= w, "ord(b + c) below w");
        if (sum.is_zero_to_precision()) {
            if (lower <= w) fail(ErrorCode::PrecisionExhausted, "cannot decide ord(b + c)");
            return {ell_to(N - w - 1) * (ell - 1), 3, margin};
        }
        if (sum.valuation() == w) return {2 * ell_to(N - w), 2, margin};
        return {ell_to(N - w - 1) * (ell - 1), 3, margin};
    }
    // w == N
    if (dec.c.valuation_lower_bound() > N) return {0, 6, margin};
    if (dec.c.is_zero_to_precision()) fail(ErrorCode::PrecisionExhausted, "cannot decide ord(c) at w = N");
    ensure(dec.c.valuation() == N, "ord(c) must equal N here");
    return {2, 4, margin};
}

DeltaPrimeData delta_prime_data(const CurveParams& params, int precision) {
    const std::uint64_t ell = params.ell();
    const int N = params.N();
    if (precision < 1) fail(ErrorCode::InvalidArgument, "precision must be positive");
    const long dv = params.delta_ell_valuation();
    const std::uint64_t r = params.r(), s = params.s(), t = params.t();
    const mpz_class m = ell_pow(ell, precision);

    mpz_class delta0 = static_cast<unsigned long>(params.delta());
    strip(delta0, ell);
    auto powm = [&](const mpz_class& base, std::uint64_t e) {
        mpz_class out, ez(static_cast<unsigned long>(e));
        mpz_powm(out.get_mpz_t(), base.get_mpz_t(), ez.get_mpz_t(), m.get_mpz_t());
        return out;
    };
    mpz_class unit = powm(static_cast<unsigned long>(r), r) * powm(static_cast<unsigned long>(s), s) % m;
    unit = unit * powm(static_cast<unsigned long>(r + s), t) % m;
    unit = unit * powm(delta0, r + s) % m;

    DeltaPrimeData out{static_cast<long>(r + s) * dv,
                       decompose(PadicNumber::from_unit(ell, static_cast<long>(r + s) * dv, unit, precision), precision),
                       0, true, 0, false, 0, true, 0, precision - (N + 1)};
    const PadicNumber& c = out.decomposition.c;
    if (c.is_zero_to_precision()) {
        out.ord_c = c.valuation_lower_bound();
        out.ord_c_exact = false;
        if (out.ord_c <= N) fail(ErrorCode::PrecisionExhausted, "cannot certify ord(c') against N");
    } else {
        out.ord_c = c.valuation();
        out.c_unit = mpz_mod_u64(c.unit(), ell);
    }
    ensure(out.ord_c >= 1, "ord(c') must be positive");

    if (dv == 0) {
        out.has_v_ell = true;
        mpz_class V = reduce(powm(unit, ell - 1) - 1, m);
        if (V == 0) {
            out.v_ell = precision;
            out.v_ell_exact = false;
            if (out.v_ell <= N) fail(ErrorCode::PrecisionExhausted, "cannot certify v_ell against N");
        } else {
            out.v_ell = strip(V, ell);
            out.u_prime = mpz_mod_u64(-V, ell);
        }
        ensure(out.v_ell_exact == out.ord_c_exact, "the two valuation routes disagree on certifiability");
        if (out.v_ell_exact) {
            ensure(out.v_ell == out.ord_c, "v_ell must equal ord(c')");
            ensure(out.u_prime == out.c_unit, "u' must equal the unit of c' mod ell");
        }
    }
    return out;
}

}  // namespace fermat
