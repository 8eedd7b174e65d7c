#include "fermat/cyclotomic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fermat/errors.hpp"
#include "fermat/qpoly.hpp"

namespace fermat {

CycInt::CycInt(std::uint64_t ell, int level) : ell_(ell), level_(level) {
    if (level < 1) fail(ErrorCode::InvalidArgument, "cyclotomic level must be at least 1");
    conductor_ = checked_pow(ell, static_cast<unsigned>(level));
    coeffs_.assign(conductor_ - conductor_ / ell, mpz_class(0));
}

std::vector<mpz_class> CycInt::reduce_full(std::uint64_t ell, int level, std::vector<mpz_class> full) {
    const std::uint64_t m = checked_pow(ell, static_cast<unsigned>(level));
    const std::uint64_t step = m / ell;
    const std::uint64_t phi = m - step;
    // zeta^phi = -(1 + zeta^step + ... + zeta^((ell-2) step))
    for (std::uint64_t k = m; k-- > phi;) {
        if (full[k] == 0) continue;
        const std::uint64_t base = k - phi;
        for (std::uint64_t j = 0; j + 1 < ell; ++j) full[base + j * step] -= full[k];
        full[k] = 0;
    }
    full.resize(phi);
    return full;
}

CycInt CycInt::from_integer(std::uint64_t ell, int level, const mpz_class& n) {
    CycInt out(ell, level);
    out.coeffs_[0] = n;
    return out;
}

CycInt CycInt::zeta_power(std::uint64_t ell, int level, std::int64_t k) {
    CycInt out(ell, level);
    std::vector<mpz_class> full(out.conductor_, mpz_class(0));
    full[mod(k, static_cast<std::int64_t>(out.conductor_))] = 1;
    out.coeffs_ = reduce_full(ell, level, std::move(full));
    return out;
}

CycInt CycInt::from_exponent_counts(std::uint64_t ell, int level, const std::vector<std::int64_t>& counts) {
    CycInt out(ell, level);
    if (counts.size() != out.conductor_) fail(ErrorCode::InvalidArgument, "exponent count vector has wrong length");
    std::vector<mpz_class> full(out.conductor_);
    for (std::size_t i = 0; i < counts.size(); ++i) full[i] = static_cast<long>(counts[i]);
    out.coeffs_ = reduce_full(ell, level, std::move(full));
    return out;
}

bool CycInt::is_zero() const {
    for (const auto& c : coeffs_)
        if (c != 0) return false;
    return true;
}

bool CycInt::is_rational_integer() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

mpz_class CycInt::to_integer() const {
    if (!is_rational_integer()) fail(ErrorCode::NonIntegerResult, "cyclotomic integer " + to_string() + " is not in Z");
    return coeffs_[0];
}

CycInt CycInt::lift(int new_level) const {
    if (new_level < level_) fail(ErrorCode::InvalidArgument, "cannot lift to a lower level");
    CycInt out(ell_, new_level);
    const std::uint64_t stride = out.conductor_ / conductor_;
    std::vector<mpz_class> full(out.conductor_, mpz_class(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) full[i * stride] = coeffs_[i];
    out.coeffs_ = reduce_full(ell_, new_level, std::move(full));
    return out;
}

CycInt CycInt::pow(unsigned long e) const {
    CycInt result = from_integer(ell_, level_, 1), base = *this;
    while (e) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

void CycInt::check_compatible(const CycInt& o) const {
    if (ell_ != o.ell_ || level_ != o.level_)
        fail(ErrorCode::InvalidArgument, "cyclotomic integers from different rings");
}

CycInt& CycInt::operator+=(const CycInt& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
}

CycInt& CycInt::operator-=(const CycInt& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
}

CycInt& CycInt::operator*=(const CycInt& o) {
    check_compatible(o);
    std::vector<mpz_class> full(conductor_, mpz_class(0));
    const std::size_t n = coeffs_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (o.coeffs_[j] == 0) continue;
            std::size_t k = i + j;
            if (k >= conductor_) k -= conductor_;
            mpz_addmul(full[k].get_mpz_t(), coeffs_[i].get_mpz_t(), o.coeffs_[j].get_mpz_t());
        }
    }
    coeffs_ = reduce_full(ell_, level_, std::move(full));
    return *this;
}

CycInt& CycInt::operator*=(const mpz_class& c) {
    for (auto& x : coeffs_) x *= c;
    return *this;
}

CycInt CycInt::operator-() const {
    CycInt out = *this;
    for (auto& x : out.coeffs_) x = -x;
    return out;
}

bool CycInt::operator==(const CycInt& o) const {
    return ell_ == o.ell_ && level_ == o.level_ && coeffs_ == o.coeffs_;
}

std::string CycInt::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        if (!first) os << (coeffs_[i] > 0 ? " + " : " - ");
        else if (coeffs_[i] < 0) os << "-";
        mpz_class a = abs(coeffs_[i]);
        if (i == 0) os << a;
        else {
            if (a != 1) os << a << "*";
            os << "z";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

CycInt galois_conjugate(const CycInt& x, std::int64_t a) {
    if (mod(a, static_cast<std::int64_t>(x.ell())) == 0) fail(ErrorCode::NotAUnit, "Galois action needs a unit");
    const std::uint64_t m = x.conductor();
    const std::uint64_t aa = static_cast<std::uint64_t>(mod(a, static_cast<std::int64_t>(m)));
    std::vector<mpz_class> full(m, mpz_class(0));
    for (std::size_t i = 0; i < x.coeffs_.size(); ++i) full[mulmod(i, aa, m)] += x.coeffs_[i];
    CycInt out(x.ell(), x.level());
    out.coeffs_ = CycInt::reduce_full(x.ell(), x.level(), std::move(full));
    return out;
}

mpz_class norm(const CycInt& x) {
    const std::uint64_t m = x.conductor(), step = m / x.ell();
    qpoly::Poly cyclo(m - step + 1, mpq_class(0));
    for (std::uint64_t j = 0; j < x.ell(); ++j) cyclo[j * step] = 1;
    qpoly::Poly a(x.coefficients().begin(), x.coefficients().end());
    mpq_class res = qpoly::resultant(cyclo, a);
    ensure(res.get_den() == 1, "norm must be an integer");
    return res.get_num();
}

mpz_class norm_by_conjugates(const CycInt& x) {
    CycInt prod = CycInt::from_integer(x.ell(), x.level(), 1);
    for (std::uint64_t a = 1; a < x.conductor(); ++a)
        if (a % x.ell() != 0) prod *= galois_conjugate(x, static_cast<std::int64_t>(a));
    return prod.to_integer();
}

mpz_class trace_of_zeta_power(std::uint64_t ell, int level, std::int64_t n) {
    const std::int64_t m = static_cast<std::int64_t>(checked_pow(ell, static_cast<unsigned>(level)));
    const std::int64_t step = m / static_cast<std::int64_t>(ell);
    if (n % m == 0) return mpz_class(static_cast<long>(m - step));
    if (n % step == 0) return mpz_class(static_cast<long>(-step));
    return 0;
}

mpz_class trace(const CycInt& x) {
    mpz_class out = 0;
    for (std::size_t i = 0; i < x.degree(); ++i)
        if (x.coefficients()[i] != 0)
            out += x.coefficients()[i] * trace_of_zeta_power(x.ell(), x.level(), static_cast<std::int64_t>(i));
    return out;
}

mpz_class trace_by_conjugates(const CycInt& x) {
    CycInt sum(x.ell(), x.level());
    for (std::uint64_t a = 1; a < x.conductor(); ++a)
        if (a % x.ell() != 0) sum += galois_conjugate(x, static_cast<std::int64_t>(a));
    return sum.to_integer();
}

std::optional<long> pi_prime_valuation(const CycInt& x) {
    if (x.is_zero()) return std::nullopt;
    return valuation(norm(x), x.ell());
}

std::complex<double> complex_embed(const CycInt& x, std::int64_t h) {
    if (mod(h, static_cast<std::int64_t>(x.ell())) == 0) fail(ErrorCode::NotAUnit, "embedding index must be a unit");
    const long double m = static_cast<long double>(x.conductor());
    long double re = 0, im = 0;
    const auto hh = mod(h, static_cast<std::int64_t>(x.conductor()));
    for (std::size_t i = 0; i < x.degree(); ++i) {
        const auto& c = x.coefficients()[i];
        if (c == 0) continue;
        const long double angle = 2 * std::numbers::pi_v<long double> *
                                  static_cast<long double>(mulmod(i, static_cast<std::uint64_t>(hh), x.conductor())) / m;
        const long double v = static_cast<long double>(c.get_d());
        re += v * std::cos(angle);
        im += v * std::sin(angle);
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

namespace {

void require_same_field(const MultChar& a, const MultChar& b) {
    if (a.field() != b.field() && (a.field()->order() != b.field()->order() ||
                                   a.field()->modulus() != b.field()->modulus()))
        fail(ErrorCode::InvalidArgument, "characters live on different fields");
    if (a.ell() != b.ell()) fail(ErrorCode::InvalidArgument, "characters have different ell");
}

}  // namespace

CycInt jacobi_sum(const MultChar& chi_a, const MultChar& chi_b, std::uint64_t budget) {
    require_same_field(chi_a, chi_b);
    if (chi_a.is_trivial() || chi_b.is_trivial()) fail(ErrorCode::TrivialCharacter, "Jacobi sum of a trivial character");
    const int level = std::max(chi_a.level(), chi_b.level());
    const std::uint64_t m = checked_pow(chi_a.ell(), static_cast<unsigned>(level));
    const std::uint64_t scale_a = m / chi_a.modulus(), scale_b = m / chi_b.modulus();
    if ((chi_a.log_image() * scale_a + chi_b.log_image() * scale_b) % m == 0)
        fail(ErrorCode::TrivialProduct, "product of the characters is trivial");
    const FiniteField& F = *chi_a.field();
    const auto& logs = F.log_table(budget);
    const std::uint64_t ea = chi_a.log_image() * scale_a % m, eb = chi_b.log_image() * scale_b % m;
    std::vector<std::int64_t> counts(m, 0);
    for (Elem x = 2; x < F.order(); ++x) {
        Elem y = F.sub(1, x);
        if (y == 0) continue;
        std::uint64_t e = (mulmod(ea, logs.log(x) % m, m) + mulmod(eb, logs.log(y) % m, m)) % m;
        ++counts[e];
    }
    return CycInt::from_exponent_counts(chi_a.ell(), level, counts);
}

std::complex<double> gauss_sum_complex(const MultChar& chi, std::uint64_t budget) {
    if (chi.is_trivial()) fail(ErrorCode::TrivialCharacter, "Gauss sum of the trivial character");
    const FiniteField& F = *chi.field();
    const auto& logs = F.log_table(budget);
    // The trace is F_p-linear; evaluate it on the power basis once.
    std::vector<std::uint64_t> basis_trace(F.degree());
    for (int i = 0; i < F.degree(); ++i) {
        std::vector<std::uint32_t> c(F.degree(), 0);
        c[i] = 1;
        basis_trace[i] = F.trace(F.from_coefficients(c));
    }
    const long double two_pi = 2 * std::numbers::pi_v<long double>;
    const long double m = static_cast<long double>(chi.modulus()), p = static_cast<long double>(F.p());
    long double re = 0, im = 0;
    for (Elem x = 1; x < F.order(); ++x) {
        std::uint64_t tr = 0;
        Elem rest = x;
        for (int i = 0; i < F.degree(); ++i) {
            tr += (rest % F.p()) * basis_trace[i];
            rest = static_cast<Elem>(rest / F.p());
        }
        tr %= F.p();
        std::uint64_t e = mulmod(chi.log_image(), logs.log(x) % chi.modulus(), chi.modulus());
        long double angle = two_pi * (static_cast<long double>(e) / m + static_cast<long double>(tr) / p);
        re += std::cos(angle);
        im += std::sin(angle);
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

JacobiHistogram::JacobiHistogram(FieldPtr field, std::uint64_t ell, int level, std::uint64_t budget)
    : ell_(ell), level_(level) {
    modulus_ = checked_pow(ell, static_cast<unsigned>(level));
    if ((field->order() - 1) % modulus_ != 0)
        fail(ErrorCode::InvalidArgument, "ell^t must divide q - 1 for the Jacobi histogram");
    const FiniteField& F = *field;
    const auto& logs = F.log_table(budget);
    hist_.assign(modulus_ * modulus_, 0);
    const std::uint64_t m = modulus_;
    if (F.degree() == 1) {
        const std::uint64_t q = F.order();
        for (std::uint64_t x = 2; x < q; ++x) ++hist_[(logs.log(static_cast<Elem>(x)) % m) * m + logs.log(static_cast<Elem>(q + 1 - x)) % m];
    } else {
        for (Elem x = 2; x < F.order(); ++x) {
            Elem y = F.sub(1, x);
            if (y == 0) continue;
            ++hist_[(logs.log(x) % m) * m + logs.log(y) % m];
        }
    }
}

void JacobiHistogram::accumulate(std::uint64_t a, std::uint64_t b, std::uint64_t shift,
                                 std::vector<std::int64_t>& out) const {
    const std::uint64_t m = modulus_;
    a %= m;
    b %= m;
    for (std::uint64_t e1 = 0; e1 < m; ++e1) {
        const std::uint64_t base = (a * e1 + shift) % m;
        for (std::uint64_t e2 = 0; e2 < m; ++e2) {
            const std::int64_t c = hist_[e1 * m + e2];
            if (c) out[(base + b * e2) % m] += c;
        }
    }
}

CycInt JacobiHistogram::jacobi(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t m = modulus_;
    if (a % m == 0 || b % m == 0) fail(ErrorCode::TrivialCharacter, "Jacobi sum of a trivial character");
    if ((a + b) % m == 0) fail(ErrorCode::TrivialProduct, "product of the characters is trivial");
    std::vector<std::int64_t> counts(m, 0);
    accumulate(a, b, 0, counts);
    return CycInt::from_exponent_counts(ell_, level_, counts);
}

}  // namespace fermat
