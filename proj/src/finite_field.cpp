#include "fermat/finite_field.hpp"

#include <algorithm>
#include <string>

#include "fermat/errors.hpp"

namespace fermat {

namespace {

using Poly = std::vector<std::uint64_t>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& f, std::uint64_t p) {
    trim(a);
    const std::size_t n = f.size() - 1;
    std::uint64_t lead_inv = inverse_mod(f.back(), p);
    while (a.size() > n) {
        std::uint64_t c = mulmod(a.back(), lead_inv, p);
        std::size_t shift = a.size() - 1 - n;
        for (std::size_t i = 0; i <= n; ++i)
            a[shift + i] = (a[shift + i] + p - mulmod(c, f[i], p)) % p;
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + mulmod(a[i], b[j], p)) % p;
    return poly_mod(std::move(prod), f, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& f, std::uint64_t p) {
    Poly result{1};
    base = poly_mod(std::move(base), f, p);
    while (e) {
        if (e & 1) result = poly_mulmod(result, base, f, p);
        base = poly_mulmod(base, base, f, p);
        e >>= 1;
    }
    return result;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

Poly poly_sub_x(Poly a, std::uint64_t p) {
    if (a.size() < 2) a.resize(2, 0);
    a[1] = (a[1] + p - 1) % p;
    trim(a);
    return a;
}

// Rabin's test.
bool is_irreducible(const Poly& f, std::uint64_t p) {
    const int n = static_cast<int>(f.size()) - 1;
    std::vector<Poly> frob(n + 1);
    frob[0] = poly_mod(Poly{0, 1}, f, p);
    for (int k = 1; k <= n; ++k) frob[k] = poly_powmod(frob[k - 1], p, f, p);
    if (!poly_sub_x(frob[n], p).empty()) return false;
    for (auto [r, e] : factorize(static_cast<std::uint64_t>(n))) {
        (void)e;
        Poly g = poly_gcd(f, poly_sub_x(frob[n / r], p), p);
        if (g.size() != 1) return false;
    }
    return true;
}

std::vector<std::uint32_t> smallest_irreducible(std::uint64_t p, int n) {
    if (n == 1) return {0, 1};
    std::uint64_t count = checked_pow(p, static_cast<unsigned>(n));
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        if (idx % p == 0) continue;  // constant term zero
        Poly f(n + 1);
        std::uint64_t rest = idx;
        for (int i = 0; i < n; ++i) {
            f[i] = rest % p;
            rest /= p;
        }
        f[n] = 1;
        if (is_irreducible(f, p)) return std::vector<std::uint32_t>(f.begin(), f.end());
    }
    fail(ErrorCode::InternalAssertion, "no irreducible polynomial found");
}

std::uint32_t checked_characteristic(std::uint64_t p) {
    if (p >= (std::uint64_t{1} << 32) || !is_prime(p))
        fail(ErrorCode::NotPrime, "field characteristic " + std::to_string(p));
    return static_cast<std::uint32_t>(p);
}

}  // namespace

FiniteField::FiniteField(std::uint64_t p, int degree)
    : p_(p), n_(degree), q_(0), red_(checked_characteristic(p)) {
    if (degree < 1 || degree > kMaxDegree) fail(ErrorCode::InvalidArgument, "extension degree out of range");
    std::uint64_t q = 1;
    for (int i = 0; i < degree; ++i) {
        q *= p;
        if (q >= (std::uint64_t{1} << 32)) fail(ErrorCode::BudgetExceeded, "field order exceeds 2^32");
    }
    q_ = q;
    powers_of_p_.resize(n_ + 1);
    powers_of_p_[0] = 1;
    for (int i = 1; i <= n_; ++i) powers_of_p_[i] = static_cast<std::uint32_t>(powers_of_p_[i - 1] * p);
    modulus_ = smallest_irreducible(p, degree);
    group_factors_ = factorize(q - 1);
    for (Elem g = 1; g < q; ++g) {
        if (is_primitive(g)) {
            generator_ = g;
            break;
        }
    }
    ensure(generator_ != 0, "field generator not found");
}

FiniteField::~FiniteField() = default;

void FiniteField::decode(Elem x, Digits& d) const {
    for (int i = 0; i < n_; ++i) {
        d.c[i] = static_cast<std::uint32_t>(x % p_);
        x = static_cast<Elem>(x / p_);
    }
}

Elem FiniteField::encode(const Digits& d) const {
    std::uint64_t x = 0;
    for (int i = n_ - 1; i >= 0; --i) x = x * p_ + d.c[i];
    return static_cast<Elem>(x);
}

void FiniteField::mul_digits(const Digits& a, const Digits& b, Digits& out) const {
    std::uint64_t prod[2 * kMaxDegree] = {};
    for (int i = 0; i < n_; ++i) {
        if (!a.c[i]) continue;
        for (int j = 0; j < n_; ++j) prod[i + j] += static_cast<std::uint64_t>(a.c[i]) * b.c[j];
    }
    for (int k = 2 * n_ - 2; k >= n_; --k) {
        std::uint64_t c = prod[k] % p_;
        if (!c) continue;
        for (int i = 0; i < n_; ++i) prod[k - n_ + i] += c * (p_ - modulus_[i]);
    }
    for (int i = 0; i < n_; ++i) out.c[i] = static_cast<std::uint32_t>(prod[i] % p_);
}

Elem FiniteField::from_int(std::int64_t a) const {
    return static_cast<Elem>(mod(a, static_cast<std::int64_t>(p_)));
}

Elem FiniteField::from_coefficients(const std::vector<std::uint32_t>& c) const {
    if (c.size() > static_cast<std::size_t>(n_)) fail(ErrorCode::InvalidArgument, "too many coefficients");
    Digits d{};
    for (std::size_t i = 0; i < c.size(); ++i) d.c[i] = static_cast<std::uint32_t>(c[i] % p_);
    return encode(d);
}

std::vector<std::uint32_t> FiniteField::coefficients(Elem x) const {
    Digits d;
    decode(x, d);
    return std::vector<std::uint32_t>(d.c, d.c + n_);
}

Elem FiniteField::add_ext(Elem a, Elem b) const {
    Digits x, y;
    decode(a, x);
    decode(b, y);
    for (int i = 0; i < n_; ++i) {
        std::uint64_t s = std::uint64_t{x.c[i]} + y.c[i];
        x.c[i] = static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
    }
    return encode(x);
}

Elem FiniteField::neg_ext(Elem a) const {
    Digits x;
    decode(a, x);
    for (int i = 0; i < n_; ++i) x.c[i] = x.c[i] == 0 ? 0 : static_cast<std::uint32_t>(p_ - x.c[i]);
    return encode(x);
}

Elem FiniteField::mul_ext(Elem a, Elem b) const {
    Digits x{}, y{}, z;
    decode(a, x);
    decode(b, y);
    mul_digits(x, y, z);
    return encode(z);
}

Elem FiniteField::pow(Elem a, std::uint64_t e) const {
    if (n_ == 1) {
        std::uint32_t result = 1 % static_cast<std::uint32_t>(p_), base = a;
        while (e) {
            if (e & 1) result = red_.mul(result, base);
            base = red_.mul(base, base);
            e >>= 1;
        }
        return result;
    }
    Digits result{}, base, tmp;
    result.c[0] = 1;
    decode(a, base);
    while (e) {
        if (e & 1) {
            mul_digits(result, base, tmp);
            result = tmp;
        }
        e >>= 1;
        if (e) {
            mul_digits(base, base, tmp);
            base = tmp;
        }
    }
    return encode(result);
}

Elem FiniteField::inv(Elem a) const {
    if (a == 0) fail(ErrorCode::ZeroInput, "inverse of zero");
    return pow(a, q_ - 2);
}

std::uint32_t FiniteField::trace(Elem a) const {
    Elem sum = 0, cur = a;
    for (int i = 0; i < n_; ++i) {
        sum = add(sum, cur);
        cur = pow(cur, p_);
    }
    ensure(sum < p_, "trace must lie in the prime field");
    return sum;
}

bool FiniteField::is_primitive(Elem a) const {
    if (a == 0) return false;
    if (q_ == 2) return a == 1;
    for (const auto& [r, e] : group_factors_) {
        (void)e;
        if (pow(a, (q_ - 1) / r) == 1) return false;
    }
    return true;
}

const DiscreteLogTable& FiniteField::log_table(std::uint64_t budget) const {
    if (q_ > budget)
        fail(ErrorCode::BudgetExceeded, "log table for q = " + std::to_string(q_) + " exceeds budget " +
                                            std::to_string(budget));
    std::call_once(log_once_, [this] { log_table_ = std::make_unique<DiscreteLogTable>(*this); });
    return *log_table_;
}

FieldPtr build_field(std::uint64_t p, int degree) { return std::make_shared<const FiniteField>(p, degree); }

DiscreteLogTable::DiscreteLogTable(const FiniteField& field) {
    const std::uint64_t q = field.order();
    log_.assign(q, 0);
    exp_.resize(q - 1);
    for_each_power(field, field.generator(), q - 1, [&](std::uint64_t k, Elem x) {
        exp_[k] = x;
        log_[x] = static_cast<std::uint32_t>(k);
    });
    ensure(field.mul(exp_[q - 2], field.generator()) == 1, "generator order mismatch");
}

std::uint64_t SplittingData::residue_degree(int t) const {
    return checked_pow(ell, static_cast<unsigned>(n_t.at(t - 1))) * static_cast<std::uint64_t>(f);
}

SplittingData splitting_data(std::uint64_t p, std::uint64_t ell, int N) {
    if (p == ell) fail(ErrorCode::PEqualsEll, "p = ell");
    if (!is_prime(p) || !is_prime(ell)) fail(ErrorCode::NotPrime, "splitting data needs primes");
    SplittingData out{p, ell, 0, 0, {}};
    out.f = static_cast<int>(multiplicative_order(p % ell, ell));
    out.e_p = static_cast<int>(valuation(mpz_class(mpz_pow(p, static_cast<unsigned long>(out.f)) - 1), ell));
    for (int t = 1; t <= N; ++t) out.n_t.push_back(t <= out.e_p ? 0 : t - out.e_p);
    return out;
}

MultChar::MultChar(FieldPtr field, std::uint64_t ell, int level, std::uint64_t log_image)
    : field_(std::move(field)), ell_(ell), level_(level) {
    if (level < 1) fail(ErrorCode::InvalidArgument, "character level must be at least 1");
    modulus_ = checked_pow(ell, static_cast<unsigned>(level));
    const std::uint64_t q = field_->order();
    if ((q - 1) % modulus_ != 0)
        fail(ErrorCode::InvalidArgument,
             "ell^t = " + std::to_string(modulus_) + " does not divide q - 1 = " + std::to_string(q - 1));
    log_image_ = log_image % modulus_;
    cofactor_ = (q - 1) / modulus_;
    Elem h = field_->pow(field_->generator(), cofactor_);
    subgroup_gen_inv_ = field_->inv(h);
    Elem gamma = field_->pow(h, modulus_ / ell_);
    order_ell_powers_.resize(ell_);
    Elem cur = 1;
    for (std::uint64_t d = 0; d < ell_; ++d) {
        order_ell_powers_[d] = cur;
        cur = field_->mul(cur, gamma);
    }
}

std::uint64_t MultChar::eval(Elem x) const {
    if (x == 0) fail(ErrorCode::ZeroInput, "character at zero");
    Elem cur = field_->pow(x, cofactor_);
    std::uint64_t dlog = 0, ell_i = 1;
    for (int i = 0; i < level_; ++i) {
        Elem z = field_->pow(cur, modulus_ / (ell_i * ell_));
        auto it = std::find(order_ell_powers_.begin(), order_ell_powers_.end(), z);
        ensure(it != order_ell_powers_.end(), "element outside the ell-subgroup");
        std::uint64_t d = static_cast<std::uint64_t>(it - order_ell_powers_.begin());
        dlog += d * ell_i;
        cur = field_->mul(cur, field_->pow(subgroup_gen_inv_, d * ell_i));
        ell_i *= ell_;
    }
    ensure(cur == 1, "Pohlig-Hellman residue must vanish");
    return mulmod(log_image_, dlog, modulus_);
}

std::uint64_t MultChar::eval_by_table(Elem x, std::uint64_t budget) const {
    if (x == 0) fail(ErrorCode::ZeroInput, "character at zero");
    return mulmod(log_image_, field_->log_table(budget).log(x) % modulus_, modulus_);
}

MultChar MultChar::power(std::int64_t k) const {
    std::uint64_t kk = static_cast<std::uint64_t>(mod(k, static_cast<std::int64_t>(modulus_)));
    return MultChar(field_, ell_, level_, mulmod(log_image_, kk, modulus_));
}

std::uint64_t MultChar::order() const {
    if (log_image_ == 0) return 1;
    std::uint64_t a = log_image_, ord = modulus_;
    while (a % ell_ == 0) {
        a /= ell_;
        ord /= ell_;
    }
    return ord;
}

Embedding::Embedding(FieldPtr sub, FieldPtr sup) : sub_(std::move(sub)), sup_(std::move(sup)) {
    if (sub_->p() != sup_->p() || sup_->degree() % sub_->degree() != 0)
        fail(ErrorCode::NotASubfield, "F_" + std::to_string(sub_->order()) + " is not a subfield of F_" +
                                          std::to_string(sup_->order()));
    const FiniteField& S = *sup_;
    const auto& f = sub_->modulus();
    const std::uint64_t qs = sub_->order();
    if (sub_->degree() == 1) {
        root_ = 0;
    } else {
        // Roots of the sub modulus lie in the unique subfield of order qs.
        Elem h = S.pow(S.generator(), (S.order() - 1) / (qs - 1));
        Elem cur = 1;
        bool found = false;
        for (std::uint64_t k = 0; k + 1 < qs; ++k) {
            Elem value = 0;
            for (std::size_t i = f.size(); i-- > 0;) value = S.add(S.mul(value, cur), S.from_int(f[i]));
            if (value == 0 && (!found || cur < root_)) {
                root_ = cur;
                found = true;
            }
            cur = S.mul(cur, h);
        }
        ensure(found, "sub modulus has no root in the larger field");
    }
    std::vector<Elem> root_powers(sub_->degree());
    root_powers[0] = 1;
    for (int i = 1; i < sub_->degree(); ++i) root_powers[i] = S.mul(root_powers[i - 1], root_);
    image_.resize(qs);
    for (Elem x = 0; x < qs; ++x) {
        auto c = sub_->coefficients(x);
        Elem y = 0;
        for (std::size_t i = 0; i < c.size(); ++i)
            if (c[i]) y = S.add(y, S.mul(S.from_int(c[i]), root_powers[i]));
        image_[x] = y;
        preimage_.emplace(y, x);
    }
    ensure(preimage_.size() == qs, "embedding must be injective");
}

Elem Embedding::preimage(Elem y) const {
    auto it = preimage_.find(y);
    if (it == preimage_.end()) fail(ErrorCode::InvalidArgument, "element not in the embedded subfield");
    return it->second;
}

Elem Embedding::norm(Elem y) const {
    if (y == 0) return 0;
    return preimage(sup_->pow(y, (sup_->order() - 1) / (sub_->order() - 1)));
}

Embedding embed(FieldPtr sub, FieldPtr sup) { return Embedding(std::move(sub), std::move(sup)); }

MultChar lift_through_norm(const MultChar& chi, const Embedding& emb) {
    if (chi.field()->order() != emb.sub()->order())
        fail(ErrorCode::InvalidArgument, "character does not live on the embedded subfield");
    std::uint64_t image = chi.eval(emb.norm(emb.sup()->generator()));
    return MultChar(emb.sup(), chi.ell(), chi.level(), image);
}

}  // namespace fermat
