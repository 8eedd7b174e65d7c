#include "fermat/qpoly.hpp"

#include "fermat/errors.hpp"

namespace fermat::qpoly {

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

namespace {

// Quotient and remainder of a by b (b nonzero).
void divide(Poly a, const Poly& b, Poly* q, Poly* r) {
    trim(a);
    if (b.empty()) fail(ErrorCode::InvalidArgument, "polynomial division by zero");
    const std::size_t m = b.size() - 1;
    Poly quotient(a.size() > m ? a.size() - m : 0, mpq_class(0));
    while (a.size() > m) {
        mpq_class c = a.back() / b.back();
        const std::size_t shift = a.size() - 1 - m;
        quotient[shift] = c;
        for (std::size_t i = 0; i <= m; ++i) a[shift + i] -= c * b[i];
        a.pop_back();
        trim(a);
    }
    if (q) {
        trim(quotient);
        *q = std::move(quotient);
    }
    if (r) *r = std::move(a);
}

mpq_class power(const mpq_class& base, std::size_t e) {
    mpq_class out = 1;
    for (std::size_t i = 0; i < e; ++i) out *= base;
    return out;
}

void make_monic(Poly& a) {
    if (a.empty()) return;
    mpq_class lead = a.back();
    for (auto& c : a) c /= lead;
}

}  // namespace

Poly rem(Poly a, const Poly& b) {
    Poly r;
    divide(std::move(a), b, nullptr, &r);
    return r;
}

Poly quot(Poly a, const Poly& b) {
    Poly q;
    divide(std::move(a), b, &q, nullptr);
    return q;
}

Poly gcd(Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    make_monic(a);
    return a;
}

Poly derivative(const Poly& a) {
    Poly out;
    for (std::size_t i = 1; i < a.size(); ++i) out.push_back(a[i] * static_cast<unsigned long>(i));
    trim(out);
    return out;
}

Poly sub(Poly a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size(), mpq_class(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

mpq_class resultant(Poly a, Poly b) {
    trim(a);
    trim(b);
    if (a.empty() || b.empty()) return 0;
    mpq_class factor = 1;
    while (true) {
        const std::size_t n = a.size() - 1, m = b.size() - 1;
        if (m == 0) return factor * power(b[0], n);
        if (n == 0) return factor * power(a[0], m);
        Poly r = rem(a, b);
        if (r.empty()) return 0;
        const std::size_t k = r.size() - 1;
        if ((n * m) % 2 == 1) factor = -factor;
        factor *= power(b.back(), n - k);
        a = std::move(b);
        b = std::move(r);
    }
}

std::vector<SquareFreeFactor> square_free_decomposition(const Poly& f_in) {
    Poly f = f_in;
    trim(f);
    if (degree(f) < 1) return {};
    make_monic(f);
    std::vector<SquareFreeFactor> out;
    Poly fp = derivative(f);
    Poly a = gcd(f, fp);
    Poly b = quot(f, a);
    Poly c = quot(fp, a);
    Poly d = sub(c, derivative(b));
    for (int i = 1; degree(b) > 0; ++i) {
        Poly g = gcd(b, d);
        Poly nb = quot(b, g);
        Poly nc = quot(d, g);
        if (degree(g) > 0) out.push_back({g, i});
        b = std::move(nb);
        d = sub(nc, derivative(b));
    }
    return out;
}

}  // namespace fermat::qpoly
