#pragma once

#include <vector>

#include <gmpxx.h>

namespace fermat::qpoly {

// Dense polynomials over Q, lowest coefficient first, no trailing zeros.
using Poly = std::vector<mpq_class>;

void trim(Poly& a);
int degree(const Poly& a);  // -1 for the zero polynomial
Poly rem(Poly a, const Poly& b);
Poly quot(Poly a, const Poly& b);
Poly gcd(Poly a, Poly b);  // monic
Poly derivative(const Poly& a);
Poly sub(Poly a, const Poly& b);

// lc(a)^deg(b) times the product of b over the roots of a.
mpq_class resultant(Poly a, Poly b);

struct SquareFreeFactor {
    Poly factor;
    int multiplicity;
};

// Yun's algorithm; factors are monic.
std::vector<SquareFreeFactor> square_free_decomposition(const Poly& f);

}  // namespace fermat::qpoly
