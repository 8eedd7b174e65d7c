#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "fermat/padic.hpp"
#include "fermat/params.hpp"

namespace fermat {

// Sum over k >= 0 with k = v (mod m) of (-1)^k C(M, k), one pass over the row.
mpz_class alt_binom_sum(std::uint64_t M, std::uint64_t v, std::uint64_t m);

// C(n, k) mod ell^K via Granville's extension of Lucas' theorem.
class BinomialModPrimePower {
public:
    BinomialModPrimePower(std::uint64_t ell, int K);
    std::uint64_t ell() const { return ell_; }
    int exponent() const { return K_; }
    std::uint64_t modulus() const { return modulus_; }
    std::uint64_t operator()(std::uint64_t n, std::uint64_t k) const;

private:
    std::uint64_t ell_;
    int K_;
    std::uint64_t modulus_;
    std::vector<std::uint64_t> fact_;      // product of 1..x prime to ell
    std::vector<std::uint64_t> inv_fact_;
};

std::uint64_t alt_binom_sum_mod(std::uint64_t M, std::uint64_t v, std::uint64_t m, const BinomialModPrimePower& binom);

// Index data of the Fleck-type sum J(n, f); f must be even.
struct FleckParams {
    std::uint64_t ell;
    int n;
    std::uint64_t f;
    std::uint64_t level0;  // ell^(n-1)
    std::uint64_t level1;  // ell^n
    std::uint64_t i0, i1;
    long j;
    long k_max;  // -1 when the sum is empty

    // -1 only for n = 1, f = 2, u = k = 0; that row stands for the single term P_1.
    std::int64_t M(int u, long k) const;
    std::uint64_t v(int u, long k) const;
    std::uint64_t v2(long k) const;
};

FleckParams fleck_params(std::uint64_t ell, int n, std::uint64_t f);

struct FleckResult {
    FleckParams params;
    mpz_class value;
    std::vector<mpz_class> U0, U1, Uprime;
};

struct FleckResidues {
    FleckParams params;
    int precision;
    std::uint64_t modulus;
    std::uint64_t value;
    std::vector<std::uint64_t> U0, U1, Uprime;
};

FleckResult j_fleck(std::uint64_t ell, int n, std::uint64_t f);
FleckResidues j_fleck_mod(std::uint64_t ell, int n, std::uint64_t f, int precision);

// l = I / ell^(N-1) mod ell for the ramified Hilbert symbol value.
struct HilbertResidue {
    std::uint64_t residue;
    bool from_b;
    long ord_c;            // when !from_b
    std::uint64_t h_unit;  // H / ell^(N - ord_c) mod ell, when !from_b
};

HilbertResidue hilbert_residue(const PadicDecomposition& dec, const CurveParams& params);
// Same, from the unit part of c alone: b = 0, 1 <= ord_c <= N.
HilbertResidue hilbert_residue_unit(std::uint64_t ell, int N, long ord_c, std::uint64_t c_unit);

struct CongruenceReport {
    mpz_class sum_a, sum_b;
    bool a_holds, b_holds;
};

// Both halves of Fleck's congruence at shift s; throws CongruenceFailure.
CongruenceReport fleck_congruence_check(std::uint64_t ell, int N, int s);
// (1/ell^N) Tr (1 - zeta)^(ell^(N-1)(ell N - N + 1) - 1) = (-ell)^(N-1) mod ell^N; throws CongruenceFailure.
mpz_class trace_lemma_check(std::uint64_t ell, int N);
// Tr(pi^((f-1)(i+1)-1) (zeta + zeta^-1)) with pi = zeta - zeta^-1, by exact arithmetic and by
// the residue-class binomial formulas; throws OracleMismatch when they differ.
mpz_class trace_case_oracle(std::uint64_t ell, int N, std::uint64_t f, std::uint64_t i);
// pi^n (zeta + zeta^-1) against its P_n / Q_n binomial expansion for 1 <= n <= n_max.
bool pq_expansion_check(std::uint64_t ell, int N, std::uint64_t n_max);
// Sum over k' = v mod ell^N of (-1)^k' C(ell^N + 2k - 2, k') = (v + 1 if k = 0 else 0) mod ell,
// for every v and 0 <= k <= k_max.
bool lucas_case_check(std::uint64_t ell, int N, std::uint64_t k_max);

}  // namespace fermat
