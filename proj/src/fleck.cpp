#include "fermat/fleck.hpp"

#include <string>

#include "fermat/arith.hpp"
#include "fermat/cyclotomic.hpp"
#include "fermat/errors.hpp"

namespace fermat {

namespace {

constexpr std::uint64_t kExactWorkLimit = 400'000'000;
constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 26;

std::int64_t as_signed(std::uint64_t x) { return static_cast<std::int64_t>(x); }

// Largest odd a with level * a <= x (x >= level).
std::uint64_t largest_odd_multiple(std::uint64_t x, std::uint64_t level) {
    std::uint64_t a = x / level;
    if (a % 2 == 0) --a;
    return a;
}

// Smallest even i with level <= (f - 1)(i + 1).
std::uint64_t min_even_index(std::uint64_t level, std::uint64_t f) {
    std::uint64_t i = static_cast<std::uint64_t>(ceil_div(as_signed(level), as_signed(f - 1)));
    i = i == 0 ? 0 : i - 1;
    if (i % 2 == 1) ++i;
    return i;
}

// Takes M + 2 so that the row M = -1 is representable.
std::uint64_t residue_class_index(std::uint64_t M_plus_2, std::uint64_t level) {
    const std::int64_t x = as_signed(M_plus_2), L = as_signed(level);
    // (1/2) { M + 2 - L (2 floor((1/2)((M + 2)/L - 1)) + 1) }
    const std::int64_t a = 2 * floor_div(x - L, 2 * L) + 1;
    const std::int64_t twice = x - L * a;
    ensure(a == as_signed(largest_odd_multiple(M_plus_2, level)), "odd multiple characterisations disagree");
    ensure(twice >= 0 && twice % 2 == 0 && twice / 2 < L, "residue index out of range");
    return static_cast<std::uint64_t>(twice / 2);
}

// Multiplies the class-sum vector by (1 - x) modulo x^L - 1.
void pascal_step(std::vector<mpz_class>& sums) {
    const mpz_class last = sums.back();
    for (std::size_t v = sums.size() - 1; v > 0; --v) sums[v] -= sums[v - 1];
    sums[0] -= last;
}

void advance(std::vector<mpz_class>& sums, std::uint64_t& current, std::uint64_t target) {
    ensure(target >= current, "binomial rows only move forward");
    for (; current < target; ++current) pascal_step(sums);
}

}  // namespace

mpz_class alt_binom_sum(std::uint64_t M, std::uint64_t v, std::uint64_t m) {
    if (m == 0 || v >= m) fail(ErrorCode::InvalidArgument, "need 0 <= v < m");
    mpz_class c = 1, total = 0;
    for (std::uint64_t k = 0; k <= M; ++k) {
        if (k % m == v) {
            if (k % 2 == 0) total += c;
            else total -= c;
        }
        c *= static_cast<unsigned long>(M - k);
        mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(k + 1));
    }
    return total;
}

BinomialModPrimePower::BinomialModPrimePower(std::uint64_t ell, int K) : ell_(ell), K_(K) {
    if (K < 1) fail(ErrorCode::InvalidArgument, "exponent must be positive");
    const std::uint64_t m = checked_pow(ell, static_cast<unsigned>(K));
    if (m > kTableLimit) fail(ErrorCode::BudgetExceeded, "ell^K too large for factorial tables");
    modulus_ = m;
    fact_.assign(m, 1);
    inv_fact_.assign(m, 1);
    for (std::uint64_t x = 1; x < m; ++x) fact_[x] = x % ell == 0 ? fact_[x - 1] : mulmod(fact_[x - 1], x, m);
    inv_fact_[m - 1] = inverse_mod(fact_[m - 1], m);
    for (std::uint64_t x = m - 1; x > 0; --x) inv_fact_[x - 1] = x % ell == 0 ? inv_fact_[x] : mulmod(inv_fact_[x], x, m);
}

std::uint64_t BinomialModPrimePower::operator()(std::uint64_t n, std::uint64_t k) const {
    if (k > n) return 0;
    const std::uint64_t m = modulus_;
    std::uint64_t r = n - k;
    int carries = 0, high_carries = 0;
    {
        std::uint64_t a = k, b = r, carry = 0;
        for (int pos = 0; a > 0 || b > 0; ++pos) {
            carry = (a % ell_ + b % ell_ + carry) >= ell_ ? 1 : 0;
            if (carry) {
                ++carries;
                if (pos >= K_ - 1) ++high_carries;
            }
            a /= ell_;
            b /= ell_;
        }
    }
    if (carries >= K_) return 0;
    std::uint64_t prod = 1;
    for (std::uint64_t nn = n, kk = k, rr = r; nn > 0; nn /= ell_, kk /= ell_, rr /= ell_) {
        prod = mulmod(prod, fact_[nn % m], m);
        prod = mulmod(prod, inv_fact_[kk % m], m);
        prod = mulmod(prod, inv_fact_[rr % m], m);
    }
    if (high_carries % 2 == 1 && prod != 0) prod = m - prod;
    for (int c = 0; c < carries; ++c) prod = mulmod(prod, ell_, m);
    return prod;
}

std::uint64_t alt_binom_sum_mod(std::uint64_t M, std::uint64_t v, std::uint64_t m, const BinomialModPrimePower& binom) {
    if (m == 0 || v >= m) fail(ErrorCode::InvalidArgument, "need 0 <= v < m");
    const std::uint64_t mod = binom.modulus();
    std::uint64_t total = 0;
    for (std::uint64_t k = v; k <= M; k += m) {
        const std::uint64_t c = binom(M, k);
        total = k % 2 == 0 ? (total + c) % mod : (total + mod - c) % mod;
    }
    return total;
}

std::int64_t FleckParams::M(int u, long k) const {
    return as_signed((f - 1) * ((u == 0 ? i0 : i1) + 1 + 2 * static_cast<std::uint64_t>(k))) - 2;
}

std::uint64_t FleckParams::v(int u, long k) const {
    return residue_class_index(static_cast<std::uint64_t>(M(u, k) + 2), u == 0 ? level0 : level1);
}

std::uint64_t FleckParams::v2(long k) const { return residue_class_index(static_cast<std::uint64_t>(M(1, k) + 2), level0); }

FleckParams fleck_params(std::uint64_t ell, int n, std::uint64_t f) {
    if (ell < 3 || !is_prime(ell)) fail(ErrorCode::NotPrime, "ell must be an odd prime");
    if (n < 1) fail(ErrorCode::InvalidArgument, "n must be positive");
    if (f < 2 || f % 2 != 0) fail(ErrorCode::InvalidArgument, "f must be even and at least 2");
    FleckParams p{ell, n, f, checked_pow(ell, static_cast<unsigned>(n - 1)), checked_pow(ell, static_cast<unsigned>(n)),
                  0, 0, 0, 0};
    const std::int64_t g = as_signed(f - 1);
    std::uint64_t* idx[2] = {&p.i0, &p.i1};
    const std::uint64_t levels[2] = {p.level0, p.level1};
    for (int u = 0; u < 2; ++u) {
        // 2 ceil((1/2)(L/(f-1) - 1))
        const std::int64_t i = 2 * ceil_div(as_signed(levels[u]) - g, 2 * g);
        ensure(i >= 0 && static_cast<std::uint64_t>(i) == min_even_index(levels[u], f),
               "index formulas disagree");
        *idx[u] = static_cast<std::uint64_t>(i);
    }
    const std::int64_t X = as_signed(p.level0 * (static_cast<std::uint64_t>(n) * ell - n + 1) + 2);
    p.j = 2 * ceil_div(X - g, 2 * g) - 2;
    p.k_max = ceil_div(p.j - as_signed(p.i0), 2);
    if (p.k_max < 0) p.k_max = -1;
    ensure(p.M(0, 0) + 2 >= as_signed(p.level0) && p.M(1, 0) + 2 >= as_signed(p.level1),
           "first row shorter than its level");
    ensure(p.M(1, 0) >= 0 && (p.M(0, 0) >= 0 || (n == 1 && f == 2)), "negative row outside the degenerate case");
    return p;
}

FleckResult j_fleck(std::uint64_t ell, int n, std::uint64_t f) {
    FleckParams p = fleck_params(ell, n, f);
    FleckResult out{p, 0, {}, {}, {}};
    if (p.k_max < 0) return out;
    const std::uint64_t last = static_cast<std::uint64_t>(p.M(1, p.k_max));
    if (last > kExactWorkLimit / p.level1) fail(ErrorCode::BudgetExceeded, "exact Fleck sum too large; use the modular route");

    std::vector<mpz_class> s0(p.level0), s1(p.level1);
    s0[0] = 1;
    s1[0] = 1;
    std::uint64_t m0 = 0, m1 = 0;
    for (long k = 0; k <= p.k_max; ++k) {
        mpz_class u0;
        if (p.M(0, k) < 0) {
            u0 = p.v(0, k) == 0 ? 1 : 0;
        } else {
            advance(s0, m0, static_cast<std::uint64_t>(p.M(0, k)));
            u0 = s0[p.v(0, k)];
        }
        advance(s1, m1, static_cast<std::uint64_t>(p.M(1, k)));
        mpz_class u1 = s1[p.v(1, k)], up = 0;
        for (std::uint64_t idx = p.v2(k); idx < p.level1; idx += p.level0) up += s1[idx];
        out.value += -u0 - up + mpz_class(static_cast<unsigned long>(ell)) * u1;
        out.U0.push_back(u0);
        out.U1.push_back(u1);
        out.Uprime.push_back(up);
    }
    return out;
}

FleckResidues j_fleck_mod(std::uint64_t ell, int n, std::uint64_t f, int precision) {
    FleckParams p = fleck_params(ell, n, f);
    BinomialModPrimePower binom(ell, precision);
    const std::uint64_t m = binom.modulus();
    FleckResidues out{p, precision, m, 0, {}, {}, {}};
    for (long k = 0; k <= p.k_max; ++k) {
        const std::uint64_t u0 = p.M(0, k) < 0 ? (p.v(0, k) == 0 ? 1 % m : 0)
                                               : alt_binom_sum_mod(static_cast<std::uint64_t>(p.M(0, k)), p.v(0, k), p.level0, binom);
        const std::uint64_t M1 = static_cast<std::uint64_t>(p.M(1, k));
        const std::uint64_t u1 = alt_binom_sum_mod(M1, p.v(1, k), p.level1, binom);
        const std::uint64_t up = alt_binom_sum_mod(M1, p.v2(k), p.level0, binom);
        out.value = (out.value + 2 * m - u0 - up + mulmod(ell % m, u1, m)) % m;
        out.U0.push_back(u0);
        out.U1.push_back(u1);
        out.Uprime.push_back(up);
    }
    return out;
}

HilbertResidue hilbert_residue_unit(std::uint64_t ell, int N, long ord_c, std::uint64_t c_unit) {
    if (ord_c < 1 || ord_c > N) fail(ErrorCode::InvalidArgument, "need 1 <= ord(c) <= N");
    if (c_unit % ell == 0) fail(ErrorCode::NotAUnit, "unit part of c divisible by ell");
    const int e = N - static_cast<int>(ord_c);
    const std::uint64_t scale = checked_pow(ell, static_cast<unsigned>(e));
    const FleckResidues H = j_fleck_mod(ell, N, 2 * scale, e + 1);
    if (H.value % scale != 0 || (H.value / scale) % ell == 0)
        fail(ErrorCode::UnitValuationViolation,
             "ord(H) != N - ord(c) for ell=" + std::to_string(ell) + " N=" + std::to_string(N) +
                 " ord(c)=" + std::to_string(ord_c));
    const std::uint64_t h_unit = (H.value / scale) % ell;
    return {(2 * (c_unit % ell) % ell) * h_unit % ell, false, ord_c, h_unit};
}

HilbertResidue hilbert_residue(const PadicDecomposition& dec, const CurveParams& params) {
    const std::uint64_t ell = params.ell();
    const int N = params.N();
    if (dec.ell != ell) fail(ErrorCode::InvalidArgument, "decomposition taken at a different prime");
    if (hilbert_conductor(dec, N).exponent == 0) fail(ErrorCode::NotRamified, "the Hilbert symbol is unramified");
    if (dec.b != 0) {
        const std::int64_t b = dec.b;
        if (b % as_signed(ell) == 0) fail(ErrorCode::InvalidArgument, "ord(Delta) divisible by ell is out of scope");
        std::int64_t l = (2 * b) % as_signed(ell);
        if ((N - 1) % 2 == 1) l = -l;
        l = ((l % as_signed(ell)) + as_signed(ell)) % as_signed(ell);
        return {static_cast<std::uint64_t>(l), true, 0, 0};
    }
    return hilbert_residue_unit(ell, N, dec.c.valuation(), mpz_mod_u64(dec.c.unit(), ell));
}

CongruenceReport fleck_congruence_check(std::uint64_t ell, int N, int s) {
    if (N < 1 || s < 0) fail(ErrorCode::InvalidArgument, "need N >= 1 and s >= 0");
    const mpz_class shift = mpz_pow(ell, static_cast<unsigned long>(s));
    const mpz_class top = shift * static_cast<unsigned long>(ell * N - N + 1) - 1;
    const unsigned long n = top.get_ui();
    CongruenceReport rep{0, 0, false, false};
    auto binom = [&](const mpz_class& k) {
        mpz_class c;
        mpz_bin_uiui(c.get_mpz_t(), n, k.get_ui());
        return c;
    };
    for (std::uint64_t i = 0; i <= ell * N - N; ++i) {
        mpz_class term = binom(shift * static_cast<unsigned long>(i));
        rep.sum_a += i % 2 == 0 ? term : mpz_class(-term);
    }
    for (int i = 0; i < N; ++i) {
        mpz_class term = binom(shift * static_cast<unsigned long>(ell) * static_cast<unsigned long>(i));
        rep.sum_b += i % 2 == 0 ? term : mpz_class(-term);
    }
    const mpz_class mod_a = mpz_pow(ell, ell * N), mod_b = mpz_pow(ell, N);
    mpz_class target = mpz_pow(ell, N - 1);
    if ((N - 1) % 2 == 1) target = -target;
    rep.a_holds = mpz_divisible_p(rep.sum_a.get_mpz_t(), mod_a.get_mpz_t()) != 0;
    mpz_class diff = rep.sum_b - target;
    rep.b_holds = mpz_divisible_p(diff.get_mpz_t(), mod_b.get_mpz_t()) != 0;
    if (!rep.a_holds || !rep.b_holds)
        fail(ErrorCode::CongruenceFailure, "Fleck congruence fails at ell=" + std::to_string(ell) +
                                               " N=" + std::to_string(N) + " s=" + std::to_string(s));
    return rep;
}

mpz_class trace_lemma_check(std::uint64_t ell, int N) {
    if (N < 1) fail(ErrorCode::InvalidArgument, "N must be positive");
    const std::uint64_t E = checked_pow(ell, static_cast<unsigned>(N - 1)) * (ell * N - N + 1) - 1;
    CycInt base = CycInt::from_integer(ell, N, 1) - CycInt::zeta_power(ell, N, 1);
    mpz_class tr = trace(base.pow(static_cast<unsigned long>(E)));
    const mpz_class lN = mpz_pow(ell, N);
    if (!mpz_divisible_p(tr.get_mpz_t(), lN.get_mpz_t()))
        fail(ErrorCode::CongruenceFailure, "trace not divisible by ell^N");
    mpz_class q = tr / lN;
    mpz_class target = mpz_pow(ell, N - 1);
    if ((N - 1) % 2 == 1) target = -target;
    mpz_class diff = q - target;
    if (!mpz_divisible_p(diff.get_mpz_t(), lN.get_mpz_t()))
        fail(ErrorCode::CongruenceFailure, "trace lemma fails at ell=" + std::to_string(ell) + " N=" + std::to_string(N));
    return q;
}

namespace {

mpz_class trace_by_cases(std::uint64_t ell, int N, std::uint64_t f, std::uint64_t i) {
    if (i % 2 == 1) return 0;
    const std::uint64_t m = (f - 1) * (i + 1);
    const std::uint64_t lo = checked_pow(ell, static_cast<unsigned>(N - 1)), hi = lo * ell;
    if (m < lo) return 0;
    auto class_sum = [&](std::uint64_t level) {
        const std::uint64_t v = (m - level * largest_odd_multiple(m, level)) / 2;
        return alt_binom_sum(m - 2, v, level);
    };
    mpz_class total = mpz_class(-2) * mpz_class(static_cast<unsigned long>(lo)) * class_sum(lo);
    if (m >= hi) total += mpz_class(2) * mpz_class(static_cast<unsigned long>(hi)) * class_sum(hi);
    return total;
}

}  // namespace

mpz_class trace_case_oracle(std::uint64_t ell, int N, std::uint64_t f, std::uint64_t i) {
    if (f < 2 || f % 2 != 0) fail(ErrorCode::InvalidArgument, "f must be even and at least 2");
    const std::uint64_t m = (f - 1) * (i + 1);
    if (m < 2) fail(ErrorCode::InvalidArgument, "need (f - 1)(i + 1) >= 2");
    const std::uint64_t order = checked_pow(ell, static_cast<unsigned>(N));
    CycInt z = CycInt::zeta_power(ell, N, 1), zi = CycInt::zeta_power(ell, N, as_signed(order - 1));
    CycInt x = (z - zi).pow(static_cast<unsigned long>(m - 1)) * (z + zi);
    mpz_class exact = trace(x);
    mpz_class formula = trace_by_cases(ell, N, f, i);
    if (exact != formula)
        fail(ErrorCode::OracleMismatch, "trace formulas disagree at ell=" + std::to_string(ell) + " N=" +
                                            std::to_string(N) + " f=" + std::to_string(f) + " i=" + std::to_string(i));
    return exact;
}

bool pq_expansion_check(std::uint64_t ell, int N, std::uint64_t n_max) {
    const std::int64_t order = as_signed(checked_pow(ell, static_cast<unsigned>(N)));
    auto zeta = [&](std::int64_t e) { return CycInt::zeta_power(ell, N, ((e % order) + order) % order); };
    CycInt pi = zeta(1) - zeta(-1);
    CycInt lhs = zeta(1) + zeta(-1);
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        lhs *= pi;
        CycInt rhs(ell, N);
        mpz_class c = 1;
        for (std::uint64_t k = 0; k < n; ++k) {
            const std::int64_t idx = as_signed(n + 1) - 2 * as_signed(k);
            CycInt term = n % 2 == 0 ? zeta(idx) + zeta(-idx) : zeta(idx) - zeta(-idx);
            term *= k % 2 == 0 ? c : mpz_class(-c);
            rhs += term;
            c *= static_cast<unsigned long>(n - 1 - k);
            mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(k + 1));
        }
        if (!(lhs == rhs)) return false;
    }
    return true;
}

bool lucas_case_check(std::uint64_t ell, int N, std::uint64_t k_max) {
    const std::uint64_t L = checked_pow(ell, static_cast<unsigned>(N));
    for (std::uint64_t k = 0; k <= k_max; ++k) {
        const std::uint64_t M = L + 2 * k - 2;
        std::vector<mpz_class> sums(L);
        mpz_class c = 1;
        for (std::uint64_t kp = 0; kp <= M; ++kp) {
            if (kp % 2 == 0) sums[kp % L] += c;
            else sums[kp % L] -= c;
            c *= static_cast<unsigned long>(M - kp);
            mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(kp + 1));
        }
        for (std::uint64_t v = 0; v < L; ++v) {
            const std::uint64_t expected = k == 0 ? (v + 1) % ell : 0;
            if (mpz_mod_u64(sums[v], ell) != expected) return false;
        }
    }
    return true;
}

}  // namespace fermat
