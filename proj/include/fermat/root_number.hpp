#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "fermat/padic.hpp"
#include "fermat/params.hpp"

namespace fermat {

// i^exponent.
class Mu4 {
public:
    explicit Mu4(std::int64_t exponent = 0) : exponent_(static_cast<int>(((exponent % 4) + 4) % 4)) {}
    static Mu4 sign(int s) { return Mu4(s == 1 ? 0 : 2); }

    int exponent() const { return exponent_; }
    bool is_real() const { return exponent_ % 2 == 0; }
    // Throws InternalAssertion unless real.
    int to_sign() const;
    std::string to_string() const;

    Mu4 operator*(const Mu4& o) const { return Mu4(exponent_ + o.exponent_); }
    bool operator==(const Mu4&) const = default;

private:
    int exponent_;
};

// Euler-criterion value of (a / ell); throws NotCoprime when ell | a.
int legendre(std::int64_t a, std::uint64_t ell);

// i-exponent ell^(N-1)(ell-1)/2 shared by W_infinity and W_ell.
std::int64_t half_totient(const CurveParams& params);

struct LocalRootNumbers {
    Mu4 w_infinity;
    std::map<std::uint64_t, int> finite;  // p | delta, p != ell
};

LocalRootNumbers local_root_numbers(const CurveParams& params);

enum class WellBranch { DeltaDivisible = 1, Ramified = 2, Unramified = 3 };
const char* to_string(WellBranch b);

struct WellResult {
    WellBranch branch;
    int sign;    // the +-1 factor
    Mu4 i_part;  // i^(ell^(N-1)(ell-1)/2)
    Mu4 value;
    DeltaPrimeData data;
    std::optional<std::uint64_t> j_residue;  // J mod ell, branch 2 only
};

WellResult w_ell(const CurveParams& params, int precision);

struct ConjecturedWell {
    int branch;  // 1: ord(delta) != 0; 2: v < N; 3: v = N; 4: v > N
    int sign;
    Mu4 value;
};

ConjecturedWell w_ell_conjectured(const CurveParams& params, int precision);

struct RootNumberReport {
    CurveParams params;
    LocalRootNumbers local;
    WellResult ell_factor;
    int W;
};

RootNumberReport global_root_number(const CurveParams& params, int precision);

struct PrimeConductor {
    std::uint64_t p;
    mpz_class f_p;
    mpz_class exponent;  // ell^(N-1)(ell-1) f_p
    int branch;          // 1: ord_p(delta) != 0; 2, 3: branches unreachable for p | delta
};

struct ConductorReport {
    std::uint64_t ell;
    mpz_class disc_exponent;  // ell^(N-1)(N ell - N - 1)
    mpz_class f_ell;
    mpz_class ell_exponent;
    std::vector<PrimeConductor> primes;  // p | delta, p != ell
    std::vector<std::string> warnings;

    // Exponent of every prime in the conductor, ell included.
    std::map<std::uint64_t, mpz_class> exponents() const;

    // "2^36 * 3^10", primes ascending.
    std::string factored() const;
};

// f_p as displayed for an arbitrary prime p != ell (branches 2 and 3 only arise for p not dividing delta).
PrimeConductor prime_conductor_verbatim(const CurveParams& params, std::uint64_t p);
ConductorReport global_conductor(const CurveParams& params, int precision);

struct AddendCheck {
    std::uint64_t ell;
    int N;
    int ord_c;
    bool passed;
    std::optional<long> r0, r1;  // distinguished k for U^(0), U^(1) when ord_c < N
    std::uint64_t h_unit;        // H / ell^(N - ord_c) mod ell
    std::string witness;         // first failing condition
};

struct SampleCheck {
    std::uint64_t ell;
    int N;
    std::uint64_t delta, r, s, t;
    int theorem_sign, conjectured_sign;
    bool passed;
};

struct ConjectureReport {
    std::vector<AddendCheck> addends;
    std::vector<SampleCheck> samples;
    std::size_t violations() const;
};

// Addend congruences for every odd prime ell <= ell_max and ord_c in [ord_lo, ord_hi], plus
// w_ell = w_ell_conjectured on samples_per_ell deterministic curve parameters per ell.
ConjectureReport verify_conjecture(std::uint64_t ell_max, int N, int ord_lo, int ord_hi, int samples_per_ell,
                                   int threads = 1);

AddendCheck check_addends(std::uint64_t ell, int N, int ord_c);

}  // namespace fermat
