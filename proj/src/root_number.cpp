#include "fermat/root_number.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <thread>
#include <tuple>

#include "fermat/arith.hpp"
#include "fermat/errors.hpp"
#include "fermat/fleck.hpp"

namespace fermat {

namespace {

std::uint64_t cached_h_unit(std::uint64_t ell, int N, int ord_c) {
    static std::mutex mu;
    static std::map<std::tuple<std::uint64_t, int, int>, std::uint64_t> cache;
    const auto key = std::make_tuple(ell, N, ord_c);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const std::uint64_t h = hilbert_residue_unit(ell, N, ord_c, 1).h_unit;
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, h);
    return h;
}

std::uint64_t rst_mod(const CurveParams& params) {
    const std::uint64_t ell = params.ell();
    return (params.r() % ell) * (params.s() % ell) % ell * (params.t() % ell) % ell;
}

std::int64_t signed_residue(std::uint64_t x, int sign, std::uint64_t ell) {
    return sign > 0 ? static_cast<std::int64_t>(x % ell) : -static_cast<std::int64_t>(x % ell);
}

void run_parallel(std::size_t count, int threads, const std::function<void(std::size_t)>& job) {
    threads = std::max(1, std::min<int>(threads, static_cast<int>(count)));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) job(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) job(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace

int Mu4::to_sign() const {
    ensure(is_real(), "non-real root number");
    return exponent_ == 0 ? 1 : -1;
}

std::string Mu4::to_string() const {
    static const char* names[] = {"1", "i", "-1", "-i"};
    return names[exponent_];
}

int legendre(std::int64_t a, std::uint64_t ell) {
    const std::int64_t m = static_cast<std::int64_t>(ell);
    const std::uint64_t x = static_cast<std::uint64_t>(((a % m) + m) % m);
    if (x == 0) fail(ErrorCode::NotCoprime, "ell divides the Legendre symbol argument");
    return powmod(x, (ell - 1) / 2, ell) == 1 ? 1 : -1;
}

std::int64_t half_totient(const CurveParams& params) {
    return static_cast<std::int64_t>(params.ell_power() / params.ell() * (params.ell() - 1) / 2);
}

LocalRootNumbers local_root_numbers(const CurveParams& params) {
    LocalRootNumbers out{Mu4(-half_totient(params)), {}};
    for (const auto& [p, e] : params.delta_factors()) {
        if (p == params.ell()) continue;
        out.finite[p] = legendre(static_cast<std::int64_t>(p), params.ell());
    }
    return out;
}

const char* to_string(WellBranch b) {
    switch (b) {
        case WellBranch::DeltaDivisible: return "ord_ell(delta) != 0";
        case WellBranch::Ramified: return "1 <= ord_c <= N";
        case WellBranch::Unramified: return "ord_c > N";
    }
    return "?";
}

WellResult w_ell(const CurveParams& params, int precision) {
    const std::uint64_t ell = params.ell();
    const int N = params.N();
    DeltaPrimeData data = delta_prime_data(params, precision);
    const Mu4 i_part(half_totient(params));
    WellResult out{WellBranch::Unramified, 1, i_part, i_part, data, std::nullopt};
    if (params.delta_ell_valuation() != 0) {
        out.branch = WellBranch::DeltaDivisible;
        const std::uint64_t x = rst_mod(params) * (static_cast<std::uint64_t>(params.delta_ell_valuation()) % ell) % ell *
                                ((params.r() + params.s()) % ell) % ell;
        out.sign = -legendre(static_cast<std::int64_t>(x), ell);
    } else if (data.ord_c_exact && data.ord_c <= N) {
        out.branch = WellBranch::Ramified;
        const std::uint64_t h = cached_h_unit(ell, N, static_cast<int>(data.ord_c));
        const std::uint64_t J = 2 * data.c_unit % ell * h % ell;
        out.j_residue = J;
        const std::uint64_t x = 2 * rst_mod(params) % ell * J % ell;
        out.sign = -legendre(signed_residue(x, N % 2 == 0 ? 1 : -1, ell), ell);
    } else {
        out.sign = legendre(2, ell);
    }
    out.value = Mu4::sign(out.sign) * i_part;
    return out;
}

ConjecturedWell w_ell_conjectured(const CurveParams& params, int precision) {
    const std::uint64_t ell = params.ell();
    const int N = params.N();
    const Mu4 i_part(half_totient(params));
    ConjecturedWell out{4, 1, i_part};
    if (params.delta_ell_valuation() != 0) {
        const std::uint64_t x = rst_mod(params) * (static_cast<std::uint64_t>(params.delta_ell_valuation()) % ell) % ell *
                                ((params.r() + params.s()) % ell) % ell;
        out.branch = 1;
        out.sign = -legendre(static_cast<std::int64_t>(x), ell);
    } else {
        DeltaPrimeData data = delta_prime_data(params, precision);
        ensure(data.has_v_ell, "v_ell missing for a unit delta");
        const std::uint64_t x = rst_mod(params) * data.u_prime % ell;
        if (data.v_ell_exact && data.v_ell < N) {
            out.branch = 2;
            out.sign = -legendre(signed_residue(x, N % 2 == 0 ? 1 : -1, ell), ell);
        } else if (data.v_ell_exact && data.v_ell == N) {
            out.branch = 3;
            out.sign = -legendre(signed_residue(x, N % 2 == 0 ? -1 : 1, ell), ell);
        } else {
            out.sign = legendre(2, ell);
        }
    }
    out.value = Mu4::sign(out.sign) * i_part;
    return out;
}

RootNumberReport global_root_number(const CurveParams& params, int precision) {
    LocalRootNumbers local = local_root_numbers(params);
    WellResult ell_factor = w_ell(params, precision);
    ensure((local.w_infinity.exponent() + ell_factor.i_part.exponent()) % 4 == 0, "i-powers do not cancel");
    Mu4 total = local.w_infinity * ell_factor.value;
    for (const auto& [p, sign] : local.finite) total = total * Mu4::sign(sign);
    return {params, local, ell_factor, total.to_sign()};
}

std::map<std::uint64_t, mpz_class> ConductorReport::exponents() const {
    std::map<std::uint64_t, mpz_class> exps;
    if (ell_exponent != 0) exps[ell] = ell_exponent;
    for (const auto& pc : primes)
        if (pc.exponent != 0) exps[pc.p] = pc.exponent;
    return exps;
}

std::string ConductorReport::factored() const {
    std::string out;
    for (const auto& [p, e] : exponents()) {
        if (!out.empty()) out += " * ";
        out += std::to_string(p) + "^" + e.get_str();
    }
    return out.empty() ? "1" : out;
}

PrimeConductor prime_conductor_verbatim(const CurveParams& params, std::uint64_t p) {
    if (p == params.ell() || !is_prime(p)) fail(ErrorCode::InvalidArgument, "need a prime p != ell");
    const int N = params.N();
    const std::uint64_t ell = params.ell();
    const mpz_class scale = mpz_pow(ell, N - 1) * static_cast<unsigned long>(ell - 1);
    PrimeConductor out{p, 0, 0, 1};
    if (params.delta() % p == 0) {
        out.f_p = mpz_pow(p, N - 1) * static_cast<unsigned long>(p + 1);
    } else {
        const mpz_class m = mpz_pow(p, N + 1);
        auto powm = [&](const mpz_class& base, std::uint64_t e) {
            mpz_class b = base % m, r, ez(static_cast<unsigned long>(e));
            if (b < 0) b += m;
            mpz_powm(r.get_mpz_t(), b.get_mpz_t(), ez.get_mpz_t(), m.get_mpz_t());
            return r;
        };
        const mpz_class tp = mpz_class(static_cast<unsigned long>(params.t())) - mpz_pow(p, N);
        if (params.r() % p == 0 || params.s() % p == 0 || mpz_mod_u64(tp, p) == 0)
            fail(ErrorCode::InvalidArgument, "the displayed f_p has no branch when p | r s (t - p^N)");
        mpz_class A = powm(static_cast<unsigned long>(params.r()), params.r()) * powm(static_cast<unsigned long>(params.s()), params.s()) % m;
        A = A * powm(tp, params.t()) % m;
        A = A * powm(static_cast<unsigned long>(params.delta()), params.r() + params.s()) % m;
        mpz_class V = (powm(A, p - 1) - 1) % m;
        if (V < 0) V += m;
        if (V == 0) {
            out.branch = 3;
            out.f_p = 1;
        } else {
            const long v = valuation(V, p);
            out.branch = 2;
            out.f_p = 2 * mpz_pow(p, static_cast<unsigned long>(N - v));
        }
    }
    out.exponent = scale * out.f_p;
    return out;
}

ConductorReport global_conductor(const CurveParams& params, int precision) {
    const std::uint64_t ell = params.ell();
    const int N = params.N();
    ConductorReport out;
    out.ell = ell;
    out.disc_exponent = mpz_pow(ell, N - 1) * static_cast<unsigned long>(N * ell - N - 1);
    if (params.delta_ell_valuation() != 0) {
        out.f_ell = mpz_pow(ell, N - 1) * static_cast<unsigned long>(ell + 1);
    } else {
        DeltaPrimeData data = delta_prime_data(params, precision);
        if (data.ord_c_exact && data.ord_c <= N) out.f_ell = 2 * mpz_pow(ell, static_cast<unsigned long>(N - data.ord_c));
        else out.f_ell = 1;
    }
    out.ell_exponent = out.disc_exponent + out.f_ell;
    for (const auto& [p, e] : params.delta_factors()) {
        if (p == ell) continue;
        PrimeConductor pc = prime_conductor_verbatim(params, p);
        if (pc.branch != 1)
            out.warnings.push_back("f_" + std::to_string(p) + " took branch " + std::to_string(pc.branch) +
                                   ", which is unreachable for p | delta");
        out.primes.push_back(pc);
    }
    return out;
}

std::size_t ConjectureReport::violations() const {
    std::size_t n = 0;
    for (const auto& a : addends) n += a.passed ? 0 : 1;
    for (const auto& s : samples) n += s.passed ? 0 : 1;
    return n;
}

AddendCheck check_addends(std::uint64_t ell, int N, int ord_c) {
    if (ord_c < 1 || ord_c > N) fail(ErrorCode::InvalidArgument, "need 1 <= ord_c <= N");
    const int e = N - ord_c;
    const std::uint64_t scale = checked_pow(ell, static_cast<unsigned>(e));
    const FleckResidues res = j_fleck_mod(ell, N, 2 * scale, e + 1);
    const std::uint64_t m = res.modulus;
    AddendCheck out{ell, N, ord_c, true, std::nullopt, std::nullopt, 0, ""};
    auto reject = [&](const std::string& why) {
        if (out.passed) out.witness = why;
        out.passed = false;
    };
    const std::vector<std::uint64_t>* tables[2] = {&res.U0, &res.U1};
    for (int u = 0; u < 2; ++u) {
        const auto& U = *tables[u];
        const std::string name = "U^(" + std::to_string(u) + ")_";
        if (ord_c < N) {
            const std::uint64_t target = m - scale;
            std::optional<long> hit;
            for (std::size_t k = 0; k < U.size(); ++k) {
                if (U[k] == target) {
                    if (hit) reject(name + std::to_string(k) + " is a second distinguished index");
                    else hit = static_cast<long>(k);
                } else if (U[k] != 0) {
                    reject(name + std::to_string(k) + " = " + std::to_string(U[k]) + " mod " + std::to_string(m));
                }
            }
            if (!hit) reject(name + "k never equals -ell^(N-ord_c)");
            (u == 0 ? out.r0 : out.r1) = hit;
        } else {
            for (std::size_t k = 0; k < U.size(); ++k) {
                const std::uint64_t want = k == 0 ? 1 : 0;
                if (U[k] != want) reject(name + std::to_string(k) + " = " + std::to_string(U[k]) + " mod " + std::to_string(m));
            }
        }
    }
    for (std::size_t k = 0; k < res.Uprime.size(); ++k)
        if (res.Uprime[k] != 0) reject("U'_" + std::to_string(k) + " = " + std::to_string(res.Uprime[k]) + " mod " + std::to_string(m));
    if (res.value % scale != 0) {
        reject("H not divisible by ell^(N-ord_c)");
    } else {
        out.h_unit = (res.value / scale) % ell;
        const std::uint64_t want = ord_c < N ? 1 : ell - 1;
        if (out.h_unit != want) reject("H / ell^(N-ord_c) = " + std::to_string(out.h_unit) + " mod ell");
    }
    return out;
}

ConjectureReport verify_conjecture(std::uint64_t ell_max, int N, int ord_lo, int ord_hi, int samples_per_ell, int threads) {
    if (N < 1 || ord_lo < 1 || ord_hi > N || ord_lo > ord_hi) fail(ErrorCode::InvalidArgument, "need 1 <= ord_lo <= ord_hi <= N");
    std::vector<std::uint64_t> primes;
    for (std::uint64_t ell = 3; ell <= ell_max; ell += 2)
        if (is_prime(ell)) primes.push_back(ell);

    ConjectureReport report;
    std::vector<std::pair<std::uint64_t, int>> points;
    for (std::uint64_t ell : primes)
        for (int o = ord_lo; o <= ord_hi; ++o) points.emplace_back(ell, o);
    report.addends.resize(points.size());
    run_parallel(points.size(), threads,
                 [&](std::size_t i) { report.addends[i] = check_addends(points[i].first, N, points[i].second); });

    std::vector<CurveParams> sampled;
    for (std::uint64_t ell : primes) {
        const std::uint64_t power = checked_pow(ell, static_cast<unsigned>(N));
        std::mt19937_64 rng(ell * 1000003 + static_cast<std::uint64_t>(N));
        int have = 0;
        for (int attempt = 0; have < samples_per_ell && attempt < 100 * samples_per_ell; ++attempt) {
            const std::uint64_t r = 1 + rng() % (power - 2);
            const std::uint64_t s = 1 + rng() % (power - 1 - r);
            const std::uint64_t t = power - r - s;
            std::uint64_t delta = 1 + rng() % 2000;
            if (attempt % 4 == 0) delta *= ell;
            try {
                sampled.push_back(CurveParams::validate(ell, N, delta, r, s, t));
                ++have;
            } catch (const Error&) {
            }
        }
    }
    report.samples.resize(sampled.size());
    const int precision = default_precision(N);
    run_parallel(sampled.size(), threads, [&](std::size_t i) {
        const CurveParams& p = sampled[i];
        const int theorem = w_ell(p, precision).sign;
        const int conj = w_ell_conjectured(p, precision).sign;
        report.samples[i] = {p.ell(), p.N(), p.delta(), p.r(), p.s(), p.t(), theorem, conj, theorem == conj};
    });
    return report;
}

}  // namespace fermat
