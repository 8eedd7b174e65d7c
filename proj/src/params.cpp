#include "fermat/params.hpp"

#include <algorithm>
#include <string>

#include "fermat/errors.hpp"

namespace fermat {

CurveParams CurveParams::validate(std::uint64_t ell, int N, std::uint64_t delta, std::uint64_t r,
                                  std::uint64_t s, std::uint64_t t) {
    if (ell == 2) fail(ErrorCode::NotOdd, "ell = 2");
    if (!is_prime(ell)) fail(ErrorCode::NotPrime, "ell = " + std::to_string(ell) + " is not prime");
    if (N < 1) fail(ErrorCode::InvalidArgument, "N must be at least 1");
    if (delta < 1) fail(ErrorCode::InvalidArgument, "delta must be at least 1");
    if (r < 1 || s < 1 || t < 1) fail(ErrorCode::InvalidArgument, "r, s, t must be positive");

    std::uint64_t power = checked_pow(ell, static_cast<unsigned>(N));
    if (power > (std::uint64_t{1} << 31)) fail(ErrorCode::InvalidArgument, "ell^N too large");
    if (r >= power || s >= power || t >= power || r + s + t != power)
        fail(ErrorCode::SumMismatch, "r + s + t != ell^N");
    if (r % ell == 0 || s % ell == 0 || t % ell == 0)
        fail(ErrorCode::DivisibleRST, "ell divides r*s*t");

    CurveParams out;
    out.ell_ = ell;
    out.N_ = N;
    out.delta_ = delta;
    out.r_ = r;
    out.s_ = s;
    out.t_ = t;
    out.ell_power_ = power;
    out.delta_factors_ = factorize(delta);
    for (const auto& [p, e] : out.delta_factors_) {
        if (static_cast<std::uint64_t>(e) >= power)
            fail(ErrorCode::PowerfulDelta, std::to_string(p) + "^(ell^N) divides delta");
        if (p == ell) out.delta_ell_valuation_ = e;
    }
    if (out.delta_ell_valuation_ % static_cast<int>(ell) == 0 && out.delta_ell_valuation_ != 0)
        fail(ErrorCode::BadDeltaValuation, "ell divides ord_ell(delta)");
    return out;
}

CurveParams CurveParams::swapped() const {
    CurveParams out = *this;
    std::swap(out.r_, out.s_);
    return out;
}

std::vector<QuotientLevelData> quotient_levels(const CurveParams& params) {
    std::vector<QuotientLevelData> out;
    std::uint64_t m = 1;
    for (int i = 1; i <= params.N(); ++i) {
        m *= params.ell();
        std::uint64_t rr = params.r() % m, ss = params.s() % m;
        QuotientLevelData d{i, 0, 0, 0};
        ensure(rr + ss != m, "r' + s' = ell^i cannot happen when ell does not divide r + s");
        if (rr + ss < m) {
            d.r = rr;
            d.s = ss;
        } else {
            d.r = m - rr;
            d.s = m - ss;
        }
        d.t = m - d.r - d.s;
        ensure(d.r >= 1 && d.s >= 1 && d.r + d.s < m, "quotient level out of range");
        out.push_back(d);
    }
    return out;
}

bool CMType::contains(std::uint64_t unit) const {
    return std::binary_search(members.begin(), members.end(), unit % modulus);
}

namespace {

CMType cm_type_from(std::uint64_t ell, int level, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    std::uint64_t m = checked_pow(ell, static_cast<unsigned>(level));
    CMType out{level, m, {}};
    for (std::uint64_t h = 1; h < m; ++h) {
        if (h % ell == 0) continue;
        std::uint64_t total = mulmod(a, h, m) + mulmod(b, h, m) + mulmod(c, h, m);
        if (total == m) out.members.push_back(inverse_mod(h, m));
    }
    std::sort(out.members.begin(), out.members.end());
    std::uint64_t units = m - m / ell;
    ensure(out.members.size() * 2 == units, "CM type must have half the units");
    for (std::uint64_t u : out.members)
        ensure(!out.contains(m - u), "CM type must not contain a unit together with its negative");
    return out;
}

void check_level(const CurveParams& params, int level) {
    if (level < 1 || level > params.N())
        fail(ErrorCode::InvalidArgument, "level must lie in 1..N");
}

}  // namespace

CMType cm_type(const CurveParams& params, int level) {
    check_level(params, level);
    const auto d = quotient_levels(params)[level - 1];
    return cm_type_from(params.ell(), level, d.r, d.s, d.t);
}

CMType cm_type_raw(const CurveParams& params, int level) {
    check_level(params, level);
    std::uint64_t m = checked_pow(params.ell(), static_cast<unsigned>(level));
    return cm_type_from(params.ell(), level, params.r() % m, params.s() % m, params.t() % m);
}

}  // namespace fermat
