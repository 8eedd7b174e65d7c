#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "fermat/arith.hpp"

namespace fermat {

// Field elements are indices sum c_i p^i of their coefficient vectors.
using Elem = std::uint32_t;

inline constexpr std::uint64_t kDefaultBudget = 2'000'000;

class DiscreteLogTable;

class FiniteField {
public:
    static constexpr int kMaxDegree = 32;

    FiniteField(std::uint64_t p, int degree);
    ~FiniteField();
    FiniteField(const FiniteField&) = delete;
    FiniteField& operator=(const FiniteField&) = delete;

    std::uint64_t p() const { return p_; }
    int degree() const { return n_; }
    std::uint64_t order() const { return q_; }
    // Monic, lowest coefficient first; the prime field uses x.
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }
    Elem generator() const { return generator_; }
    const Factorization& group_order_factors() const { return group_factors_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_int(std::int64_t a) const;
    Elem from_coefficients(const std::vector<std::uint32_t>& c) const;
    std::vector<std::uint32_t> coefficients(Elem x) const;

    Elem add(Elem a, Elem b) const {
        if (n_ == 1) {
            std::uint64_t s = std::uint64_t{a} + b;
            return static_cast<Elem>(s >= p_ ? s - p_ : s);
        }
        return add_ext(a, b);
    }
    Elem neg(Elem a) const {
        if (n_ == 1) return a == 0 ? 0 : static_cast<Elem>(p_ - a);
        return neg_ext(a);
    }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const { return n_ == 1 ? red_.mul(a, b) : mul_ext(a, b); }
    Elem pow(Elem a, std::uint64_t e) const;
    Elem inv(Elem a) const;

    // Absolute trace to F_p.
    std::uint32_t trace(Elem a) const;
    bool is_primitive(Elem a) const;

    // Built on first use; throws BudgetExceeded when q > budget.
    const DiscreteLogTable& log_table(std::uint64_t budget = kDefaultBudget) const;

private:
    struct Digits {
        std::uint32_t c[kMaxDegree];
    };
    void decode(Elem x, Digits& d) const;
    Elem encode(const Digits& d) const;
    void mul_digits(const Digits& a, const Digits& b, Digits& out) const;
    Elem add_ext(Elem a, Elem b) const;
    Elem neg_ext(Elem a) const;
    Elem mul_ext(Elem a, Elem b) const;

    std::uint64_t p_;
    int n_;
    std::uint64_t q_;
    Reducer red_;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint32_t> powers_of_p_;
    Elem generator_ = 0;
    Factorization group_factors_;

    mutable std::once_flag log_once_;
    mutable std::unique_ptr<DiscreteLogTable> log_table_;
};

using FieldPtr = std::shared_ptr<const FiniteField>;

// Calls fn(k, base^k) for 0 <= k < count in an unspecified order. Several
// independent multiplication chains run side by side.
template <class Fn>
void for_each_power(const FiniteField& F, Elem base, std::uint64_t count, Fn&& fn) {
    constexpr std::uint64_t kLanes = 4;
    const std::uint64_t seg = (count + kLanes - 1) / kLanes;
    Elem x[kLanes];
    for (std::uint64_t l = 0; l < kLanes; ++l) x[l] = F.pow(base, l * seg);
    std::uint64_t full = count / seg;  // lanes that run the whole segment
    if (seg == 0) return;
    for (std::uint64_t k = 0; k < seg; ++k) {
        for (std::uint64_t l = 0; l < kLanes; ++l) {
            if (l >= full && l * seg + k >= count) continue;
            fn(l * seg + k, x[l]);
            x[l] = F.mul(x[l], base);
        }
    }
}

FieldPtr build_field(std::uint64_t p, int degree);

class DiscreteLogTable {
public:
    explicit DiscreteLogTable(const FiniteField& field);
    // Log base the field generator, x != 0.
    std::uint32_t log(Elem x) const { return log_[x]; }
    Elem exp(std::uint64_t k) const { return exp_[k % exp_.size()]; }

private:
    std::vector<std::uint32_t> log_;
    std::vector<Elem> exp_;
};

struct SplittingData {
    std::uint64_t p, ell;
    int f;    // order of p mod ell
    int e_p;  // ord_ell(p^f - 1)
    std::vector<int> n_t;  // n_t[t-1] for 1 <= t <= N
    // Order of p modulo ell^t.
    std::uint64_t residue_degree(int t) const;
};

SplittingData splitting_data(std::uint64_t p, std::uint64_t ell, int N);

// chi(g) = zeta_{ell^t}^{log_image} for the field generator g.
class MultChar {
public:
    MultChar(FieldPtr field, std::uint64_t ell, int level, std::uint64_t log_image);

    const FieldPtr& field() const { return field_; }
    std::uint64_t ell() const { return ell_; }
    int level() const { return level_; }
    std::uint64_t modulus() const { return modulus_; }
    std::uint64_t log_image() const { return log_image_; }

    // Exponent e with chi(x) = zeta_{ell^t}^e via Pohlig-Hellman in the ell-part.
    std::uint64_t eval(Elem x) const;
    // Same value through the field's full log table.
    std::uint64_t eval_by_table(Elem x, std::uint64_t budget = kDefaultBudget) const;

    MultChar power(std::int64_t k) const;
    bool is_trivial() const { return log_image_ == 0; }
    std::uint64_t order() const;

private:
    FieldPtr field_;
    std::uint64_t ell_;
    int level_;
    std::uint64_t modulus_;
    std::uint64_t log_image_;
    std::uint64_t cofactor_;
    Elem subgroup_gen_inv_;
    std::vector<Elem> order_ell_powers_;
};

class Embedding {
public:
    Embedding(FieldPtr sub, FieldPtr sup);

    const FieldPtr& sub() const { return sub_; }
    const FieldPtr& sup() const { return sup_; }
    Elem root() const { return root_; }
    Elem operator()(Elem x) const { return image_[x]; }
    // Inverse on the image; throws InvalidArgument outside it.
    Elem preimage(Elem y) const;
    // Norm from sup down to sub, expressed in sub.
    Elem norm(Elem y) const;

private:
    FieldPtr sub_, sup_;
    Elem root_ = 0;
    std::vector<Elem> image_;
    std::unordered_map<Elem, Elem> preimage_;
};

Embedding embed(FieldPtr sub, FieldPtr sup);

// chi composed with the norm from emb.sup() to emb.sub().
MultChar lift_through_norm(const MultChar& chi, const Embedding& emb);

}  // namespace fermat
