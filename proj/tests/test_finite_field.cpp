#include <doctest.h>

#include <random>

#include "fermat/errors.hpp"
#include "fermat/finite_field.hpp"

using namespace fermat;

TEST_CASE("deterministic field construction") {
    struct Expected {
        std::uint64_t p;
        int n;
        std::vector<std::uint32_t> modulus;
        Elem generator;
    };
    // Brute-force search over all monic polynomials and all elements.
    const Expected table[] = {
        {2, 2, {1, 1, 1}, 2},    {2, 3, {1, 1, 0, 1}, 2}, {2, 4, {1, 1, 0, 0, 1}, 2},
        {3, 2, {1, 0, 1}, 4},    {3, 3, {1, 2, 0, 1}, 3}, {5, 2, {2, 0, 1}, 6},
        {7, 2, {1, 0, 1}, 9},    {7, 1, {0, 1}, 3},       {11, 1, {0, 1}, 2},
        {2, 1, {0, 1}, 1},       {3, 1, {0, 1}, 2},
    };
    for (const auto& e : table) {
        auto F = build_field(e.p, e.n);
        CHECK(F->modulus() == e.modulus);
        CHECK(F->generator() == e.generator);
        CHECK(F->is_primitive(F->generator()));
    }
    auto F25 = build_field(5, 2);
    CHECK(F25->order() == 25);
    CHECK(F25->pow(F25->generator(), 24) == 1);
    CHECK(F25->pow(F25->generator(), 12) != 1);
    CHECK(F25->pow(F25->generator(), 8) != 1);
}

TEST_CASE("field axioms on random elements") {
    std::mt19937_64 rng(3);
    for (auto [p, n] : {std::pair<std::uint64_t, int>{2, 5}, {3, 4}, {7, 3}, {101, 1}, {13, 2}}) {
        auto F = build_field(p, n);
        for (int i = 0; i < 300; ++i) {
            Elem a = static_cast<Elem>(rng() % F->order()), b = static_cast<Elem>(rng() % F->order()),
                 c = static_cast<Elem>(rng() % F->order());
            CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
            CHECK(F->mul(F->mul(a, b), c) == F->mul(a, F->mul(b, c)));
            CHECK(F->add(a, F->neg(a)) == 0);
            CHECK(F->sub(F->add(a, b), b) == a);
            if (a) CHECK(F->mul(a, F->inv(a)) == 1);
            CHECK(F->pow(a, F->order()) == a);
        }
    }
    CHECK_THROWS_AS(build_field(4, 1), Error);
    CHECK_THROWS_AS(build_field(7, 1)->inv(0), Error);
}

TEST_CASE("splitting data") {
    auto a = splitting_data(3, 11, 3);
    CHECK(a.f == 5);
    CHECK(a.e_p == 2);
    CHECK(a.n_t == std::vector<int>{0, 0, 1});

    auto b = splitting_data(2, 3, 2);
    CHECK(b.f == 2);
    CHECK(b.e_p == 1);
    CHECK(b.n_t == std::vector<int>{0, 1});

    auto c = splitting_data(7, 3, 2);
    CHECK(c.f == 1);
    CHECK(c.e_p == 1);
    CHECK(c.n_t == std::vector<int>{0, 1});

    CHECK_THROWS_AS(splitting_data(5, 5, 1), Error);

    // p^(ell^{N_t} f) = 1 mod ell^t and the order is exactly that.
    for (std::uint64_t ell : {3, 5, 7, 11}) {
        for (std::uint64_t p : {2, 3, 5, 7, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}) {
            if (p == ell) continue;
            auto sd = splitting_data(p, ell, 3);
            std::uint64_t m = 1;
            for (int t = 1; t <= 3; ++t) {
                m *= ell;
                CHECK(multiplicative_order(p % m, m) == sd.residue_degree(t));
            }
        }
    }
}

TEST_CASE("character evaluation") {
    auto F = build_field(19, 1);
    MultChar chi(F, 3, 2, 1);
    CHECK(chi.eval(1) == 0);
    CHECK(chi.eval(F->generator()) == 1);
    CHECK(chi.order() == 9);
    CHECK(chi.power(3).order() == 3);
    CHECK_THROWS_AS(chi.eval(0), Error);
    CHECK_THROWS_AS(MultChar(F, 5, 1, 1), Error);

    std::mt19937_64 rng(17);
    for (auto [p, n, ell, t] : {std::tuple<std::uint64_t, int, std::uint64_t, int>{19, 1, 3, 2},
                                {2, 6, 3, 2},
                                {3, 4, 5, 1},
                                {7, 3, 19, 1},
                                {5, 4, 13, 1},
                                {163, 1, 3, 4}}) {
        auto G = build_field(p, n);
        for (std::uint64_t a : {1, 2, 4}) {
            MultChar c(G, ell, t, a);
            CHECK(c.eval(G->generator()) == a % c.modulus());
            for (int i = 0; i < 200; ++i) {
                Elem x = 1 + static_cast<Elem>(rng() % (G->order() - 1));
                Elem y = 1 + static_cast<Elem>(rng() % (G->order() - 1));
                CHECK((c.eval(x) + c.eval(y)) % c.modulus() == c.eval(G->mul(x, y)));
                CHECK(c.eval(x) == c.eval_by_table(x));
            }
        }
    }
}

TEST_CASE("subfield embeddings and norms") {
    auto F4 = build_field(2, 2), F16 = build_field(2, 4);
    auto emb = embed(F4, F16);
    Elem image_of_x = emb(F4->from_coefficients({0, 1}));
    CHECK(F16->pow(image_of_x, 3) == 1);
    CHECK(image_of_x != 1);

    auto F7 = build_field(7, 1);
    auto id = embed(F7, F7);
    for (Elem x = 0; x < 7; ++x) CHECK(id(x) == x);

    CHECK_THROWS_AS(embed(build_field(2, 3), F16), Error);
    CHECK_THROWS_AS(embed(build_field(3, 1), F16), Error);

    std::mt19937_64 rng(23);
    for (auto [p, a, b] : {std::tuple<std::uint64_t, int, int>{2, 2, 6}, {3, 1, 4}, {5, 2, 4}, {3, 2, 4}, {2, 3, 6}}) {
        auto sub = build_field(p, a), sup = build_field(p, b);
        auto e = embed(sub, sup);
        for (int i = 0; i < 100; ++i) {
            Elem x = static_cast<Elem>(rng() % sub->order()), y = static_cast<Elem>(rng() % sub->order());
            CHECK(e(sub->add(x, y)) == sup->add(e(x), e(y)));
            CHECK(e(sub->mul(x, y)) == sup->mul(e(x), e(y)));
            // Norm of an embedded element is its power by the degree.
            CHECK(e.norm(e(x)) == sub->pow(x, static_cast<std::uint64_t>(b / a)));
            Elem z = 1 + static_cast<Elem>(rng() % (sup->order() - 1));
            Elem w = 1 + static_cast<Elem>(rng() % (sup->order() - 1));
            CHECK(e.norm(sup->mul(z, w)) == sub->mul(e.norm(z), e.norm(w)));
        }
    }
}

TEST_CASE("characters composed with the norm keep their order") {
    for (auto [p, a, k, ell] : {std::tuple<std::uint64_t, int, int, std::uint64_t>{7, 1, 2, 3},
                                {2, 2, 2, 3},
                                {2, 2, 3, 3},
                                {11, 1, 3, 5},
                                {3, 4, 2, 5}}) {
        auto sub = build_field(p, a), sup = build_field(p, a * k);
        auto emb = embed(sub, sup);
        MultChar chi(sub, ell, 1, 1);
        MultChar lifted = lift_through_norm(chi, emb);
        CHECK(lifted.order() == chi.order());
        std::mt19937_64 rng(p * 31 + static_cast<std::uint64_t>(k));
        for (int i = 0; i < 100; ++i) {
            Elem z = 1 + static_cast<Elem>(rng() % (sup->order() - 1));
            CHECK(lifted.eval(z) == chi.eval(emb.norm(z)));
        }
    }
}
