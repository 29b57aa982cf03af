#include <catch2/catch_amalgamated.hpp>

#include <g2crt/ff.hpp>
#include <g2crt/nt.hpp>
#include <g2crt/poly.hpp>

using namespace g2crt;

TEST_CASE("make_ext_field determinism and validation") {
    auto F431 = make_ext_field(43, 1);
    CHECK(F431->m == 1);
    auto F434 = make_ext_field(43, 4);
    CHECK(F434->m == 4);
    auto again = make_ext_field(43, 4);
    CHECK(F434->mod_ == again->mod_);

    CHECK_THROWS(make_ext_field(2, 2));
    CHECK_THROWS(make_ext_field(3, 2));
    CHECK_THROWS(make_ext_field(5, 1));
    CHECK_THROWS(make_ext_field(45, 1));  // composite
}

TEST_CASE("deterministic modulus is irreducible and minimal") {
    // For F_7^2 check against an exhaustive scan: modulus must be the monic
    // irreducible with the smallest (c1, c0) value c0 + 7 c1.
    auto F = make_ext_field(7, 2);
    Fp fp(7);
    std::uint64_t best = ~0ull;
    for (std::uint64_t c1 = 0; c1 < 7; ++c1)
        for (std::uint64_t c0 = 0; c0 < 7; ++c0) {
            // x^2 + c1 x + c0 reducible iff discriminant c1^2 - 4 c0 is a square.
            std::uint64_t disc = fp.sub(fp.mul(c1, c1), fp.mul(4, c0));
            if (fp.legendre(disc) == -1) best = std::min(best, c0 + 7 * c1);
        }
    CHECK(F->mod_[0] + 7 * F->mod_[1] == best);
}

TEST_CASE("field axioms on random elements") {
    std::mt19937_64 rng(12345);
    for (auto [p, m] : {std::pair<std::uint64_t, unsigned>{43, 1}, {43, 4}, {7, 2}, {11, 3}}) {
        auto Fp_ = make_ext_field(p, m);
        const Field& F = *Fp_;
        for (int it = 0; it < 1000; ++it) {
            FElem a = F.random_element(rng), b = F.random_element(rng), c = F.random_element(rng);
            CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
            CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
            if (!F.is_zero(a)) CHECK(F.mul(a, F.inv(a)) == F.one());
        }
    }
}

TEST_CASE("frobenius is a ring map fixing exactly F_p") {
    std::mt19937_64 rng(99);
    auto Fp_ = make_ext_field(7, 3);
    const Field& F = *Fp_;
    int fixed = 0;
    for (Int i = 0; i < F.q(); ++i) {
        FElem a = F.element_at(i);
        if (F.frobenius(a) == a) ++fixed;
    }
    CHECK(fixed == 7);
    for (int it = 0; it < 200; ++it) {
        FElem a = F.random_element(rng), b = F.random_element(rng);
        CHECK(F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b)));
        CHECK(F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b)));
    }
}

TEST_CASE("sqrt: determinism, counts, squares") {
    for (auto [p, m] : {std::pair<std::uint64_t, unsigned>{7, 2}, {43, 1}, {47, 1}}) {
        auto Fp_ = make_ext_field(p, m);
        const Field& F = *Fp_;
        Int q = F.q();
        int with_root = 0;
        for (Int i = 0; i < q; ++i) {
            FElem a = F.element_at(i);
            auto r = F.sqrt(a);
            if (r) {
                ++with_root;
                CHECK(F.mul(*r, *r) == a);
                // Deterministic pick: lexicographically smaller of +-r.
                CHECK(*r <= F.neg(*r));
            }
        }
        Int expect = (q + 1) / 2;
        CHECK(Int(with_root) == expect);
    }
    // Large-field path (Tonelli-Shanks branch, 43^4 = 1 mod 4).
    auto F4 = make_ext_field(43, 4);
    std::mt19937_64 rng(5);
    for (int it = 0; it < 50; ++it) {
        FElem a = F4->random_element(rng);
        FElem sq = F4->mul(a, a);
        auto r = F4->sqrt(sq);
        REQUIRE(r.has_value());
        CHECK(F4->mul(*r, *r) == sq);
    }
    // sqrt(-1) over F_43 does not exist (43 = 3 mod 4).
    auto F1 = make_prime_field(43);
    CHECK(!F1->sqrt(F1->from_int(-1)).has_value());
    CHECK(F1->sqrt(F1->zero()) == F1->zero());
    CHECK(F1->sqrt(F1->one()) == F1->one());
}

TEST_CASE("H_{1,43} roots from the fixture") {
    auto F = make_prime_field(43);
    const Field& K = *F;
    // 36 and 20 are roots of X^2 + 30X + 32 over F_43.
    for (std::uint64_t r : {36ull, 20ull}) {
        FElem x = K.from_base(r);
        FElem v = K.add(K.add(K.mul(x, x), K.smul(30, x)), K.from_base(32));
        CHECK(K.is_zero(v));
    }
    std::mt19937_64 rng(1);
    FPoly h1 = poly_from_base(K, {32, 30, 1});
    auto roots = poly_roots(K, h1, rng);
    std::set<FElem> expect = {K.from_base(20), K.from_base(36)};
    CHECK(roots == expect);
    FPoly h2 = poly_from_base(K, {10, 42, 1});
    auto roots2 = poly_roots(K, h2, rng);
    std::set<FElem> expect2 = {K.from_base(21), K.from_base(23)};
    CHECK(roots2 == expect2);
    // X^2 + 1 has no roots over F_43.
    CHECK(poly_roots(K, poly_from_base(K, {1, 0, 1}), rng).empty());
}

TEST_CASE("poly roots: randomized splitting agrees with exhaustive scan") {
    // q = 43^4 > 2^16 forces the equal-degree-splitting path; compare against
    // direct evaluation at the roots found plus a product reconstruction.
    auto F4 = make_ext_field(43, 4);
    const Field& F = *F4;
    std::mt19937_64 rng(7);
    // Build a polynomial with known roots.
    std::set<FElem> want;
    while (want.size() < 5) want.insert(F.random_element(rng));
    FPoly f = {F.one()};
    for (auto& r : want) f = poly_mul(F, f, FPoly{F.neg(r), F.one()});
    // Add an irreducible quadratic factor x^2 - n for a non-square n.
    FElem n = F.random_element(rng);
    while (F.is_zero(n) || F.is_square(n)) n = F.random_element(rng);
    f = poly_mul(F, f, FPoly{F.neg(n), F.zero(), F.one()});
    auto got = poly_roots(F, f, rng);
    CHECK(got == want);
}

TEST_CASE("squarefree detection") {
    auto F7 = make_prime_field(7);
    CHECK(poly_is_squarefree(*F7, poly_from_base(*F7, {0, 1, 0, 0, 0, 1})));  // x^5 + x
    CHECK(!poly_is_squarefree(*F7, poly_from_base(*F7, {0, 0, 1})));          // x^2
    auto F43 = make_prime_field(43);
    CHECK(poly_is_squarefree(*F43, poly_from_base(*F43, {10, 32, 29, 7, 36, 21, 5})));
}

TEST_CASE("poly_min_factor_degree") {
    auto F43 = make_prime_field(43);
    std::mt19937_64 rng(3);
    // x^2 + 1 is irreducible over F_43: min factor degree 2.
    CHECK(poly_min_factor_degree(*F43, poly_from_base(*F43, {1, 0, 1})) == 2);
    // (x - 1)(x^2 + 1): min degree 1.
    FPoly f = poly_mul(*F43, poly_from_base(*F43, {42, 1}), poly_from_base(*F43, {1, 0, 1}));
    CHECK(poly_min_factor_degree(*F43, f) == 1);
}

TEST_CASE("nt: CRT, centered lift, rational reconstruction") {
    // 1/3 via residues mod {5, 7, 11}: 3x = 1 -> x = 2, 5, 4.
    std::vector<std::pair<Int, Int>> parts = {{2, 5}, {5, 7}, {4, 11}};
    auto [x, M] = crt_combine(parts);
    CHECK(M == 385);
    CHECK(x == 257);
    auto rec = rational_reconstruct(x, M, isqrt(M / 2), isqrt(M / 2));
    REQUIRE(rec.has_value());
    CHECK(*rec == Rat(1, 3));
    CHECK(centered_lift(Int(3 * 257), M) == 1);
    CHECK(centered_lift(Int(384), Int(385)) == -1);
    CHECK(centered_lift(Int(5), Int(385)) == 5);
}
