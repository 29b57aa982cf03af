#include <catch2/catch_amalgamated.hpp>

#include "g2crt/mestre.hpp"
#include "g2crt/oracle.hpp"

using namespace g2crt;

TEST_CASE("brute_curve_census at p = 7") {
    auto census = brute_curve_census(7);
    CHECK(census.size() > 100);
    // Deterministic across reruns.
    CHECK(brute_curve_census(7) == census);
    // Every non-special triple is reproduced by Mestre's construction.
    Fp F(7);
    std::size_t checked = 0;
    for (auto& [t, f] : census) {
        if (t.j1 == 0) continue;
        auto g = mestre_construct(F, t, 5);
        REQUIRE(g.has_value());
        CHECK(sextic_to_triple(F, *g) == t);
        ++checked;
    }
    CHECK(checked > 100);
    // Invariance under x -> x + 1 (isomorphic models share the triple).
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        FpVec f(7);
        for (auto& c : f) c = rng() % 7;
        if (f[6] == 0) f[6] = 1;
        IgusaInvariants I = igusa_from_clebsch(F, clebsch_invariants(F, f));
        if (I.I10 == 0) continue;
        // f(x+1) via binomial expansion.
        FpVec g(7, 0);
        for (int i = 0; i <= 6; ++i) {
            std::uint64_t binom = 1;
            for (int k = 0; k <= i; ++k) {
                g[k] = F.add(g[k], F.mul(f[i], binom));
                binom = binom * (i - k) / (k + 1);
            }
        }
        IgusaInvariants J = igusa_from_clebsch(F, clebsch_invariants(F, g));
        REQUIRE(J.I10 != 0);
        CHECK(absolute_invariants(F, I) == absolute_invariants(F, J));
    }
    CHECK_THROWS_AS(brute_curve_census(5), std::invalid_argument);
}

TEST_CASE("naive_group_check on the CI corpus") {
    // Three degree-5 curves over F_7, two over F_11.
    const std::vector<std::pair<std::uint64_t, FpVec>> corpus = {
        {7, {1, 3, 0, 0, 0, 1}},  {7, {2, 1, 4, 0, 0, 1}}, {7, {5, 0, 1, 2, 0, 1}},
        {11, {1, 3, 0, 0, 0, 1}}, {11, {7, 2, 0, 5, 0, 1}},
    };
    for (auto& [p, f] : corpus) {
        OracleReport r1 = naive_group_check(p, f, 1);
        INFO(r1.scope << ": " << r1.counterexample);
        CHECK(r1.agreement);
        CHECK(r1.counterexample.empty());
    }
    // Degree-2 extension for the smallest prime.
    OracleReport r2 = naive_group_check(7, {1, 3, 0, 0, 0, 1}, 2);
    INFO(r2.scope << ": " << r2.counterexample);
    CHECK(r2.agreement);
}

TEST_CASE("naive_torsion_check") {
    std::uint64_t p = 7;
    // Fully split quintic x(x-1)(x-2)(x-3)(x-4): J[2] is rational over F_7.
    FpVec f = {0, 3, 6, 0, 4, 1};
    Fp F0(p);
    auto F2 = make_ext_field(p, 2);
    auto psi = detail::psi_from_counts(
        p, Int(static_cast<unsigned long>(count_points(F0, f))),
        Int(static_cast<unsigned long>(count_points_ext(*F2, f))));

    // s = 2: sets equal, size 2^4 forced once full 2-torsion is rational.
    TorsionBasis TB = torsion_basis(p, f, psi, 2);
    REQUIRE(TB.model.plain);
    REQUIRE(TB.m <= 2);  // oracle cap p^{2m} <= 1e5
    OracleReport r = naive_torsion_check_basis(TB);
    INFO(r.scope << ": " << r.counterexample);
    CHECK(r.agreement);

    // s = 1 is trivially the identity on both sides.
    CHECK(naive_torsion_check(p, f, psi, 1).agreement);

    // Corrupting a basis element is caught with a counterexample payload.
    TorsionBasis bad = TB;
    bad.D[0] = div_identity(*TB.model.K);
    OracleReport rb = naive_torsion_check_basis(bad);
    CHECK_FALSE(rb.agreement);
    CHECK_FALSE(rb.counterexample.empty());
}
