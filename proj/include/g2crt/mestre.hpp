#pragma once

// Mestre's construction: from an Igusa triple (j1, j2, j3) with j1 != 0 over
// F_p, build a plane conic and cubic whose coefficients are polynomials in
// the Clebsch invariants, find a rational point on the conic, parametrize,
// and pull the cubic back to a binary sextic f with the prescribed
// invariants.  Degenerate cases (singular conic, or any downstream failure)
// fall back to a seeded randomized search over sextics.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>

#include "ff.hpp"
#include "igusa.hpp"
#include "mestre_tables.hpp"
#include "poly.hpp"

namespace g2crt {

namespace detail {

inline std::uint64_t eval_clebsch_monomial(const Fp& F, const ClebschInvariants& c, int nA,
                                           int nB, int nC, int nD, long num, long den) {
    std::uint64_t v = F.mul(F.reduce(static_cast<long long>(num)),
                            F.inv(F.reduce(static_cast<long long>(den))));
    v = F.mul(v, F.pow(c.A, static_cast<std::uint64_t>(nA)));
    v = F.mul(v, F.pow(c.B, static_cast<std::uint64_t>(nB)));
    v = F.mul(v, F.pow(c.C, static_cast<std::uint64_t>(nC)));
    v = F.mul(v, F.pow(c.D, static_cast<std::uint64_t>(nD)));
    return v;
}

using Conic = std::array<std::array<std::uint64_t, 3>, 3>;

inline Conic mestre_conic(const Fp& F, const ClebschInvariants& c) {
    Conic Q{};
    for (const auto& t : mestre_tables::kConic) {
        std::uint64_t v = eval_clebsch_monomial(F, c, t.nA, t.nB, t.nC, t.nD, t.num, t.den);
        Q[t.i - 1][t.j - 1] = F.add(Q[t.i - 1][t.j - 1], v);
    }
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) Q[j][i] = Q[i][j];
    return Q;
}

// Cubic coefficients c_ijk on the 10 monomials with i <= j <= k (0-based).
inline std::map<std::array<int, 3>, std::uint64_t> mestre_cubic(const Fp& F,
                                                               const ClebschInvariants& c) {
    std::map<std::array<int, 3>, std::uint64_t> out;
    for (const auto& t : mestre_tables::kCubic) {
        std::uint64_t v = eval_clebsch_monomial(F, c, t.nA, t.nB, t.nC, t.nD, t.num, t.den);
        std::array<int, 3> key = {t.i - 1, t.j - 1, t.k - 1};
        auto [it, fresh] = out.try_emplace(key, 0);
        it->second = F.add(it->second, v);
    }
    return out;
}

inline std::uint64_t conic_det(const Fp& F, const Conic& Q) {
    std::uint64_t d = 0;
    d = F.add(d, F.mul(Q[0][0], F.sub(F.mul(Q[1][1], Q[2][2]), F.mul(Q[1][2], Q[2][1]))));
    d = F.sub(d, F.mul(Q[0][1], F.sub(F.mul(Q[1][0], Q[2][2]), F.mul(Q[1][2], Q[2][0]))));
    d = F.add(d, F.mul(Q[0][2], F.sub(F.mul(Q[1][0], Q[2][1]), F.mul(Q[1][1], Q[2][0]))));
    return d;
}

inline std::uint64_t conic_eval(const Fp& F, const Conic& Q, const std::array<std::uint64_t, 3>& u,
                                const std::array<std::uint64_t, 3>& v) {
    std::uint64_t s = 0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) s = F.add(s, F.mul(Q[a][b], F.mul(u[a], v[b])));
    return s;
}

// A projective rational point on the (nondegenerate) conic: solve the fibre
// over x0 as a quadratic in x1 via a square root in F_p.
inline std::optional<std::array<std::uint64_t, 3>> conic_point(const Field& K, const Conic& Q) {
    const Fp& F = K.fp;
    for (std::uint64_t x0 = 0; x0 < F.p; ++x0) {
        // Q(x0, x1, 1) = a x1^2 + b x1 + c.
        std::uint64_t a = Q[1][1];
        std::uint64_t b = F.add(F.mul(2, F.mul(Q[0][1], x0)), F.mul(2, Q[1][2]));
        std::uint64_t c = F.add(F.add(F.mul(Q[0][0], F.mul(x0, x0)), F.mul(2, F.mul(Q[0][2], x0))),
                                Q[2][2]);
        if (a == 0) {
            if (b != 0) return std::array<std::uint64_t, 3>{x0, F.mul(F.neg(c), F.inv(b)), 1};
            if (c == 0) return std::array<std::uint64_t, 3>{x0, 0, 1};
            continue;
        }
        std::uint64_t disc = F.sub(F.mul(b, b), F.mul(4, F.mul(a, c)));
        auto r = K.sqrt(K.from_base({disc}));
        if (!r) continue;
        std::uint64_t x1 = F.mul(F.sub((*r)[0], b), F.inv(F.mul(2, a)));
        return std::array<std::uint64_t, 3>{x0, x1, 1};
    }
    for (std::uint64_t x0 = 0; x0 < F.p; ++x0) {
        std::array<std::uint64_t, 3> u = {x0, 1, 0};
        if (conic_eval(F, Q, u, u) == 0) return u;
    }
    if (conic_eval(F, Q, {1, 0, 0}, {1, 0, 0}) == 0)
        return std::array<std::uint64_t, 3>{1, 0, 0};
    return std::nullopt;
}

}  // namespace detail

// Randomized fallback: draw sextics until one has the requested triple.
inline std::optional<FpVec> random_sextic_search(const Fp& F, const IgusaTriple& want,
                                                 std::uint64_t seed, std::uint64_t budget) {
    std::mt19937_64 rng(seed);
    for (std::uint64_t it = 0; it < budget; ++it) {
        FpVec f(7);
        for (auto& c : f) c = rng() % F.p;
        if (f[6] == 0) f[6] = 1;
        IgusaInvariants I = igusa_from_clebsch(F, clebsch_invariants(F, f));
        if (I.I10 == 0) continue;
        if (absolute_invariants(F, I) == want) return f;
    }
    return std::nullopt;
}

// Mestre's algorithm proper; returns the sextic f (size 7, lowest first) of a
// curve y^2 = f(x) with absolute invariants `want`, or nullopt.
inline std::optional<FpVec> mestre_construct(const Fp& F, const IgusaTriple& want,
                                             std::uint64_t seed = 1) {
    const std::uint64_t budget = 50 * F.p * F.p * F.p;
    if (want.j1 == 0) return random_sextic_search(F, want, seed, budget);
    ClebschInvariants cl = clebsch_from_igusa(F, igusa_from_triple(F, want));
    detail::Conic Q = detail::mestre_conic(F, cl);
    auto cubic = detail::mestre_cubic(F, cl);
    auto fallback = [&]() { return random_sextic_search(F, want, seed, budget); };
    if (detail::conic_det(F, Q) == 0) return fallback();
    FieldPtr K = make_prime_field(F.p);
    auto pt_opt = detail::conic_point(*K, Q);
    if (!pt_opt) return fallback();
    std::array<std::uint64_t, 3> pt = *pt_opt;

    // Complete pt to a basis {pt, d0, d1} of F_p^3 from the standard vectors.
    std::array<std::array<std::uint64_t, 3>, 2> dirs{};
    {
        std::vector<std::array<std::uint64_t, 3>> rows = {pt};
        for (int e = 0; e < 3 && rows.size() < 3; ++e) {
            std::array<std::uint64_t, 3> cand{};
            cand[e] = 1;
            auto trial = rows;
            trial.push_back(cand);
            // Rank via Gaussian elimination.
            auto mm = trial;
            std::size_t rk = 0;
            for (int col = 0; col < 3 && rk < mm.size(); ++col) {
                std::size_t piv = rk;
                while (piv < mm.size() && mm[piv][col] == 0) ++piv;
                if (piv == mm.size()) continue;
                std::swap(mm[rk], mm[piv]);
                std::uint64_t iv = F.inv(mm[rk][col]);
                for (auto& x : mm[rk]) x = F.mul(x, iv);
                for (std::size_t r = 0; r < mm.size(); ++r)
                    if (r != rk && mm[r][col] != 0) {
                        std::uint64_t fct = mm[r][col];
                        for (int cix = 0; cix < 3; ++cix)
                            mm[r][cix] = F.sub(mm[r][cix], F.mul(fct, mm[rk][cix]));
                    }
                ++rk;
            }
            if (rk == trial.size()) rows = trial;
        }
        if (rows.size() != 3) return fallback();
        dirs = {rows[1], rows[2]};
    }

    // Second intersection of the line pt + t*dir(t), dir(t) = d0 + t d1:
    // x(t) = Q(dir, dir) pt - 2 Q(pt, dir) dir, quadratic in t per coordinate.
    const auto& d0 = dirs[0];
    const auto& d1 = dirs[1];
    std::uint64_t q00 = detail::conic_eval(F, Q, d0, d0);
    std::uint64_t q01 = detail::conic_eval(F, Q, d0, d1);
    std::uint64_t q11 = detail::conic_eval(F, Q, d1, d1);
    std::uint64_t qp0 = detail::conic_eval(F, Q, pt, d0);
    std::uint64_t qp1 = detail::conic_eval(F, Q, pt, d1);
    std::array<std::array<std::uint64_t, 3>, 3> xt{};  // xt[a] = coeffs in t
    for (int a = 0; a < 3; ++a) {
        xt[a][0] = F.sub(F.mul(q00, pt[a]), F.mul(2, F.mul(qp0, d0[a])));
        xt[a][1] = F.sub(F.mul(2, F.mul(q01, pt[a])),
                         F.mul(2, F.add(F.mul(qp0, d1[a]), F.mul(qp1, d0[a]))));
        xt[a][2] = F.sub(F.mul(q11, pt[a]), F.mul(2, F.mul(qp1, d1[a])));
    }

    // Pull the cubic back along the parametrization: sextic in t.
    FpVec g(7, 0);
    for (const auto& [key, cv] : cubic) {
        auto [i, j, k] = key;
        int mult = (i == j && j == k) ? 1 : (i == j || j == k || i == k) ? 3 : 6;
        std::array<std::uint64_t, 7> prod{};
        prod[0] = 1;
        int deg = 0;
        for (int idx : {i, j, k}) {
            std::array<std::uint64_t, 7> nxt{};
            for (int a2 = 0; a2 <= deg; ++a2)
                for (int b2 = 0; b2 < 3; ++b2)
                    nxt[a2 + b2] = F.add(nxt[a2 + b2], F.mul(prod[a2], xt[idx][b2]));
            prod = nxt;
            deg += 2;
        }
        std::uint64_t s = F.mul(F.reduce(static_cast<long long>(mult)), cv);
        for (int a2 = 0; a2 < 7; ++a2) g[a2] = F.add(g[a2], F.mul(s, prod[a2]));
    }

    // Validate: degree 5 or 6, squarefree, and the invariants round-trip.
    int deg = 6;
    while (deg >= 0 && g[deg] == 0) --deg;
    if (deg < 5) return fallback();
    FPoly gp = poly_from_base(*K, FpVec(g.begin(), g.begin() + deg + 1));
    if (!poly_is_squarefree(*K, gp)) return fallback();
    IgusaInvariants I = igusa_from_clebsch(F, clebsch_invariants(F, g));
    if (I.I10 == 0) return fallback();
    if (absolute_invariants(F, I) != want) return fallback();
    return g;
}

}  // namespace g2crt
