#pragma once

// Invariant theory of binary sextics over F_p (p >= 7): transvectants,
// Clebsch invariants A, B, C, D, Igusa invariants I2, I4, I6, I10, the
// absolute invariants (j1, j2, j3), and point counting for y^2 = f(x).
//
// A binary form of order m is stored as a coefficient vector c[0..m] with
// g(x, y) = sum c[i] x^i y^(m-i); a curve sextic is the univariate f(x)
// homogenized to order 6.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ff.hpp"

namespace g2crt {

using FpVec = std::vector<std::uint64_t>;

namespace detail {

// d_x^a d_y^b of a form of order m (coefficients only; order drops to m-a-b).
inline FpVec form_dxdy(const Fp& F, const FpVec& g, int m, int a, int b) {
    FpVec out(m - a - b + 1, 0);
    for (int i = 0; i <= m; ++i) {
        int j = m - i;
        if (i < a || j < b) continue;
        std::uint64_t k = 1;
        for (int t = 0; t < a; ++t) k = F.mul(k, F.reduce(static_cast<long long>(i - t)));
        for (int t = 0; t < b; ++t) k = F.mul(k, F.reduce(static_cast<long long>(j - t)));
        out[i - a] = F.mul(g[i], k);
    }
    return out;
}

inline FpVec form_mul(const Fp& F, const FpVec& g, const FpVec& h) {
    FpVec out(g.size() + h.size() - 1, 0);
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < h.size(); ++j)
            out[i + j] = F.add(out[i + j], F.mul(g[i], h[j]));
    return out;
}

inline std::uint64_t factorial_mod(const Fp& F, int n) {
    std::uint64_t r = 1;
    for (int t = 2; t <= n; ++t) r = F.mul(r, F.reduce(static_cast<long long>(t)));
    return r;
}

}  // namespace detail

// r-th transvectant of forms of orders mg, mh; result has order mg + mh - 2r.
// Requires p > max(mg, mh) so the factorial prefactor is invertible.
inline FpVec transvectant(const Fp& F, const FpVec& g, int mg, const FpVec& h, int mh, int r) {
    if (r > mg || r > mh) throw std::invalid_argument("transvectant: order too low");
    std::uint64_t pref = F.mul(detail::factorial_mod(F, mg - r), detail::factorial_mod(F, mh - r));
    pref = F.mul(pref, F.inv(F.mul(detail::factorial_mod(F, mg), detail::factorial_mod(F, mh))));
    FpVec out(mg + mh - 2 * r + 1, 0);
    std::uint64_t binom = 1;  // C(r, j), updated incrementally
    for (int j = 0; j <= r; ++j) {
        FpVec a = detail::form_dxdy(F, g, mg, r - j, j);
        FpVec b = detail::form_dxdy(F, h, mh, j, r - j);
        FpVec prod = detail::form_mul(F, a, b);
        std::uint64_t s = F.mul(pref, binom);
        if (j & 1) s = F.neg(s);
        for (std::size_t idx = 0; idx < prod.size(); ++idx)
            out[idx] = F.add(out[idx], F.mul(s, prod[idx]));
        if (j < r)
            binom = F.mul(F.mul(binom, F.reduce(static_cast<long long>(r - j))),
                          F.inv(F.reduce(static_cast<long long>(j + 1))));
    }
    return out;
}

struct ClebschInvariants {
    std::uint64_t A, B, C, D;
};

// f: univariate sextic coefficients (size 7, c[i] on x^i), viewed as an
// order-6 binary form.
inline ClebschInvariants clebsch_invariants(const Fp& F, const FpVec& f) {
    if (f.size() != 7) throw std::invalid_argument("clebsch_invariants: need 7 coefficients");
    FpVec i4 = transvectant(F, f, 6, f, 6, 4);        // order 4
    FpVec delta = transvectant(F, i4, 4, i4, 4, 2);   // order 4
    FpVec y1 = transvectant(F, f, 6, i4, 4, 4);       // order 2
    FpVec y2 = transvectant(F, i4, 4, y1, 2, 2);      // order 2
    FpVec y3 = transvectant(F, i4, 4, y2, 2, 2);      // order 2
    ClebschInvariants cl;
    cl.A = transvectant(F, f, 6, f, 6, 6)[0];
    cl.B = transvectant(F, i4, 4, i4, 4, 4)[0];
    cl.C = transvectant(F, i4, 4, delta, 4, 4)[0];
    cl.D = transvectant(F, y3, 2, y1, 2, 2)[0];
    return cl;
}

struct IgusaInvariants {
    std::uint64_t I2, I4, I6, I10;
};

inline IgusaInvariants igusa_from_clebsch(const Fp& F, const ClebschInvariants& c) {
    auto z = [&](long long v) { return F.reduce(v); };
    std::uint64_t A = c.A, B = c.B, C = c.C, D = c.D;
    std::uint64_t A2 = F.mul(A, A), A3 = F.mul(A2, A), A5 = F.mul(A3, A2);
    IgusaInvariants I;
    I.I2 = F.mul(z(-120), A);
    I.I4 = F.add(F.mul(z(-720), A2), F.mul(z(6750), B));
    I.I6 = F.add(F.add(F.mul(z(8640), A3), F.mul(z(-108000), F.mul(A, B))), F.mul(z(202500), C));
    I.I10 = F.mul(z(-62208), A5);
    I.I10 = F.add(I.I10, F.mul(z(972000), F.mul(A3, B)));
    I.I10 = F.add(I.I10, F.mul(z(1620000), F.mul(A2, C)));
    I.I10 = F.add(I.I10, F.mul(z(-3037500), F.mul(A, F.mul(B, B))));
    I.I10 = F.add(I.I10, F.mul(z(-6075000), F.mul(B, C)));
    I.I10 = F.add(I.I10, F.mul(z(-4556250), D));
    return I;
}

inline ClebschInvariants clebsch_from_igusa(const Fp& F, const IgusaInvariants& I) {
    auto z = [&](long long v) { return F.reduce(v); };
    ClebschInvariants c;
    c.A = F.mul(I.I2, F.inv(z(-120)));
    std::uint64_t A2 = F.mul(c.A, c.A), A3 = F.mul(A2, c.A), A5 = F.mul(A3, A2);
    c.B = F.mul(F.add(I.I4, F.mul(z(720), A2)), F.inv(z(6750)));
    c.C = F.mul(F.add(F.sub(I.I6, F.mul(z(8640), A3)), F.mul(z(108000), F.mul(c.A, c.B))),
                F.inv(z(202500)));
    std::uint64_t rest = F.mul(z(-62208), A5);
    rest = F.add(rest, F.mul(z(972000), F.mul(A3, c.B)));
    rest = F.add(rest, F.mul(z(1620000), F.mul(A2, c.C)));
    rest = F.add(rest, F.mul(z(-3037500), F.mul(c.A, F.mul(c.B, c.B))));
    rest = F.add(rest, F.mul(z(-6075000), F.mul(c.B, c.C)));
    c.D = F.mul(F.sub(I.I10, rest), F.inv(z(-4556250)));
    return c;
}

struct IgusaTriple {
    std::uint64_t j1, j2, j3;
    auto operator<=>(const IgusaTriple&) const = default;
};

// Absolute invariants j1 = I2^5/I10, j2 = I2^3 I4/I10, j3 = I2^2 I6/I10.
// Requires I10 != 0 (the form must be a genuine genus-2 sextic).
inline IgusaTriple absolute_invariants(const Fp& F, const IgusaInvariants& I) {
    if (I.I10 == 0) throw std::domain_error("absolute_invariants: I10 = 0 (singular sextic)");
    std::uint64_t inv10 = F.inv(I.I10);
    std::uint64_t I2_2 = F.mul(I.I2, I.I2), I2_3 = F.mul(I2_2, I.I2);
    IgusaTriple t;
    t.j1 = F.mul(F.mul(I2_3, I2_2), inv10);
    t.j2 = F.mul(F.mul(I2_3, I.I4), inv10);
    t.j3 = F.mul(F.mul(I2_2, I.I6), inv10);
    return t;
}

inline IgusaTriple sextic_to_triple(const Fp& F, const FpVec& f) {
    return absolute_invariants(F, igusa_from_clebsch(F, clebsch_invariants(F, f)));
}

// A weighted-projective representative (I2, I4, I6, I10) with the given
// absolute invariants; requires j1 != 0 (equivalently I2 != 0).
inline IgusaInvariants igusa_from_triple(const Fp& F, const IgusaTriple& t) {
    if (t.j1 == 0) throw std::domain_error("igusa_from_triple: j1 = 0 unsupported");
    IgusaInvariants I;
    I.I2 = t.j1;
    I.I4 = F.mul(t.j1, t.j2);
    I.I6 = F.mul(F.mul(t.j1, t.j1), t.j3);
    std::uint64_t j1sq = F.mul(t.j1, t.j1);
    I.I10 = F.mul(j1sq, j1sq);
    return I;
}

// ---------------------------------------------------------------------------
// Point counting for y^2 = f(x), deg f in {5, 6}, f squarefree.
// ---------------------------------------------------------------------------

// #C(F_p) with the smooth-model points at infinity: a degree-6 f contributes
// 2 (resp. 0) points at infinity when its leading coefficient is a square
// (resp. non-square); a degree-5 f contributes exactly 1.
inline std::uint64_t count_points(const Fp& F, const FpVec& f) {
    int deg = static_cast<int>(f.size()) - 1;
    while (deg >= 0 && f[deg] == 0) --deg;
    if (deg != 5 && deg != 6) throw std::invalid_argument("count_points: degree must be 5 or 6");
    std::uint64_t n = 0;
    for (std::uint64_t x = 0; x < F.p; ++x) {
        std::uint64_t v = 0;
        for (int i = deg; i >= 0; --i) v = F.add(F.mul(v, x), f[i]);
        int chi = F.legendre(v);
        n += static_cast<std::uint64_t>(1 + chi);
    }
    if (deg == 5)
        n += 1;
    else
        n += F.legendre(f[6]) == 1 ? 2 : 0;
    return n;
}

// #C(F_q) for the same model over an extension field K of the coefficient
// prime field (used with q = p^2 for the zeta-function order formula).
inline std::uint64_t count_points_ext(const Field& K, const FpVec& f) {
    int deg = static_cast<int>(f.size()) - 1;
    while (deg >= 0 && f[deg] == 0) --deg;
    if (deg != 5 && deg != 6) throw std::invalid_argument("count_points_ext: degree must be 5 or 6");
    std::vector<FElem> lifted;
    lifted.reserve(deg + 1);
    for (int i = 0; i <= deg; ++i) lifted.push_back(K.from_base({f[i]}));
    Int q = 1;
    for (unsigned i = 0; i < K.m; ++i) q *= static_cast<unsigned long>(K.fp.p);
    std::uint64_t n = 0;
    for (Int ix = 0; ix < q; ++ix) {
        FElem x = K.element_at(ix);
        FElem v = K.zero();
        for (int i = deg; i >= 0; --i) v = K.add(K.mul(v, x), lifted[i]);
        if (K.is_zero(v))
            n += 1;
        else if (K.is_square(v))
            n += 2;
    }
    if (deg == 5)
        n += 1;
    else
        n += K.is_square(K.from_base({f[6]})) ? 2 : 0;
    return n;
}

// #J(C)(F_p) = (N1^2 + N2)/2 - p from the two point counts.
inline Int jacobian_order_from_counts(const Int& N1, const Int& N2, const Int& p) {
    return (N1 * N1 + N2) / 2 - p;
}

// Smallest quadratic non-residue mod p.
inline std::uint64_t nonresidue(const Fp& F) {
    for (std::uint64_t c = 2; c < F.p; ++c)
        if (F.legendre(c) == -1) return c;
    throw std::logic_error("nonresidue: none found");
}

// The quadratic twist y^2 = c f(x) with c a non-residue; #C + #C' = 2p + 2.
inline FpVec quadratic_twist(const Fp& F, const FpVec& f) {
    std::uint64_t c = nonresidue(F);
    FpVec g(f);
    for (auto& a : g) a = F.mul(a, c);
    return g;
}

}  // namespace g2crt
