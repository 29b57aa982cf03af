#pragma once

// Univariate polynomials over F_{p^m}: arithmetic, gcd, evaluation, root
// finding (equal-degree splitting with a seeded generator; exhaustive scan for
// small fields), squarefreeness, and the minimal degree of an irreducible
// factor.  Coefficients are stored lowest degree first with no trailing zeros.

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "ff.hpp"

namespace g2crt {

using FPoly = std::vector<FElem>;  // [c0, c1, ...], ci in the ambient field

inline void poly_trim(const Field& F, FPoly& f) {
    while (!f.empty() && F.is_zero(f.back())) f.pop_back();
}

inline int poly_deg(const FPoly& f) { return static_cast<int>(f.size()) - 1; }

inline FPoly poly_from_base(const Field& F, const std::vector<std::uint64_t>& coeffs) {
    FPoly f;
    for (auto c : coeffs) f.push_back(F.from_base(c));
    poly_trim(F, f);
    return f;
}

inline FPoly poly_add(const Field& F, const FPoly& a, const FPoly& b) {
    FPoly r(std::max(a.size(), b.size()), F.zero());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.add(r[i], b[i]);
    poly_trim(F, r);
    return r;
}

inline FPoly poly_sub(const Field& F, const FPoly& a, const FPoly& b) {
    FPoly r(std::max(a.size(), b.size()), F.zero());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
    poly_trim(F, r);
    return r;
}

inline FPoly poly_neg(const Field& F, const FPoly& a) {
    FPoly r = a;
    for (auto& c : r) c = F.neg(c);
    return r;
}

inline FPoly poly_mul(const Field& F, const FPoly& a, const FPoly& b) {
    if (a.empty() || b.empty()) return {};
    FPoly r(a.size() + b.size() - 1, F.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (F.is_zero(a[i])) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    poly_trim(F, r);
    return r;
}

inline FPoly poly_scale(const Field& F, const FElem& c, const FPoly& a) {
    FPoly r = a;
    for (auto& x : r) x = F.mul(c, x);
    poly_trim(F, r);
    return r;
}

// Quotient and remainder by a nonzero divisor.
inline std::pair<FPoly, FPoly> poly_divmod(const Field& F, FPoly a, const FPoly& b) {
    if (b.empty()) throw std::domain_error("poly_divmod: division by zero polynomial");
    FPoly q;
    FElem lead_inv = F.inv(b.back());
    int db = poly_deg(b);
    while (poly_deg(a) >= db) {
        int shift = poly_deg(a) - db;
        FElem c = F.mul(a.back(), lead_inv);
        if (static_cast<int>(q.size()) <= shift) q.resize(shift + 1, F.zero());
        q[shift] = F.add(q[shift], c);
        for (int i = 0; i <= db; ++i)
            a[i + shift] = F.sub(a[i + shift], F.mul(c, b[i]));
        poly_trim(F, a);
    }
    poly_trim(F, q);
    return {q, a};
}

inline FPoly poly_mod(const Field& F, const FPoly& a, const FPoly& b) {
    return poly_divmod(F, a, b).second;
}

inline FPoly poly_monic(const Field& F, const FPoly& f) {
    if (f.empty()) return f;
    return poly_scale(F, F.inv(f.back()), f);
}

inline FPoly poly_gcd(const Field& F, FPoly a, FPoly b) {
    while (!b.empty()) {
        FPoly r = poly_mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.empty() ? a : poly_monic(F, a);
}

// Extended gcd: returns (g, s, t) with g = s a + t b, g monic (or zero).
struct PolyXgcd {
    FPoly g, s, t;
};
inline PolyXgcd poly_xgcd(const Field& F, FPoly a, FPoly b) {
    FPoly s0 = {F.one()}, s1 = {}, t0 = {}, t1 = {F.one()};
    poly_trim(F, a);
    poly_trim(F, b);
    while (!b.empty()) {
        auto [q, r] = poly_divmod(F, a, b);
        a = std::move(b);
        b = std::move(r);
        FPoly s2 = poly_sub(F, s0, poly_mul(F, q, s1));
        FPoly t2 = poly_sub(F, t0, poly_mul(F, q, t1));
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (!a.empty()) {
        FElem lc = F.inv(a.back());
        a = poly_scale(F, lc, a);
        s0 = poly_scale(F, lc, s0);
        t0 = poly_scale(F, lc, t0);
    }
    return {a, s0, t0};
}

inline FPoly poly_derivative(const Field& F, const FPoly& f) {
    FPoly r;
    for (std::size_t i = 1; i < f.size(); ++i) r.push_back(F.smul(i % F.p(), f[i]));
    poly_trim(F, r);
    return r;
}

inline FElem poly_eval(const Field& F, const FPoly& f, const FElem& x) {
    FElem acc = F.zero();
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = F.add(F.mul(acc, x), *it);
    return acc;
}

inline FPoly poly_powmod(const Field& F, FPoly base, Int e, const FPoly& modp) {
    FPoly r = {F.one()};
    base = poly_mod(F, base, modp);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = poly_mod(F, poly_mul(F, r, base), modp);
        base = poly_mod(F, poly_mul(F, base, base), modp);
        e >>= 1;
    }
    return r;
}

inline bool poly_is_squarefree(const Field& F, const FPoly& f) {
    if (f.empty()) throw std::invalid_argument("poly_is_squarefree: zero polynomial");
    FPoly g = poly_gcd(F, f, poly_derivative(F, f));
    return poly_deg(g) == 0;
}

// x^q mod f minus x, gcd'ed with f, isolates the product of linear factors.
inline FPoly poly_x(const Field& F) { return {F.zero(), F.one()}; }

// All distinct roots of f in the ambient field.
inline std::set<FElem> poly_roots(const Field& F, const FPoly& f, std::mt19937_64& rng) {
    if (f.empty()) throw std::invalid_argument("poly_roots: zero polynomial");
    std::set<FElem> out;
    if (poly_deg(f) == 0) return out;
    Int q = F.q();
    if (q <= (1 << 16)) {
        for (Int i = 0; i < q; ++i) {
            FElem x = F.element_at(i);
            if (F.is_zero(poly_eval(F, f, x))) out.insert(x);
        }
        return out;
    }
    // Linear-factor part: gcd(f, x^q - x).
    FPoly xq = poly_powmod(F, poly_x(F), q, f);
    FPoly lin = poly_gcd(F, f, poly_sub(F, xq, poly_x(F)));
    // Recursive equal-degree splitting of the (squarefree) linear part.
    std::vector<FPoly> stack = {lin};
    while (!stack.empty()) {
        FPoly g = stack.back();
        stack.pop_back();
        int d = poly_deg(g);
        if (d <= 0) continue;
        if (d == 1) {
            // root = -c0 / c1
            out.insert(F.neg(F.div(g[0], g[1])));
            continue;
        }
        // Random split: gcd(g, (x + r)^{(q-1)/2} - 1).
        for (;;) {
            FPoly shift = {F.random_element(rng), F.one()};
            FPoly h = poly_powmod(F, shift, (q - 1) / 2, g);
            h = poly_sub(F, h, {F.one()});
            FPoly d1 = poly_gcd(F, g, h);
            if (poly_deg(d1) > 0 && poly_deg(d1) < d) {
                stack.push_back(d1);
                stack.push_back(poly_divmod(F, g, d1).first);
                break;
            }
        }
    }
    return out;
}

// Smallest degree of an irreducible factor of f over the ambient field
// (distinct-degree sieve: first d with gcd(f, x^{q^d} - x) nontrivial).
inline unsigned poly_min_factor_degree(const Field& F, const FPoly& f) {
    if (poly_deg(f) < 1) throw std::invalid_argument("poly_min_factor_degree: constant polynomial");
    FPoly work = poly_monic(F, f);
    FPoly xq = poly_x(F);
    for (unsigned d = 1; d <= static_cast<unsigned>(poly_deg(f)); ++d) {
        xq = poly_powmod(F, xq, F.q(), work);
        FPoly g = poly_gcd(F, work, poly_sub(F, xq, poly_x(F)));
        if (poly_deg(g) > 0) return d;
    }
    throw std::logic_error("poly_min_factor_degree: sieve exhausted");
}

}  // namespace g2crt
