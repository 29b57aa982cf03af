#pragma once

// Mumford-representation arithmetic on genus-2 Jacobians, group orders over
// extensions, s-torsion bases, and the matrix of Frobenius on J[s].
//
// Divisor arithmetic always runs on an odd (degree-5) model.  A census curve
// y^2 = f(x) with deg f = 6 over F_p is moved to an odd model over F_{p^j}
// (j = lcm(m, e), where e is the smallest degree of an irreducible factor of
// f) by sending a root r of f to infinity: x = r + 1/t, y = s/t^3.  Because
// that isomorphism is defined over F_{p^e} rather than F_p, the p-power
// Frobenius of the original curve becomes the "twisted" map
//   Phi(t, s) = (t^p / (c t^p + 1), s^p / (c t^p + 1)^3),   c = r^p - r,
// i.e. coefficientwise p-power followed by the Mobius substitution
// x -> x/(cx + 1).  On divisor classes, Phi(infinity) = (1/c, 0) is a
// Weierstrass point, so a weight-1 divisor picks up the 2-torsion correction
// class [(x - 1/c, 0)]; weight-2 corrections cancel.  J(C)(F_{p^m}) is
// recovered inside J(F_{p^j}) as ker(Phi^m - 1), and the trace map
// sum_i Phi^{m i} projects random points onto it.

#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "ff.hpp"
#include "nt.hpp"
#include "poly.hpp"
#include "qlinalg.hpp"

namespace g2crt {

using FpVec = std::vector<std::uint64_t>;

struct MumfordDivisor {
    FPoly u, v;  // u monic, deg u <= 2, deg v < deg u; identity is (1, 0)
    bool operator==(const MumfordDivisor& o) const = default;
};

inline MumfordDivisor div_identity(const Field& F) { return {{F.one()}, {}}; }
inline bool div_is_identity(const MumfordDivisor& D) { return poly_deg(D.u) == 0; }

inline bool div_valid(const Field& F, const FPoly& f, const MumfordDivisor& D) {
    if (D.u.empty() || !F.is_zero(F.sub(D.u.back(), F.one()))) return false;
    if (poly_deg(D.v) >= poly_deg(D.u)) return false;
    FPoly r = poly_mod(F, poly_sub(F, poly_mul(F, D.v, D.v), f), D.u);
    return r.empty();
}

inline MumfordDivisor div_neg(const Field& F, const MumfordDivisor& D) {
    return {D.u, poly_neg(F, D.v)};
}

// Cantor composition + reduction (genus 2, odd model).
inline MumfordDivisor cantor_add(const Field& F, const FPoly& f, const MumfordDivisor& D1,
                                 const MumfordDivisor& D2) {
    // Composition.
    PolyXgcd g1 = poly_xgcd(F, D1.u, D2.u);                       // d1 = e1 u1 + e2 u2
    PolyXgcd g2 = poly_xgcd(F, g1.g, poly_add(F, D1.v, D2.v));    // d = c1 d1 + c2 (v1+v2)
    FPoly d = g2.g;
    if (d.empty()) throw std::logic_error("cantor_add: zero gcd");
    FPoly s1 = poly_mul(F, g2.s, g1.s);
    FPoly s2 = poly_mul(F, g2.s, g1.t);
    const FPoly& s3 = g2.t;
    FPoly u = poly_mul(F, D1.u, D2.u);
    u = poly_divmod(F, u, poly_mul(F, d, d)).first;
    FPoly v = poly_add(F, poly_mul(F, poly_mul(F, s1, D1.u), D2.v),
                       poly_mul(F, poly_mul(F, s2, D2.u), D1.v));
    v = poly_add(F, v, poly_mul(F, s3, poly_add(F, poly_mul(F, D1.v, D2.v), f)));
    v = poly_divmod(F, v, d).first;
    u = poly_monic(F, u);
    v = poly_mod(F, v, u);
    // Reduction.
    while (poly_deg(u) > 2) {
        FPoly unew = poly_divmod(F, poly_sub(F, f, poly_mul(F, v, v)), u).first;
        unew = poly_monic(F, unew);
        FPoly vnew = poly_mod(F, poly_neg(F, v), unew);
        u = std::move(unew);
        v = std::move(vnew);
    }
    if (u.empty()) throw std::logic_error("cantor_add: degenerate reduction");
    return {u, v};
}

inline MumfordDivisor scalar_mul(const Field& F, const FPoly& f, Int n, MumfordDivisor D) {
    if (n < 0) {
        n = -n;
        D = div_neg(F, D);
    }
    MumfordDivisor acc = div_identity(F);
    for (long bit = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2)) - 1; bit >= 0; --bit) {
        acc = cantor_add(F, f, acc, acc);
        if (mpz_tstbit(n.get_mpz_t(), static_cast<mp_bitcnt_t>(bit)))
            acc = cantor_add(F, f, acc, D);
    }
    return acc;
}

// A reduced divisor built from two random curve points (seeded, reproducible).
inline MumfordDivisor random_point(const Field& F, const FPoly& f, std::mt19937_64& rng) {
    auto one_point = [&]() -> std::pair<FElem, FElem> {
        for (;;) {
            FElem x = F.random_element(rng);
            FElem fx = poly_eval(F, f, x);
            auto y = F.sqrt(fx);
            if (!y) continue;
            if (rng() & 1) *y = F.neg(*y);
            return {x, *y};
        }
    };
    auto [x1, y1] = one_point();
    MumfordDivisor D1 = {{F.neg(x1), F.one()}, {y1}};
    poly_trim(F, D1.v);
    auto [x2, y2] = one_point();
    MumfordDivisor D2 = {{F.neg(x2), F.one()}, {y2}};
    poly_trim(F, D2.v);
    return cantor_add(F, f, D1, D2);
}

// Canonical serialization for DL tables and span sets.
inline std::vector<std::uint64_t> div_key(const Field& F, const MumfordDivisor& D) {
    std::vector<std::uint64_t> k;
    k.push_back(static_cast<std::uint64_t>(poly_deg(D.u)));
    for (int i = 0; i < 2; ++i) {
        FElem c = i < poly_deg(D.u) ? D.u[i] : F.zero();
        k.insert(k.end(), c.begin(), c.end());
    }
    for (int i = 0; i < 2; ++i) {
        FElem c = i < static_cast<int>(D.v.size()) ? D.v[i] : F.zero();
        k.insert(k.end(), c.begin(), c.end());
    }
    return k;
}

// ---------------------------------------------------------------------------
// Odd model of an F_p census sextic, with the twisted Frobenius.
// ---------------------------------------------------------------------------
struct JacModel {
    std::uint64_t p;
    FpVec sextic;   // original F_p model (degree 5 or 6)
    unsigned m;     // extension whose rational points we study
    unsigned e;     // degree of the field generated by the chosen root
    unsigned j;     // lcm(m, e): the ambient working field F_{p^j}
    FieldPtr K;     // F_{p^j}
    FPoly f;        // odd (degree-5) model over K
    FElem r;        // root of the sextic sent to infinity
    FElem c;        // r^p - r; zero iff the model transform is F_p-rational
    bool plain;     // c == 0 (Frobenius is plain coefficientwise p-power)
};

inline JacModel make_jac_model(std::uint64_t p, const FpVec& sextic, unsigned m,
                               std::uint64_t seed = 2) {
    Fp F0(p);
    int deg = static_cast<int>(sextic.size()) - 1;
    while (deg >= 0 && sextic[deg] == 0) --deg;
    if (deg != 5 && deg != 6) throw std::invalid_argument("make_jac_model: degree must be 5 or 6");
    JacModel M;
    M.p = p;
    M.sextic = FpVec(sextic.begin(), sextic.begin() + deg + 1);
    M.m = m;
    if (deg == 5) {
        M.e = 1;
        M.j = m;
        M.K = make_ext_field(p, M.j);
        M.f = poly_from_base(*M.K, M.sextic);
        M.r = M.K->zero();
        M.c = M.K->zero();
        M.plain = true;
        return M;
    }
    FieldPtr Kp = make_prime_field(p);
    M.e = poly_min_factor_degree(*Kp, poly_from_base(*Kp, M.sextic));
    M.j = std::lcm(m, M.e);
    M.K = make_ext_field(p, M.j);
    const Field& K = *M.K;
    FPoly f6 = poly_from_base(K, M.sextic);
    std::mt19937_64 rng(seed);
    auto roots = poly_roots(K, f6, rng);
    if (roots.empty()) throw std::logic_error("make_jac_model: no root in the working field");
    M.r = *roots.begin();
    // g(t) = t^6 f(r + 1/t) = sum_i f_i (r t + 1)^i t^(6-i); degree 5 since
    // f(r) = 0 and f'(r) != 0 (f squarefree).
    FPoly g;
    FPoly rt1 = {K.one(), M.r};  // 1 + r t
    FPoly pw = {K.one()};
    std::vector<FPoly> rt_pows;
    for (int i = 0; i <= 6; ++i) {
        rt_pows.push_back(pw);
        pw = poly_mul(K, pw, rt1);
    }
    for (int i = 0; i <= 6; ++i) {
        FPoly term = poly_scale(K, f6.size() > static_cast<std::size_t>(i) ? f6[i] : K.zero(),
                                rt_pows[i]);
        FPoly tpow(7 - i, K.zero());
        tpow[6 - i] = K.one();
        term = poly_mul(K, term, tpow);
        g = poly_add(K, g, term);
    }
    poly_trim(K, g);
    if (poly_deg(g) != 5) throw std::logic_error("make_jac_model: odd model degree != 5");
    M.f = g;
    M.c = K.sub(K.frobenius(M.r), M.r);
    M.plain = K.is_zero(M.c);
    return M;
}

// The twisted Frobenius Phi on divisor classes of the odd model; equals the
// p-power Frobenius of the original curve under the model isomorphism.
inline MumfordDivisor frobenius_div(const JacModel& M, const MumfordDivisor& D) {
    const Field& K = *M.K;
    int d = poly_deg(D.u);
    FPoly uh(D.u.size()), vh(D.v.size());
    for (std::size_t i = 0; i < D.u.size(); ++i) uh[i] = K.frobenius(D.u[i]);
    for (std::size_t i = 0; i < D.v.size(); ++i) vh[i] = K.frobenius(D.v[i]);
    if (M.plain) return {uh, vh};
    const FElem& c = M.c;
    FPoly one_cx = {K.one(), K.neg(c)};  // 1 - c x
    FPoly U, V;
    if (d == 2) {
        // U = x^2 + u1 x (1 - c x) + u0 (1 - c x)^2
        FPoly x2 = {K.zero(), K.zero(), K.one()};
        U = poly_add(K, x2, poly_mul(K, {K.zero(), uh[1]}, one_cx));
        U = poly_add(K, U, poly_scale(K, uh[0], poly_mul(K, one_cx, one_cx)));
        // V = (v1 x + v0 (1 - c x)) (1 - c x)^2
        FPoly lin = poly_scale(K, vh.size() > 0 ? vh[0] : K.zero(), one_cx);
        if (vh.size() > 1) lin = poly_add(K, lin, {K.zero(), vh[1]});
        V = poly_mul(K, lin, poly_mul(K, one_cx, one_cx));
    } else if (d == 1) {
        U = poly_add(K, FPoly{K.zero(), K.one()}, poly_scale(K, uh[0], one_cx));
        FPoly cube = poly_mul(K, one_cx, poly_mul(K, one_cx, one_cx));
        V = poly_scale(K, vh.empty() ? K.zero() : vh[0], cube);
    } else {
        U = {K.one()};
        V = {};
    }
    poly_trim(K, U);
    MumfordDivisor out;
    if (U.empty() || poly_deg(U) == 0) {
        out = div_identity(K);
    } else {
        out.u = poly_monic(K, U);
        out.v = poly_mod(K, V, out.u);
    }
    if (d % 2 == 1) {
        // Phi(infinity) = (1/c, 0): odd-weight classes pick up the 2-torsion
        // correction [(x - 1/c, 0)].
        MumfordDivisor W = {{K.neg(K.inv(c)), K.one()}, {}};
        out = cantor_add(K, M.f, out, W);
    }
    return out;
}

inline MumfordDivisor frobenius_pow(const JacModel& M, MumfordDivisor D, unsigned k) {
    for (unsigned i = 0; i < k; ++i) D = frobenius_div(M, D);
    return D;
}

// Trace map onto ker(Phi^m - 1) = J(original curve)(F_{p^m}).
inline MumfordDivisor trace_to_subgroup(const JacModel& M, const MumfordDivisor& D) {
    MumfordDivisor acc = D;
    MumfordDivisor cur = D;
    for (unsigned i = 1; i < M.j / M.m; ++i) {
        cur = frobenius_pow(M, cur, M.m);
        acc = cantor_add(*M.K, M.f, acc, cur);
    }
    return acc;
}

inline bool fixed_by_frobenius_m(const JacModel& M, const MumfordDivisor& D) {
    return frobenius_pow(M, D, M.m) == D;
}

// ---------------------------------------------------------------------------
// Group order from the Weil polynomial: N_m = prod_i (1 - pi_i^m) =
// det(I - C^m) for the companion matrix C of psi.
// ---------------------------------------------------------------------------
inline Int jacobian_order(const std::vector<Int>& psi, unsigned m) {
    if (psi.size() != 5 || psi[4] != 1)
        throw std::invalid_argument("jacobian_order: psi must be monic of degree 4");
    std::array<std::array<Int, 4>, 4> C{};
    for (int i = 0; i < 3; ++i) C[i + 1][i] = 1;
    for (int i = 0; i < 4; ++i) C[i][3] = -psi[i];
    auto matmul = [](const auto& A, const auto& B) {
        std::array<std::array<Int, 4>, 4> R{};
        for (int i = 0; i < 4; ++i)
            for (int k = 0; k < 4; ++k)
                for (int jj = 0; jj < 4; ++jj) R[i][jj] += A[i][k] * B[k][jj];
        return R;
    };
    std::array<std::array<Int, 4>, 4> P{};
    for (int i = 0; i < 4; ++i) P[i][i] = 1;
    for (unsigned k = 0; k < m; ++k) P = matmul(P, C);
    QMat A(4, QVec(4));
    for (int i = 0; i < 4; ++i)
        for (int jj = 0; jj < 4; ++jj) A[i][jj] = Rat((i == jj ? 1 : 0) - P[i][jj]);
    Rat det = qdet(A);
    Int N = det.get_num();
    if (det.get_den() != 1) throw std::logic_error("jacobian_order: non-integral determinant");
    return N < 0 ? Int(-N) : N;
}

// ---------------------------------------------------------------------------
// Sylow subgroups, torsion bases, Frobenius matrices.
// ---------------------------------------------------------------------------

using DivKey = std::vector<std::uint64_t>;

// Fully enumerate the q-Sylow subgroup of J(C)(F_{p^m}) (order = q-part of
// N_m), by cofactor-multiplying trace-projected random points.  The known
// Sylow order is the completion certificate.
struct SylowGroup {
    Int order = 1;  // q^val
    std::map<DivKey, MumfordDivisor> elems;
    std::vector<MumfordDivisor> gens;
};

inline SylowGroup sylow_subgroup(const JacModel& M, const Int& Nm, const Int& q,
                                 std::uint64_t seed, std::uint64_t budget = 4096) {
    const Field& K = *M.K;
    Int qval = 1, cof = Nm;
    while (cof % q == 0) {
        cof /= q;
        qval *= q;
    }
    SylowGroup S;
    S.order = qval;
    if (qval > 1000000) throw std::runtime_error("sylow_subgroup: Sylow order above desk-scale bound");
    MumfordDivisor id = div_identity(K);
    S.elems.emplace(div_key(K, id), id);
    if (qval == 1) return S;
    std::mt19937_64 rng(seed);
    for (std::uint64_t it = 0; it < budget; ++it) {
        MumfordDivisor Q = random_point(K, M.f, rng);
        Q = trace_to_subgroup(M, Q);
        Q = scalar_mul(K, M.f, cof, Q);
        if (S.elems.count(div_key(K, Q))) continue;
        S.gens.push_back(Q);
        // <H, Q> = union of cosets H + kQ while kQ is outside H (abelian).
        std::map<DivKey, MumfordDivisor> span = S.elems;
        MumfordDivisor shift = Q;
        while (!S.elems.count(div_key(K, shift))) {
            for (auto& [k, e] : S.elems) {
                MumfordDivisor t = cantor_add(K, M.f, e, shift);
                span.emplace(div_key(K, t), t);
            }
            shift = cantor_add(K, M.f, shift, Q);
        }
        S.elems = std::move(span);
        if (Int(static_cast<long>(S.elems.size())) == qval) return S;
        if (Int(static_cast<long>(S.elems.size())) > qval)
            throw std::logic_error("sylow_subgroup: span exceeds Sylow order");
    }
    throw std::runtime_error("sylow_subgroup: budget exhausted");
}

struct TorsionBasis {
    unsigned s = 0;
    unsigned m = 0;  // J[s] is rational over F_{p^m}
    JacModel model;
    std::array<MumfordDivisor, 4> D;
};

namespace detail {

// Elements of order dividing s inside an enumerated Sylow group.
inline std::vector<MumfordDivisor> kernel_of_s(const JacModel& M, const SylowGroup& S, Int s) {
    std::vector<MumfordDivisor> out;
    for (auto& [k, e] : S.elems)
        if (div_is_identity(scalar_mul(*M.K, M.f, s, e))) out.push_back(e);
    return out;
}

// Try to pick 4 independent generators of a group known to be (Z/s)^4,
// presented as the flat element list `grp` of size s^4.
inline std::optional<std::array<MumfordDivisor, 4>> pick_basis(const JacModel& M,
                                                              const std::vector<MumfordDivisor>& grp,
                                                              std::uint64_t s,
                                                              std::mt19937_64& rng) {
    const Field& K = *M.K;
    Int target = Int(static_cast<unsigned long>(s));
    target = target * target * target * target;
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::array<MumfordDivisor, 4> cand;
        for (auto& c : cand) c = grp[rng() % grp.size()];
        // Span all s^4 combinations; distinctness certifies independence.
        std::set<DivKey> seen;
        bool ok = true;
        std::vector<MumfordDivisor> sums = {div_identity(K)};
        for (int i = 0; i < 4 && ok; ++i) {
            std::vector<MumfordDivisor> nxt;
            nxt.reserve(sums.size() * s);
            for (auto& base : sums) {
                MumfordDivisor cur = base;
                nxt.push_back(cur);
                for (std::uint64_t k = 1; k < s; ++k) {
                    cur = cantor_add(K, M.f, cur, cand[i]);
                    nxt.push_back(cur);
                }
            }
            sums = std::move(nxt);
        }
        for (auto& e : sums) {
            if (!seen.insert(div_key(K, e)).second) {
                ok = false;
                break;
            }
        }
        if (ok && Int(static_cast<long>(sums.size())) == target) return cand;
    }
    return std::nullopt;
}

}  // namespace detail

// Upper bound for the torsion field degree: the order of t in (Z/s)[t]/(psi).
inline unsigned torsion_field_degree_bound(const std::vector<Int>& psi, std::uint64_t s) {
    Int S(static_cast<unsigned long>(s));
    // Multiply a residue (degree < 4, coefficients mod s) by t modulo psi.
    auto mul_t = [&](const std::array<Int, 4>& v) {
        std::array<Int, 4> r{};
        for (int i = 0; i < 4; ++i) r[i] = (i > 0 ? v[i - 1] : Int(0)) - v[3] * psi[i];
        for (auto& x : r) x = mod_pos(x, S);
        return r;
    };
    std::array<Int, 4> cur = mul_t({1, 0, 0, 0});  // t^1
    const std::array<Int, 4> one = {1, 0, 0, 0};
    std::uint64_t bound = s * s * s * s;
    for (std::uint64_t k = 1; k <= bound; ++k) {
        if (cur == one) return static_cast<unsigned>(k);
        cur = mul_t(cur);
    }
    throw std::logic_error("torsion_field_degree_bound: t has no finite order mod (psi, s)");
}

// Find minimal m with J[s] rational over F_{p^m} and build a (Z/s)^4 basis.
// s may be composite (prime parts are combined by CRT); gcd(s, p) = 1 and
// s^4 <= 10^6.
inline TorsionBasis torsion_basis(std::uint64_t p, const FpVec& sextic, const std::vector<Int>& psi,
                                  std::uint64_t s, std::uint64_t seed = 3) {
    if (s < 2 || std::gcd(s, p) != 1)
        throw std::invalid_argument("torsion_basis: s must be >= 2 and coprime to p");
    std::uint64_t s4 = s * s * s * s;
    if (s4 > 1000000) throw std::invalid_argument("torsion_basis: s^4 above desk-scale bound");
    auto fac = factorize(Int(static_cast<unsigned long>(s)));
    unsigned M = torsion_field_degree_bound(psi, s);
    for (unsigned m = 1; m <= M; ++m) {
        Int Nm = jacobian_order(psi, m);
        // Cheap necessary condition.
        Int s4i = Int(static_cast<unsigned long>(s));
        s4i = s4i * s4i * s4i * s4i;
        if (Nm % s4i != 0) continue;
        JacModel model = make_jac_model(p, sextic, m, seed);
        std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15uLL);
        // Per prime-power part: enumerate Sylow, take kernel of q^a, pick basis.
        bool all_ok = true;
        std::array<MumfordDivisor, 4> combined;
        for (auto& d : combined) d = div_identity(*model.K);
        for (auto& [q, a] : fac) {
            Int qa = 1;
            for (unsigned i = 0; i < a; ++i) qa *= q;
            SylowGroup syl;
            try {
                syl = sylow_subgroup(model, Nm, q, seed + m * 131 + q.get_ui());
            } catch (const std::runtime_error&) {
                all_ok = false;
                break;
            }
            auto ker = detail::kernel_of_s(model, syl, qa);
            Int want = qa * qa * qa * qa;
            if (Int(static_cast<long>(ker.size())) != want) {
                all_ok = false;
                break;
            }
            auto basis = detail::pick_basis(model, ker, qa.get_ui(), rng);
            if (!basis) {
                all_ok = false;
                break;
            }
            for (int i = 0; i < 4; ++i)
                combined[i] = cantor_add(*model.K, model.f, combined[i], (*basis)[i]);
        }
        if (!all_ok) continue;
        TorsionBasis B;
        B.s = static_cast<unsigned>(s);
        B.m = m;
        B.model = model;
        B.D = combined;
        return B;
    }
    throw std::runtime_error("torsion_basis: no torsion field found up to the certified bound");
}

struct FrobMatrix {
    unsigned s;
    std::array<std::array<std::uint64_t, 4>, 4> F;  // columns: images of basis
};

namespace detail {

// DL table: serialize every combination sum a_i D_i -> (a_1..a_4).
inline std::map<DivKey, std::array<std::uint64_t, 4>> dl_table(const TorsionBasis& B) {
    const Field& K = *B.model.K;
    std::map<DivKey, std::array<std::uint64_t, 4>> T;
    std::vector<std::pair<MumfordDivisor, std::array<std::uint64_t, 4>>> sums = {
        {div_identity(K), {0, 0, 0, 0}}};
    for (int i = 0; i < 4; ++i) {
        std::vector<std::pair<MumfordDivisor, std::array<std::uint64_t, 4>>> nxt;
        nxt.reserve(sums.size() * B.s);
        for (auto& [base, coords] : sums) {
            MumfordDivisor cur = base;
            auto cc = coords;
            nxt.push_back({cur, cc});
            for (std::uint64_t k = 1; k < B.s; ++k) {
                cur = cantor_add(K, B.model.f, cur, B.D[i]);
                cc[i] = k;
                nxt.push_back({cur, cc});
            }
        }
        sums = std::move(nxt);
    }
    for (auto& [d, coords] : sums) T.emplace(div_key(K, d), coords);
    if (T.size() != sums.size()) throw std::logic_error("dl_table: basis not independent");
    return T;
}

}  // namespace detail

inline FrobMatrix frobenius_matrix(const TorsionBasis& B) {
    auto T = detail::dl_table(B);
    FrobMatrix F;
    F.s = B.s;
    for (int i = 0; i < 4; ++i) {
        MumfordDivisor img = frobenius_div(B.model, B.D[i]);
        auto it = T.find(div_key(*B.model.K, img));
        if (it == T.end()) throw std::logic_error("frobenius_matrix: image not in span");
        for (int row = 0; row < 4; ++row) F.F[row][i] = it->second[row];
    }
    return F;
}

// 4x4 matrix inverse mod s via adjugate (s need not be prime; det must be a
// unit mod s).
inline std::array<std::array<std::uint64_t, 4>, 4> mat_inverse_mod(
    const std::array<std::array<std::uint64_t, 4>, 4>& A, std::uint64_t s) {
    auto minor3 = [&](int r0, int c0) {
        long long m[3][3];
        int rr = 0;
        for (int r = 0; r < 4; ++r) {
            if (r == r0) continue;
            int cc = 0;
            for (int c = 0; c < 4; ++c) {
                if (c == c0) continue;
                m[rr][cc++] = static_cast<long long>(A[r][c]);
            }
            ++rr;
        }
        long long det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                        m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                        m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        long long sm = static_cast<long long>(s);
        return static_cast<std::uint64_t>(((det % sm) + sm) % sm);
    };
    std::uint64_t det = 0;
    for (int c = 0; c < 4; ++c) {
        std::uint64_t term = (A[0][c] * minor3(0, c)) % s;
        det = c % 2 == 0 ? (det + term) % s : (det + s - term % s) % s;
    }
    Int dinv = mod_inverse(Int(static_cast<unsigned long>(det)), Int(static_cast<unsigned long>(s)));
    std::uint64_t di = dinv.get_ui();
    std::array<std::array<std::uint64_t, 4>, 4> R{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            std::uint64_t cof = minor3(c, r);
            if ((r + c) % 2 == 1) cof = (s - cof % s) % s;
            R[r][c] = (cof * di) % s;
        }
    return R;
}

inline FrobMatrix verschiebung_matrix(const FrobMatrix& F, std::uint64_t p) {
    auto Finv = mat_inverse_mod(F.F, F.s);
    FrobMatrix V;
    V.s = F.s;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) V.F[r][c] = (Finv[r][c] * (p % F.s)) % F.s;
    return V;
}

}  // namespace g2crt
