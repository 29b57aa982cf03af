#pragma once

// Weil numbers of a quartic CM field: the relative norm equation
// N_{K/K0}(pi) = p, prime splitting classification, the possible Jacobian
// group orders, the prime-selection test of the main algorithm, and recovery
// of the CM field from a target zeta function.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cmfield.hpp"
#include "ff.hpp"
#include "nt.hpp"
#include "poly.hpp"
#include "qlinalg.hpp"

namespace g2crt {

struct FrobeniusCandidate {
    CMElement pi;
    Int p;
    std::vector<Int> charpoly;  // {c0..c3, 1}: t^4 - s1 t^3 + s2 t^2 - p s1 t + p^2
    // Coordinates over {1, sqrt d, eta, sqrt d * eta} (half-integers allowed).
    std::array<Rat, 4> coords() const { return pi.x; }
};

enum class SplitCase { none, inert_split, cyclic_split, dihedral_split };

inline std::string split_case_text(SplitCase c) {
    switch (c) {
        case SplitCase::none: return "none";
        case SplitCase::inert_split: return "inert-split";
        case SplitCase::cyclic_split: return "cyclic-split";
        case SplitCase::dihedral_split: return "dihedral-split";
    }
    return "?";
}

struct GroupOrderEntry {
    Int N1;  // #C(F_p) = p + 1 - s1(sign * pi)
    Int N;   // #J(F_p) = charpoly(sign * pi) evaluated at 1
    FrobeniusCandidate candidate;
    int sign;              // +1 or -1
    std::string ideal_class_tag;  // "P", "Q", or "single"
};

struct GroupOrderSet {
    Int p;
    SplitCase case_label = SplitCase::none;
    std::vector<GroupOrderEntry> entries;
};

namespace detail {

// Gram matrix of the positive-definite form x -> Tr_{K0/Q}(x * conj(x)) on
// the integral basis of O_K.
inline QMat trace_norm_gram(const CMField& K, const IntegralBasis& B) {
    auto tr_q = [&](const Quad& q) -> Rat { return 2 * q.u; };  // Tr_{K0/Q}(u + v sqrt d)
    QMat G(4, QVec(4));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            // (x xb + y xb-swapped)/2 symmetrized: Tr((B_i conj(B_j) + B_j conj(B_i))/2)
            CMElement s = K.add(K.mul(B.basis[i], K.conj(B.basis[j])),
                                K.mul(B.basis[j], K.conj(B.basis[i])));
            Quad rel{s.x[0], s.x[1]};  // the eta-part of x + conj(x) vanishes
            G[i][j] = tr_q(rel) / 2;
        }
    return G;
}

// Coordinate box |n_i| <= sqrt(t * (G^{-1})_{ii}) for {n : n^T G n <= t}.
inline std::array<Int, 4> gram_box(const QMat& G, const Rat& t) {
    std::array<Int, 4> box;
    for (int i = 0; i < 4; ++i) {
        QVec e(4);
        e[i] = 1;
        auto col = qsolve(G, e);
        if (!col) throw std::logic_error("gram_box: Gram matrix singular");
        Rat bb = t * (*col)[i];
        if (bb < 0) throw std::logic_error("gram_box: negative bound (form not positive definite)");
        // ceil(sqrt(bb)) with a +1 safety margin
        Int num = bb.get_num(), den = bb.get_den();
        box[i] = isqrt(num / den) + 2;
    }
    return box;
}

// All integral x = sum n_i B_i with Tr(x conj(x)) <= bound (exhaustive).
template <typename Fn>
inline void enumerate_small_trace(const CMField& K, const IntegralBasis& B, const Rat& bound,
                                  Fn&& visit) {
    QMat G = trace_norm_gram(K, B);
    auto box = gram_box(G, bound);
    std::array<Int, 4> n;
    for (n[0] = -box[0]; n[0] <= box[0]; ++n[0])
        for (n[1] = -box[1]; n[1] <= box[1]; ++n[1])
            for (n[2] = -box[2]; n[2] <= box[2]; ++n[2])
                for (n[3] = -box[3]; n[3] <= box[3]; ++n[3]) {
                    Rat q = 0;
                    for (int i = 0; i < 4; ++i)
                        for (int j = 0; j < 4; ++j) q += G[i][j] * Rat(n[i] * n[j]);
                    if (q > bound) continue;
                    CMElement x{};
                    for (int i = 0; i < 4; ++i)
                        x = K.add(x, K.smul(Rat(n[i]), B.basis[i]));
                    visit(x);
                }
}

inline std::vector<std::uint64_t> elem_key(const CMElement& x) {
    std::vector<std::uint64_t> k;
    for (auto& c : x.x) {
        Int n = c.get_num(), d = c.get_den();
        k.push_back(static_cast<std::uint64_t>(static_cast<long>(mpz_get_si(n.get_mpz_t()))));
        k.push_back(d.get_ui());
    }
    return k;
}

// Canonical representative of the orbit {x, -x, conj x, -conj x}.
inline CMElement orbit_rep(const CMField& K, const CMElement& x) {
    CMElement best = x;
    auto better = [&](const CMElement& c) {
        if (elem_key(c) < elem_key(best)) best = c;
    };
    better(K.neg(x));
    better(K.conj(x));
    better(K.neg(K.conj(x)));
    return best;
}

// alpha and beta generate the same O_K-ideal iff both quotients are integral.
inline bool same_ideal(const CMField& K, const IntegralBasis& B, const CMElement& a,
                       const CMElement& b) {
    return B.is_integral(K, K.mul(a, K.inv(b))) && B.is_integral(K, K.mul(b, K.inv(a)));
}

// Discriminant of an integer quartic via the Sylvester resultant with f'.
inline Int quartic_disc(const std::vector<Rat>& f) {
    if (f.size() != 5) throw std::invalid_argument("quartic_disc: need degree 4");
    std::vector<Rat> df = {f[1], 2 * f[2], 3 * f[3], 4 * f[4]};
    QMat S(7, QVec(7));
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c <= 4; ++c) S[r][r + c] = f[4 - c];
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c <= 3; ++c) S[3 + r][r + c] = df[3 - c];
    Rat res = qdet(S);
    Rat disc = res / f[4];  // (-1)^{4*3/2} = +1
    if (disc.get_den() != 1) throw std::logic_error("quartic_disc: non-integral");
    return disc.get_num();
}

// Brute-force factor degrees for tiny p (below the Fp characteristic floor).
inline std::vector<int> factor_degrees_small_p(const std::vector<Rat>& quartic, std::uint64_t p) {
    std::vector<std::uint64_t> f;
    for (auto& c : quartic)
        f.push_back(mod_pos(c.get_num(), Int(static_cast<unsigned long>(p))).get_ui());
    auto divide_out = [&](std::vector<std::uint64_t>& g, const std::vector<std::uint64_t>& q)
        -> std::optional<std::vector<std::uint64_t>> {
        // g / q if exact, over Z/p, q monic
        std::vector<std::uint64_t> rem = g, quo(g.size() - q.size() + 1, 0);
        for (int i = static_cast<int>(rem.size()) - 1; i >= static_cast<int>(q.size()) - 1; --i) {
            std::uint64_t c = rem[i] % p;
            quo[i - (q.size() - 1)] = c;
            for (std::size_t k = 0; k < q.size(); ++k)
                rem[i - (q.size() - 1) + k] = (rem[i - (q.size() - 1) + k] + p * q[k] - c * q[k] % p) % p;
        }
        for (std::size_t k = 0; k + 1 < q.size(); ++k)
            if (rem[k] % p != 0) return std::nullopt;
        return quo;
    };
    std::vector<int> degs;
    std::vector<std::uint64_t> g = f;
    // linear factors
    bool progress = true;
    while (progress && g.size() > 1) {
        progress = false;
        for (std::uint64_t r = 0; r < p && !progress; ++r) {
            std::uint64_t val = 0, xp = 1;
            for (auto c : g) { val = (val + c % p * xp) % p; xp = xp * r % p; }
            if (val == 0) {
                auto q = divide_out(g, {(p - r) % p, 1});
                g = *q;
                degs.push_back(1);
                progress = true;
            }
        }
    }
    // quadratic factors among the rootless remainder
    progress = true;
    while (progress && g.size() > 3) {
        progress = false;
        for (std::uint64_t c0 = 0; c0 < p && !progress; ++c0)
            for (std::uint64_t c1 = 0; c1 < p && !progress; ++c1) {
                auto q = divide_out(g, {c0, c1, 1});
                if (q) {
                    g = *q;
                    degs.push_back(2);
                    progress = true;
                }
            }
    }
    if (g.size() > 1) degs.push_back(static_cast<int>(g.size()) - 1);
    std::sort(degs.begin(), degs.end());
    return degs;
}

// Multiset of irreducible-factor degrees of a squarefree quartic mod p.
inline std::vector<int> factor_degrees_mod_p(const std::vector<Rat>& quartic, std::uint64_t p) {
    if (p < 7) return factor_degrees_small_p(quartic, p);
    auto F = make_prime_field(p);
    FPoly f;
    for (auto& c : quartic) {
        if (c.get_den() != 1) throw std::invalid_argument("factor_degrees_mod_p: non-integral");
        f.push_back(F->from_base(mod_pos(c.get_num(), Int(static_cast<unsigned long>(p))).get_ui()));
    }
    poly_trim(*F, f);
    if (poly_deg(f) != 4) throw std::invalid_argument("factor_degrees_mod_p: degree drop mod p");
    f = poly_monic(*F, f);
    std::vector<int> degs;
    FPoly rem = f;
    Int q(static_cast<unsigned long>(p));
    FPoly xq = poly_x(*F);
    for (int dd = 1; dd <= 4 && poly_deg(rem) > 0; ++dd) {
        Int qd;
        mpz_pow_ui(qd.get_mpz_t(), q.get_mpz_t(), dd);
        xq = poly_powmod(*F, poly_x(*F), qd, rem);
        FPoly g = poly_gcd(*F, poly_sub(*F, xq, poly_x(*F)), rem);
        int count = poly_deg(g) / dd;
        for (int i = 0; i < count; ++i) degs.push_back(dd);
        rem = poly_divmod(*F, rem, g).first;
    }
    if (poly_deg(rem) > 0) degs.push_back(poly_deg(rem));
    return degs;
}

// A degree-4 generator theta of O_K with p not dividing [O_K : Z[theta]]
// (Dedekind-applicable); returns its integral minimal polynomial.
inline std::vector<Rat> dedekind_generator_minpoly(const CMField& K, const IntegralBasis& B,
                                                   const Int& p) {
    CMElement eta = CMField::eta();
    CMElement w = K.omega();
    for (int k = 0; k <= 24; ++k) {
        CMElement theta = K.add(eta, K.smul(Rat(k), w));
        auto mp = K.minpoly(theta);
        if (mp.size() != 5) continue;
        bool integral = true;
        for (auto& c : mp) integral = integral && c.get_den() == 1;
        if (!integral) continue;
        Int df = quartic_disc(mp);
        // v_p(disc f) = v_p(disc K) + 2 v_p(index); equal valuations mean
        // p does not divide the index.
        int vf = 0, vK = 0;
        Int t = abs(df);
        while (t % p == 0) { t /= p; ++vf; }
        t = abs(B.disc_K);
        while (t % p == 0) { t /= p; ++vK; }
        if (vf == vK) return mp;
    }
    throw std::runtime_error("dedekind_generator_minpoly: no p-good generator found");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// solve_relative_norm: all pi in O_K with pi * conj(pi) = p, up to sign and
// conjugation.  Search region: Tr(pi conj pi) = 2p on the positive-definite
// trace form, enumerated exhaustively inside the exact coordinate box.
// ---------------------------------------------------------------------------
inline std::vector<FrobeniusCandidate> solve_relative_norm(const CMFieldParams& params,
                                                           const Int& p) {
    CMField K(params);
    IntegralBasis B = ring_of_integers(K);
    if (B.disc_K % p == 0)
        throw std::invalid_argument("solve_relative_norm: p must be unramified");
    std::map<std::vector<std::uint64_t>, CMElement> orbits;
    detail::enumerate_small_trace(K, B, Rat(2 * p), [&](const CMElement& x) {
        Quad rn = K.rel_norm(x);
        if (!(rn.u == Rat(p) && rn.v == 0)) return;
        CMElement rep = detail::orbit_rep(K, x);
        orbits.emplace(detail::elem_key(rep), rep);
    });
    std::vector<FrobeniusCandidate> out;
    for (auto& [k, pi] : orbits) {
        auto mp = K.minpoly(pi);
        if (mp.size() != 5) continue;  // pi must generate K (always, for odd unramified p)
        FrobeniusCandidate c;
        c.pi = pi;
        c.p = p;
        for (auto& co : mp) {
            if (co.get_den() != 1) throw std::logic_error("solve_relative_norm: non-integral charpoly");
            c.charpoly.push_back(co.get_num());
        }
        if (c.charpoly[0] != p * p || c.charpoly[1] != p * c.charpoly[3])
            throw std::logic_error("solve_relative_norm: charpoly lacks Weil shape");
        out.push_back(std::move(c));
    }
    return out;
}

inline SplitCase splitting_type(const CMFieldParams& params, const Int& p) {
    CMField K(params);
    IntegralBasis B = ring_of_integers(K);
    if (B.disc_K % p == 0)
        throw std::invalid_argument("splitting_type: p must be unramified");
    auto mp = detail::dedekind_generator_minpoly(K, B, p);
    auto degs = detail::factor_degrees_mod_p(mp, p.get_ui());
    bool all_linear = degs.size() == 4;
    if (all_linear)
        return params.galois_type == GaloisType::cyclic ? SplitCase::cyclic_split
                                                        : SplitCase::dihedral_split;
    int kron = kronecker(params.d, p);
    if (kron == -1 && degs.size() == 2 && degs[0] == 2 && degs[1] == 2)
        return SplitCase::inert_split;
    return SplitCase::none;
}

// ---------------------------------------------------------------------------
// group_orders: N = prod(1 - sign*pi_i) for each solution orbit and sign; in
// the dihedral case, orbits are tagged by which relative-norm ideal class
// (P or Q) they generate, tested by ideal equality up to conjugation.
// ---------------------------------------------------------------------------
inline GroupOrderSet group_orders(const CMFieldParams& params, const Int& p) {
    GroupOrderSet S;
    S.p = p;
    S.case_label = splitting_type(params, p);
    auto sols = solve_relative_norm(params, p);
    if (sols.empty()) return S;
    CMField K(params);
    IntegralBasis B = ring_of_integers(K);
    // Group orbits into ideal classes (same ideal up to conjugation).
    std::vector<std::vector<const FrobeniusCandidate*>> classes;
    for (auto& c : sols) {
        bool placed = false;
        for (auto& cls : classes) {
            const CMElement& rep = cls.front()->pi;
            if (detail::same_ideal(K, B, c.pi, rep) ||
                detail::same_ideal(K, B, K.conj(c.pi), rep)) {
                cls.push_back(&c);
                placed = true;
                break;
            }
        }
        if (!placed) classes.push_back({&c});
    }
    std::set<std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>>> seen;
    auto int_key = [](const Int& n) {
        std::vector<std::uint64_t> k;
        k.push_back(n < 0);
        Int a = abs(n);
        while (a > 0) { k.push_back(mpz_get_ui(a.get_mpz_t())); a >>= 64; }
        return k;
    };
    int cls_idx = 0;
    for (auto& cls : classes) {
        std::string tag = (params.galois_type == GaloisType::cyclic || classes.size() == 1)
                              ? "single"
                              : (cls_idx == 0 ? "P" : "Q");
        ++cls_idx;
        const FrobeniusCandidate& c = *cls.front();
        for (int sign : {+1, -1}) {
            // charpoly of sign*pi evaluated at 1, and s1(sign*pi).
            Int N = 0, s1;
            for (int i = 0; i <= 4; ++i) {
                Int coef = c.charpoly[i];
                if (sign == -1 && (4 - i) % 2 == 1) coef = -coef;
                N += coef;
            }
            s1 = -(sign == -1 ? -c.charpoly[3] : c.charpoly[3]);
            Int N1 = p + 1 - s1;
            if (!seen.insert({int_key(N1), int_key(N)}).second) continue;
            GroupOrderEntry e;
            e.N1 = N1;
            e.N = N;
            e.candidate = c;
            e.sign = sign;
            e.ideal_class_tag = tag;
            S.entries.push_back(std::move(e));
        }
    }
    if (S.entries.size() != 0 && S.entries.size() != 2 && S.entries.size() != 4)
        throw std::logic_error("group_orders: entry count not in {0, 2, 4}");
    return S;
}

// ---------------------------------------------------------------------------
// theorem1_prime_test: condition 1(a) of the main algorithm.
// Cyclic case (K* = K): p splits completely and all four primes above p are
// principal, certified by finding four pairwise non-associate elements of
// absolute norm p inside the balanced-generator search box.
// Dihedral case: p splits completely and both relative-norm ideals are
// principal, i.e. the norm equation has solutions in two ideal classes
// (4 group orders).
// ---------------------------------------------------------------------------
inline bool theorem1_prime_test(const CMFieldParams& params, const Int& p,
                                const std::set<Int>& excluded = {}) {
    if (excluded.count(p)) return false;
    CMField K(params);
    IntegralBasis B = ring_of_integers(K);
    if (B.disc_K % p == 0)
        throw std::invalid_argument("theorem1_prime_test: p must be unramified");
    SplitCase sc = splitting_type(params, p);
    if (params.galois_type == GaloisType::dihedral) {
        if (sc != SplitCase::dihedral_split) return false;
        return group_orders(params, p).entries.size() == 4;
    }
    if (sc != SplitCase::cyclic_split) return false;
    // The splitting-into-principal-ideals condition enters the algorithm only
    // through the existence of a Weil number pi with pi * conj(pi) = p (the
    // type-norm products of the primes above p being principal with a
    // generator of relative norm exactly p).  Individual primes above p need
    // not be principal when h(K) > 1 -- they are not for the worked example
    // (13, 3, 13) at p = 43 -- so test norm-equation solvability directly.
    return !solve_relative_norm(params, p).empty();
}

struct PrimeSelection {
    std::vector<Int> primes;
    bool complete = false;  // product exceeded target before the search bound
};

inline PrimeSelection select_primes(const CMFieldParams& params, const Int& target_product,
                                    const std::set<Int>& excluded = {},
                                    const Int& search_bound = 100000) {
    if (target_product < 1) throw std::invalid_argument("select_primes: target_product >= 1");
    CMField K(params);
    IntegralBasis B = ring_of_integers(K);
    PrimeSelection out;
    Int prod = 1;
    for (Int p = 3; p <= search_bound; p += 2) {
        if (!is_prime(p)) continue;
        if (B.disc_K % p == 0) continue;  // ramified: silently skipped
        if (excluded.count(p)) continue;
        if (!theorem1_prime_test(params, p, excluded)) continue;
        out.primes.push_back(p);
        prod *= p;
        if (prod > target_product) {
            out.complete = true;
            return out;
        }
    }
    return out;  // partial set, complete = false
}

// ---------------------------------------------------------------------------
// field_from_zeta: invert N1 = n + 1 - s1, N2 = n^2 + 1 + 2 s2 - s1^2, and
// rebuild K from the Weil quartic t^4 - s1 t^3 + s2 t^2 - n s1 t + n^2.
// ---------------------------------------------------------------------------
struct ZetaField {
    CMFieldParams params;
    Int s1, s2;
    std::vector<Int> charpoly;  // {n^2, -n*s1, s2, -s1, 1}
};

inline ZetaField field_from_zeta(const Int& n, const Int& N1, const Int& N2) {
    Int s1 = n + 1 - N1;
    Int twos2 = N2 - n * n - 1 + s1 * s1;
    if (twos2 % 2 != 0) throw std::invalid_argument("field_from_zeta: non-integral s2");
    Int s2 = twos2 / 2;
    Int g = gcd(s2, n);
    if (g != 1) throw std::invalid_argument("field_from_zeta: gcd(s2, n) != 1 (non-ordinary)");
    // Real subfield: pi + conj pi has minimal polynomial t^2 - s1 t + (s2 - 2n).
    Int D = s1 * s1 - 4 * (s2 - 2 * n);
    if (D <= 0) throw std::invalid_argument("field_from_zeta: totally-real condition fails");
    if (perfect_sqrt(D)) throw std::invalid_argument("field_from_zeta: quartic reducible over Q");
    auto [d, f] = squarefree_decompose(D);
    // K = Q(i sqrt(a + b sqrt d)) with 4(4n - t^2) = a'' + b'' sqrt D scaled:
    Int a2 = 16 * n - s1 * s1 - D;  // = sum of embeddings of 4(4n - t^2)
    Int b2 = -2 * s1 * f;
    for (Int gg = 2; gg * gg <= abs(a2) || gg * gg <= abs(b2); ++gg) {
        while (a2 % (gg * gg) == 0 && b2 % (gg * gg) == 0) {
            a2 /= gg * gg;
            b2 /= gg * gg;
        }
        if (gg > 4096) break;
    }
    if (b2 == 0) throw std::invalid_argument("field_from_zeta: degenerate (biquadratic) quartic");
    ZetaField out;
    out.params = classify(a2, b2, d);  // throws on non-primitive / invalid shapes
    out.s1 = s1;
    out.s2 = s2;
    out.charpoly = {n * n, -n * s1, s2, -s1, 1};
    return out;
}

// Same quartic field, possibly via different (a, b, d) parameters:
// (a1 + b1 sqrt d) / (a2 + b2 sqrt d) must be a square in K0.
inline bool fields_equivalent(const CMFieldParams& P, const CMFieldParams& Q) {
    if (P.d != Q.d) return false;
    const Int& d = P.d;
    // ratio = (a1 + b1 sd)(a2 - b2 sd) / (a2^2 - b2^2 d) = u + v sd
    Rat den(Q.a * Q.a - Q.b * Q.b * d);
    Rat u = Rat(P.a * Q.a - P.b * Q.b * d) / den;
    Rat v = Rat(P.b * Q.a - P.a * Q.b) / den;
    // (s + t sd)^2 = u + v sd: s^2 + t^2 d = u, 2 s t = v.
    // 4 s^4 - 4 u s^2 + v^2 d = 0 -> s^2 = (u +- sqrt(u^2 - v^2 d)) / 2.
    Rat disc = u * u - v * v * Rat(d);
    auto rat_sqrt = [](const Rat& x) -> std::optional<Rat> {
        if (x < 0) return std::nullopt;
        auto n = perfect_sqrt(x.get_num());
        auto dd = perfect_sqrt(x.get_den());
        if (!n || !dd) return std::nullopt;
        return make_rat(*n, *dd);
    };
    auto sd = rat_sqrt(disc);
    if (!sd) return false;
    for (int sgn : {+1, -1}) {
        Rat s2v = (u + Rat(sgn) * *sd) / 2;
        auto s = rat_sqrt(s2v);
        if (s) return true;
    }
    return false;
}

}  // namespace g2crt
