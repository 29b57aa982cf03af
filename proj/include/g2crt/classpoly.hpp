#pragma once

// Igusa class polynomials H_{i,p} over F_p (the per-prime curve census) and
// their lift to rational H_i, either by CRT against a known denominator
// bound (Theorem 4.2) or by rational reconstruction with leave-one-out
// stability.

#include <array>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "endoring.hpp"
#include "igusa.hpp"
#include "jacobian.hpp"
#include "mestre.hpp"
#include "weil.hpp"

namespace g2crt {

struct CensusCurve {
    IgusaTriple triple;
    FpVec sextic;
    Int N1, N;  // verified zeta data: #C(F_p), #J(F_p)
    bool filter_pass = false;
    bool maximal = false;
};

struct ClassPolyModP {
    std::uint64_t p = 0;
    CMFieldParams params;
    std::array<FpVec, 3> H;  // monic H1p, H2p, H3p, lowest degree first
    // Census: curves with the right zeta function, torsion-filter
    // survivors, curves with maximal endomorphism ring.
    std::uint64_t census_isogeny = 0, census_filter = 0, census_final = 0;
    std::uint64_t unresolved_triples = 0;  // invariant triples with no model found
    std::vector<CensusCurve> curves;
    double seconds = 0;
};

namespace detail {

// Deterministic slice of Mestre (no long random fallback); nullopt marks the
// triple for the pooled random sweep.
inline std::optional<FpVec> mestre_light(const Fp& F, const IgusaTriple& want) {
    if (want.j1 == 0) return std::nullopt;
    ClebschInvariants cl = clebsch_from_igusa(F, igusa_from_triple(F, want));
    Conic Q = mestre_conic(F, cl);
    if (conic_det(F, Q) == 0) return std::nullopt;
    return mestre_construct(F, want, 1);
}

inline FpVec poly_from_roots(const Fp& F, const std::vector<std::uint64_t>& roots) {
    FpVec h = {1};
    for (auto r : roots) {
        FpVec nh(h.size() + 1, 0);
        for (std::size_t i = 0; i < h.size(); ++i) {
            nh[i + 1] = F.add(nh[i + 1], h[i]);
            nh[i] = F.sub(nh[i], F.mul(r, h[i]));
        }
        h = nh;
    }
    return h;
}

}  // namespace detail

// The per-prime class polynomial by the census procedure: enumerate all
// invariant triples, build a model for each, keep the curves whose zeta
// function matches the field's group-order set, then keep those with
// maximal endomorphism ring.  H_{i,p} = prod over the final classes of
// (X - j_i).
inline ClassPolyModP classpoly_mod_p(const CMFieldParams& params, std::uint64_t p,
                                     std::uint64_t seed = 11) {
    auto t0 = std::chrono::steady_clock::now();
    if (!theorem1_prime_test(params, p))
        throw std::invalid_argument("classpoly_mod_p: p fails the Theorem 1 prime test");
    CMField K(params);
    Fp F(p);
    auto F2 = make_ext_field(p, 2);
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + p);

    // Allowed (N1 -> list of (N, matched pi)) from the group-order set.
    GroupOrderSet gos = group_orders(params, p);
    std::multimap<Int, std::pair<Int, CMElement>> allowed;
    for (auto& e : gos.entries) {
        CMElement pe = e.sign == 1 ? e.candidate.pi : K.neg(e.candidate.pi);
        // Sanity: s1 of pe matches the stored N1.
        Int s1 = -K.minpoly(pe)[3].get_num();
        if (Int(static_cast<unsigned long>(p)) + 1 - s1 != e.N1)
            throw std::logic_error("classpoly_mod_p: sign/N1 mismatch in group orders");
        allowed.emplace(e.N1, std::pair<Int, CMElement>{e.N, pe});
    }

    ClassPolyModP out;
    out.p = p;
    out.params = params;

    // Pass 1: deterministic Mestre over all p^3 triples; collect the
    // degenerate ones (extra-automorphism locus, conic rank < 3) for a
    // pooled random sweep.
    std::map<IgusaTriple, FpVec> models;
    std::set<IgusaTriple> unresolved;
    for (std::uint64_t j1 = 1; j1 < p; ++j1)
        for (std::uint64_t j2 = 0; j2 < p; ++j2)
            for (std::uint64_t j3 = 0; j3 < p; ++j3) {
                IgusaTriple t{j1, j2, j3};
                auto f = detail::mestre_light(F, t);
                if (f)
                    models.emplace(t, *f);
                else
                    unresolved.insert(t);
            }
    // j1 = 0 means I2 = 0, which forces j2 = j3 = 0 as well: (0,0,0) is the
    // only realizable triple on that slice, so only it joins the sweep pool.
    unresolved.insert(IgusaTriple{0, 0, 0});
    // Pass 2: one shared random sweep resolves the leftovers with high
    // probability (each sample lands on a uniform-ish triple; budget is
    // many samples per unresolved triple on average).
    std::uint64_t budget = 40 * p * p * p;
    for (std::uint64_t it = 0; it < budget && !unresolved.empty(); ++it) {
        FpVec f(7);
        for (auto& c : f) c = rng() % p;
        if (f[6] == 0) f[6] = 1;
        IgusaInvariants I = igusa_from_clebsch(F, clebsch_invariants(F, f));
        if (I.I10 == 0) continue;
        IgusaTriple t = absolute_invariants(F, I);
        auto it2 = unresolved.find(t);
        if (it2 != unresolved.end()) {
            models.emplace(t, f);
            unresolved.erase(it2);
        }
    }
    out.unresolved_triples = unresolved.size();

    // Pass 3: zeta-function census.  Cheap filter first (random Jacobian
    // point killed by one of the allowed orders), then the full N2 count.
    // The census counts Fbar_p-isomorphism classes, i.e. one entry per Igusa
    // triple: a curve and its quadratic twist (Frobenius pi and -pi) are the
    // same member of the class, so only the first matching twist is recorded.
    std::set<IgusaTriple> final_triples;
    for (auto& [t, f0] : models) {
        std::uint64_t n1 = count_points(F, f0);
        FpVec members[2] = {f0, quadratic_twist(F, f0)};
        std::uint64_t n1s[2] = {n1, 2 * p + 2 - n1};
        for (int mi = 0; mi < 2; ++mi) {
            Int N1(static_cast<unsigned long>(n1s[mi]));
            auto range = allowed.equal_range(N1);
            if (range.first == range.second) continue;
            // Cheap order filter: multiply a random rational point by each
            // allowed order; all-miss rejects the curve.
            JacModel M = make_jac_model(p, members[mi], 1, seed + 1);
            bool cheap_ok = false;
            for (int attempt = 0; attempt < 3 && !cheap_ok; ++attempt) {
                MumfordDivisor Q = trace_to_subgroup(M, random_point(*M.K, M.f, rng));
                if (div_is_identity(Q)) {
                    cheap_ok = attempt == 2;  // degenerate draws: fall through
                    continue;
                }
                for (auto it3 = range.first; it3 != range.second; ++it3)
                    if (div_is_identity(scalar_mul(*M.K, M.f, it3->second.first, Q)))
                        cheap_ok = true;
                break;
            }
            if (!cheap_ok) continue;
            // Full confirmation via the degree-2 point count.
            std::uint64_t n2 = count_points_ext(*F2, members[mi]);
            Int Ntrue = jacobian_order_from_counts(N1, Int(static_cast<unsigned long>(n2)),
                                                   Int(static_cast<unsigned long>(p)));
            const CMElement* pi_eff = nullptr;
            for (auto it3 = range.first; it3 != range.second; ++it3)
                if (it3->second.first == Ntrue) pi_eff = &it3->second.second;
            if (!pi_eff) continue;
            if (t.j1 == 0)
                throw std::runtime_error(
                    "classpoly_mod_p: I2 = 0 curve in the CM isogeny class; the absolute "
                    "invariants degenerate and the class polynomials are not usable at this prime");
            CensusCurve cc;
            cc.triple = t;
            cc.sextic = members[mi];
            cc.N1 = N1;
            cc.N = Ntrue;
            ++out.census_isogeny;
            // Torsion-field filter, then the full endomorphism-ring test.
            std::vector<Int> psi;
            for (auto& c : K.minpoly(*pi_eff)) psi.push_back(c.get_num());
            cc.filter_pass = true;
            for (auto& [k, gk] : torsion_filter_levels(params, *pi_eff, p))
                if (!torsion_field_filter(p, members[mi], psi, k, gk, seed + 2))
                    cc.filter_pass = false;
            if (cc.filter_pass) {
                ++out.census_filter;
                cc.maximal = endo_ring_is_maximal(p, members[mi], params, *pi_eff, seed + 3);
                if (cc.maximal) {
                    ++out.census_final;
                    final_triples.insert(t);
                }
            }
            out.curves.push_back(cc);
            break;
        }
    }

    std::vector<std::uint64_t> r1, r2, r3;
    for (auto& t : final_triples) {
        r1.push_back(t.j1);
        r2.push_back(t.j2);
        r3.push_back(t.j3);
    }
    out.H = {detail::poly_from_roots(F, r1), detail::poly_from_roots(F, r2),
             detail::poly_from_roots(F, r3)};
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

struct ClassPolySet {
    CMFieldParams params;
    std::array<std::vector<Rat>, 3> H;  // rational H1, H2, H3, lowest first
    Int lambda = 1;                     // common denominator used or found
    std::vector<std::uint64_t> primes;  // the prime set S
};

namespace detail {

inline void check_parts(const std::vector<ClassPolyModP>& parts) {
    if (parts.empty()) throw std::invalid_argument("assemble: no parts");
    for (auto& q : parts)
        for (int i = 0; i < 3; ++i)
            if (q.H[i].size() != parts[0].H[i].size())
                throw std::runtime_error(
                    "assemble: class polynomial degrees differ across primes (a census is wrong)");
}

// CRT lift of residues r_j mod p_j to the residue mod prod p_j in [0, M).
inline Int crt_lift(const std::vector<Int>& rs, const std::vector<Int>& ms) {
    Int x = 0, M = 1;
    for (std::size_t j = 0; j < rs.size(); ++j) {
        // x' = x + M * ((r_j - x) / M mod p_j)
        Int t = mod_pos((rs[j] - x) * mod_inverse(mod_pos(M, ms[j]), ms[j]), ms[j]);
        x += M * t;
        M *= ms[j];
    }
    return x;
}

// Centered representative in (-M/2, M/2].
inline Int center(const Int& x, const Int& M) {
    Int r = mod_pos(x, M);
    return 2 * r > M ? r - M : r;
}

// Continued-fraction rational reconstruction of x mod M with |num|, den
// bounded by `bound`; nullopt when no admissible pair exists.
inline std::optional<Rat> rat_reconstruct(const Int& x, const Int& M, const Int& bound) {
    Int r0 = M, r1 = mod_pos(x, M), t0 = 0, t1 = 1;
    while (r1 > bound) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1, t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if (t1 == 0) return std::nullopt;
    if (abs(t1) > bound) return std::nullopt;
    if (gcd(r1, abs(t1)) != 1) return std::nullopt;
    if (t1 < 0) return make_rat(-r1, -t1);
    return make_rat(r1, t1);
}

}  // namespace detail

// Theorem 4.2 assembly: lambda * H_i has integer coefficients and the
// centred CRT lift recovers them once prod p > c = 2 lambda nu.
inline ClassPolySet crt_assemble(const std::vector<ClassPolyModP>& parts, const Int& lambda,
                                 const Rat& nu) {
    detail::check_parts(parts);
    Int M = 1;
    std::vector<Int> ms;
    for (auto& q : parts) {
        Int pz(static_cast<unsigned long>(q.p));
        if (gcd(lambda, pz) != 1)
            throw std::invalid_argument("crt_assemble: lambda shares a factor with a census prime");
        ms.push_back(pz);
        M *= pz;
    }
    Rat c = 2 * Rat(lambda) * nu;
    if (Rat(M) <= c) {
        std::ostringstream os;
        os << "crt_assemble: modulus product " << M << " insufficient, need > " << c
           << " (deficit factor " << Rat(c / M) << ")";
        throw std::runtime_error(os.str());
    }
    ClassPolySet out;
    out.params = parts[0].params;
    out.lambda = lambda;
    for (auto& q : parts) out.primes.push_back(q.p);
    for (int i = 0; i < 3; ++i) {
        out.H[i].resize(parts[0].H[i].size());
        for (std::size_t k = 0; k < out.H[i].size(); ++k) {
            std::vector<Int> rs;
            for (std::size_t j = 0; j < parts.size(); ++j)
                rs.push_back(mod_pos(lambda * Int(static_cast<unsigned long>(parts[j].H[i][k])),
                                     ms[j]));
            Int F = detail::center(detail::crt_lift(rs, ms), M);
            out.H[i][k] = make_rat(F, lambda);
        }
    }
    return out;
}

// Fallback assembly when lambda and nu are unknown: per-coefficient rational
// reconstruction mod prod p, accepted only when the value is stable under
// recomputation with each single prime left out.
inline std::optional<ClassPolySet> rational_reconstruct_assemble(
    const std::vector<ClassPolyModP>& parts) {
    if (parts.size() < 2) return std::nullopt;
    detail::check_parts(parts);
    std::vector<Int> ms;
    for (auto& q : parts) ms.push_back(Int(static_cast<unsigned long>(q.p)));
    auto reconstruct = [&](int i, std::size_t k,
                           std::size_t omit) -> std::optional<Rat> {
        std::vector<Int> rs, mm;
        for (std::size_t j = 0; j < parts.size(); ++j) {
            if (j == omit) continue;
            rs.push_back(Int(static_cast<unsigned long>(parts[j].H[i][k])));
            mm.push_back(ms[j]);
        }
        Int M = 1;
        for (auto& m : mm) M *= m;
        Int x = detail::crt_lift(rs, mm);
        return detail::rat_reconstruct(x, M, isqrt(M / 2));
    };
    ClassPolySet out;
    out.params = parts[0].params;
    for (auto& q : parts) out.primes.push_back(q.p);
    Int lam = 1;
    for (int i = 0; i < 3; ++i) {
        out.H[i].resize(parts[0].H[i].size());
        for (std::size_t k = 0; k < out.H[i].size(); ++k) {
            auto full = reconstruct(i, k, parts.size());
            if (!full) return std::nullopt;
            for (std::size_t omit = 0; omit < parts.size(); ++omit) {
                auto loo = reconstruct(i, k, omit);
                if (!loo || *loo != *full) return std::nullopt;
            }
            out.H[i][k] = *full;
            mpz_lcm(lam.get_mpz_t(), lam.get_mpz_t(), full->get_den().get_mpz_t());
        }
    }
    out.lambda = lam;
    return out;
}

// ---- versioned machine-readable records ----

inline std::string to_record(const ClassPolyModP& c) {
    std::ostringstream os;
    os << "{\"record\":\"classpoly_mod_p\",\"version\":1,\"field\":[" << c.params.a << ","
       << c.params.b << "," << c.params.d << "],\"p\":" << c.p << ",\"H\":[";
    for (int i = 0; i < 3; ++i) {
        os << (i ? ",[" : "[");
        for (std::size_t k = 0; k < c.H[i].size(); ++k) os << (k ? "," : "") << c.H[i][k];
        os << "]";
    }
    os << "],\"census\":{\"isogeny\":" << c.census_isogeny << ",\"filter\":" << c.census_filter
       << ",\"final\":" << c.census_final << ",\"unresolved_triples\":" << c.unresolved_triples
       << "},\"normalization\":\"monic-lowest-first\"}";
    return os.str();
}

inline std::string to_record(const ClassPolySet& s) {
    std::ostringstream os;
    os << "{\"record\":\"classpoly_set\",\"version\":1,\"field\":[" << s.params.a << ","
       << s.params.b << "," << s.params.d << "],\"lambda\":\"" << s.lambda << "\",\"primes\":[";
    for (std::size_t j = 0; j < s.primes.size(); ++j) os << (j ? "," : "") << s.primes[j];
    os << "],\"H\":[";
    for (int i = 0; i < 3; ++i) {
        os << (i ? ",[" : "[");
        for (std::size_t k = 0; k < s.H[i].size(); ++k)
            os << (k ? "," : "") << "[\"" << s.H[i][k].get_num() << "\",\"" << s.H[i][k].get_den()
               << "\"]";
        os << "]";
    }
    os << "],\"normalization\":\"monic-lowest-first\"}";
    return os.str();
}

}  // namespace g2crt
