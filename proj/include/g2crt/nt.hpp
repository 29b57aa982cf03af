#pragma once

// Integer and rational utilities shared across the toolkit: primality,
// factorization at desk scale, CRT with centered lifts, and continued-fraction
// rational reconstruction.  Backed by GMP (mpz_class / mpq_class).

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace g2crt {

using Int = mpz_class;
using Rat = mpq_class;

// mpq_class(num, den) does not canonicalize; always build rationals via this.
inline Rat make_rat(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

inline bool is_prime_u64(std::uint64_t n) { return is_prime(Int(static_cast<unsigned long>(n))); }

// Trial-division factorization; desk scale (inputs up to ~2^80 with small factors).
inline std::map<Int, unsigned> factorize(Int n) {
    if (n < 0) n = -n;
    if (n == 0) throw std::invalid_argument("factorize: zero");
    std::map<Int, unsigned> out;
    for (Int q = 2; q * q <= n;) {
        if (n % q == 0) {
            unsigned e = 0;
            while (n % q == 0) { n /= q; ++e; }
            out[q] = e;
        }
        q = (q == 2) ? Int(3) : Int(q + 2);
        if (q > 2000000) break;  // remaining cofactor handled below
    }
    if (n > 1) {
        if (!is_prime(n)) throw std::runtime_error("factorize: cofactor too hard at desk scale");
        out[n] += 1;
    }
    return out;
}

// Largest s with s^2 | n, returned as (squarefree part, s):  n = sf * s^2.
inline std::pair<Int, Int> squarefree_decompose(const Int& n) {
    if (n == 0) throw std::invalid_argument("squarefree_decompose: zero");
    Int sign = n < 0 ? -1 : 1;
    Int sf = 1, sq = 1;
    for (auto& [q, e] : factorize(n)) {
        for (unsigned i = 0; i + 1 < e; i += 2) sq *= q;
        if (e % 2) sf *= q;
    }
    return {sign * sf, sq};
}

// Exact integer square root if n is a perfect square.
inline std::optional<Int> perfect_sqrt(const Int& n) {
    if (n < 0) return std::nullopt;
    if (mpz_perfect_square_p(n.get_mpz_t())) {
        Int r;
        mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
        return r;
    }
    return std::nullopt;
}

inline Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

// Kronecker symbol (a|n).
inline int kronecker(const Int& a, const Int& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

inline Int mod_pos(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

inline Int mod_inverse(const Int& a, const Int& m) {
    Int r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
        throw std::domain_error("mod_inverse: not invertible");
    return r;
}

// CRT combine of (residue, modulus) pairs with pairwise coprime moduli.
// Returns (x, M) with x in [0, M).
inline std::pair<Int, Int> crt_combine(const std::vector<std::pair<Int, Int>>& parts) {
    Int x = 0, M = 1;
    for (auto& [r, m] : parts) {
        Int g;
        mpz_gcd(g.get_mpz_t(), M.get_mpz_t(), m.get_mpz_t());
        if (g != 1) throw std::invalid_argument("crt_combine: moduli not coprime");
        // x' = x + M * ((r - x) * M^-1 mod m)
        Int t = mod_pos((r - x) * mod_inverse(M, m), m);
        x += M * t;
        M *= m;
    }
    return {mod_pos(x, M), M};
}

// Centered lift: representative of a mod M in (-M/2, M/2].
inline Int centered_lift(const Int& a, const Int& M) {
    Int r = mod_pos(a, M);
    if (2 * r > M) r -= M;
    return r;
}

// Continued-fraction rational reconstruction: find n/d = a mod M with
// |n| <= nbound, 0 < d <= dbound, gcd(d, M) = 1.  Standard half-extended
// Euclidean algorithm on (M, a).
inline std::optional<Rat> rational_reconstruct(const Int& a0, const Int& M,
                                               const Int& nbound, const Int& dbound) {
    Int a = mod_pos(a0, M);
    Int r0 = M, r1 = a, t0 = 0, t1 = 1;
    while (r1 > nbound) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1, t2 = t0 - q * t1;
        r0 = r1; r1 = r2; t0 = t1; t1 = t2;
    }
    if (t1 == 0) return std::nullopt;
    Int n = r1, d = t1;
    if (d < 0) { d = -d; n = -n; }
    if (d > dbound) return std::nullopt;
    Int g;
    mpz_gcd(g.get_mpz_t(), M.get_mpz_t(), d.get_mpz_t());
    if (g != 1) return std::nullopt;
    Rat out(n, d);
    out.canonicalize();
    // Verify: n * d^-1 = a (mod M).
    if (mod_pos(out.get_num() - a * out.get_den(), M) != 0) return std::nullopt;
    return out;
}

}  // namespace g2crt
