#pragma once

// Prime fields F_p, extension fields F_{p^m} with a deterministically chosen
// modulus, and element arithmetic.  Characteristic 2, 3, 5 is rejected at this
// layer (the invariant theory downstream needs p >= 7); moduli are kept below
// 2^31 so products fit in 128-bit intermediates.

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "nt.hpp"

namespace g2crt {

// ---------------------------------------------------------------------------
// Raw scalar arithmetic mod p (used directly on hot paths).
// ---------------------------------------------------------------------------
struct Fp {
    std::uint64_t p;

    explicit Fp(std::uint64_t p_) : p(p_) {
        if (p >= (1ull << 31)) throw std::invalid_argument("Fp: modulus too large (desk scale caps p < 2^31)");
        if (!is_prime_u64(p)) throw std::invalid_argument("Fp: modulus not prime");
        if (p < 7) throw std::invalid_argument("Fp: characteristic 2, 3, 5 out of scope");
    }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const { std::uint64_t s = a + b; return s >= p ? s - p : s; }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p - b; }
    std::uint64_t neg(std::uint64_t a) const { return a ? p - a : 0; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
    }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
        std::uint64_t r = 1 % p;
        a %= p;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    std::uint64_t inv(std::uint64_t a) const {
        if (a % p == 0) throw std::domain_error("Fp: division by zero");
        return pow(a, p - 2);
    }
    std::uint64_t reduce(long long v) const {
        long long r = v % static_cast<long long>(p);
        if (r < 0) r += static_cast<long long>(p);
        return static_cast<std::uint64_t>(r);
    }
    std::uint64_t reduce(const Int& v) const { return mod_pos(v, Int(static_cast<unsigned long>(p))).get_ui(); }
    // Legendre symbol as +1 / 0 / -1.
    int legendre(std::uint64_t a) const {
        a %= p;
        if (a == 0) return 0;
        return pow(a, (p - 1) / 2) == 1 ? 1 : -1;
    }
};

// ---------------------------------------------------------------------------
// F_{p^m}: residue polynomials modulo a monic irreducible of degree m.
// Elements are coordinate vectors of length m (coefficient of x^i at index i).
// ---------------------------------------------------------------------------
class Field;
using FieldPtr = std::shared_ptr<const Field>;
using FElem = std::vector<std::uint64_t>;

class Field : public std::enable_shared_from_this<Field> {
  public:
    Fp fp;
    unsigned m;
    // Monic modulus x^m + mod_[m-1] x^{m-1} + ... + mod_[0]; empty for m = 1.
    std::vector<std::uint64_t> mod_;

    Field(std::uint64_t p, unsigned m_, std::vector<std::uint64_t> modulus)
        : fp(p), m(m_), mod_(std::move(modulus)) {
        if (m < 1) throw std::invalid_argument("Field: degree must be >= 1");
        if (mod_.size() != m) throw std::invalid_argument("Field: modulus size mismatch");
    }

    std::uint64_t p() const { return fp.p; }
    Int q() const {
        Int out = 1;
        for (unsigned i = 0; i < m; ++i) out *= static_cast<unsigned long>(p());
        return out;
    }
    bool same(const Field& o) const { return p() == o.p() && m == o.m && mod_ == o.mod_; }

    FElem zero() const { return FElem(m, 0); }
    FElem one() const { FElem e(m, 0); e[0] = 1; return e; }
    FElem from_int(long long v) const { FElem e(m, 0); e[0] = fp.reduce(v); return e; }
    FElem from_base(std::uint64_t v) const { FElem e(m, 0); e[0] = v % p(); return e; }
    // x, the residue class of the generator (requires m >= 2).
    FElem gen() const {
        if (m == 1) throw std::logic_error("Field::gen: trivial extension");
        FElem e(m, 0); e[1] = 1; return e;
    }
    bool is_zero(const FElem& a) const {
        for (auto c : a) if (c) return false;
        return true;
    }

    FElem add(const FElem& a, const FElem& b) const {
        FElem r(m);
        for (unsigned i = 0; i < m; ++i) r[i] = fp.add(a[i], b[i]);
        return r;
    }
    FElem sub(const FElem& a, const FElem& b) const {
        FElem r(m);
        for (unsigned i = 0; i < m; ++i) r[i] = fp.sub(a[i], b[i]);
        return r;
    }
    FElem neg(const FElem& a) const {
        FElem r(m);
        for (unsigned i = 0; i < m; ++i) r[i] = fp.neg(a[i]);
        return r;
    }
    FElem smul(std::uint64_t c, const FElem& a) const {
        FElem r(m);
        for (unsigned i = 0; i < m; ++i) r[i] = fp.mul(c % p(), a[i]);
        return r;
    }

    FElem mul(const FElem& a, const FElem& b) const {
        if (m == 1) return {fp.mul(a[0], b[0])};
        std::vector<std::uint64_t> prod(2 * m - 1, 0);
        for (unsigned i = 0; i < m; ++i) {
            if (!a[i]) continue;
            for (unsigned j = 0; j < m; ++j)
                prod[i + j] = fp.add(prod[i + j], fp.mul(a[i], b[j]));
        }
        // Reduce by the monic modulus.
        for (unsigned k = 2 * m - 2; k >= m; --k) {
            std::uint64_t c = prod[k];
            if (c) {
                for (unsigned i = 0; i < m; ++i)
                    prod[k - m + i] = fp.sub(prod[k - m + i], fp.mul(c, mod_[i]));
                prod[k] = 0;
            }
            if (k == m) break;
        }
        return FElem(prod.begin(), prod.begin() + m);
    }

    FElem pow(FElem a, Int e) const {
        if (e < 0) { a = inv(a); e = -e; }
        FElem r = one();
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    FElem inv(const FElem& a) const {
        if (is_zero(a)) throw std::domain_error("Field: division by zero");
        if (m == 1) return {fp.inv(a[0])};
        return pow(a, q() - 2);
    }
    FElem div(const FElem& a, const FElem& b) const { return mul(a, inv(b)); }

    // Coefficientwise p-power Frobenius of the base field lifts to a ^ p here.
    FElem frobenius(const FElem& a) const { return pow(a, Int(static_cast<unsigned long>(p()))); }

    bool is_square(const FElem& a) const {
        if (is_zero(a)) return true;
        return same_one(pow(a, (q() - 1) / 2));
    }

    // Deterministic square root: lexicographically smaller of the two roots by
    // coordinate comparison; nullopt for non-squares.
    std::optional<FElem> sqrt(const FElem& a) const {
        if (is_zero(a)) return zero();
        Int qq = q();
        if (qq < 1000) {
            // Exhaustive scan in enumeration order.
            for (Int idx = 1; idx < qq; ++idx) {
                FElem c = element_at(idx);
                if (mul(c, c) == a) return pick_smaller(c);
            }
            return std::nullopt;
        }
        if (!is_square(a)) return std::nullopt;
        if (mpz_fdiv_ui(qq.get_mpz_t(), 4) == 3) return pick_smaller(pow(a, (qq + 1) / 4));
        return pick_smaller(tonelli_shanks(a));
    }

    // Element with index i in the canonical enumeration: base-p digits, lowest
    // coordinate least significant.
    FElem element_at(Int idx) const {
        FElem e(m, 0);
        for (unsigned i = 0; i < m; ++i) {
            e[i] = mpz_fdiv_ui(idx.get_mpz_t(), p());
            idx /= static_cast<unsigned long>(p());
        }
        return e;
    }
    FElem random_element(std::mt19937_64& rng) const {
        FElem e(m);
        for (unsigned i = 0; i < m; ++i) e[i] = rng() % p();
        return e;
    }

  private:
    bool same_one(const FElem& a) const {
        if (a[0] != 1) return false;
        for (unsigned i = 1; i < m; ++i) if (a[i]) return false;
        return true;
    }
    FElem pick_smaller(FElem r) const {
        FElem s = neg(r);
        return s < r ? s : r;  // lexicographic vector comparison
    }
    FElem tonelli_shanks(const FElem& a) const {
        Int qq = q(), s = qq - 1;
        unsigned e = 0;
        while (mpz_even_p(s.get_mpz_t())) { s >>= 1; ++e; }
        // Deterministic non-residue: first element in enumeration order.
        FElem n;
        for (Int idx = 2;; ++idx) {
            n = element_at(idx);
            if (!is_zero(n) && !is_square(n)) break;
        }
        FElem z = pow(n, s);
        FElem x = pow(a, (s + 1) / 2);
        FElem b = pow(a, s);
        unsigned r = e;
        while (!same_one(b)) {
            unsigned k = 0;
            FElem t = b;
            while (!same_one(t)) { t = mul(t, t); ++k; }
            FElem g = z;
            for (unsigned i = 0; i + k + 1 < r; ++i) g = mul(g, g);
            z = mul(g, g);
            b = mul(b, z);
            x = mul(x, g);
            r = k;
        }
        return x;
    }
};

// ---------------------------------------------------------------------------
// Deterministic extension construction: the irreducible modulus of degree m
// whose coefficient tuple (c_{m-1}, ..., c_0) is smallest, i.e. smallest value
// of sum c_i p^i among monic irreducibles.
// ---------------------------------------------------------------------------
namespace detail {

// Irreducibility of a monic degree-m polynomial over F_p via the standard
// x^{p^m} = x test plus gcd(x^{p^{m/l}} - x, f) = 1 for prime l | m.
inline bool modpoly_irreducible(const Fp& fp, const std::vector<std::uint64_t>& c, unsigned m) {
    if (m == 1) return true;
    // Arithmetic in F_p[x]/(f) with f = x^m + sum c_i x^i.
    auto mulmod = [&](const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
        std::vector<std::uint64_t> prod(2 * m - 1, 0);
        for (unsigned i = 0; i < m; ++i) {
            if (!a[i]) continue;
            for (unsigned j = 0; j < m; ++j) prod[i + j] = fp.add(prod[i + j], fp.mul(a[i], b[j]));
        }
        for (unsigned k = 2 * m - 2; k >= m; --k) {
            std::uint64_t cc = prod[k];
            if (cc)
                for (unsigned i = 0; i < m; ++i) prod[k - m + i] = fp.sub(prod[k - m + i], fp.mul(cc, c[i]));
            if (k == m) break;
        }
        return std::vector<std::uint64_t>(prod.begin(), prod.begin() + m);
    };
    auto powx = [&](Int e) {
        std::vector<std::uint64_t> r(m, 0), x(m, 0);
        r[0] = 1;
        if (m > 1) x[1] = 1; else x[0] = fp.reduce(-(long long)c[0]);
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) r = mulmod(r, x);
            x = mulmod(x, x);
            e >>= 1;
        }
        return r;
    };
    Int pm = 1;
    for (unsigned i = 0; i < m; ++i) pm *= static_cast<unsigned long>(fp.p);
    // x^{p^m} == x
    auto xm = powx(pm);
    std::vector<std::uint64_t> x(m, 0);
    x[1] = 1;
    if (xm != x) return false;
    // For each prime l | m: gcd(x^{p^{m/l}} - x, f) must be 1.  Since f would
    // then share a factor of degree dividing m/l, equivalently x^{p^{m/l}} != x
    // is necessary AND sufficient for no factor of degree dividing m/l only if
    // f squarefree; we use the full criterion: x^{p^{m/l}} - x must be a unit
    // generator test via gcd below.
    for (unsigned l = 2; l <= m; ++l) {
        if (m % l || !is_prime_u64(l)) continue;
        Int pml = 1;
        for (unsigned i = 0; i < m / l; ++i) pml *= static_cast<unsigned long>(fp.p);
        auto y = powx(pml);
        // gcd(y - x, f) over F_p[x]
        std::vector<std::uint64_t> g(m + 1, 0);
        for (unsigned i = 0; i < m; ++i) g[i] = c[i];
        g[m] = 1;
        std::vector<std::uint64_t> h(m, 0);
        for (unsigned i = 0; i < m; ++i) h[i] = fp.sub(y[i], x[i]);
        auto deg = [&](const std::vector<std::uint64_t>& v) {
            for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i)
                if (v[i]) return i;
            return -1;
        };
        while (deg(h) >= 0) {
            int dg = deg(g), dh = deg(h);
            if (dg < dh) { std::swap(g, h); continue; }
            std::uint64_t ratio = fp.mul(g[dg], fp.inv(h[dh]));
            for (int i = 0; i <= dh; ++i)
                g[i + dg - dh] = fp.sub(g[i + dg - dh], fp.mul(ratio, h[i]));
            if (deg(g) < deg(h)) std::swap(g, h);
        }
        if (deg(g) != 0) return false;
    }
    return true;
}

}  // namespace detail

inline FieldPtr make_prime_field(std::uint64_t p) {
    return std::make_shared<Field>(p, 1, std::vector<std::uint64_t>{0});
}

inline FieldPtr make_ext_field(std::uint64_t p, unsigned m) {
    Fp fp(p);  // validates p
    if (m == 1) return make_prime_field(p);
    // Smallest coefficient tuple: count v upward, digits of v are (c_0..c_{m-1})
    // with c_{m-1} most significant in the comparison.
    for (Int v = 0;; ++v) {
        std::vector<std::uint64_t> c(m);
        Int t = v;
        for (unsigned i = 0; i < m; ++i) {
            c[i] = mpz_fdiv_ui(t.get_mpz_t(), p);
            t /= static_cast<unsigned long>(p);
        }
        if (t > 0) throw std::runtime_error("make_ext_field: no irreducible found (impossible)");
        if (detail::modpoly_irreducible(fp, c, m)) return std::make_shared<Field>(p, m, c);
    }
}

// Embed F_p -> F_{p^m} (coordinates constant-term only).
inline FElem embed_base(const Field& ext, std::uint64_t a) { return ext.from_base(a); }

}  // namespace g2crt
