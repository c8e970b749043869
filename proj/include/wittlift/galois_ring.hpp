// Copyright (c) 2026 the wittlift authors.
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

#ifndef WITTLIFT_GALOIS_RING_HPP
#define WITTLIFT_GALOIS_RING_HPP

// Exact arithmetic in the finite chain ring (Z/p^n)[t]/(m(t)) with m monic of
// degree r and irreducible mod p.  For q = p^r this ring has order q^n,
// characteristic p^n and residue field F_q; it is the level-n truncation of
// the unramified extension of Z_p with residue field F_q.  Reduction maps,
// Teichmueller lifts and the Frobenius automorphism are provided.
//
// Elements are coefficient vectors of length r with entries in {0,...,p^n-1};
// equality is coefficient-wise.  All values are immutable after construction,
// so concurrent reads are safe.

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "wittlift/errors.hpp"

namespace wittlift {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

namespace detail {

inline bool is_prime_u64(u64 x) {
    if (x < 2) return false;
    for (u64 d : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (x % d == 0) return x == d;
    }
    // deterministic Miller-Rabin for 64-bit inputs
    u64 d = x - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    auto mulmod = [&](u64 a, u64 b) { return (u64)((u128)a * b % x); };
    auto powmod = [&](u64 a, u64 e) {
        u64 r = 1;
        a %= x;
        while (e) {
            if (e & 1) r = mulmod(r, a);
            a = mulmod(a, a);
            e >>= 1;
        }
        return r;
    };
    for (u64 a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
        u64 ax = a % x;
        if (ax == 0) continue;
        u64 y = powmod(ax, d);
        if (y == 1 || y == x - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            y = mulmod(y, y);
            if (y == x - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

}  // namespace detail

class RingElt;

// Immutable descriptor of the ring.  Instances are interned: get(p,r,n) always
// returns a reference to the same object, so descriptor identity is pointer
// identity and elements can carry a plain pointer.
class GaloisRing {
  public:
    static constexpr unsigned kMaxR = 8;

    u64 p = 0;        // residue characteristic
    unsigned r = 0;   // residue extension degree
    unsigned n = 0;   // truncation level; characteristic is p^n
    u64 pn = 0;       // p^n
    std::vector<u64> modulus;  // lower r coefficients of the monic modulus, in {0..p-1}

    static const GaloisRing& get(u64 p, unsigned r, unsigned n);

    // ring of the same residue field at level m <= n
    const GaloisRing& at_level(unsigned m) const {
        if (m < 1 || m > n) throw BadLevelError("at_level: level out of range");
        return get(p, r, m);
    }
    const GaloisRing& residue_field() const { return at_level(1); }

    bool operator==(const GaloisRing& o) const { return p == o.p && r == o.r && n == o.n; }

    std::string to_string() const {
        std::ostringstream os;
        os << "W(p=" << p << ",r=" << r << ",n=" << n << ")";
        return os.str();
    }

    // number of elements is p^{r n}; may overflow u64, so expose the exponent
    u64 order_exponent_bits() const { return (u64)r * n; }

    // --- element constructors -------------------------------------------

    RingElt zero() const;
    RingElt one() const;
    RingElt from_int(i64 v) const;                    // image of an integer
    RingElt from_coeffs(const std::vector<u64>& c) const;
    RingElt gen() const;                              // the class of t
    RingElt element_by_index(u64 idx) const;          // mixed-radix enumeration
    u64 index_of(const RingElt& a) const;
    u64 size_as_u64() const;                          // throws SizeOverflow if > 2^62

    // --- arithmetic ------------------------------------------------------

    RingElt add(const RingElt& a, const RingElt& b) const;
    RingElt sub(const RingElt& a, const RingElt& b) const;
    RingElt neg(const RingElt& a) const;
    RingElt mul(const RingElt& a, const RingElt& b) const;
    bool is_unit(const RingElt& a) const;
    RingElt inv(const RingElt& a) const;

    // --- structure maps --------------------------------------------------

    // surjective ring homomorphism onto the level-m ring (1 <= m <= n)
    RingElt reduce(const RingElt& a, unsigned m) const;
    RingElt residue(const RingElt& a) const;
    // canonical (coefficient-wise) lift from a lower level into this ring
    RingElt lift(const RingElt& a) const;
    // multiplicative section of the residue map; x lives in the residue field
    RingElt teichmuller(const RingElt& x) const;
    // the ring automorphism lifting x -> x^p on the residue field; order r
    RingElt frobenius(const RingElt& a) const;

    // p-adic valuation: largest v <= n with a == 0 mod p^v
    unsigned valuation(const RingElt& a) const;
    // exact division by p^v (requires valuation >= v); result reduced mod p^{n}
    RingElt divide_by_p_pow(const RingElt& a, unsigned v) const;

    u64 add_mod(u64 a, u64 b) const { u64 s = a + b; return s >= pn ? s - pn : s; }
    u64 sub_mod(u64 a, u64 b) const { return a >= b ? a - b : a + pn - b; }
    u64 mul_mod(u64 a, u64 b) const { return (u64)((u128)a * b % pn); }

  private:
    GaloisRing(u64 p_, unsigned r_, unsigned n_);
    // t^{r+j} mod modulus for j in [0, r-2], used to fold products
    std::vector<std::array<u64, kMaxR>> red_rows_;
    friend class RingElt;
};

class RingElt {
  public:
    RingElt() : R_(nullptr) { c_.fill(0); }
    RingElt(const GaloisRing& R, std::array<u64, GaloisRing::kMaxR> c) : R_(&R), c_(c) {}

    const GaloisRing& ring() const {
        if (!R_) throw Error("use of a default-constructed ring element");
        return *R_;
    }
    bool attached() const { return R_ != nullptr; }

    u64 coeff(unsigned i) const { return c_[i]; }
    const std::array<u64, GaloisRing::kMaxR>& raw() const { return c_; }

    bool operator==(const RingElt& o) const {
        return R_ == o.R_ && c_ == o.c_;
    }
    bool operator!=(const RingElt& o) const { return !(*this == o); }
    bool operator<(const RingElt& o) const {  // arbitrary total order for maps
        if (R_ != o.R_) return R_ < o.R_;
        return c_ < o.c_;
    }

    bool is_zero() const {
        for (unsigned i = 0; i < ring().r; ++i)
            if (c_[i] != 0) return false;
        return true;
    }

    RingElt operator+(const RingElt& o) const { return ring().add(*this, o); }
    RingElt operator-(const RingElt& o) const { return ring().sub(*this, o); }
    RingElt operator-() const { return ring().neg(*this); }
    RingElt operator*(const RingElt& o) const { return ring().mul(*this, o); }

    std::string to_string() const {
        std::ostringstream os;
        os << "[";
        for (unsigned i = 0; i < ring().r; ++i) {
            if (i) os << ",";
            os << c_[i];
        }
        os << "]";
        return os.str();
    }

  private:
    const GaloisRing* R_;
    std::array<u64, GaloisRing::kMaxR> c_;
    friend class GaloisRing;
};

// ---------------------------------------------------------------------------
// implementation

namespace detail {

// polynomial helpers over F_p used for modulus selection and unit inversion
inline std::vector<u64> fp_poly_mulmod(const std::vector<u64>& a, const std::vector<u64>& b,
                                       const std::vector<u64>& mod, u64 p) {
    // mod is monic of degree d given by its lower d coefficients
    size_t d = mod.size();
    std::vector<u64> prod(2 * d, 0);
    for (size_t i = 0; i < d; ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < d; ++j) {
            if (!b[j]) continue;
            prod[i + j] = (u64)(((u128)a[i] * b[j] + prod[i + j]) % p);
        }
    }
    for (size_t k = 2 * d; k-- > d;) {
        u64 c = prod[k];
        if (!c) continue;
        prod[k] = 0;
        for (size_t j = 0; j < d; ++j) {
            // t^k = t^{k-d} * t^d = -t^{k-d} * mod_lower
            u64 sub = (u64)((u128)c * mod[j] % p);
            size_t pos = k - d + j;
            prod[pos] = (prod[pos] + p - sub) % p;
        }
    }
    prod.resize(d);
    return prod;
}

inline std::vector<u64> fp_poly_powmod(std::vector<u64> base, u128 e, const std::vector<u64>& mod,
                                       u64 p) {
    size_t d = mod.size();
    std::vector<u64> res(d, 0);
    res[0] = 1 % p;
    while (e) {
        if (e & 1) res = fp_poly_mulmod(res, base, mod, p);
        base = fp_poly_mulmod(base, base, mod, p);
        e >>= 1;
    }
    return res;
}

// gcd of dense polynomials over F_p (values are reduced mod p)
inline std::vector<u64> fp_poly_gcd(std::vector<u64> a, std::vector<u64> b, u64 p) {
    auto deg = [](const std::vector<u64>& f) -> int {
        for (int i = (int)f.size() - 1; i >= 0; --i)
            if (f[i]) return i;
        return -1;
    };
    auto inv_mod_p = [&](u64 x) {
        // Fermat
        u64 r = 1, e = p - 2, bb = x % p;
        while (e) {
            if (e & 1) r = (u64)((u128)r * bb % p);
            bb = (u64)((u128)bb * bb % p);
            e >>= 1;
        }
        return r;
    };
    while (deg(b) >= 0) {
        int da = deg(a), db = deg(b);
        if (da < db) { std::swap(a, b); continue; }
        u64 f = (u64)((u128)a[da] * inv_mod_p(b[db]) % p);
        for (int i = 0; i <= db; ++i) {
            u64 s = (u64)((u128)f * b[i] % p);
            a[i + da - db] = (a[i + da - db] + p - s) % p;
        }
    }
    return a;
}

inline std::vector<u64> lower_with_top(const std::vector<u64>& lower, u64 /*p*/);

inline bool fp_poly_irreducible(const std::vector<u64>& lower, u64 p) {
    // lower = lower coefficients of a monic polynomial of degree d
    size_t d = lower.size();
    if (d == 1) return true;
    // x^{p^d} == x mod f, and gcd(x^{p^{d/l}} - x, f) == 1 for primes l | d
    std::vector<u64> x(d, 0);
    if (d > 1) x[1] = 1;
    auto q_power = [&](std::vector<u64> v, unsigned times) {
        for (unsigned i = 0; i < times; ++i) v = fp_poly_powmod(v, p, lower, p);
        return v;
    };
    std::vector<u64> xp = q_power(x, (unsigned)d);
    if (xp != x) return false;
    for (unsigned l = 2; l <= d; ++l) {
        if (d % l != 0) continue;
        bool lp = true;
        for (unsigned m = 2; m * m <= l; ++m)
            if (l % m == 0) { lp = false; break; }
        if (!lp) continue;
        std::vector<u64> xe = q_power(x, (unsigned)(d / l));
        std::vector<u64> diff = xe;
        diff[1] = (diff[1] + p - 1) % p;
        std::vector<u64> g = fp_poly_gcd(lower_with_top(lower, p), diff, p);
        int dg = -1;
        for (int i = (int)g.size() - 1; i >= 0; --i)
            if (g[i]) { dg = i; break; }
        if (dg != 0) return false;
    }
    return true;
}

inline std::vector<u64> lower_with_top(const std::vector<u64>& lower, u64 /*p*/) {
    std::vector<u64> f(lower.size() + 1, 0);
    for (size_t i = 0; i < lower.size(); ++i) f[i] = lower[i];
    f[lower.size()] = 1;
    return f;
}

}  // namespace detail

inline GaloisRing::GaloisRing(u64 p_, unsigned r_, unsigned n_) : p(p_), r(r_), n(n_) {
    if (!detail::is_prime_u64(p)) throw NonPrimeError("p = " + std::to_string(p) + " is not prime");
    if (p > (1ull << 31)) throw SizeOverflowError("p exceeds 2^31");
    if (r < 1 || r > kMaxR) throw SizeOverflowError("extension degree out of range");
    if (n < 1) throw BadLevelError("truncation level must be >= 1");
    // characteristic must fit comfortably so products can use 128-bit intermediates
    u128 c = 1;
    for (unsigned i = 0; i < n; ++i) {
        c *= p;
        if (c > ((u128)1 << 62)) throw SizeOverflowError("p^n exceeds 2^62");
    }
    pn = (u64)c;

    // canonical modulus: the first monic irreducible of degree r over F_p in
    // lexicographic order on (c_0, ..., c_{r-1}); its coefficient-wise lift
    modulus.assign(r, 0);
    if (r == 1) {
        modulus[0] = 0;  // t, i.e. the ring is Z/p^n
    } else {
        bool found = false;
        u64 total = 1;
        for (unsigned i = 0; i < r; ++i) total *= p;  // p^r candidates, p^r small here
        for (u64 k = 0; k < total && !found; ++k) {
            u64 kk = k;
            std::vector<u64> cand(r, 0);
            for (unsigned i = 0; i < r; ++i) {  // c_0 most significant for lex order
                u64 div = 1;
                for (unsigned j = i + 1; j < r; ++j) div *= p;
                cand[i] = (kk / div) % p;
            }
            (void)kk;
            if (detail::fp_poly_irreducible(cand, p)) {
                modulus = cand;
                found = true;
            }
        }
        if (!found) throw Error("no irreducible modulus found");  // cannot happen
    }

    // reduction rows: t^{r+j} mod (p^n, modulus) for j = 0..r-2
    if (r >= 2) {
        red_rows_.resize(r - 1);
        // t^r = -modulus_lower
        std::array<u64, kMaxR> cur{};
        for (unsigned i = 0; i < r; ++i) cur[i] = modulus[i] ? pn - (modulus[i] % pn) : 0;
        red_rows_[0] = cur;
        for (unsigned j = 1; j + 1 < r; ++j) {
            // multiply cur by t
            std::array<u64, kMaxR> nxt{};
            u64 top = cur[r - 1];
            for (unsigned i = r - 1; i >= 1; --i) nxt[i] = cur[i - 1];
            nxt[0] = 0;
            if (top) {
                for (unsigned i = 0; i < r; ++i) {
                    u64 s = mul_mod(top, red_rows_[0][i]);
                    nxt[i] = add_mod(nxt[i], s);
                }
            }
            red_rows_[j] = nxt;
            cur = nxt;
        }
    }
}

inline const GaloisRing& GaloisRing::get(u64 p, unsigned r, unsigned n) {
    static std::mutex mx;
    static std::map<std::tuple<u64, unsigned, unsigned>, std::unique_ptr<GaloisRing>> table;
    std::lock_guard<std::mutex> lk(mx);
    auto key = std::make_tuple(p, r, n);
    auto it = table.find(key);
    if (it == table.end()) {
        auto ring = std::unique_ptr<GaloisRing>(new GaloisRing(p, r, n));
        it = table.emplace(key, std::move(ring)).first;
    }
    return *it->second;
}

inline RingElt GaloisRing::zero() const {
    std::array<u64, kMaxR> c{};
    return RingElt(*this, c);
}

inline RingElt GaloisRing::one() const {
    std::array<u64, kMaxR> c{};
    c[0] = 1 % pn;
    return RingElt(*this, c);
}

inline RingElt GaloisRing::from_int(i64 v) const {
    std::array<u64, kMaxR> c{};
    i64 m = (i64)(v % (i64)pn);
    if (m < 0) m += (i64)pn;
    c[0] = (u64)m;
    return RingElt(*this, c);
}

inline RingElt GaloisRing::from_coeffs(const std::vector<u64>& v) const {
    if (v.size() != r) throw DescriptorMismatchError("coefficient vector has wrong length");
    std::array<u64, kMaxR> c{};
    for (unsigned i = 0; i < r; ++i) c[i] = v[i] % pn;
    return RingElt(*this, c);
}

inline RingElt GaloisRing::gen() const {
    std::array<u64, kMaxR> c{};
    if (r == 1) return zero();
    c[1] = 1;
    return RingElt(*this, c);
}

inline u64 GaloisRing::size_as_u64() const {
    u128 s = 1;
    for (unsigned i = 0; i < r; ++i) {
        s *= pn;
        if (s > ((u128)1 << 62)) throw SizeOverflowError("ring order exceeds 2^62");
    }
    return (u64)s;
}

inline RingElt GaloisRing::element_by_index(u64 idx) const {
    std::array<u64, kMaxR> c{};
    for (unsigned i = 0; i < r; ++i) {
        c[i] = idx % pn;
        idx /= pn;
    }
    return RingElt(*this, c);
}

inline u64 GaloisRing::index_of(const RingElt& a) const {
    u64 idx = 0;
    for (unsigned i = r; i-- > 0;) idx = idx * pn + a.coeff(i);
    return idx;
}

inline RingElt GaloisRing::add(const RingElt& a, const RingElt& b) const {
    if (&a.ring() != this || &b.ring() != this)
        throw DescriptorMismatchError("add: elements of a different ring");
    std::array<u64, kMaxR> c{};
    for (unsigned i = 0; i < r; ++i) c[i] = add_mod(a.c_[i], b.c_[i]);
    return RingElt(*this, c);
}

inline RingElt GaloisRing::sub(const RingElt& a, const RingElt& b) const {
    if (&a.ring() != this || &b.ring() != this)
        throw DescriptorMismatchError("sub: elements of a different ring");
    std::array<u64, kMaxR> c{};
    for (unsigned i = 0; i < r; ++i) c[i] = sub_mod(a.c_[i], b.c_[i]);
    return RingElt(*this, c);
}

inline RingElt GaloisRing::neg(const RingElt& a) const {
    std::array<u64, kMaxR> c{};
    for (unsigned i = 0; i < r; ++i) c[i] = a.c_[i] ? pn - a.c_[i] : 0;
    return RingElt(*this, c);
}

inline RingElt GaloisRing::mul(const RingElt& a, const RingElt& b) const {
    if (&a.ring() != this || &b.ring() != this)
        throw DescriptorMismatchError("mul: elements of a different ring");
    std::array<u64, 2 * kMaxR> prod{};
    for (unsigned i = 0; i < r; ++i) {
        if (!a.c_[i]) continue;
        for (unsigned j = 0; j < r; ++j) {
            if (!b.c_[j]) continue;
            prod[i + j] = (u64)(((u128)a.c_[i] * b.c_[j] + prod[i + j]) % pn);
        }
    }
    std::array<u64, kMaxR> c{};
    for (unsigned i = 0; i < r; ++i) c[i] = prod[i];
    for (unsigned k = r; k <= 2 * r - 2; ++k) {
        u64 coef = prod[k];
        if (!coef) continue;
        const auto& row = red_rows_[k - r];
        for (unsigned i = 0; i < r; ++i) c[i] = add_mod(c[i], mul_mod(coef, row[i]));
    }
    return RingElt(*this, c);
}

inline bool GaloisRing::is_unit(const RingElt& a) const {
    for (unsigned i = 0; i < r; ++i)
        if (a.c_[i] % p != 0) return true;
    return false;
}

inline RingElt GaloisRing::inv(const RingElt& a) const {
    if (!is_unit(a)) throw NotAUnitError("inv: not a unit");
    // invert the residue in F_q by Fermat, then Hensel-lift: x <- x(2 - a x)
    const GaloisRing& k = residue_field();
    std::vector<u64> amodp(r);
    for (unsigned i = 0; i < r; ++i) amodp[i] = a.c_[i] % p;
    // residue inverse via x^{q-2}: q - 2 as exponent done by repeated p-powers
    // is awkward; use extended-euclid-free powering with q-2 <= p^r - 2 in u128
    u128 q = 1;
    for (unsigned i = 0; i < r; ++i) q *= p;
    std::vector<u64> modlow(modulus.begin(), modulus.end());
    for (auto& ml : modlow) ml %= p;
    std::vector<u64> x0 = detail::fp_poly_powmod(amodp, q - 2, modlow, p);
    RingElt x = lift(k.from_coeffs(x0));
    // each Hensel step doubles the precision
    unsigned prec = 1;
    RingElt two = from_int(2);
    while (prec < n) {
        x = x * (two - a * x);
        prec *= 2;
    }
    return x;
}

inline RingElt GaloisRing::reduce(const RingElt& a, unsigned m) const {
    if (&a.ring() != this) throw DescriptorMismatchError("reduce: element of a different ring");
    if (m < 1 || m > n) throw BadLevelError("reduce: bad target level");
    const GaloisRing& S = at_level(m);
    std::array<u64, kMaxR> c{};
    for (unsigned i = 0; i < r; ++i) c[i] = a.c_[i] % S.pn;
    return RingElt(S, c);
}

inline RingElt GaloisRing::residue(const RingElt& a) const { return reduce(a, 1); }

inline RingElt GaloisRing::lift(const RingElt& a) const {
    const GaloisRing& S = a.ring();
    if (S.p != p || S.r != r || S.n > n)
        throw DescriptorMismatchError("lift: incompatible source ring");
    std::array<u64, kMaxR> c{};
    for (unsigned i = 0; i < r; ++i) c[i] = a.c_[i];
    return RingElt(*this, c);
}

inline RingElt GaloisRing::teichmuller(const RingElt& x) const {
    if (&x.ring() != &residue_field())
        throw DescriptorMismatchError("teichmuller: input must live in the residue field");
    RingElt y = lift(x);
    // y^{q^{n-1}}: the unit part of any lift has order dividing q^{n-1}(q-1)
    // and the (1 + pR)-component has order dividing q^{n-1}
    for (unsigned step = 0; step + 1 < n; ++step) {
        for (unsigned i = 0; i < r; ++i) {
            // y <- y^p
            RingElt acc = one();
            RingElt base = y;
            u64 e = p;
            while (e) {
                if (e & 1) acc = acc * base;
                base = base * base;
                e >>= 1;
            }
            y = acc;
        }
    }
    return y;
}

inline unsigned GaloisRing::valuation(const RingElt& a) const {
    unsigned v = n;
    for (unsigned i = 0; i < r; ++i) {
        u64 c = a.c_[i];
        if (c == 0) continue;
        unsigned vi = 0;
        while (c % p == 0) { c /= p; ++vi; }
        if (vi < v) v = vi;
    }
    return v;
}

inline RingElt GaloisRing::divide_by_p_pow(const RingElt& a, unsigned v) const {
    if (valuation(a) < v) throw Error("divide_by_p_pow: valuation too small");
    u64 pv = 1;
    for (unsigned i = 0; i < v; ++i) pv *= p;
    std::array<u64, kMaxR> c{};
    for (unsigned i = 0; i < r; ++i) c[i] = a.c_[i] / pv;
    return RingElt(*this, c);
}

inline RingElt GaloisRing::frobenius(const RingElt& a) const {
    if (&a.ring() != this) throw DescriptorMismatchError("frobenius: element of a different ring");
    // digit expansion a = sum_i p^i [d_i] with Teichmueller digits, then map
    // each digit through x -> x^p
    const GaloisRing& k = residue_field();
    RingElt b = a;
    RingElt out = zero();
    u64 pi = 1;
    for (unsigned i = 0; i < n; ++i) {
        RingElt d = reduce(b, 1);
        // digit^p in the residue field
        RingElt dp = k.one();
        {
            RingElt acc = k.one();
            RingElt base = d;
            u64 e = p;
            while (e) {
                if (e & 1) acc = k.mul(acc, base);
                base = k.mul(base, base);
                e >>= 1;
            }
            dp = acc;
        }
        out = add(out, mul(from_int((i64)pi), teichmuller(dp)));
        if (i + 1 < n) {
            b = divide_by_p_pow(sub(b, teichmuller(d)), 1);
            pi *= p;
        }
    }
    return out;
}

}  // namespace wittlift

#endif  // WITTLIFT_GALOIS_RING_HPP
