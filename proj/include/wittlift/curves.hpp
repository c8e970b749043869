// Copyright (c) 2026 the wittlift authors.
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

#ifndef WITTLIFT_CURVES_HPP
#define WITTLIFT_CURVES_HPP

// The hyperelliptic application: for y^2 = f(x) over Q with deg f = 3d,
// d in {1,2}, decide whether the 2-adic representation of the Jacobian fills
// GSp_{2d}(Z_2).  The two inputs of the verdict are a symmetric-group
// certificate for the splitting field of f and the squarefree part of the
// discriminant (which controls the quadratic subfields).  Supporting cast:
// exact discriminants and factorization, distinct-degree factor patterns,
// naive point counts and L-polynomials over odd primes, and the mod-2
// consistency check tying the 2-torsion permutation module to the counts.

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "wittlift/lie.hpp"

namespace wittlift {

// ---------------------------------------------------------------------------
// integer polynomials

struct IntPoly {
    std::vector<mpz_class> c;  // constant first

    int degree() const {
        for (int i = (int)c.size() - 1; i >= 0; --i)
            if (c[i] != 0) return i;
        return -1;
    }
    const mpz_class& lead() const {
        static const mpz_class zero = 0;
        int d = degree();
        return d < 0 ? zero : c[d];
    }
    mpz_class eval(const mpz_class& x) const {
        mpz_class acc = 0;
        for (int i = (int)c.size() - 1; i >= 0; --i) acc = acc * x + c[i];
        return acc;
    }
    IntPoly derivative() const {
        IntPoly d;
        for (size_t i = 1; i < c.size(); ++i) d.c.push_back(c[i] * (unsigned long)i);
        if (d.c.empty()) d.c.push_back(0);
        return d;
    }
    std::string to_string() const {
        std::ostringstream os;
        bool first = true;
        for (int i = (int)c.size() - 1; i >= 0; --i) {
            if (c[i] == 0) continue;
            mpz_class a = c[i];
            if (!first && a > 0) os << "+";
            if (i == 0 || a != 1) {
                if (i > 0 && a == -1)
                    os << "-";
                else
                    os << a.get_str();
            }
            if (i > 0) {
                os << "x";
                if (i > 1) os << "^" << i;
            }
            first = false;
        }
        if (first) os << "0";
        return os.str();
    }
};

// parser for "x^6-x-1"-style input (integer coefficients, variable x)
inline IntPoly parse_poly(const std::string& text) {
    IntPoly p;
    size_t i = 0;
    auto fail = [&](const std::string& why) { throw ParseError("polynomial: " + why); };
    std::string s;
    for (char ch : text)
        if (!isspace((unsigned char)ch)) s += ch;
    if (s.empty()) fail("empty input");
    while (i < s.size()) {
        int sign = 1;
        while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            if (s[i] == '-') sign = -sign;
            ++i;
        }
        if (i >= s.size()) fail("dangling sign");
        mpz_class coef = 1;
        bool saw_digits = false;
        std::string digits;
        while (i < s.size() && isdigit((unsigned char)s[i])) digits += s[i++];
        if (!digits.empty()) {
            coef = mpz_class(digits);
            saw_digits = true;
        }
        unsigned exp = 0;
        if (i < s.size() && s[i] == '*') ++i;
        if (i < s.size() && (s[i] == 'x' || s[i] == 'X')) {
            ++i;
            exp = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::string e;
                while (i < s.size() && isdigit((unsigned char)s[i])) e += s[i++];
                if (e.empty()) fail("missing exponent");
                exp = (unsigned)std::stoul(e);
            }
        } else if (!saw_digits) {
            fail("expected a coefficient or x");
        }
        if (p.c.size() < exp + 1) p.c.resize(exp + 1, 0);
        p.c[exp] += sign * coef;
        (void)saw_digits;
    }
    if (p.c.empty()) p.c.push_back(0);
    return p;
}

// ---------------------------------------------------------------------------
// resultants and discriminants (fraction-free Bareiss on the Sylvester matrix)

inline mpz_class resultant(const IntPoly& f, const IntPoly& g) {
    int m = f.degree(), n = g.degree();
    if (m < 0 || n < 0) return 0;
    int N = m + n;
    if (N == 0) return 1;
    std::vector<std::vector<mpz_class>> a((size_t)N, std::vector<mpz_class>((size_t)N, 0));
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) a[r][r + (m - k)] = f.c[(size_t)k];
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) a[n + r][r + (n - k)] = g.c[(size_t)k];
    // Bareiss
    mpz_class denom = 1;
    int sign = 1;
    for (int k = 0; k < N - 1; ++k) {
        if (a[k][k] == 0) {
            int piv = -1;
            for (int i = k + 1; i < N; ++i)
                if (a[i][k] != 0) { piv = i; break; }
            if (piv < 0) return 0;
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (int i = k + 1; i < N; ++i) {
            for (int j = k + 1; j < N; ++j) {
                mpz_class num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_class q;
                mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), denom.get_mpz_t());
                a[i][j] = q;
            }
            a[i][k] = 0;
        }
        denom = a[k][k];
    }
    return sign * a[N - 1][N - 1];
}

inline mpz_class discriminant(const IntPoly& f) {
    int n = f.degree();
    if (n < 1) throw BadDegreeError("discriminant needs degree >= 1");
    mpz_class res = resultant(f, f.derivative());
    mpz_class disc;
    mpz_divexact(disc.get_mpz_t(), res.get_mpz_t(), f.lead().get_mpz_t());
    int sw = (n * (n - 1) / 2) % 2;
    return sw ? mpz_class(-disc) : disc;
}

// ---------------------------------------------------------------------------
// deterministic factorization at desk scale

struct Factorization {
    std::vector<std::pair<mpz_class, unsigned>> primes;  // sorted
    bool complete = true;
    mpz_class unfactored = 1;  // composite remainder when incomplete
};

namespace detail {

inline bool mpz_probably_prime(const mpz_class& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

// Brent's cycle variant with a deterministic constant sequence
inline std::optional<mpz_class> pollard_brent(const mpz_class& n, u64 iter_budget) {
    if (n % 2 == 0) return mpz_class(2);
    for (unsigned long cst = 1; cst < 40; ++cst) {
        mpz_class y = 2, r = 1, q = 1, g = 1, x, ys;
        u64 spent = 0;
        while (g == 1 && spent < iter_budget) {
            x = y;
            for (mpz_class i = 0; i < r; ++i) y = (y * y + cst) % n;
            mpz_class k = 0;
            while (k < r && g == 1) {
                ys = y;
                mpz_class lim = (r - k < 128) ? mpz_class(r - k) : mpz_class(128);
                for (mpz_class i = 0; i < lim; ++i) {
                    y = (y * y + cst) % n;
                    mpz_class d = x - y;
                    if (d < 0) d = -d;
                    q = q * d % n;
                }
                g = gcd(q, n);
                k += 128;
                spent += 128;
            }
            r *= 2;
        }
        if (g == n) {
            // back up step by step
            g = 1;
            while (g == 1) {
                ys = (ys * ys + cst) % n;
                mpz_class d = x - ys;
                if (d < 0) d = -d;
                g = gcd(d, n);
            }
        }
        if (g != n && g != 1) return g;
        if (spent >= iter_budget) return std::nullopt;
    }
    return std::nullopt;
}

inline void factor_rec(mpz_class n, Factorization& out, u64 iter_budget) {
    if (n == 1) return;
    if (mpz_probably_prime(n)) {
        out.primes.emplace_back(n, 1);
        return;
    }
    auto d = pollard_brent(n, iter_budget);
    if (!d) {
        out.complete = false;
        out.unfactored *= n;
        return;
    }
    factor_rec(*d, out, iter_budget);
    factor_rec(n / *d, out, iter_budget);
}

}  // namespace detail

inline Factorization factor_integer(mpz_class n, u64 iter_budget = 40000000) {
    Factorization out;
    if (n < 0) n = -n;
    if (n == 0) throw ZeroDiscriminantError("cannot factor zero");
    for (u64 p = 2; p < 100000 && mpz_class(p) * p <= n; p = (p == 2 ? 3 : p + 2)) {
        while (n % p == 0) {
            out.primes.emplace_back(p, 1);
            n /= p;
        }
    }
    if (n > 1) detail::factor_rec(n, out, iter_budget);
    // collate exponents
    std::sort(out.primes.begin(), out.primes.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<mpz_class, unsigned>> coll;
    for (const auto& [p, e] : out.primes) {
        if (!coll.empty() && coll.back().first == p)
            coll.back().second += e;
        else
            coll.emplace_back(p, e);
    }
    out.primes = std::move(coll);
    return out;
}

struct DiscSquarefree {
    mpz_class disc;
    mpz_class squarefree_part;
    bool complete = true;  // factorization finished
};

inline DiscSquarefree disc_sqfree(const IntPoly& f) {
    DiscSquarefree out;
    out.disc = discriminant(f);
    if (out.disc == 0) throw ZeroDiscriminantError("the polynomial is not squarefree");
    Factorization fa = factor_integer(out.disc);
    out.complete = fa.complete;
    mpz_class sf = out.disc < 0 ? -1 : 1;
    for (const auto& [p, e] : fa.primes)
        if (e % 2 == 1) sf *= p;
    if (!fa.complete) {
        // the unfactored composite part has unknown parity structure
        out.squarefree_part = 0;
        return out;
    }
    out.squarefree_part = sf;
    return out;
}

// ---------------------------------------------------------------------------
// factor patterns over F_ell (distinct-degree factorization)

namespace detail {

using FpPoly = std::vector<u64>;  // constant first, reduced mod ell

inline int fpp_deg(const FpPoly& a) {
    for (int i = (int)a.size() - 1; i >= 0; --i)
        if (a[i]) return i;
    return -1;
}
inline FpPoly fpp_trim(FpPoly a) {
    a.resize((size_t)std::max(0, fpp_deg(a) + 1));
    if (a.empty()) a.push_back(0);
    return a;
}
inline u64 inv_mod(u64 a, u64 ell) {
    u64 r = 1, e = ell - 2, b = a % ell;
    while (e) {
        if (e & 1) r = (u64)((u128)r * b % ell);
        b = (u64)((u128)b * b % ell);
        e >>= 1;
    }
    return r;
}
inline FpPoly fpp_rem(FpPoly a, const FpPoly& b, u64 ell) {
    int db = fpp_deg(b);
    if (db < 0) throw Error("division by zero polynomial");
    u64 binv = inv_mod(b[(size_t)db], ell);
    for (int i = fpp_deg(a); i >= db; --i) {
        u64 c = a[(size_t)i];
        if (!c) continue;
        u64 fmul = (u64)((u128)c * binv % ell);
        for (int j = 0; j <= db; ++j) {
            u64 sub = (u64)((u128)fmul * b[(size_t)j] % ell);
            size_t pos = (size_t)(i - db + j);
            a[pos] = (a[pos] + ell - sub) % ell;
        }
    }
    return fpp_trim(a);
}
inline FpPoly fpp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& mod, u64 ell) {
    FpPoly prod((size_t)(fpp_deg(a) + fpp_deg(b) + 2), 0);
    for (int i = 0; i <= fpp_deg(a); ++i) {
        if (!a[(size_t)i]) continue;
        for (int j = 0; j <= fpp_deg(b); ++j)
            prod[(size_t)(i + j)] =
                (u64)(((u128)a[(size_t)i] * b[(size_t)j] + prod[(size_t)(i + j)]) % ell);
    }
    return fpp_rem(std::move(prod), mod, ell);
}
inline FpPoly fpp_powmod(FpPoly base, mpz_class e, const FpPoly& mod, u64 ell) {
    FpPoly res{1};
    base = fpp_rem(std::move(base), mod, ell);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) res = fpp_mulmod(res, base, mod, ell);
        base = fpp_mulmod(base, base, mod, ell);
        e /= 2;
    }
    return res;
}
inline FpPoly fpp_gcd(FpPoly a, FpPoly b, u64 ell) {
    while (fpp_deg(b) >= 0) {
        FpPoly r = fpp_rem(a, b, ell);
        a = std::move(b);
        b = std::move(r);
    }
    // normalize monic
    int d = fpp_deg(a);
    if (d >= 0) {
        u64 inv = inv_mod(a[(size_t)d], ell);
        for (auto& x : a) x = (u64)((u128)x * inv % ell);
    }
    return fpp_trim(a);
}
inline FpPoly fpp_divexact(const FpPoly& a, const FpPoly& b, u64 ell) {
    // a = q b exactly
    FpPoly q((size_t)(fpp_deg(a) - fpp_deg(b) + 1), 0);
    FpPoly r = a;
    int db = fpp_deg(b);
    u64 binv = inv_mod(b[(size_t)db], ell);
    for (int i = fpp_deg(r); i >= db; --i) {
        u64 c = r[(size_t)i];
        if (!c) continue;
        u64 fmul = (u64)((u128)c * binv % ell);
        q[(size_t)(i - db)] = fmul;
        for (int j = 0; j <= db; ++j) {
            u64 sub = (u64)((u128)fmul * b[(size_t)j] % ell);
            r[(size_t)(i - db + j)] = (r[(size_t)(i - db + j)] + ell - sub) % ell;
        }
    }
    return fpp_trim(q);
}

inline FpPoly reduce_poly(const IntPoly& f, u64 ell) {
    FpPoly out(f.c.size(), 0);
    for (size_t i = 0; i < f.c.size(); ++i) {
        mpz_class m = f.c[i] % (long)ell;
        if (m < 0) m += (long)ell;
        out[i] = m.get_ui();
    }
    return fpp_trim(out);
}

}  // namespace detail

// multiset of irreducible-factor degrees of f mod ell (requires good
// reduction: ell coprime to disc(f) lead(f))
inline std::vector<unsigned> factor_pattern_mod(const IntPoly& f, u64 ell) {
    if (ell < 2 || !detail::is_prime_u64(ell)) throw BadPrimeError("ell must be prime");
    mpz_class bad = discriminant(f) * f.lead();
    if (bad % (long)ell == 0) throw BadPrimeError("ell divides disc(f) * lead(f)");
    detail::FpPoly g = detail::reduce_poly(f, ell);
    // monic normalize
    {
        int d = detail::fpp_deg(g);
        u64 inv = detail::inv_mod(g[(size_t)d], ell);
        for (auto& x : g) x = (u64)((u128)x * inv % ell);
    }
    std::vector<unsigned> pattern;
    detail::FpPoly x{0, 1};
    detail::FpPoly xq = x;
    unsigned i = 0;
    while (detail::fpp_deg(g) > 0) {
        ++i;
        xq = detail::fpp_powmod(xq, mpz_class((unsigned long)ell), g, ell);
        detail::FpPoly diff = xq;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] + ell - 1) % ell;
        detail::FpPoly h = detail::fpp_gcd(g, diff, ell);
        int dh = detail::fpp_deg(h);
        if (dh > 0) {
            for (int k = 0; k < dh / (int)i; ++k) pattern.push_back(i);
            g = detail::fpp_divexact(g, h, ell);
            xq = detail::fpp_rem(xq, g, ell);
        }
        if ((int)i > detail::fpp_deg(g)) break;
    }
    if (detail::fpp_deg(g) > 0) pattern.push_back((unsigned)detail::fpp_deg(g));
    std::sort(pattern.begin(), pattern.end());
    return pattern;
}

// ---------------------------------------------------------------------------
// symmetric-group certification

enum class SnVerdict { Certified, NotSn, Unknown };

struct GaloisCertificate {
    unsigned n = 0;
    std::vector<u64> primes_used;
    std::set<std::vector<unsigned>> patterns;
    bool irreducibility_certified = false;
    bool n_minus_1_cycle_seen = false;  // a {n-1, 1} pattern
    bool n_cycle_seen = false;
    bool transposition_pattern_seen = false;  // one even part = 2, rest odd
    SnVerdict verdict = SnVerdict::Unknown;
    std::string witness;
};

namespace detail {

inline bool is_perfect_square(const mpz_class& d) {
    if (d < 0) return false;
    return mpz_perfect_square_p(d.get_mpz_t()) != 0;
}

// can `pattern` be split into groups summing to the parts of `shape`?
inline bool pattern_refines_shape(std::vector<unsigned> pattern, std::vector<unsigned> shape) {
    if (pattern.empty()) return shape.empty();
    std::sort(shape.rbegin(), shape.rend());
    std::sort(pattern.rbegin(), pattern.rend());
    std::function<bool(std::vector<unsigned>&, std::vector<unsigned>&)> rec =
        [&](std::vector<unsigned>& pat, std::vector<unsigned>& sh) -> bool {
        if (pat.empty()) {
            for (unsigned s : sh)
                if (s) return false;
            return true;
        }
        unsigned part = pat.back();
        pat.pop_back();
        std::set<unsigned> tried;
        for (size_t i = 0; i < sh.size(); ++i) {
            if (sh[i] < part || tried.count(sh[i])) continue;
            tried.insert(sh[i]);
            sh[i] -= part;
            if (rec(pat, sh)) {
                sh[i] += part;
                pat.push_back(part);
                return true;
            }
            sh[i] += part;
        }
        pat.push_back(part);
        return false;
    };
    return rec(pattern, shape);
}

inline std::vector<std::vector<unsigned>> partitions_of(unsigned n) {
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> cur;
    std::function<void(unsigned, unsigned)> rec = [&](unsigned left, unsigned maxpart) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (unsigned p = std::min(left, maxpart); p >= 1; --p) {
            cur.push_back(p);
            rec(left - p, p);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

// rational roots of f: candidates p/q with p | c0-part, q | lead
inline bool has_rational_root(const IntPoly& f) {
    int n = f.degree();
    mpz_class c0 = f.c[0];
    if (c0 == 0) return true;  // x divides f
    Factorization f0 = factor_integer(c0);
    Factorization fl = factor_integer(f.lead());
    if (!f0.complete || !fl.complete)
        throw FactorizationTimeoutError("rational root scan: factorization incomplete");
    // enumerate divisors
    auto divisors = [](const Factorization& fa) {
        std::vector<mpz_class> ds{1};
        for (const auto& [p, e] : fa.primes) {
            size_t sz = ds.size();
            mpz_class pk = 1;
            for (unsigned k = 1; k <= e; ++k) {
                pk *= p;
                for (size_t i = 0; i < sz; ++i) ds.push_back(ds[i] * pk);
            }
        }
        return ds;
    };
    std::vector<mpz_class> nums = divisors(f0), dens = divisors(fl);
    for (const mpz_class& den : dens)
        for (const mpz_class& num : nums)
            for (int sign : {1, -1}) {
                // f(num/den) = 0 iff sum c_i num^i den^{n-i} = 0
                mpz_class acc = 0, np = 1;
                mpz_class snum = sign * num;
                std::vector<mpz_class> dp((size_t)n + 1, 1);
                for (int i = n - 1; i >= 0; --i) dp[(size_t)i] = dp[(size_t)i + 1] * den;
                for (int i = 0; i <= n; ++i) {
                    acc += f.c[(size_t)i] * np * dp[(size_t)i];
                    np *= snum;
                }
                if (acc == 0) return true;
            }
    return false;
}

}  // namespace detail

inline GaloisCertificate certify_Sn(const IntPoly& f, unsigned prime_budget = 500) {
    int n = f.degree();
    if (n != 3 && n != 6)
        throw BadDegreeError("symmetric-group certification supports degrees 3 and 6");
    GaloisCertificate cert;
    cert.n = (unsigned)n;
    mpz_class disc = discriminant(f);
    if (disc == 0) throw ZeroDiscriminantError("repeated roots");

    if (detail::is_perfect_square(disc)) {
        cert.verdict = SnVerdict::NotSn;
        cert.witness = "square discriminant: the group lies in the alternating subgroup";
        return cert;
    }

    if (n == 3) {
        bool reducible = detail::has_rational_root(f);
        cert.irreducibility_certified = !reducible;
        if (reducible) {
            cert.verdict = SnVerdict::NotSn;
            cert.witness = "rational root: the cubic is reducible";
            return cert;
        }
        // irreducible cubic with nonsquare discriminant
        cert.verdict = SnVerdict::Certified;
        cert.witness = "irreducible with nonsquare discriminant";
        return cert;
    }

    // n = 6: collect factor patterns
    std::vector<std::vector<unsigned>> shapes = detail::partitions_of(6);
    mpz_class bad = disc * f.lead();
    u64 ell = 2;
    unsigned used = 0;
    auto next_prime = [&](u64 from) {
        u64 cand = from + 1;
        while (!detail::is_prime_u64(cand)) ++cand;
        return cand;
    };
    while (used < prime_budget) {
        while (bad % (long)ell == 0) ell = next_prime(ell);
        std::vector<unsigned> pat = factor_pattern_mod(f, ell);
        cert.primes_used.push_back(ell);
        cert.patterns.insert(pat);
        ++used;
        // shape elimination
        std::vector<std::vector<unsigned>> keep;
        for (auto& s : shapes)
            if (detail::pattern_refines_shape(pat, s)) keep.push_back(s);
        shapes = keep;
        // cycle-type flags
        if (pat == std::vector<unsigned>{1, 5}) cert.n_minus_1_cycle_seen = true;
        if (pat == std::vector<unsigned>{6}) cert.n_cycle_seen = true;
        {
            unsigned evens = 0, twos = 0;
            bool odd_ok = true;
            for (unsigned p2 : pat) {
                if (p2 % 2 == 0) {
                    ++evens;
                    if (p2 == 2) ++twos;
                }
            }
            (void)odd_ok;
            if (evens == 1 && twos == 1) cert.transposition_pattern_seen = true;
        }
        cert.irreducibility_certified =
            shapes.size() == 1 && shapes[0] == std::vector<unsigned>{6};
        if (cert.irreducibility_certified && cert.n_minus_1_cycle_seen &&
            cert.transposition_pattern_seen) {
            cert.verdict = SnVerdict::Certified;
            cert.witness =
                "irreducible (pattern intersection), a 5-cycle and a transposition pattern";
            return cert;
        }
        ell = next_prime(ell);
    }
    cert.verdict = SnVerdict::Unknown;
    cert.witness = "budget exhausted";
    return cert;
}

// ---------------------------------------------------------------------------
// the 2-adic image verdict

enum class ImageOutcome { Surjective, NotSurjective, Unknown };

struct ImageVerdict {
    ImageOutcome outcome = ImageOutcome::Unknown;
    unsigned d = 1;
    GaloisCertificate certificate;
    DiscSquarefree disc;
    bool squarefree_part_obstructs = false;
    std::vector<std::string> trail;
    std::string detail;
    bool base_field_is_Q_asserted = false;
};

inline ImageVerdict verdict_4_2_1(const IntPoly& f, unsigned d, bool assert_base_field_is_Q,
                                  unsigned prime_budget = 500) {
    if (d != 1 && d != 2) throw BadDegreeError("d must be 1 or 2");
    if (f.degree() != (int)(3 * d))
        throw BadDegreeError("the polynomial must have degree exactly 3d");
    ImageVerdict v;
    v.d = d;
    v.base_field_is_Q_asserted = assert_base_field_is_Q;
    v.disc = disc_sqfree(f);
    v.certificate = certify_Sn(f, prime_budget);
    v.trail = {"4.2.1(i)", "4.2.1(ii)"};
    // condition (ii) reduces to the squarefree part of the discriminant: with
    // the full symmetric group, the unique quadratic subfield of the
    // splitting field is Q(sqrt(disc))
    mpz_class sf = v.disc.squarefree_part;
    bool sf_known = v.disc.complete;
    v.squarefree_part_obstructs = sf_known && (sf == -1 || sf == 2 || sf == -2);

    if (v.certificate.verdict == SnVerdict::NotSn) {
        v.outcome = ImageOutcome::NotSurjective;
        v.detail = "condition (i) fails: " + v.certificate.witness;
        return v;
    }
    if (v.certificate.verdict == SnVerdict::Unknown || !sf_known) {
        v.outcome = ImageOutcome::Unknown;
        v.detail = "certificate or factorization incomplete";
        return v;
    }
    if (v.squarefree_part_obstructs) {
        v.outcome = ImageOutcome::NotSurjective;
        v.detail = "condition (ii) fails: squarefree part of the discriminant is " +
                   sf.get_str() + ", so the splitting field meets Q(i, sqrt(2))";
        return v;
    }
    v.outcome = ImageOutcome::Surjective;
    v.detail = "full symmetric group and squarefree part " + sf.get_str() +
               " outside {-1, 2, -2}";
    return v;
}

// ---------------------------------------------------------------------------
// point counts and L-polynomials

struct FrobeniusData {
    u64 ell = 0;
    unsigned genus = 0;
    std::vector<u64> counts;       // #C(F_{ell^i}), i = 1..genus
    std::vector<mpz_class> lpoly;  // 1 + c_1 T + ... + c_{2g} T^{2g}
    bool weil_bounds_ok = false;
    bool functional_equation_ok = false;
    mpz_class jacobian_order;  // L(1)
};

namespace detail {

// #points of the smooth projective model of y^2 = f(x) over F_{ell^e}
inline u64 hyperelliptic_count(const IntPoly& f, u64 ell, unsigned e) {
    const GaloisRing& F = GaloisRing::get(ell, e, 1);
    u64 q = F.size_as_u64();
    // reduce coefficients into the prime field of F
    std::vector<RingElt> coeffs;
    for (const mpz_class& c : f.c) {
        mpz_class m = c % (long)ell;
        if (m < 0) m += (long)ell;
        coeffs.push_back(F.from_int((i64)m.get_ui()));
    }
    u64 cnt = 0;
    for (u64 i = 0; i < q; ++i) {
        RingElt x = F.element_by_index(i);
        RingElt val = F.zero();
        for (int k = (int)coeffs.size() - 1; k >= 0; --k) val = val * x + coeffs[(size_t)k];
        if (val.is_zero()) {
            cnt += 1;
            continue;
        }
        RingElt chi = scalar_pow(F, val, (q - 1) / 2);
        if (chi == F.one()) cnt += 2;
    }
    // points at infinity
    int n = f.degree();
    if (n % 2 == 1) {
        cnt += 1;
    } else {
        mpz_class lm = f.lead() % (long)ell;
        if (lm < 0) lm += (long)ell;
        RingElt lead = F.from_int((i64)lm.get_ui());
        RingElt chi = scalar_pow(F, lead, (q - 1) / 2);
        if (chi == F.one()) cnt += 2;
    }
    return cnt;
}

}  // namespace detail

inline FrobeniusData count_points_lpoly(const IntPoly& f, u64 ell) {
    int n = f.degree();
    if (n != 3 && n != 5 && n != 6 && n != 7 && n != 8)
        throw BadDegreeError("supported degrees for counting: 3, 5, 6, 7, 8");
    if (ell == 2 || !detail::is_prime_u64(ell)) throw BadPrimeError("ell must be an odd prime");
    mpz_class bad = discriminant(f) * f.lead();
    if (bad % (long)ell == 0) throw BadReductionError("bad reduction at ell");
    unsigned g = (n <= 4) ? 1 : (n <= 6 ? 2 : 3);
    {
        u128 pw = 1;
        for (unsigned i = 0; i < g; ++i) pw *= ell;
        if (pw > 10000000) throw TooLargeError("ell^genus exceeds the counting bound");
    }
    FrobeniusData out;
    out.ell = ell;
    out.genus = g;
    std::vector<mpz_class> s(g + 1, 0);  // power sums of Frobenius roots
    for (unsigned i = 1; i <= g; ++i) {
        u64 cnt = detail::hyperelliptic_count(f, ell, i);
        out.counts.push_back(cnt);
        mpz_class qi = mpz_pow_u(mpz_class((unsigned long)ell), i);
        s[i] = qi + 1 - (long)cnt;
    }
    // Newton's identities: e_1 = s_1, k e_k = sum_{i<k} (-1)^{i-1} e_{k-i} s_i + (-1)^{k-1} s_k
    std::vector<mpz_class> e(g + 1, 0);
    e[0] = 1;
    for (unsigned k = 1; k <= g; ++k) {
        mpz_class acc = 0;
        for (unsigned i = 1; i <= k; ++i) {
            mpz_class term = e[k - i] * s[i];
            acc += (i % 2 == 1) ? term : mpz_class(-term);
        }
        mpz_class ek;
        mpz_divexact_ui(ek.get_mpz_t(), acc.get_mpz_t(), k);
        e[k] = ek;
    }
    std::vector<mpz_class> c(2 * g + 1, 0);
    c[0] = 1;
    for (unsigned k = 1; k <= g; ++k) c[k] = (k % 2 == 1) ? mpz_class(-e[k]) : e[k];
    // functional equation: c_{2g-i} = ell^{g-i} c_i
    for (unsigned i = 0; i < g; ++i)
        c[2 * g - i] = mpz_pow_u(mpz_class((unsigned long)ell), g - i) * c[i];
    out.lpoly = c;
    // validations
    out.functional_equation_ok = true;
    for (unsigned i = 0; i <= 2 * g; ++i) {
        mpz_class lhs = c[2 * g - i] * mpz_pow_u(mpz_class((unsigned long)ell), i);
        mpz_class rhs = c[i] * mpz_pow_u(mpz_class((unsigned long)ell), g);
        if (lhs != rhs) out.functional_equation_ok = false;
    }
    out.weil_bounds_ok = true;
    for (unsigned i = 1; i <= g; ++i) {
        // |s_i| <= 2 g ell^{i/2}: compare squares
        mpz_class lhs = s[i] * s[i];
        mpz_class rhs = mpz_class(4) * g * g * mpz_pow_u(mpz_class((unsigned long)ell), i);
        if (lhs > rhs) out.weil_bounds_ok = false;
    }
    mpz_class l1 = 0;
    for (unsigned i = 0; i <= 2 * g; ++i) l1 += c[i];
    out.jacobian_order = l1;
    if (l1 <= 0) out.weil_bounds_ok = false;
    return out;
}

// projective point count of a plane quartic over F_{ell^e}; the quartic is
// given by its 15 homogeneous coefficients in graded-lex monomial order on
// (x, y, z): x^4, x^3 y, x^3 z, x^2 y^2, x^2 y z, x^2 z^2, x y^3, x y^2 z,
// x y z^2, x z^3, y^4, y^3 z, y^2 z^2, y z^3, z^4
inline u64 count_plane_quartic(const std::vector<i64>& coeffs, u64 ell, unsigned e = 1) {
    if (coeffs.size() != 15) throw ShapeMismatchError("a plane quartic has 15 coefficients");
    const GaloisRing& F = GaloisRing::get(ell, e, 1);
    u64 q = F.size_as_u64();
    std::vector<std::array<unsigned, 3>> monos = {
        {4, 0, 0}, {3, 1, 0}, {3, 0, 1}, {2, 2, 0}, {2, 1, 1}, {2, 0, 2}, {1, 3, 0}, {1, 2, 1},
        {1, 1, 2}, {1, 0, 3}, {0, 4, 0}, {0, 3, 1}, {0, 2, 2}, {0, 1, 3}, {0, 0, 4}};
    auto eval = [&](const RingElt& x, const RingElt& y, const RingElt& z) {
        RingElt acc = F.zero();
        for (size_t i = 0; i < monos.size(); ++i) {
            if (coeffs[i] == 0) continue;
            RingElt t = F.from_int(coeffs[i]);
            for (unsigned a = 0; a < monos[i][0]; ++a) t = t * x;
            for (unsigned a = 0; a < monos[i][1]; ++a) t = t * y;
            for (unsigned a = 0; a < monos[i][2]; ++a) t = t * z;
            acc = acc + t;
        }
        return acc;
    };
    u64 cnt = 0;
    // (1 : y : z), (0 : 1 : z), (0 : 0 : 1)
    for (u64 iy = 0; iy < q; ++iy)
        for (u64 iz = 0; iz < q; ++iz)
            if (eval(F.one(), F.element_by_index(iy), F.element_by_index(iz)).is_zero()) ++cnt;
    for (u64 iz = 0; iz < q; ++iz)
        if (eval(F.zero(), F.one(), F.element_by_index(iz)).is_zero()) ++cnt;
    if (eval(F.zero(), F.zero(), F.one()).is_zero()) ++cnt;
    return cnt;
}

// ---------------------------------------------------------------------------
// mod-2 consistency of the torsion permutation module with the counts

struct Mod2Consistency {
    std::vector<unsigned> pattern;
    std::vector<u64> lpoly_mod2;             // monic charpoly coefficients, constant first
    std::vector<u64> permutation_charpoly;   // same normalization
    bool equal = false;
};

inline Mod2Consistency mod2_consistency(const IntPoly& f, u64 ell) {
    int n = f.degree();
    if (n != 3 && n != 5 && n != 6)
        throw BadDegreeError("mod-2 consistency supports degrees 3, 5, 6");
    Mod2Consistency out;
    out.pattern = factor_pattern_mod(f, ell);
    FrobeniusData fd = count_points_lpoly(f, ell);
    unsigned g = fd.genus;

    // permutation module on the roots over F_2, Frobenius acting by the
    // cycle type; subquotient: kernel-of-sum, modulo the all-ones vector for
    // even degree
    const GaloisRing& F2 = GaloisRing::get(2, 1, 1);
    unsigned N = (unsigned)n;
    Mat P(F2, N, N);
    {
        unsigned base = 0;
        for (unsigned len : out.pattern) {
            for (unsigned i = 0; i < len; ++i)
                P.at(base + (i + 1) % len, base + i) = F2.one();
            base += len;
        }
    }
    // basis of ker(sum): w_i = e_i + e_{i+1}
    std::vector<FpVec> wbasis;
    for (unsigned i = 0; i + 1 < N; ++i) {
        FpVec w(N, 0);
        w[i] = 1;
        w[i + 1] = 1;
        wbasis.push_back(w);
    }
    // for even degree quotient out the all-ones vector
    bool quotient = (N % 2 == 0);
    std::vector<FpVec> basis;
    FpSpan modline(2, N);
    if (quotient) {
        FpVec ones(N, 1);
        modline.insert(ones);
        // drop the last w to get a complement basis
        for (unsigned i = 0; i + 1 < wbasis.size(); ++i) basis.push_back(wbasis[i]);
    } else {
        basis = wbasis;
    }
    if (basis.size() != 2 * g) throw Error("unexpected torsion module dimension");
    // coordinates: reduce a vector against modline then express in basis
    FpCoords co(2, [&] {
        std::vector<FpVec> reduced;
        for (FpVec b : basis) {
            modline.reduce_inplace(b, nullptr);
            reduced.push_back(b);
        }
        return reduced;
    }());
    // induced action matrix
    Mat A(F2, 2 * g, 2 * g);
    for (unsigned j = 0; j < 2 * g; ++j) {
        // image of basis[j] under P
        FpVec im(N, 0);
        for (unsigned r = 0; r < N; ++r) {
            u64 acc = 0;
            for (unsigned cidx = 0; cidx < N; ++cidx)
                acc ^= (u64)(!P.at(r, cidx).is_zero() && basis[j][cidx]);
            im[r] = acc;
        }
        modline.reduce_inplace(im, nullptr);
        FpVec coords = co.coords(im);
        for (unsigned i = 0; i < 2 * g; ++i)
            A.at(i, j) = coords[i] ? F2.one() : F2.zero();
    }
    std::vector<RingElt> cp = A.charpoly();
    for (const RingElt& x : cp) out.permutation_charpoly.push_back(x.coeff(0));

    // reciprocal normalization of L mod 2: T^{2g} L(1/T) = sum c_i T^{2g-i}
    std::vector<u64> lm(2 * g + 1, 0);
    for (unsigned i = 0; i <= 2 * g; ++i) {
        mpz_class m = fd.lpoly[i] % 2;
        if (m < 0) m += 2;
        lm[2 * g - i] = m.get_ui();
    }
    out.lpoly_mod2 = lm;
    out.equal = (out.lpoly_mod2 == out.permutation_charpoly);
    return out;
}

}  // namespace wittlift

#endif  // WITTLIFT_CURVES_HPP
