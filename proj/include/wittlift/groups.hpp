// Copyright (c) 2026 the wittlift authors.
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

#ifndef WITTLIFT_GROUPS_HPP
#define WITTLIFT_GROUPS_HPP

// Classical matrix group families over Galois rings: descriptors, membership
// tests with similitude multipliers, exact orders, standard generators,
// reduction maps, central-quotient representatives and Weil restriction.
//
// Fixed coordinate choices (membership depends on them):
//   * symplectic form  J = [[0, I], [-I, 0]] in h x h blocks;
//   * split symmetric form: polar form is the antidiagonal-ones matrix; the
//     group equations use its upper anti-triangular half A ("M^T A M - mu A
//     alternating"), which agrees with M^T B M = mu B away from p = 2 and
//     cuts out the smooth quadratic-form group at p = 2;
//   * non-split symmetric form: hyperbolic pairs plus the anisotropic plane
//     x^2 + xy + a y^2 with t^2 + t + a irreducible; field level only;
//   * hermitian form: identity, conjugation x -> frobenius^{r/2}(x); field
//     level only.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "wittlift/matrix.hpp"

namespace wittlift {

enum class GroupFamily {
    GL,
    SL,
    Sp,
    GSp,
    SOplus,
    SOminus,
    GSOplus,
    GSOminus,
    U,
    SU,
    SLmodMu,  // central quotient of SL_size by mu_m, realized as matrix classes
    PGL,
    PGSp,
    Res,  // Weil restriction of an inner GL/SL/PGL descriptor
};

inline std::string family_name(GroupFamily f) {
    switch (f) {
        case GroupFamily::GL: return "GL";
        case GroupFamily::SL: return "SL";
        case GroupFamily::Sp: return "Sp";
        case GroupFamily::GSp: return "GSp";
        case GroupFamily::SOplus: return "SO+";
        case GroupFamily::SOminus: return "SO-";
        case GroupFamily::GSOplus: return "GSO+";
        case GroupFamily::GSOminus: return "GSO-";
        case GroupFamily::U: return "U";
        case GroupFamily::SU: return "SU";
        case GroupFamily::SLmodMu: return "SLmu";
        case GroupFamily::PGL: return "PGL";
        case GroupFamily::PGSp: return "PGSp";
        case GroupFamily::Res: return "Res";
    }
    return "?";
}

struct GroupDescriptor;
using GroupDescriptorPtr = std::shared_ptr<const GroupDescriptor>;

struct GroupDescriptor {
    GroupFamily family = GroupFamily::GL;
    unsigned size = 0;                 // matrix dimension over the base ring
    const GaloisRing* ring = nullptr;  // base ring
    unsigned quotient_modulus = 0;     // m for SLmodMu
    GroupDescriptorPtr inner;          // for Res
    unsigned res_degree = 0;           // s: inner ring degree over the base ring

    static GroupDescriptor make(GroupFamily f, unsigned size, const GaloisRing& R,
                                unsigned quotient_modulus = 0) {
        GroupDescriptor d;
        d.family = f;
        d.size = size;
        d.ring = &R;
        d.quotient_modulus = quotient_modulus;
        switch (f) {
            case GroupFamily::Sp:
            case GroupFamily::GSp:
            case GroupFamily::PGSp:
                if (size % 2 != 0 || size < 2)
                    throw UnsupportedFamilyError("symplectic size must be even");
                break;
            case GroupFamily::SOplus:
            case GroupFamily::GSOplus:
                if (size % 2 != 0 || size < 2)
                    throw UnsupportedFamilyError("orthogonal size must be even");
                break;
            case GroupFamily::SOminus:
            case GroupFamily::GSOminus:
                if (size % 2 != 0 || size < 2)
                    throw UnsupportedFamilyError("orthogonal size must be even");
                if (R.n != 1)
                    throw UnsupportedFamilyError("non-split orthogonal groups: field level only");
                break;
            case GroupFamily::U:
            case GroupFamily::SU:
                if (R.n != 1 || R.r % 2 != 0)
                    throw UnsupportedFamilyError(
                        "unitary groups: field level over F_{q^2} with q = p^{r/2}");
                break;
            case GroupFamily::SLmodMu:
                if (quotient_modulus == 0 || size % quotient_modulus != 0)
                    throw UnsupportedFamilyError("SL/mu_m requires m dividing the size");
                break;
            default: break;
        }
        if (size == 0) throw UnsupportedFamilyError("size must be positive");
        return d;
    }

    const GaloisRing& base_ring() const { return *ring; }

    bool operator==(const GroupDescriptor& o) const {
        if (family != o.family || size != o.size || ring != o.ring ||
            quotient_modulus != o.quotient_modulus || res_degree != o.res_degree)
            return false;
        if ((inner == nullptr) != (o.inner == nullptr)) return false;
        if (inner && !(*inner == *o.inner)) return false;
        return true;
    }

    bool is_similitude() const {
        return family == GroupFamily::GSp || family == GroupFamily::GSOplus ||
               family == GroupFamily::GSOminus;
    }
    bool is_quotient_family() const {
        return family == GroupFamily::PGL || family == GroupFamily::PGSp ||
               family == GroupFamily::SLmodMu ||
               (family == GroupFamily::Res && inner && inner->is_quotient_family());
    }
    bool is_orthogonal() const {
        return family == GroupFamily::SOplus || family == GroupFamily::SOminus ||
               family == GroupFamily::GSOplus || family == GroupFamily::GSOminus;
    }

    GroupDescriptor at_level(unsigned m) const {
        GroupDescriptor d = *this;
        d.ring = &ring->at_level(m);
        if (family == GroupFamily::Res) {
            GroupDescriptor in = inner->at_level(m);
            d.inner = std::make_shared<const GroupDescriptor>(in);
        }
        return d;
    }

    std::string to_string() const {
        std::ostringstream os;
        if (family == GroupFamily::Res) {
            os << "Res[" << res_degree << "](" << inner->to_string() << ")";
            return os.str();
        }
        os << family_name(family);
        if (family == GroupFamily::SLmodMu) os << quotient_modulus;
        os << "(" << size << ", " << ring->to_string() << ")";
        return os.str();
    }
};

// matrix-Lie-algebra dimension of the family (relative dimension of the group
// scheme); the order at level n is the field-level order times p^{r dim (n-1)}
inline unsigned group_dim(const GroupDescriptor& D) {
    unsigned m = D.size;
    switch (D.family) {
        case GroupFamily::GL: return m * m;
        case GroupFamily::SL: return m * m - 1;
        case GroupFamily::Sp: { unsigned h = m / 2; return 2 * h * h + h; }
        case GroupFamily::GSp: { unsigned h = m / 2; return 2 * h * h + h + 1; }
        case GroupFamily::SOplus:
        case GroupFamily::SOminus: { unsigned h = m / 2; return h * (2 * h - 1); }
        case GroupFamily::GSOplus:
        case GroupFamily::GSOminus: { unsigned h = m / 2; return h * (2 * h - 1) + 1; }
        case GroupFamily::U: return m * m;
        case GroupFamily::SU: return m * m - 1;
        case GroupFamily::SLmodMu: return m * m - 1;
        case GroupFamily::PGL: return m * m - 1;
        case GroupFamily::PGSp: { unsigned h = m / 2; return 2 * h * h + h; }
        case GroupFamily::Res: return D.res_degree * group_dim(*D.inner);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// small scalar helpers

inline RingElt scalar_pow(const GaloisRing& R, RingElt base, u64 e) {
    RingElt acc = R.one();
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

// fixed generator of the residue multiplicative group: the first element in
// enumeration order of multiplicative order q - 1
inline RingElt field_multiplicative_generator(const GaloisRing& field) {
    if (field.n != 1) throw BadLevelError("field generator expects a residue field");
    u64 q = field.size_as_u64();
    for (u64 i = 1; i < q; ++i) {
        RingElt g = field.element_by_index(i);
        if (g.is_zero()) continue;
        u64 ord = 1;
        RingElt x = g;
        while (!(x == field.one())) { x = x * g; ++ord; }
        if (ord == q - 1) return g;
    }
    throw Error("no multiplicative generator found");
}

// generators of the unit group R^x: a Teichmueller generator of the residue
// multiplicative group together with the principal units 1 + p^a t^i
inline std::vector<RingElt> unit_generators(const GaloisRing& R) {
    std::vector<RingElt> out;
    u64 q = 1;
    for (unsigned i = 0; i < R.r; ++i) q *= R.p;
    if (q > 2) out.push_back(R.teichmuller(field_multiplicative_generator(R.residue_field())));
    for (unsigned a = 1; a < R.n; ++a) {
        u64 pa = 1;
        for (unsigned i = 0; i < a; ++i) pa *= R.p;
        for (unsigned i = 0; i < R.r; ++i) {
            std::vector<u64> c(R.r, 0);
            c[i] = pa;
            if (i == 0) c[0] = (c[0] + 1) % R.pn;  // 1 + p^a
            RingElt u = R.from_coeffs(c);
            if (i != 0) u = u + R.one();  // 1 + p^a t^i
            out.push_back(u);
        }
    }
    if (out.empty()) out.push_back(R.one());
    return out;
}

// all m-th roots of unity of R, by enumerating Teichmueller classes and the
// principal units (desk scale: |1 + pR| = q^{n-1} stays small); cached per
// (ring, m) since quotient canonicalization calls this in inner loops
inline const std::vector<RingElt>& roots_of_unity(const GaloisRing& R, unsigned m);

namespace detail {
inline std::vector<RingElt> roots_of_unity_impl(const GaloisRing& R, unsigned m) {
    u64 q = 1;
    for (unsigned i = 0; i < R.r; ++i) q *= R.p;
    u128 principal = 1;
    for (unsigned i = 1; i < R.n; ++i) principal *= q;
    if (principal > (1u << 22))
        throw TooLargeError("roots_of_unity: principal unit group too large to enumerate");
    std::vector<RingElt> out;
    const GaloisRing& k = R.residue_field();
    for (u64 i = 0; i < q; ++i) {
        RingElt z = k.element_by_index(i);
        if (z.is_zero()) continue;
        if (!(scalar_pow(k, z, m) == k.one())) continue;
        RingElt t = R.teichmuller(z);
        // principal part: 1 + p x with x ranging over coefficients mod p^{n-1}
        for (u64 j = 0; j < (u64)principal; ++j) {
            u64 jj = j;
            std::vector<u64> c(R.r, 0);
            u64 pn1 = R.pn / R.p;
            for (unsigned a = 0; a < R.r; ++a) {
                c[a] = (jj % pn1) * R.p % R.pn;
                jj /= pn1;
            }
            RingElt u = R.one() + R.from_coeffs(c);
            RingElt cand = t * u;
            if (scalar_pow(R, cand, m) == R.one()) out.push_back(cand);
        }
    }
    return out;
}
}  // namespace detail

inline const std::vector<RingElt>& roots_of_unity(const GaloisRing& R, unsigned m) {
    static std::mutex mx;
    static std::map<std::pair<const GaloisRing*, unsigned>, std::vector<RingElt>> cache;
    std::lock_guard<std::mutex> lk(mx);
    auto key = std::make_pair(&R, m);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, detail::roots_of_unity_impl(R, m)).first;
    return it->second;
}

// ---------------------------------------------------------------------------
// forms

inline Mat symplectic_form(const GaloisRing& R, unsigned size) {
    unsigned h = size / 2;
    Mat J(R, size, size);
    for (unsigned i = 0; i < h; ++i) {
        J.at(i, h + i) = R.one();
        J.at(h + i, i) = -R.one();
    }
    return J;
}

inline Mat split_quadratic_half(const GaloisRing& R, unsigned size) {
    unsigned h = size / 2;
    Mat A(R, size, size);
    for (unsigned i = 0; i < h; ++i) A.at(i, size - 1 - i) = R.one();
    return A;
}

// first a (in enumeration order) with x^2 + x + a irreducible over the field
inline RingElt anisotropic_constant(const GaloisRing& field) {
    u64 q = field.size_as_u64();
    for (u64 kk = 0; kk < q; ++kk) {
        RingElt a = field.element_by_index(kk);
        bool has_root = false;
        for (u64 j = 0; j < q; ++j) {
            RingElt x = field.element_by_index(j);
            if ((x * x + x + a).is_zero()) { has_root = true; break; }
        }
        if (!has_root) return a;
    }
    throw Error("no anisotropic constant found");
}

inline Mat nonsplit_quadratic_half(const GaloisRing& R, unsigned size) {
    unsigned h = size / 2;
    Mat A(R, size, size);
    for (unsigned i = 0; i + 1 < h; ++i) A.at(2 * i, 2 * i + 1) = R.one();
    RingElt a = anisotropic_constant(R.residue_field());
    A.at(size - 2, size - 2) = R.one();
    A.at(size - 2, size - 1) = R.one();
    A.at(size - 1, size - 1) = R.lift(a);
    return A;
}

inline Mat quadratic_half_form(const GroupDescriptor& D) {
    bool minus = D.family == GroupFamily::SOminus || D.family == GroupFamily::GSOminus;
    return minus ? nonsplit_quadratic_half(*D.ring, D.size)
                 : split_quadratic_half(*D.ring, D.size);
}

inline Mat conj_transpose(const Mat& M) {
    const GaloisRing& R = M.ring();
    unsigned half = R.r / 2;
    Mat out(R, M.cols(), M.rows());
    for (unsigned i = 0; i < M.rows(); ++i)
        for (unsigned j = 0; j < M.cols(); ++j) {
            RingElt x = M.at(i, j);
            for (unsigned k = 0; k < half; ++k) x = R.frobenius(x);
            out.at(j, i) = x;
        }
    return out;
}

// rank of a residue-field matrix
inline unsigned field_rank(Mat a) {
    const GaloisRing& k = a.ring();
    if (k.n != 1) throw BadLevelError("field_rank expects a residue-field matrix");
    unsigned rank = 0, row = 0;
    for (unsigned col = 0; col < a.cols() && row < a.rows(); ++col) {
        unsigned piv = a.rows();
        for (unsigned i = row; i < a.rows(); ++i)
            if (!a.at(i, col).is_zero()) { piv = i; break; }
        if (piv == a.rows()) continue;
        for (unsigned j = 0; j < a.cols(); ++j) std::swap(a.at(piv, j), a.at(row, j));
        RingElt d = k.inv(a.at(row, col));
        for (unsigned j = 0; j < a.cols(); ++j) a.at(row, j) = a.at(row, j) * d;
        for (unsigned i = 0; i < a.rows(); ++i) {
            if (i == row) continue;
            RingElt f = a.at(i, col);
            if (f.is_zero()) continue;
            for (unsigned j = 0; j < a.cols(); ++j) a.at(i, j) = a.at(i, j) - f * a.at(row, j);
        }
        ++row;
        ++rank;
    }
    return rank;
}

// Dickson invariant at p = 2: rank(g - 1) mod 2 over the residue field
inline unsigned dickson_invariant(const Mat& g_residue) {
    const GaloisRing& k = g_residue.ring();
    return field_rank(g_residue - Mat::identity(k, g_residue.rows())) % 2;
}

// ---------------------------------------------------------------------------
// Weil restriction plumbing

namespace detail {

struct ResBasis {
    const GaloisRing* big = nullptr;
    const GaloisRing* small = nullptr;
    unsigned s = 0;
    RingElt tau;                 // embedded generator of the small ring, inside big
    Mat coord_matrix_inv;        // over Z/p^n: coefficient vector -> basis coordinates
};

inline const ResBasis& res_basis(const GaloisRing& big, const GaloisRing& small) {
    static std::mutex mx;
    static std::map<std::pair<const GaloisRing*, const GaloisRing*>, std::unique_ptr<ResBasis>>
        cache;
    std::lock_guard<std::mutex> lk(mx);
    auto key = std::make_pair(&big, &small);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;

    if (big.p != small.p || big.n != small.n || small.r == 0 || big.r % small.r != 0 ||
        big.r == small.r)
        throw UnsupportedFamilyError("weil restriction: incompatible rings");
    unsigned s = big.r / small.r;
    auto rb = std::make_unique<ResBasis>();
    rb->big = &big;
    rb->small = &small;
    rb->s = s;

    auto eval_f = [&](const RingElt& x) {
        RingElt val = big.zero();
        RingElt xp = big.one();
        for (unsigned i = 0; i < small.r; ++i) {
            val = val + xp * big.from_int((i64)small.modulus[i]);
            xp = xp * x;
        }
        return val + xp;  // monic top term
    };
    auto eval_df = [&](const RingElt& x) {
        RingElt val = big.zero();
        for (unsigned i = 1; i < small.r; ++i)
            val = val + big.from_int((i64)(i * small.modulus[i])) * scalar_pow(big, x, i - 1);
        val = val + big.from_int((i64)small.r) * scalar_pow(big, x, small.r - 1);
        return val;
    };

    const GaloisRing& bigres = big.residue_field();
    RingElt root = big.zero();
    bool found = false;
    for (u64 k = 0; k < bigres.size_as_u64(); ++k) {
        RingElt cand = big.lift(bigres.element_by_index(k));
        if (big.residue(eval_f(cand)).is_zero()) {
            root = cand;
            found = true;
            break;
        }
    }
    if (!found) throw Error("weil restriction: no residue root of the subring modulus");
    for (unsigned it2 = 0; it2 < big.n + 2; ++it2) {
        RingElt fx = eval_f(root);
        if (fx.is_zero()) break;
        root = root - fx * big.inv(eval_df(root));
    }
    if (!eval_f(root).is_zero()) throw Error("weil restriction: Hensel lift failed");
    rb->tau = root;

    const GaloisRing& zn = GaloisRing::get(big.p, 1, big.n);
    RingElt u = big.gen();
    Mat cb(zn, big.r, big.r);
    for (unsigned b = 0; b < s; ++b)
        for (unsigned a = 0; a < small.r; ++a) {
            RingElt e = scalar_pow(big, root, a) * scalar_pow(big, u, b);
            unsigned idx = a + small.r * b;
            for (unsigned i = 0; i < big.r; ++i) cb.at(i, idx) = zn.from_int((i64)e.coeff(i));
        }
    auto inv = cb.inverse();
    if (!inv) throw Error("weil restriction: basis change not invertible");
    rb->coord_matrix_inv = *inv;

    auto& ref = *rb;
    cache.emplace(key, std::move(rb));
    return ref;
}

// coordinates of x in the basis {tau^a u^b}, grouped by b as small elements
inline std::vector<RingElt> res_coords(const ResBasis& rb, const RingElt& x) {
    const GaloisRing& big = *rb.big;
    const GaloisRing& small = *rb.small;
    const GaloisRing& zn = GaloisRing::get(big.p, 1, big.n);
    Mat v(zn, big.r, 1);
    for (unsigned i = 0; i < big.r; ++i) v.at(i, 0) = zn.from_int((i64)x.coeff(i));
    Mat c = rb.coord_matrix_inv * v;
    std::vector<RingElt> out(rb.s, small.zero());
    for (unsigned b = 0; b < rb.s; ++b) {
        std::vector<u64> coeffs(small.r);
        for (unsigned a = 0; a < small.r; ++a) coeffs[a] = c.at(a + small.r * b, 0).coeff(0);
        out[b] = small.from_coeffs(coeffs);
    }
    return out;
}

inline RingElt res_embed(const ResBasis& rb, const RingElt& y) {
    const GaloisRing& big = *rb.big;
    RingElt acc = big.zero();
    for (unsigned a = 0; a < rb.small->r; ++a)
        acc = acc + scalar_pow(big, rb.tau, a) * big.from_int((i64)y.coeff(a));
    return acc;
}

}  // namespace detail

inline GroupDescriptor weil_restriction_descriptor(const GroupDescriptor& inner,
                                                   unsigned subfield_degree) {
    if (inner.family != GroupFamily::GL && inner.family != GroupFamily::SL &&
        inner.family != GroupFamily::PGL)
        throw UnsupportedFamilyError("weil restriction supports GL, SL, PGL");
    const GaloisRing& big = *inner.ring;
    if (subfield_degree == 0 || big.r % subfield_degree != 0 ||
        big.r / subfield_degree == big.r)
        throw UnsupportedFamilyError("weil restriction: degree must properly divide r");
    unsigned s = subfield_degree;
    const GaloisRing& small = GaloisRing::get(big.p, big.r / s, big.n);
    detail::res_basis(big, small);  // validate now
    GroupDescriptor d;
    d.family = GroupFamily::Res;
    d.size = inner.size * s;
    d.ring = &small;
    d.inner = std::make_shared<const GroupDescriptor>(inner);
    d.res_degree = s;
    if ((u64)d.size > 16) throw SizeOverflowError("weil restriction: block matrix too large");
    return d;
}

// ring homomorphism M_m(W_n(F_{q^s})) -> M_{ms}(W_n(F_q)) via the regular
// representation in the basis {u^b}
inline Mat weil_transport(const GroupDescriptor& res_desc, const Mat& M) {
    const GroupDescriptor& inner = *res_desc.inner;
    const auto& rb = detail::res_basis(*inner.ring, *res_desc.ring);
    unsigned m = inner.size, s = res_desc.res_degree;
    const GaloisRing& big = *inner.ring;
    Mat out(*res_desc.ring, m * s, m * s);
    RingElt u = big.gen();
    for (unsigned i = 0; i < m; ++i)
        for (unsigned j = 0; j < m; ++j) {
            RingElt x = M.at(i, j);
            RingElt xu = x;
            for (unsigned b = 0; b < s; ++b) {
                std::vector<RingElt> co = detail::res_coords(rb, xu);
                for (unsigned a = 0; a < s; ++a) out.at(i * s + a, j * s + b) = co[a];
                xu = xu * u;
            }
        }
    return out;
}

// inverse of weil_transport on its image; entries are read off the first
// block column and the result is re-transported by the caller to verify
inline Mat weil_untransport(const GroupDescriptor& res_desc, const Mat& M) {
    const GroupDescriptor& inner = *res_desc.inner;
    const auto& rb = detail::res_basis(*inner.ring, *res_desc.ring);
    unsigned m = inner.size, s = res_desc.res_degree;
    const GaloisRing& big = *inner.ring;
    Mat out(big, m, m);
    RingElt u = big.gen();
    for (unsigned i = 0; i < m; ++i)
        for (unsigned j = 0; j < m; ++j) {
            RingElt x = big.zero();
            for (unsigned a = 0; a < s; ++a)
                x = x + detail::res_embed(rb, M.at(i * s + a, j * s + 0)) * scalar_pow(big, u, a);
            out.at(i, j) = x;
        }
    return out;
}

// ---------------------------------------------------------------------------
// membership

struct MembershipResult {
    bool member = false;
    std::optional<RingElt> multiplier;
    std::string reason;
};

namespace detail {

inline MembershipResult mem_fail(const std::string& why) {
    MembershipResult r;
    r.member = false;
    r.reason = why;
    return r;
}
inline MembershipResult mem_ok(std::optional<RingElt> mult = std::nullopt) {
    MembershipResult r;
    r.member = true;
    r.multiplier = std::move(mult);
    return r;
}

// mu with M^T F M = mu F for an invertible form F (probing a unit entry)
inline std::optional<RingElt> similitude_multiplier(const Mat& M, const Mat& F) {
    const GaloisRing& R = M.ring();
    Mat S = M.transpose() * F * M;
    for (unsigned i = 0; i < F.rows(); ++i)
        for (unsigned j = 0; j < F.cols(); ++j) {
            if (!R.is_unit(F.at(i, j))) continue;
            RingElt mu = S.at(i, j) * R.inv(F.at(i, j));
            if (S == F.scaled(mu)) return mu;
            return std::nullopt;
        }
    return std::nullopt;
}

}  // namespace detail

inline MembershipResult membership_and_multiplier(const Mat& M, const GroupDescriptor& D) {
    const GaloisRing& R = *D.ring;
    if (&M.ring() != &R || M.rows() != D.size || M.cols() != D.size)
        throw ShapeMismatchError("membership: matrix does not match the descriptor");
    switch (D.family) {
        case GroupFamily::GL:
        case GroupFamily::PGL:
            if (!R.is_unit(M.det())) return detail::mem_fail("determinant is not a unit");
            return detail::mem_ok();
        case GroupFamily::SL:
            if (M.det() != R.one()) return detail::mem_fail("determinant is not 1");
            return detail::mem_ok();
        case GroupFamily::SLmodMu:
            // class representatives: scaling by mu_m fixes det since m | size
            if (M.det() != R.one()) return detail::mem_fail("determinant is not 1");
            return detail::mem_ok();
        case GroupFamily::Sp: {
            Mat J = symplectic_form(R, D.size);
            if (M.transpose() * J * M != J)
                return detail::mem_fail("symplectic form not preserved");
            return detail::mem_ok(R.one());
        }
        case GroupFamily::GSp:
        case GroupFamily::PGSp: {
            Mat J = symplectic_form(R, D.size);
            auto mu = detail::similitude_multiplier(M, J);
            if (!mu || !R.is_unit(*mu)) return detail::mem_fail("not a symplectic similitude");
            return detail::mem_ok(*mu);
        }
        case GroupFamily::SOplus:
        case GroupFamily::SOminus: {
            Mat A = quadratic_half_form(D);
            if (!(M.transpose() * A * M - A).is_alternating())
                return detail::mem_fail("quadratic form not preserved");
            if (R.p == 2) {
                if (dickson_invariant(M.reduce(1)) != 0)
                    return detail::mem_fail("wrong connected component");
            } else {
                if (M.det() != R.one()) return detail::mem_fail("determinant is not 1");
            }
            return detail::mem_ok(R.one());
        }
        case GroupFamily::GSOplus:
        case GroupFamily::GSOminus: {
            Mat A = quadratic_half_form(D);
            Mat B = A + A.transpose();
            auto mu = detail::similitude_multiplier(M, B);
            if (!mu || !R.is_unit(*mu))
                return detail::mem_fail("not an orthogonal similitude");
            if (!(M.transpose() * A * M - A.scaled(*mu)).is_alternating())
                return detail::mem_fail("quadratic form not preserved");
            unsigned h = D.size / 2;
            if (R.p == 2) {
                const GaloisRing& k = R.residue_field();
                u64 q = k.size_as_u64();
                RingElt mu0 = R.reduce(*mu, 1);
                RingElt sqrt_mu = scalar_pow(k, mu0, q / 2);  // square root, q even
                Mat norm = M.reduce(1).scaled(k.inv(sqrt_mu));
                if (dickson_invariant(norm) != 0)
                    return detail::mem_fail("improper similitude");
            } else {
                if (M.det() != scalar_pow(R, *mu, h))
                    return detail::mem_fail("improper similitude (det != mu^h)");
            }
            return detail::mem_ok(*mu);
        }
        case GroupFamily::U:
        case GroupFamily::SU: {
            if (conj_transpose(M) * M != Mat::identity(R, D.size))
                return detail::mem_fail("hermitian form not preserved");
            if (D.family == GroupFamily::SU && M.det() != R.one())
                return detail::mem_fail("determinant is not 1");
            return detail::mem_ok(R.one());
        }
        case GroupFamily::Res: {
            Mat inner = weil_untransport(D, M);
            if (weil_transport(D, inner) != M)
                return detail::mem_fail("not in the image of the restriction");
            return membership_and_multiplier(inner, *D.inner);
        }
    }
    return detail::mem_fail("unknown family");
}

// ---------------------------------------------------------------------------
// central quotient representatives

// scales M by a central unit so the first unit entry in row-major order
// becomes 1; for mu_m quotients picks the key-least mu_m scaling instead
inline Mat canonical_rep(const GroupDescriptor& D, const Mat& M) {
    switch (D.family) {
        case GroupFamily::PGL:
        case GroupFamily::PGSp: {
            const GaloisRing& R = *D.ring;
            for (unsigned i = 0; i < M.rows(); ++i)
                for (unsigned j = 0; j < M.cols(); ++j)
                    if (R.is_unit(M.at(i, j))) return M.scaled(R.inv(M.at(i, j)));
            throw NotInvertibleError("no unit entry; matrix is not invertible over a local ring");
        }
        case GroupFamily::SLmodMu: {
            std::vector<RingElt> mu = roots_of_unity(*D.ring, D.quotient_modulus);
            Mat best = M;
            std::string bestkey = M.key();
            for (const RingElt& z : mu) {
                Mat cand = M.scaled(z);
                std::string k = cand.key();
                if (k < bestkey) { bestkey = k; best = cand; }
            }
            return best;
        }
        case GroupFamily::Res: {
            if (!D.inner->is_quotient_family()) return M;
            Mat inner = weil_untransport(D, M);
            return weil_transport(D, canonical_rep(*D.inner, inner));
        }
        default: return M;
    }
}

// ---------------------------------------------------------------------------
// group elements

class GroupElt {
  public:
    GroupElt() = default;

    static GroupElt make(const GroupDescriptor& D, const Mat& raw) {
        MembershipResult mr = membership_and_multiplier(raw, D);
        if (!mr.member) throw Error("not a member of " + D.to_string() + ": " + mr.reason);
        GroupElt g;
        g.D_ = D;
        g.m_ = canonical_rep(D, raw);
        g.mult_ = mr.multiplier;
        return g;
    }

    // products/inverses of members are members: skip the membership test
    static GroupElt unchecked(const GroupDescriptor& D, const Mat& raw) {
        GroupElt g;
        g.D_ = D;
        g.m_ = D.is_quotient_family() ? canonical_rep(D, raw) : raw;
        return g;
    }

    static GroupElt identity(const GroupDescriptor& D) {
        return unchecked(D, Mat::identity(*D.ring, D.size));
    }

    const GroupDescriptor& descriptor() const { return D_; }
    const Mat& mat() const { return m_; }

    GroupElt operator*(const GroupElt& o) const {
        if (!(D_ == o.D_)) throw DescriptorMismatchError("product across descriptors");
        return unchecked(D_, m_ * o.m_);
    }

    GroupElt inverse() const {
        auto inv = m_.inverse();
        if (!inv) throw NotInvertibleError("group element without inverse");
        return unchecked(D_, *inv);
    }

    GroupElt reduce(unsigned level) const {
        GroupDescriptor d = D_.at_level(level);
        return unchecked(d, m_.reduce(level));
    }

    RingElt multiplier() const {
        if (mult_) return *mult_;
        MembershipResult mr = membership_and_multiplier(m_, D_);
        if (!mr.member || !mr.multiplier)
            throw Error("element has no similitude multiplier");
        return *mr.multiplier;
    }

    bool operator==(const GroupElt& o) const { return D_ == o.D_ && m_ == o.m_; }
    bool operator!=(const GroupElt& o) const { return !(*this == o); }

    std::string key() const { return m_.key(); }
    bool is_identity() const { return m_.is_identity(); }

  private:
    GroupDescriptor D_;
    Mat m_;
    std::optional<RingElt> mult_;
};

// ---------------------------------------------------------------------------
// orders

inline mpz_class mpz_pow_u(const mpz_class& b, u64 e) {
    mpz_class out;
    mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), (unsigned long)e);
    return out;
}

inline mpz_class unit_group_order(const GaloisRing& R) {
    mpz_class q = mpz_pow_u(mpz_class((unsigned long)R.p), R.r);
    return mpz_pow_u(q, R.n - 1) * (q - 1);
}

inline mpz_class group_order(const GroupDescriptor& D);

namespace detail {

inline mpz_class field_level_order(const GroupDescriptor& D) {
    const GaloisRing& R = *D.ring;
    mpz_class q = mpz_pow_u(mpz_class((unsigned long)R.p), R.r);
    unsigned m = D.size;
    switch (D.family) {
        case GroupFamily::GL: {
            mpz_class o = 1, qm = mpz_pow_u(q, m);
            for (unsigned i = 0; i < m; ++i) o *= qm - mpz_pow_u(q, i);
            return o;
        }
        case GroupFamily::SL: {
            GroupDescriptor g = D;
            g.family = GroupFamily::GL;
            return field_level_order(g) / (q - 1);
        }
        case GroupFamily::Sp: {
            unsigned h = m / 2;
            mpz_class o = mpz_pow_u(q, (u64)h * h);
            for (unsigned i = 1; i <= h; ++i) o *= mpz_pow_u(q, 2 * i) - 1;
            return o;
        }
        case GroupFamily::GSp: {
            GroupDescriptor g = D;
            g.family = GroupFamily::Sp;
            return field_level_order(g) * (q - 1);
        }
        case GroupFamily::SOplus:
        case GroupFamily::SOminus: {
            unsigned h = m / 2;
            mpz_class o = mpz_pow_u(q, (u64)h * (h - 1));
            mpz_class qh = mpz_pow_u(q, h);
            o *= (D.family == GroupFamily::SOplus) ? mpz_class(qh - 1) : mpz_class(qh + 1);
            for (unsigned i = 1; i < h; ++i) o *= mpz_pow_u(q, 2 * i) - 1;
            return o;
        }
        case GroupFamily::GSOplus:
        case GroupFamily::GSOminus: {
            GroupDescriptor g = D;
            g.family =
                (D.family == GroupFamily::GSOplus) ? GroupFamily::SOplus : GroupFamily::SOminus;
            return field_level_order(g) * (q - 1);
        }
        case GroupFamily::U:
        case GroupFamily::SU: {
            mpz_class q0 = mpz_pow_u(mpz_class((unsigned long)R.p), R.r / 2);
            mpz_class o = mpz_pow_u(q0, (u64)m * (m - 1) / 2);
            for (unsigned i = 1; i <= m; ++i) {
                mpz_class f = mpz_pow_u(q0, i);
                o *= (i % 2 == 1) ? mpz_class(f + 1) : mpz_class(f - 1);
            }
            if (D.family == GroupFamily::SU) o /= (q0 + 1);
            return o;
        }
        default: throw NotInstantiableError("no field-level order formula for this family");
    }
}

}  // namespace detail

inline mpz_class group_order(const GroupDescriptor& D) {
    const GaloisRing& R = *D.ring;
    switch (D.family) {
        case GroupFamily::Res: return group_order(*D.inner);
        case GroupFamily::PGL: {
            GroupDescriptor g = GroupDescriptor::make(GroupFamily::GL, D.size, R);
            return group_order(g) / unit_group_order(R);
        }
        case GroupFamily::PGSp: {
            GroupDescriptor g = GroupDescriptor::make(GroupFamily::GSp, D.size, R);
            return group_order(g) / unit_group_order(R);
        }
        case GroupFamily::SLmodMu: {
            GroupDescriptor g = GroupDescriptor::make(GroupFamily::SL, D.size, R);
            return group_order(g) / (unsigned long)roots_of_unity(R, D.quotient_modulus).size();
        }
        default: {
            GroupDescriptor f = D.at_level(1);
            mpz_class base = detail::field_level_order(f);
            mpz_class layer = mpz_pow_u(mpz_class((unsigned long)R.p),
                                        (u64)R.r * group_dim(D) * (R.n - 1));
            return base * layer;
        }
    }
}

// ---------------------------------------------------------------------------
// standard generators

namespace detail {

inline std::vector<Mat> sl_generators(const GaloisRing& R, unsigned m) {
    std::vector<Mat> out;
    if (m < 2) return out;
    for (unsigned i = 0; i + 1 < m; ++i)
        for (unsigned c = 0; c < R.r; ++c) {
            RingElt x = scalar_pow(R, R.gen(), c);
            if (R.r == 1) x = R.one();
            Mat e1 = Mat::identity(R, m);
            e1.at(i, i + 1) = x;
            out.push_back(e1);
            Mat e2 = Mat::identity(R, m);
            e2.at(i + 1, i) = x;
            out.push_back(e2);
        }
    return out;
}

inline std::vector<Mat> sp_generators(const GaloisRing& R, unsigned size) {
    unsigned h = size / 2;
    std::vector<Mat> out;
    // GL_h block [[A, 0], [0, (A^T)^{-1}]] for elementary A = E_{i,i+1}(x)
    for (unsigned i = 0; i + 1 < h; ++i)
        for (unsigned c = 0; c < R.r; ++c) {
            RingElt x = (R.r == 1) ? R.one() : scalar_pow(R, R.gen(), c);
            for (int swap = 0; swap < 2; ++swap) {
                unsigned a = swap ? i + 1 : i, b = swap ? i : i + 1;
                Mat m = Mat::identity(R, size);
                m.at(a, b) = x;             // A = E_{ab}(x)
                m.at(h + b, h + a) = -x;    // (A^T)^{-1} = E_{ba}(-x)
                out.push_back(m);
            }
        }
    // [[I, B], [0, I]] and [[I, 0], [B, I]] for a basis of symmetric B
    auto sym_basis = [&]() {
        std::vector<Mat> bs;
        for (unsigned c = 0; c < R.r; ++c) {
            RingElt x = (R.r == 1) ? R.one() : scalar_pow(R, R.gen(), c);
            for (unsigned i = 0; i < h; ++i) {
                Mat b(R, h, h);
                b.at(i, i) = x;
                bs.push_back(b);
            }
            for (unsigned i = 0; i < h; ++i)
                for (unsigned j = i + 1; j < h; ++j) {
                    Mat b(R, h, h);
                    b.at(i, j) = x;
                    b.at(j, i) = x;
                    bs.push_back(b);
                }
        }
        return bs;
    };
    for (const Mat& b : sym_basis()) {
        Mat up = Mat::identity(R, size);
        Mat lo = Mat::identity(R, size);
        for (unsigned i = 0; i < h; ++i)
            for (unsigned j = 0; j < h; ++j) {
                up.at(i, h + j) = b.at(i, j);
                lo.at(h + i, j) = b.at(i, j);
            }
        out.push_back(up);
        out.push_back(lo);
    }
    return out;
}

// orthogonal transvections/reflections T_v = 1 +- v (v^T B) / Q(v) over the
// residue field, for candidate vectors v with few nonzero coordinates
inline std::vector<Mat> so_generators_field(const GroupDescriptor& D) {
    const GaloisRing& k = *D.ring;
    if (k.n != 1) throw NotInstantiableError("orthogonal generators: field level only");
    unsigned nn = D.size;
    Mat A = quadratic_half_form(D);
    Mat B = A + A.transpose();
    u64 q = k.size_as_u64();
    auto Q = [&](const std::vector<RingElt>& v) {
        RingElt s = k.zero();
        for (unsigned i = 0; i < nn; ++i)
            for (unsigned j = 0; j < nn; ++j) s = s + v[i] * A.at(i, j) * v[j];
        return s;
    };
    auto transvection = [&](const std::vector<RingElt>& v) {
        RingElt qv = Q(v);
        RingElt c = k.inv(qv);
        if (k.p != 2) c = -c;
        Mat t = Mat::identity(k, nn);
        // t = I +- v (v^T B)/Q(v)
        std::vector<RingElt> w(nn, k.zero());
        for (unsigned j = 0; j < nn; ++j) {
            RingElt s = k.zero();
            for (unsigned i = 0; i < nn; ++i) s = s + v[i] * B.at(i, j);
            w[j] = s * c;
        }
        for (unsigned i = 0; i < nn; ++i)
            for (unsigned j = 0; j < nn; ++j) t.at(i, j) = t.at(i, j) + v[i] * w[j];
        return t;
    };
    // candidates: anisotropic vectors supported on at most 3 coordinates
    std::vector<std::vector<RingElt>> cands;
    std::vector<unsigned> idx(nn);
    for (unsigned a = 0; a < nn; ++a)
        for (unsigned b = a; b < nn; ++b)
            for (unsigned c2 = b; c2 < nn; ++c2)
                for (u64 xa = 1; xa < q; ++xa)
                    for (u64 xb = (a == b ? 0 : 1) * 1; xb < (a == b ? 1 : q); ++xb)
                        for (u64 xc = (b == c2 ? 0 : 1) * 1; xc < (b == c2 ? 1 : q); ++xc) {
                            std::vector<RingElt> v(nn, k.zero());
                            v[a] = k.element_by_index(xa);
                            if (a != b) v[b] = k.element_by_index(xb);
                            if (b != c2) v[c2] = k.element_by_index(xc);
                            if (!Q(v).is_zero()) cands.push_back(v);
                        }
    if (cands.empty()) throw NotInstantiableError("no anisotropic vectors found");
    std::vector<Mat> out;
    Mat t0 = transvection(cands[0]);
    for (size_t i = 1; i < cands.size(); ++i) out.push_back(t0 * transvection(cands[i]));
    return out;
}

}  // namespace detail

inline std::vector<GroupElt> standard_generators(const GroupDescriptor& D) {
    const GaloisRing& R = *D.ring;
    std::vector<Mat> mats;
    switch (D.family) {
        case GroupFamily::SL:
            mats = detail::sl_generators(R, D.size);
            break;
        case GroupFamily::GL: {
            mats = detail::sl_generators(R, D.size);
            for (const RingElt& u : unit_generators(R)) {
                if (u == R.one()) continue;
                Mat d = Mat::identity(R, D.size);
                d.at(0, 0) = u;
                mats.push_back(d);
            }
            if (mats.empty()) mats.push_back(Mat::identity(R, D.size));
            break;
        }
        case GroupFamily::Sp:
            mats = detail::sp_generators(R, D.size);
            break;
        case GroupFamily::GSp: {
            mats = detail::sp_generators(R, D.size);
            unsigned h = D.size / 2;
            for (const RingElt& u : unit_generators(R)) {
                if (u == R.one()) continue;
                Mat d = Mat::identity(R, D.size);
                for (unsigned i = 0; i < h; ++i) d.at(i, i) = u;
                mats.push_back(d);
            }
            break;
        }
        case GroupFamily::SOplus:
        case GroupFamily::SOminus:
            mats = detail::so_generators_field(D);
            break;
        case GroupFamily::GSOplus:
        case GroupFamily::GSOminus: {
            mats = detail::so_generators_field(D);
            // similitude part
            if (R.p == 2) {
                for (const RingElt& u : unit_generators(R)) {
                    if (u == R.one()) continue;
                    mats.push_back(Mat::identity(R, D.size).scaled(u));
                }
            } else {
                for (const RingElt& u : unit_generators(R)) {
                    if (u == R.one()) continue;
                    // brute-force a proper similitude with multiplier u: scale
                    // the hyperbolic part and scan the last 2x2 block
                    Mat A = quadratic_half_form(D);
                    bool found = false;
                    u64 q = R.size_as_u64();
                    for (u64 c0 = 0; c0 < q && !found; ++c0)
                        for (u64 c1 = 0; c1 < q && !found; ++c1)
                            for (u64 c2 = 0; c2 < q && !found; ++c2)
                                for (u64 c3 = 0; c3 < q && !found; ++c3) {
                                    Mat M = Mat::identity(R, D.size);
                                    if (D.family == GroupFamily::GSOplus) {
                                        unsigned h = D.size / 2;
                                        for (unsigned i = 0; i < h; ++i) M.at(i, i) = u;
                                    } else {
                                        for (unsigned i = 0; i + 2 < D.size; i += 2)
                                            M.at(i, i) = u;
                                    }
                                    M.at(D.size - 2, D.size - 2) = R.element_by_index(c0);
                                    M.at(D.size - 2, D.size - 1) = R.element_by_index(c1);
                                    M.at(D.size - 1, D.size - 2) = R.element_by_index(c2);
                                    M.at(D.size - 1, D.size - 1) = R.element_by_index(c3);
                                    MembershipResult mr = membership_and_multiplier(M, D);
                                    if (mr.member && mr.multiplier && *mr.multiplier == u) {
                                        mats.push_back(M);
                                        found = true;
                                    }
                                    if (D.family == GroupFamily::GSOplus && found) break;
                                }
                    if (!found)
                        throw NotInstantiableError("no proper similitude found for GSO");
                }
            }
            break;
        }
        case GroupFamily::U:
        case GroupFamily::SU: {
            // enumeration-backed: scan all matrices at tiny sizes
            u64 q = R.size_as_u64();
            u128 total = 1;
            for (unsigned i = 0; i < D.size * D.size; ++i) {
                total *= q;
                if (total > (1u << 22))
                    throw TooLargeError("unitary generators: enumeration bound exceeded");
            }
            for (u64 kidx = 0; kidx < (u64)total; ++kidx) {
                u64 kk = kidx;
                Mat m(R, D.size, D.size);
                for (unsigned i = 0; i < D.size; ++i)
                    for (unsigned j = 0; j < D.size; ++j) {
                        m.at(i, j) = R.element_by_index(kk % q);
                        kk /= q;
                    }
                if (membership_and_multiplier(m, D).member) mats.push_back(m);
            }
            break;
        }
        case GroupFamily::PGL: {
            GroupDescriptor g = GroupDescriptor::make(GroupFamily::GL, D.size, R);
            for (const GroupElt& e : standard_generators(g))
                mats.push_back(canonical_rep(D, e.mat()));
            break;
        }
        case GroupFamily::PGSp: {
            GroupDescriptor g = GroupDescriptor::make(GroupFamily::GSp, D.size, R);
            for (const GroupElt& e : standard_generators(g))
                mats.push_back(canonical_rep(D, e.mat()));
            break;
        }
        case GroupFamily::SLmodMu: {
            GroupDescriptor g = GroupDescriptor::make(GroupFamily::SL, D.size, R);
            for (const GroupElt& e : standard_generators(g))
                mats.push_back(canonical_rep(D, e.mat()));
            break;
        }
        case GroupFamily::Res: {
            for (const GroupElt& e : standard_generators(*D.inner))
                mats.push_back(weil_transport(D, e.mat()));
            break;
        }
    }
    std::vector<GroupElt> out;
    out.reserve(mats.size());
    for (const Mat& m : mats) out.push_back(GroupElt::unchecked(D, m));
    return out;
}

// transported element of a Weil restriction
inline GroupElt weil_transport_element(const GroupDescriptor& res_desc, const GroupElt& inner) {
    return GroupElt::unchecked(res_desc, weil_transport(res_desc, inner.mat()));
}

// ---------------------------------------------------------------------------
// small BFS closure (used by sc_image; the oracle module has the full
// featured version)

inline std::vector<Mat> closure_mats(const GroupDescriptor& D, const std::vector<Mat>& gens,
                                     u64 bound) {
    std::vector<Mat> elems;
    std::unordered_set<std::string> seen;
    std::deque<size_t> todo;
    Mat id = Mat::identity(*D.ring, D.size);
    id = canonical_rep(D, id);
    elems.push_back(id);
    seen.insert(id.key());
    todo.push_back(0);
    std::vector<Mat> gs;
    for (const Mat& g : gens) gs.push_back(canonical_rep(D, g));
    while (!todo.empty()) {
        size_t cur = todo.front();
        todo.pop_front();
        for (const Mat& g : gs) {
            Mat nxt = canonical_rep(D, elems[cur] * g);
            std::string k = nxt.key();
            if (seen.insert(k).second) {
                if (elems.size() >= bound) throw BoundExceededError("closure exceeds bound");
                elems.push_back(nxt);
                todo.push_back(elems.size() - 1);
            }
        }
    }
    return elems;
}

// ---------------------------------------------------------------------------
// image of the simply connected cover on points

struct ScImage {
    std::vector<GroupElt> image_generators;
    mpz_class image_order;
    mpz_class index;  // [G(R) : image]
};

inline ScImage sc_image(const GroupDescriptor& D, u64 bound = 5000000) {
    ScImage out;
    switch (D.family) {
        case GroupFamily::SL:
        case GroupFamily::Sp:
        case GroupFamily::SU: {
            // the cover is the identity map
            out.image_generators = standard_generators(D);
            out.image_order = group_order(D);
            out.index = 1;
            return out;
        }
        case GroupFamily::PGL:
        case GroupFamily::PGSp:
        case GroupFamily::SLmodMu: {
            GroupFamily cf = (D.family == GroupFamily::PGSp) ? GroupFamily::Sp : GroupFamily::SL;
            GroupDescriptor cover = GroupDescriptor::make(cf, D.size, *D.ring);
            std::vector<Mat> gens;
            for (const GroupElt& e : standard_generators(cover))
                gens.push_back(canonical_rep(D, e.mat()));
            mpz_class total = group_order(D);
            if (total > bound) throw TooLargeError("sc_image: group too large to enumerate");
            std::vector<Mat> elems = closure_mats(D, gens, bound);
            out.image_order = (unsigned long)elems.size();
            out.index = total / out.image_order;
            for (const Mat& g : gens) out.image_generators.push_back(GroupElt::unchecked(D, g));
            return out;
        }
        default: throw UnsupportedFamilyError("sc_image: unsupported family");
    }
}

}  // namespace wittlift

#endif  // WITTLIFT_GROUPS_HPP
