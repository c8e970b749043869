// Copyright (c) 2026 the wittlift authors.
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

#ifndef WITTLIFT_LIE_HPP
#define WITTLIFT_LIE_HPP

// The congruence-layer identification: the kernel of reduction from level
// s+1 to level s is canonically the residue Lie algebra via g = 1 + p^s X.
// This header computes Lie algebra bases from the linearized group equations,
// the encode/decode bijections, Lie brackets against group commutators, and
// the adjoint-module analysis (derived algebra, bracket radical, minimal
// submodules by spinning, codimension-one invariant subspaces).
//
// For central-quotient families the Lie algebra is the ambient one modulo the
// scalar line; vectors are kept as canonical coset representatives with
// vanishing (0,0) entry.

#include <functional>
#include <optional>
#include <vector>

#include "wittlift/groups.hpp"

namespace wittlift {

// ---------------------------------------------------------------------------
// Lie algebra bases from linearized equations

namespace detail {

// kernel basis of the k-linear map given by rows of eqs (vars columns)
inline std::vector<std::vector<RingElt>> field_kernel_basis(const GaloisRing& k,
                                                            std::vector<std::vector<RingElt>> eqs,
                                                            unsigned nvars) {
    unsigned nrows = (unsigned)eqs.size();
    std::vector<unsigned> pivot_col;
    unsigned row = 0;
    for (unsigned col = 0; col < nvars && row < nrows; ++col) {
        unsigned piv = nrows;
        for (unsigned i = row; i < nrows; ++i)
            if (!eqs[i][col].is_zero()) { piv = i; break; }
        if (piv == nrows) continue;
        std::swap(eqs[piv], eqs[row]);
        RingElt d = k.inv(eqs[row][col]);
        for (unsigned j = 0; j < nvars; ++j) eqs[row][j] = eqs[row][j] * d;
        for (unsigned i = 0; i < nrows; ++i) {
            if (i == row) continue;
            RingElt f = eqs[i][col];
            if (f.is_zero()) continue;
            for (unsigned j = 0; j < nvars; ++j) eqs[i][j] = eqs[i][j] - f * eqs[row][j];
        }
        pivot_col.push_back(col);
        ++row;
    }
    std::vector<bool> is_pivot(nvars, false);
    for (unsigned c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<RingElt>> basis;
    for (unsigned freec = 0; freec < nvars; ++freec) {
        if (is_pivot[freec]) continue;
        std::vector<RingElt> v(nvars, k.zero());
        v[freec] = k.one();
        for (unsigned rr = 0; rr < pivot_col.size(); ++rr)
            v[pivot_col[rr]] = -eqs[rr][freec];
        basis.push_back(v);
    }
    return basis;
}

// the linear constraint values for a candidate (X, lambda); all families
// below are k-linear in the pair
inline std::vector<RingElt> lie_constraints(const GroupDescriptor& D, const Mat& X,
                                            const RingElt& lambda) {
    const GaloisRing& k = *D.ring;
    unsigned m = D.size;
    std::vector<RingElt> out;
    auto push_alternating_projection = [&](const Mat& S) {
        for (unsigned i = 0; i < m; ++i) out.push_back(S.at(i, i));
        for (unsigned i = 0; i < m; ++i)
            for (unsigned j = i + 1; j < m; ++j) out.push_back(S.at(i, j) + S.at(j, i));
    };
    switch (D.family) {
        case GroupFamily::GL:
        case GroupFamily::PGL: break;
        case GroupFamily::SL:
        case GroupFamily::SLmodMu: out.push_back(X.trace()); break;
        case GroupFamily::Sp: {
            Mat J = symplectic_form(k, m);
            Mat S = X.transpose() * J + J * X;
            for (unsigned i = 0; i < m; ++i)
                for (unsigned j = 0; j < m; ++j) out.push_back(S.at(i, j));
            break;
        }
        case GroupFamily::GSp:
        case GroupFamily::PGSp: {
            Mat J = symplectic_form(k, m);
            Mat S = X.transpose() * J + J * X - J.scaled(lambda);
            for (unsigned i = 0; i < m; ++i)
                for (unsigned j = 0; j < m; ++j) out.push_back(S.at(i, j));
            break;
        }
        case GroupFamily::SOplus:
        case GroupFamily::SOminus: {
            Mat A = quadratic_half_form(D);
            push_alternating_projection(A * X + X.transpose() * A);
            break;
        }
        case GroupFamily::GSOplus:
        case GroupFamily::GSOminus: {
            Mat A = quadratic_half_form(D);
            push_alternating_projection(A * X + X.transpose() * A - A.scaled(lambda));
            break;
        }
        default:
            throw NotInstantiableError("no Lie algebra model for family " +
                                       family_name(D.family));
    }
    return out;
}

}  // namespace detail

inline bool lie_has_similitude_var(const GroupDescriptor& D) {
    return D.family == GroupFamily::GSp || D.family == GroupFamily::PGSp ||
           D.family == GroupFamily::GSOplus || D.family == GroupFamily::GSOminus;
}

// canonical coset representative in the quotient Lie algebra: subtract the
// scalar multiple making the (0,0) entry vanish
inline Mat lie_canonicalize(const GroupDescriptor& D, const Mat& X) {
    if (!D.is_quotient_family()) return X;
    if (D.family == GroupFamily::Res) {
        // handled entrywise through the inner structure; not needed yet
        throw NotInstantiableError("layer vectors for restricted quotients are unsupported");
    }
    const GaloisRing& k = X.ring();
    RingElt c = X.at(0, 0);
    if (c.is_zero()) return X;
    return X - Mat::identity(k, X.rows()).scaled(c);
}

// residue-field basis of the Lie algebra of the family; for quotient families
// a basis of canonical coset representatives.  The size equals group_dim.
inline std::vector<Mat> lie_basis(const GroupDescriptor& D) {
    if (D.family == GroupFamily::U || D.family == GroupFamily::SU)
        throw NotInstantiableError("unitary families are supported at field level only");
    if (D.family == GroupFamily::Res) {
        // Lie of the restriction: transports of inner basis times u-powers
        if (D.inner->is_quotient_family())
            throw NotInstantiableError("layer vectors for restricted quotients are unsupported");
        GroupDescriptor dres = D.at_level(1);
        GroupDescriptor din = D.inner->at_level(1);
        const GaloisRing& big = *din.ring;
        std::vector<Mat> inner = lie_basis(din);
        std::vector<Mat> out;
        for (const Mat& b : inner)
            for (unsigned c = 0; c < D.res_degree; ++c) {
                RingElt uc = scalar_pow(big, big.gen(), c);
                out.push_back(weil_transport(dres, b.scaled(uc)));
            }
        return out;
    }
    GroupDescriptor Dk = D.at_level(1);
    const GaloisRing& k = *Dk.ring;
    unsigned m = D.size;
    bool quot = D.is_quotient_family();
    bool sim = lie_has_similitude_var(Dk);
    unsigned nvars = m * m + (sim ? 1 : 0);

    // probe each variable to extract the linear constraint matrix
    std::vector<std::vector<RingElt>> eqs;
    unsigned neqs = 0;
    {
        Mat zero(k, m, m);
        std::vector<RingElt> probe0 = detail::lie_constraints(Dk, zero, k.zero());
        neqs = (unsigned)probe0.size() + (quot ? 1 : 0);
        eqs.assign(neqs, std::vector<RingElt>(nvars, k.zero()));
    }
    for (unsigned v = 0; v < nvars; ++v) {
        Mat X(k, m, m);
        RingElt lam = k.zero();
        if (v < m * m)
            X.at(v / m, v % m) = k.one();
        else
            lam = k.one();
        std::vector<RingElt> vals = detail::lie_constraints(Dk, X, lam);
        for (unsigned e = 0; e < vals.size(); ++e) eqs[e][v] = vals[e];
        if (quot) {
            // canonical representatives: X_00 = 0
            eqs[vals.size()][v] = (v == 0) ? k.one() : k.zero();
        }
    }
    std::vector<std::vector<RingElt>> ker = detail::field_kernel_basis(k, eqs, nvars);
    std::vector<Mat> out;
    for (const auto& v : ker) {
        Mat X(k, m, m);
        for (unsigned i = 0; i < m; ++i)
            for (unsigned j = 0; j < m; ++j) X.at(i, j) = v[i * m + j];
        out.push_back(X);
    }
    if (out.size() != group_dim(D))
        throw Error("lie_basis: dimension " + std::to_string(out.size()) +
                    " does not match the family dimension " + std::to_string(group_dim(D)));
    return out;
}

// F_p-spanning basis: the k-basis times powers of the ring generator
inline std::vector<Mat> lie_basis_fp(const GroupDescriptor& D) {
    std::vector<Mat> kb = lie_basis(D);
    const GaloisRing& k = D.ring->residue_field();
    if (k.r == 1) return kb;
    std::vector<Mat> out;
    for (const Mat& b : kb)
        for (unsigned c = 0; c < k.r; ++c)
            out.push_back(b.scaled(scalar_pow(k, k.gen(), c)));
    return out;
}

// membership in the Lie algebra (canonical representative for quotients)
inline bool lie_member(const GroupDescriptor& D, const Mat& X) {
    GroupDescriptor Dk = D.at_level(1);
    const GaloisRing& k = *Dk.ring;
    Mat Xc = lie_canonicalize(Dk, X);
    if (lie_has_similitude_var(Dk)) {
        // recover lambda from a probe position, then check the full system
        // lambda is determined linearly; try all residues only when r = 1?
        // Instead solve: constraints(X, lambda) = 0 is linear in lambda with
        // matrix coefficients; find lambda from the first constraint that
        // depends on it.
        std::vector<RingElt> c0 = detail::lie_constraints(Dk, Xc, k.zero());
        std::vector<RingElt> c1 = detail::lie_constraints(Dk, Mat(k, D.size, D.size), k.one());
        // c(X, lam) = c0 + lam * c1
        std::optional<RingElt> lam;
        for (size_t i = 0; i < c0.size(); ++i) {
            if (c1[i].is_zero()) continue;
            lam = -(c0[i] * k.inv(c1[i]));
            break;
        }
        if (!lam) lam = k.zero();
        for (size_t i = 0; i < c0.size(); ++i)
            if (!(c0[i] + *lam * c1[i]).is_zero()) return false;
        return true;
    }
    for (const RingElt& v : detail::lie_constraints(Dk, Xc, k.zero()))
        if (!v.is_zero()) return false;
    return true;
}

// similitude coefficient of a Lie element (lambda with the defining relation)
inline RingElt lie_similitude_coeff(const GroupDescriptor& D, const Mat& X) {
    GroupDescriptor Dk = D.at_level(1);
    const GaloisRing& k = *Dk.ring;
    if (!lie_has_similitude_var(Dk)) return k.zero();
    std::vector<RingElt> c0 = detail::lie_constraints(Dk, X, k.zero());
    std::vector<RingElt> c1 = detail::lie_constraints(Dk, Mat(k, D.size, D.size), k.one());
    for (size_t i = 0; i < c0.size(); ++i) {
        if (c1[i].is_zero()) continue;
        return -(c0[i] * k.inv(c1[i]));
    }
    return k.zero();
}

// Lie bracket, with coset canonicalization for quotient families
inline Mat lie_bracket(const GroupDescriptor& D, const Mat& X, const Mat& Y) {
    return lie_canonicalize(D, X * Y - Y * X);
}

// ---------------------------------------------------------------------------
// layer codec: Ker(G(W_{s+1}) -> G(W_s)) <-> Lie(G_k)

// encode: a Lie vector at layer s becomes the element 1 + p^s lift(X) of the
// level-(s+1) group
inline GroupElt layer_encode(const GroupDescriptor& D, const Mat& X, unsigned s) {
    const GaloisRing& R = *D.ring;
    if (s + 1 > R.n) throw BadLevelError("layer_encode: level s+1 exceeds the ring level");
    if (!lie_member(D, X)) throw NotInLieAlgebraError("layer_encode: not a Lie vector");
    const GaloisRing& T = R.at_level(s + 1);
    GroupDescriptor Dt = D.at_level(s + 1);
    u64 ps = 1;
    for (unsigned i = 0; i < s; ++i) ps *= R.p;
    Mat M = Mat::identity(T, D.size);
    for (unsigned i = 0; i < D.size; ++i)
        for (unsigned j = 0; j < D.size; ++j) {
            RingElt x = T.lift(X.at(i, j));
            M.at(i, j) = M.at(i, j) + x * T.from_int((i64)ps);
        }
    return GroupElt::unchecked(Dt, M);
}

// decode: an element trivial at level s decodes to its layer-s Lie vector
inline Mat layer_decode(const GroupDescriptor& D, const GroupElt& g, unsigned s) {
    const GaloisRing& R = g.descriptor().base_ring();
    if (s + 1 > R.n) throw BadLevelError("layer_decode: level s+1 exceeds the element level");
    Mat rep = g.mat().reduce(s + 1);
    const GaloisRing& T = rep.ring();
    Mat diff = rep - Mat::identity(T, rep.rows());
    if (diff.reduce(s).is_zero() == false)
        throw NotInKernelError("layer_decode: element is nontrivial at level s");
    Mat X = diff.valuation() >= s ? diff.divide_by_p_pow(s).reduce(1)
                                  : throw NotInKernelError("layer_decode: bad valuation");
    X = lie_canonicalize(D, X);
    if (!lie_member(D, X)) throw NotInLieAlgebraError("layer_decode: outside the Lie algebra");
    return X;
}

// depth of a kernel element: the largest s < level with g trivial at level s
// (0 when g is nontrivial already in the residue group)
inline unsigned layer_depth(const GroupElt& g) {
    const GaloisRing& R = g.descriptor().base_ring();
    Mat diff = g.mat() - Mat::identity(R, g.mat().rows());
    if (diff.is_zero()) return R.n;  // identity: trivial at every level
    unsigned v = diff.valuation();
    return v;
}

// p-th power promotion: the layer-(s+1) vector of g^p given the layer-s
// vector of g; the quadratic correction appears only for p = 2, s = 1
inline Mat promote_power(const GroupDescriptor& D, const Mat& X, unsigned s) {
    const GaloisRing& k = X.ring();
    if (k.p == 2 && s == 1) return lie_canonicalize(D, X + X * X);
    return X;
}

// ---------------------------------------------------------------------------
// commutator vs bracket (the characteristic-2 identity)

struct BracketCommutatorResult {
    Mat commutator_layer2;  // decode at layer 2 of x y x^{-1} y^{-1}
    Mat bracket;            // [x mod 4, y mod 4] as layer-1 vectors
    bool equal = false;
};

inline BracketCommutatorResult bracket_and_commutator_check(const GroupDescriptor& D,
                                                            const GroupElt& x,
                                                            const GroupElt& y) {
    const GaloisRing& R = *D.ring;
    if (R.p != 2) throw WrongParityError("the commutator identity is a p = 2 statement");
    if (R.n < 3) throw BadLevelError("needs ring level >= 3");
    if (layer_depth(x) < 1 || layer_depth(y) < 1)
        throw NotInKernelError("inputs must be trivial in the residue group");
    GroupElt c = x * y * x.inverse() * y.inverse();
    BracketCommutatorResult out;
    Mat xb = layer_decode(D, x, 1);
    Mat yb = layer_decode(D, y, 1);
    out.bracket = lie_bracket(D, xb, yb);
    out.commutator_layer2 = layer_decode(D, c, 2);
    out.equal = out.commutator_layer2 == out.bracket;
    return out;
}

// ---------------------------------------------------------------------------
// adjoint modules

// expresses flattened F_p vectors in the coordinates of a fixed basis
class FpCoords {
  public:
    FpCoords() = default;
    FpCoords(u64 p, const std::vector<FpVec>& basis) : p_(p) {
        if (basis.empty()) return;
        amb_ = basis[0].size();
        for (size_t i = 0; i < basis.size(); ++i) {
            FpVec row = basis[i];
            FpVec comb(basis.size(), 0);
            comb[i] = 1;
            // reduce against existing echelon rows
            for (size_t kk = 0; kk < rows_.size(); ++kk) {
                u64 c = row[piv_[kk]] % p_;
                if (!c) continue;
                for (size_t j = 0; j < amb_; ++j)
                    row[j] = (row[j] + (p_ - c) * rows_[kk][j]) % p_;
                for (size_t j = 0; j < comb.size(); ++j)
                    comb[j] = (comb[j] + (p_ - c) * combs_[kk][j]) % p_;
            }
            size_t piv = amb_;
            for (size_t j = 0; j < amb_; ++j)
                if (row[j] % p_) { piv = j; break; }
            if (piv == amb_) throw Error("FpCoords: basis is linearly dependent");
            u64 inv = inv_mod(row[piv] % p_);
            for (size_t j = 0; j < amb_; ++j) row[j] = row[j] % p_ * inv % p_;
            for (size_t j = 0; j < comb.size(); ++j) comb[j] = comb[j] % p_ * inv % p_;
            rows_.push_back(row);
            combs_.push_back(comb);
            piv_.push_back(piv);
        }
        dim_ = basis.size();
    }

    size_t dim() const { return dim_; }

    // coordinates of v in the original basis; throws if v is outside the span
    FpVec coords(FpVec v) const {
        FpVec out(dim_, 0);
        for (size_t kk = 0; kk < rows_.size(); ++kk) {
            u64 c = v[piv_[kk]] % p_;
            if (!c) continue;
            for (size_t j = 0; j < amb_; ++j) v[j] = (v[j] + (p_ - c) * rows_[kk][j]) % p_;
            for (size_t j = 0; j < dim_; ++j) out[j] = (out[j] + c * combs_[kk][j]) % p_;
        }
        for (u64 x : v)
            if (x % p_) throw Error("FpCoords: vector outside the basis span");
        return out;
    }

    bool in_span(FpVec v) const {
        for (size_t kk = 0; kk < rows_.size(); ++kk) {
            u64 c = v[piv_[kk]] % p_;
            if (!c) continue;
            for (size_t j = 0; j < amb_; ++j) v[j] = (v[j] + (p_ - c) * rows_[kk][j]) % p_;
        }
        for (u64 x : v)
            if (x % p_) return false;
        return true;
    }

  private:
    u64 inv_mod(u64 x) const {
        u64 r = 1, e = p_ - 2, b = x % p_;
        while (e) {
            if (e & 1) r = r * b % p_;
            b = b * b % p_;
            e >>= 1;
        }
        return r;
    }
    u64 p_ = 2;
    size_t amb_ = 0, dim_ = 0;
    std::vector<FpVec> rows_, combs_;
    std::vector<size_t> piv_;
};

// an F_p-module given by Lie matrices and acting residue-group generators
struct AdjointModule {
    GroupDescriptor lie_family;     // family whose Lie algebra carries the module
    std::vector<Mat> basis;         // F_p-basis (residue-field matrices)
    std::vector<GroupElt> actors;   // residue-level group elements
    unsigned k1_degree = 1;         // residue degree of the acting a.s. factor
};

struct AdjointAnalysis {
    unsigned dim = 0;
    unsigned derived_dim = 0;
    unsigned center_dim = 0;
    FpSpan derived;
    FpSpan center;
    std::vector<FpSpan> minimal_submodules;   // in basis coordinates
    bool has_codim1_invariant = false;
    bool is_simple_derived = false;
    bool exhaustive_scan = true;  // false when candidate spinning replaced the full scan
};

namespace detail {

// d x d matrix (columns = images of basis vectors) of a linear map given in
// flattened form
inline std::vector<FpVec> action_matrix(const FpCoords& co, u64 p,
                                        const std::vector<FpVec>& images) {
    std::vector<FpVec> cols;
    for (const FpVec& im : images) cols.push_back(co.coords(im));
    (void)p;
    return cols;  // cols[j][i] = entry (i,j)
}

inline FpVec apply_cols(const std::vector<FpVec>& cols, const FpVec& v, u64 p) {
    size_t d = cols.size();
    FpVec out(d, 0);
    for (size_t j = 0; j < d; ++j) {
        if (!v[j]) continue;
        for (size_t i = 0; i < d; ++i) out[i] = (out[i] + v[j] * cols[j][i]) % p;
    }
    return out;
}

}  // namespace detail

inline AdjointAnalysis adjoint_module_analysis(const AdjointModule& M,
                                               u64 scan_bound = 1u << 16) {
    const GaloisRing& kfield = M.basis.empty() ? GaloisRing::get(2, 1, 1) : M.basis[0].ring();
    u64 p = kfield.p;
    AdjointAnalysis out;
    size_t d = M.basis.size();
    out.dim = (unsigned)d;
    if (d == 0) return out;
    if (d > 100) throw TooLargeError("adjoint module dimension exceeds the configured bound");

    std::vector<FpVec> flat;
    for (const Mat& b : M.basis) flat.push_back(fp_flatten(b));
    FpCoords co(p, flat);

    // derived algebra: span of brackets of basis pairs
    out.derived = FpSpan(p, d);
    std::vector<FpVec> bracket_table(d * d);
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) {
            Mat br = lie_canonicalize(M.lie_family, M.basis[i] * M.basis[j] -
                                                        M.basis[j] * M.basis[i]);
            FpVec c = co.coords(fp_flatten(br));
            bracket_table[i * d + j] = c;
            out.derived.insert(c);
        }
    out.derived_dim = (unsigned)out.derived.dim();

    // bracket radical: v with [v, b_j] = 0 for all j
    {
        // build the stacked linear system over F_p
        std::vector<FpVec> rows;  // each row: d coefficients
        for (size_t j = 0; j < d; ++j)
            for (size_t comp = 0; comp < d; ++comp) {
                FpVec row(d, 0);
                for (size_t i = 0; i < d; ++i) row[i] = bracket_table[i * d + j][comp];
                rows.push_back(row);
            }
        // kernel by echelon over F_p
        FpSpan rowspan(p, d);
        std::vector<FpVec> reduced;
        for (auto& r : rows) rowspan.insert(r);
        // solve: iterate candidate basis of kernel via standard elimination
        // (reuse field_kernel_basis over the prime field)
        const GaloisRing& fp = GaloisRing::get(p, 1, 1);
        std::vector<std::vector<RingElt>> eqs;
        for (const FpVec& r : rowspan.basis()) {
            std::vector<RingElt> row(d, fp.zero());
            for (size_t i = 0; i < d; ++i) row[i] = fp.from_int((i64)r[i]);
            eqs.push_back(row);
        }
        auto ker = detail::field_kernel_basis(fp, eqs, (unsigned)d);
        out.center = FpSpan(p, d);
        for (const auto& v : ker) {
            FpVec w(d, 0);
            for (size_t i = 0; i < d; ++i) w[i] = v[i].coeff(0);
            out.center.insert(w);
        }
        out.center_dim = (unsigned)out.center.dim();
    }

    // action matrices of the actors (and their inverses, to make spinning a
    // closure under the generated group)
    std::vector<std::vector<FpVec>> acts;
    for (const GroupElt& g : M.actors) {
        for (const GroupElt& h : {g, g.inverse()}) {
            Mat hm = h.mat();
            auto hinv = hm.inverse();
            if (!hinv) throw NotInvertibleError("actor is not invertible");
            std::vector<FpVec> images;
            for (const Mat& b : M.basis)
                images.push_back(fp_flatten(lie_canonicalize(M.lie_family, hm * b * *hinv)));
            acts.push_back(detail::action_matrix(co, p, images));
        }
    }

    auto spin = [&](const FpVec& seed) {
        FpSpan s(p, d);
        std::vector<FpVec> queue{seed};
        s.insert(seed);
        while (!queue.empty()) {
            FpVec v = queue.back();
            queue.pop_back();
            for (const auto& A : acts) {
                FpVec w = detail::apply_cols(A, v, p);
                if (s.insert(w).has_value()) queue.push_back(w);
            }
        }
        return s;
    };

    // minimal submodules by spinning candidate seeds in a deterministic order
    u128 total = 1;
    bool full_scan = true;
    for (size_t i = 0; i < d; ++i) {
        total *= p;
        if (total > scan_bound) { full_scan = false; break; }
    }
    out.exhaustive_scan = full_scan;
    std::vector<FpVec> seeds;
    if (full_scan) {
        for (u64 idx = 1; idx < (u64)total; ++idx) {
            FpVec v(d, 0);
            u64 kk = idx;
            for (size_t i = 0; i < d; ++i) {
                v[i] = kk % p;
                kk /= p;
            }
            seeds.push_back(v);
        }
    } else {
        for (size_t i = 0; i < d; ++i) {
            FpVec v(d, 0);
            v[i] = 1;
            seeds.push_back(v);
        }
        for (const FpVec& b : out.derived.basis()) seeds.push_back(b);
    }
    std::vector<FpSpan> spun;
    std::vector<std::string> signatures;
    for (const FpVec& seed : seeds) {
        bool zero = true;
        for (u64 x : seed)
            if (x) { zero = false; break; }
        if (zero) continue;
        FpSpan s = spin(seed);
        std::string sig = s.signature();
        bool dup = false;
        for (const std::string& t : signatures)
            if (t == sig) { dup = true; break; }
        if (!dup) {
            signatures.push_back(sig);
            spun.push_back(s);
        }
    }
    for (const FpSpan& s : spun) {
        bool minimal = true;
        for (const FpSpan& t : spun) {
            if (t.dim() == 0 || t.dim() >= s.dim()) continue;
            bool inside = true;
            for (const FpVec& r : t.basis())
                if (!s.contains(r)) { inside = false; break; }
            if (inside) { minimal = false; break; }
        }
        if (minimal) out.minimal_submodules.push_back(s);
    }

    // simplicity of the derived algebra as a module: every nonzero vector of
    // the derived subspace spins to the whole of it
    if (out.derived_dim == 0) {
        out.is_simple_derived = false;
    } else {
        bool simple = true;
        u128 dtotal = 1;
        bool dfull = true;
        for (size_t i = 0; i < out.derived.dim(); ++i) {
            dtotal *= p;
            if (dtotal > scan_bound) { dfull = false; break; }
        }
        if (!dfull) out.exhaustive_scan = false;
        std::vector<FpVec> dseeds;
        if (dfull) {
            for (const FpVec& v : out.derived.enumerate()) dseeds.push_back(v);
        } else {
            for (const FpVec& v : out.derived.basis()) dseeds.push_back(v);
        }
        for (const FpVec& v : dseeds) {
            bool zero = true;
            for (u64 x : v)
                if (x) { zero = false; break; }
            if (zero) continue;
            FpSpan s = spin(v);
            // need span == derived (as sets): compare dims and containment
            if (s.dim() != out.derived.dim()) { simple = false; break; }
            bool cont = true;
            for (const FpVec& r : s.basis())
                if (!out.derived.contains(r)) { cont = false; break; }
            if (!cont) { simple = false; break; }
        }
        out.is_simple_derived = simple;
    }

    // codimension-one invariant subspace: a common eigenline of the
    // transposed actions, found by sequential eigenspace intersection with
    // pruning
    {
        std::vector<std::vector<FpVec>> trans;
        for (const auto& A : acts) {
            // transposed action, still in columns representation
            std::vector<FpVec> tcols(d, FpVec(d, 0));
            for (size_t i = 0; i < d; ++i)
                for (size_t j = 0; j < d; ++j) tcols[j][i] = A[i][j];
            trans.push_back(tcols);
        }
        const GaloisRing& fp = GaloisRing::get(p, 1, 1);
        // recursive intersection over eigenvalues
        std::function<bool(size_t, const std::vector<FpVec>&)> rec =
            [&](size_t idx, const std::vector<FpVec>& space_basis) -> bool {
            if (space_basis.empty()) return false;
            if (idx == trans.size()) return true;
            // restrict T_idx to the subspace: solve T v = lambda v within it
            for (u64 lam = 0; lam < p; ++lam) {
                // basis of {v in space : (T - lam) v = 0}
                std::vector<std::vector<RingElt>> eqs;
                for (size_t comp = 0; comp < d; ++comp) {
                    std::vector<RingElt> row(space_basis.size(), fp.zero());
                    for (size_t b = 0; b < space_basis.size(); ++b) {
                        FpVec tv = detail::apply_cols(trans[idx], space_basis[b], p);
                        u64 val = (tv[comp] + (p - lam) * space_basis[b][comp]) % p;
                        row[b] = fp.from_int((i64)val);
                    }
                    eqs.push_back(row);
                }
                auto ker = detail::field_kernel_basis(fp, eqs, (unsigned)space_basis.size());
                if (ker.empty()) continue;
                std::vector<FpVec> next;
                for (const auto& kv : ker) {
                    FpVec v(d, 0);
                    for (size_t b = 0; b < space_basis.size(); ++b) {
                        u64 c = kv[b].coeff(0);
                        if (!c) continue;
                        for (size_t comp = 0; comp < d; ++comp)
                            v[comp] = (v[comp] + c * space_basis[b][comp]) % p;
                    }
                    next.push_back(v);
                }
                if (rec(idx + 1, next)) return true;
            }
            return false;
        };
        std::vector<FpVec> whole;
        for (size_t i = 0; i < d; ++i) {
            FpVec v(d, 0);
            v[i] = 1;
            whole.push_back(v);
        }
        out.has_codim1_invariant = rec(0, whole);
    }

    return out;
}

// the module Lie(G~_k) under the residue points of the family itself
inline AdjointModule adjoint_module(const GroupDescriptor& D) {
    AdjointModule M;
    GroupDescriptor Dk = D.at_level(1);
    M.lie_family = Dk;
    M.basis = lie_basis_fp(Dk);
    M.actors = standard_generators(Dk);
    M.k1_degree = 1;
    return M;
}

}  // namespace wittlift

#endif  // WITTLIFT_LIE_HPP
