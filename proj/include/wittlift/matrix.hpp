// Copyright (c) 2026 the wittlift authors.
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

#ifndef WITTLIFT_MATRIX_HPP
#define WITTLIFT_MATRIX_HPP

// Dense matrices over a Galois ring, plus the linear algebra the rest of the
// library leans on: unit-pivot Gaussian inversion over the (local) ring,
// division-free characteristic polynomials, echelon forms over the residue
// field, and F_p-span bookkeeping for congruence-layer subspaces.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wittlift/galois_ring.hpp"

namespace wittlift {

class Mat {
  public:
    Mat() : R_(nullptr), rows_(0), cols_(0) {}
    Mat(const GaloisRing& R, unsigned rows, unsigned cols)
        : R_(&R), rows_(rows), cols_(cols), a_(rows * cols, R.zero()) {}

    static Mat identity(const GaloisRing& R, unsigned n) {
        Mat m(R, n, n);
        for (unsigned i = 0; i < n; ++i) m.at(i, i) = R.one();
        return m;
    }

    const GaloisRing& ring() const { return *R_; }
    unsigned rows() const { return rows_; }
    unsigned cols() const { return cols_; }

    RingElt& at(unsigned i, unsigned j) { return a_[i * cols_ + j]; }
    const RingElt& at(unsigned i, unsigned j) const { return a_[i * cols_ + j]; }

    bool operator==(const Mat& o) const {
        return R_ == o.R_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    Mat operator+(const Mat& o) const {
        check_same_shape(o);
        Mat m(*R_, rows_, cols_);
        for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] + o.a_[i];
        return m;
    }
    Mat operator-(const Mat& o) const {
        check_same_shape(o);
        Mat m(*R_, rows_, cols_);
        for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] - o.a_[i];
        return m;
    }
    Mat operator*(const Mat& o) const {
        if (R_ != o.R_ || cols_ != o.rows_) throw ShapeMismatchError("matrix product shape");
        Mat m(*R_, rows_, o.cols_);
        for (unsigned i = 0; i < rows_; ++i)
            for (unsigned k = 0; k < cols_; ++k) {
                const RingElt& aik = at(i, k);
                if (aik.is_zero()) continue;
                for (unsigned j = 0; j < o.cols_; ++j)
                    m.at(i, j) = m.at(i, j) + aik * o.at(k, j);
            }
        return m;
    }

    Mat scaled(const RingElt& c) const {
        Mat m(*R_, rows_, cols_);
        for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] * c;
        return m;
    }

    Mat transpose() const {
        Mat m(*R_, cols_, rows_);
        for (unsigned i = 0; i < rows_; ++i)
            for (unsigned j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
        return m;
    }

    bool is_identity() const {
        if (rows_ != cols_) return false;
        for (unsigned i = 0; i < rows_; ++i)
            for (unsigned j = 0; j < cols_; ++j) {
                if (i == j && at(i, j) != R_->one()) return false;
                if (i != j && !at(i, j).is_zero()) return false;
            }
        return true;
    }

    bool is_zero() const {
        for (const auto& e : a_)
            if (!e.is_zero()) return false;
        return true;
    }

    // S is alternating when S^T = -S and the diagonal vanishes; over Z/2^n
    // both clauses matter.
    bool is_alternating() const {
        if (rows_ != cols_) return false;
        for (unsigned i = 0; i < rows_; ++i) {
            if (!at(i, i).is_zero()) return false;
            for (unsigned j = i + 1; j < cols_; ++j)
                if (at(i, j) != -at(j, i)) return false;
        }
        return true;
    }

    Mat reduce(unsigned level) const {
        const GaloisRing& S = R_->at_level(level);
        Mat m(S, rows_, cols_);
        for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = R_->reduce(a_[i], level);
        return m;
    }

    Mat lift_to(const GaloisRing& S) const {
        Mat m(S, rows_, cols_);
        for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = S.lift(a_[i]);
        return m;
    }

    // entry-wise map through the ring Frobenius
    Mat frobenius() const {
        Mat m(*R_, rows_, cols_);
        for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = R_->frobenius(a_[i]);
        return m;
    }

    // largest v with all entries divisible by p^v
    unsigned valuation() const {
        unsigned v = R_->n;
        for (const auto& e : a_) v = std::min(v, R_->valuation(e));
        return v;
    }

    Mat divide_by_p_pow(unsigned v) const {
        Mat m(*R_, rows_, cols_);
        for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = R_->divide_by_p_pow(a_[i], v);
        return m;
    }

    // Gauss-Jordan over the local ring; every invertible matrix admits a unit
    // pivot at each step, otherwise the determinant would be a non-unit.
    std::optional<Mat> inverse() const {
        if (rows_ != cols_) throw ShapeMismatchError("inverse of a non-square matrix");
        unsigned n = rows_;
        Mat a = *this;
        Mat inv = identity(*R_, n);
        for (unsigned col = 0; col < n; ++col) {
            unsigned piv = n;
            for (unsigned i = col; i < n; ++i)
                if (R_->is_unit(a.at(i, col))) { piv = i; break; }
            if (piv == n) return std::nullopt;
            if (piv != col) {
                for (unsigned j = 0; j < n; ++j) {
                    std::swap(a.at(piv, j), a.at(col, j));
                    std::swap(inv.at(piv, j), inv.at(col, j));
                }
            }
            RingElt d = R_->inv(a.at(col, col));
            for (unsigned j = 0; j < n; ++j) {
                a.at(col, j) = a.at(col, j) * d;
                inv.at(col, j) = inv.at(col, j) * d;
            }
            for (unsigned i = 0; i < n; ++i) {
                if (i == col) continue;
                RingElt f = a.at(i, col);
                if (f.is_zero()) continue;
                for (unsigned j = 0; j < n; ++j) {
                    a.at(i, j) = a.at(i, j) - f * a.at(col, j);
                    inv.at(i, j) = inv.at(i, j) - f * inv.at(col, j);
                }
            }
        }
        return inv;
    }

    bool is_invertible() const { return inverse().has_value(); }

    // Berkowitz: division-free characteristic polynomial, valid over any
    // commutative ring.  Returns coefficients of det(tI - A), constant first.
    std::vector<RingElt> charpoly() const {
        if (rows_ != cols_) throw ShapeMismatchError("charpoly of a non-square matrix");
        unsigned n = rows_;
        const GaloisRing& R = *R_;
        if (n == 0) return {R.one()};
        // pv holds the charpoly of the leading k x k block, highest power first
        std::vector<RingElt> pv{R.one(), -at(0, 0)};
        for (unsigned k = 1; k < n; ++k) {
            // Toeplitz column: g = (1, -a_kk, -r c, -r A c, ..., -r A^{k-1} c)
            // with r = A[k, 0..k-1], c = A[0..k-1, k], A the leading block
            std::vector<RingElt> g(k + 2, R.zero());
            g[0] = R.one();
            g[1] = -at(k, k);
            std::vector<RingElt> v(k);
            for (unsigned i = 0; i < k; ++i) v[i] = at(i, k);
            for (unsigned m = 1; m <= k; ++m) {
                RingElt s = R.zero();
                for (unsigned i = 0; i < k; ++i) s = s + at(k, i) * v[i];
                g[m + 1] = -s;
                if (m < k) {
                    std::vector<RingElt> w(k, R.zero());
                    for (unsigned i = 0; i < k; ++i)
                        for (unsigned j = 0; j < k; ++j) w[i] = w[i] + at(i, j) * v[j];
                    v = w;
                }
            }
            // truncated convolution: next[i] = sum_j g[j] pv[i-j]
            std::vector<RingElt> nxt(k + 2, R.zero());
            for (unsigned i = 0; i < k + 2; ++i)
                for (unsigned j = 0; j <= i && j < g.size(); ++j) {
                    if (i - j >= pv.size()) continue;
                    nxt[i] = nxt[i] + g[j] * pv[i - j];
                }
            pv = nxt;
        }
        std::vector<RingElt> out(pv.rbegin(), pv.rend());
        return out;
    }

    RingElt det() const {
        if (rows_ != cols_) throw ShapeMismatchError("det of a non-square matrix");
        if (rows_ == 0) return R_->one();
        std::vector<RingElt> cp = charpoly();
        RingElt c0 = cp[0];
        // det(A) = (-1)^n * p(0)
        return (rows_ % 2 == 0) ? c0 : -c0;
    }

    RingElt trace() const {
        RingElt s = R_->zero();
        for (unsigned i = 0; i < rows_; ++i) s = s + at(i, i);
        return s;
    }

    // canonical dense byte key: every coefficient bit-packed at the width of
    // p^n; used as the hash key in enumerations
    std::string key() const {
        unsigned w = 1;
        while ((1ull << w) < R_->pn) ++w;
        std::string out;
        out.reserve((a_.size() * R_->r * w + 7) / 8 + 1);
        unsigned bitpos = 0;
        unsigned char cur = 0;
        auto push_bits = [&](u64 v) {
            for (unsigned b = 0; b < w; ++b) {
                cur |= (unsigned char)(((v >> b) & 1) << bitpos);
                if (++bitpos == 8) {
                    out.push_back((char)cur);
                    cur = 0;
                    bitpos = 0;
                }
            }
        };
        for (const auto& e : a_)
            for (unsigned i = 0; i < R_->r; ++i) push_bits(e.coeff(i));
        if (bitpos) out.push_back((char)cur);
        return out;
    }

    // inverse of key(): reconstruct the matrix from its packed bytes
    static Mat from_key(const GaloisRing& R, unsigned rows, unsigned cols,
                        const std::string& key) {
        unsigned w = 1;
        while ((1ull << w) < R.pn) ++w;
        Mat m(R, rows, cols);
        size_t bit = 0;
        auto pull_bits = [&]() {
            u64 v = 0;
            for (unsigned b = 0; b < w; ++b, ++bit)
                v |= (u64)((key[bit / 8] >> (bit % 8)) & 1) << b;
            return v;
        };
        for (unsigned i = 0; i < rows; ++i)
            for (unsigned j = 0; j < cols; ++j) {
                std::vector<u64> c(R.r);
                for (unsigned a = 0; a < R.r; ++a) c[a] = pull_bits();
                m.at(i, j) = R.from_coeffs(c);
            }
        return m;
    }

    std::string to_string() const {
        std::ostringstream os;
        os << "[";
        for (unsigned i = 0; i < rows_; ++i) {
            if (i) os << "; ";
            for (unsigned j = 0; j < cols_; ++j) {
                if (j) os << " ";
                if (R_->r == 1)
                    os << at(i, j).coeff(0);
                else
                    os << at(i, j).to_string();
            }
        }
        os << "]";
        return os.str();
    }

    // row-major integer serialization: r consecutive integers per entry
    // (a single integer per entry when r = 1)
    std::vector<u64> flat_ints() const {
        std::vector<u64> v;
        v.reserve(a_.size() * R_->r);
        for (const auto& e : a_)
            for (unsigned i = 0; i < R_->r; ++i) v.push_back(e.coeff(i));
        return v;
    }

    static Mat from_flat_ints(const GaloisRing& R, unsigned rows, unsigned cols,
                              const std::vector<i64>& v) {
        if (v.size() != (size_t)rows * cols * R.r)
            throw ShapeMismatchError("from_flat_ints: wrong number of integers");
        Mat m(R, rows, cols);
        size_t idx = 0;
        for (unsigned i = 0; i < rows; ++i)
            for (unsigned j = 0; j < cols; ++j) {
                std::vector<u64> c(R.r);
                for (unsigned a = 0; a < R.r; ++a) {
                    i64 x = v[idx++] % (i64)R.pn;
                    if (x < 0) x += (i64)R.pn;
                    c[a] = (u64)x;
                }
                m.at(i, j) = R.from_coeffs(c);
            }
        return m;
    }

  private:
    void check_same_shape(const Mat& o) const {
        if (R_ != o.R_ || rows_ != o.rows_ || cols_ != o.cols_)
            throw ShapeMismatchError("matrix shapes differ");
    }
    const GaloisRing* R_;
    unsigned rows_, cols_;
    std::vector<RingElt> a_;
};

inline Mat commutator(const Mat& x, const Mat& y) {
    auto xi = x.inverse();
    auto yi = y.inverse();
    if (!xi || !yi) throw NotInvertibleError("commutator of a non-invertible matrix");
    return x * y * (*xi) * (*yi);
}

inline Mat mat_pow(const Mat& x, u64 e) {
    Mat acc = Mat::identity(x.ring(), x.rows());
    Mat base = x;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// F_p vector utilities.  Congruence-layer subspaces live in Lie_{F_p}, i.e.
// they are subgroups of an elementary abelian p-group, so all span arithmetic
// below is over the prime field regardless of the residue extension degree.

using FpVec = std::vector<u64>;

// flatten a residue-field matrix to its F_p coordinate vector
inline FpVec fp_flatten(const Mat& m) {
    const GaloisRing& R = m.ring();
    if (R.n != 1) throw BadLevelError("fp_flatten expects a residue-field matrix");
    FpVec v;
    v.reserve((size_t)m.rows() * m.cols() * R.r);
    for (unsigned i = 0; i < m.rows(); ++i)
        for (unsigned j = 0; j < m.cols(); ++j)
            for (unsigned a = 0; a < R.r; ++a) v.push_back(m.at(i, j).coeff(a));
    return v;
}

inline Mat fp_unflatten(const GaloisRing& R, unsigned rows, unsigned cols, const FpVec& v) {
    Mat m(R, rows, cols);
    size_t idx = 0;
    for (unsigned i = 0; i < rows; ++i)
        for (unsigned j = 0; j < cols; ++j) {
            std::vector<u64> c(R.r);
            for (unsigned a = 0; a < R.r; ++a) c[a] = v[idx++] % R.pn;
            m.at(i, j) = R.from_coeffs(c);
        }
    return m;
}

// An F_p-subspace kept in row echelon form.  insert() reports whether the
// vector enlarged the span and, on a dependent vector, can return the
// combination that reduces it to zero (for drill-down in the layer engine).
class FpSpan {
  public:
    FpSpan() : p_(0), dim_amb_(0) {}
    FpSpan(u64 p, size_t ambient_dim) : p_(p), dim_amb_(ambient_dim) {}

    u64 p() const { return p_; }
    size_t ambient_dim() const { return dim_amb_; }
    size_t dim() const { return rows_.size(); }

    bool contains(const FpVec& v) const {
        FpVec w = v;
        reduce_inplace(w, nullptr);
        return all_zero(w);
    }

    // reduce v against the basis; coeffs (if non-null) receives the
    // combination of stored basis rows that was subtracted
    void reduce_inplace(FpVec& v, std::vector<u64>* coeffs) const {
        if (coeffs) coeffs->assign(rows_.size(), 0);
        for (size_t k = 0; k < rows_.size(); ++k) {
            u64 c = v[pivots_[k]] % p_;
            if (!c) continue;
            // basis rows are normalized to pivot 1
            for (size_t j = 0; j < dim_amb_; ++j)
                v[j] = (v[j] + (p_ - c) * rows_[k][j]) % p_;
            if (coeffs) (*coeffs)[k] = c;
        }
    }

    // returns basis index if span grew, else std::nullopt.  dep_coeffs (if
    // given) receives the combination of stored rows subtracted during
    // reduction; norm_factor receives the scalar applied to normalize a
    // freshly inserted row, so callers can track row provenance exactly:
    //   stored_row = norm_factor * (v - sum dep_coeffs[k] * row_k)
    std::optional<size_t> insert(const FpVec& v, std::vector<u64>* dep_coeffs = nullptr,
                                 u64* norm_factor = nullptr) {
        FpVec w = v;
        reduce_inplace(w, dep_coeffs);
        size_t piv = dim_amb_;
        for (size_t j = 0; j < dim_amb_; ++j)
            if (w[j] % p_) { piv = j; break; }
        if (piv == dim_amb_) return std::nullopt;
        // normalize pivot to 1
        u64 inv = inv_mod_p(w[piv] % p_);
        for (size_t j = 0; j < dim_amb_; ++j) w[j] = (w[j] % p_) * inv % p_;
        if (norm_factor) *norm_factor = inv;
        rows_.push_back(w);
        pivots_.push_back(piv);
        return rows_.size() - 1;
    }

    // canonical reduced-echelon signature of the spanned subspace
    std::string signature() const {
        // fully back-reduce a copy and sort rows by pivot
        std::vector<FpVec> rows = rows_;
        std::vector<size_t> piv = pivots_;
        for (size_t a = 0; a < rows.size(); ++a)
            for (size_t b = 0; b < rows.size(); ++b) {
                if (a == b) continue;
                u64 c = rows[b][piv[a]] % p_;
                if (!c) continue;
                for (size_t j = 0; j < dim_amb_; ++j)
                    rows[b][j] = (rows[b][j] + (p_ - c) * rows[a][j]) % p_;
            }
        std::vector<size_t> order(rows.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return piv[a] < piv[b]; });
        std::string sig;
        for (size_t i : order) {
            for (u64 x : rows[i]) sig += (char)('0' + (int)(x % p_));
            sig += '|';
        }
        return sig;
    }

    const std::vector<FpVec>& basis() const { return rows_; }

    // enumerate all p^dim span elements (only for small spans)
    std::vector<FpVec> enumerate() const {
        std::vector<FpVec> out;
        u64 total = 1;
        for (size_t i = 0; i < rows_.size(); ++i) total *= p_;
        out.reserve(total);
        for (u64 k = 0; k < total; ++k) {
            FpVec v(dim_amb_, 0);
            u64 kk = k;
            for (size_t i = 0; i < rows_.size(); ++i) {
                u64 c = kk % p_;
                kk /= p_;
                if (c)
                    for (size_t j = 0; j < dim_amb_; ++j) v[j] = (v[j] + c * rows_[i][j]) % p_;
            }
            out.push_back(v);
        }
        return out;
    }

  private:
    static bool all_zero(const FpVec& v) {
        for (u64 x : v)
            if (x) return false;
        return true;
    }
    u64 inv_mod_p(u64 x) const {
        u64 r = 1, e = p_ - 2, b = x % p_;
        while (e) {
            if (e & 1) r = r * b % p_;
            b = b * b % p_;
            e >>= 1;
        }
        return r;
    }
    u64 p_;
    size_t dim_amb_;
    std::vector<FpVec> rows_;
    std::vector<size_t> pivots_;
};

}  // namespace wittlift

#endif  // WITTLIFT_MATRIX_HPP
