// Copyright (c) 2026 the wittlift authors.
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "wittlift/criteria.hpp"
#include "wittlift/lie.hpp"

using namespace wittlift;

TEST_CASE("lie algebra dimensions") {
    CHECK(lie_basis(GroupDescriptor::make(GroupFamily::SL, 2, GaloisRing::get(3, 1, 1))).size() ==
          3);
    CHECK(lie_basis(GroupDescriptor::make(GroupFamily::Sp, 4, GaloisRing::get(2, 1, 1))).size() ==
          10);
    CHECK(lie_basis(GroupDescriptor::make(GroupFamily::GSp, 4, GaloisRing::get(2, 1, 1))).size() ==
          11);
    CHECK(lie_basis(GroupDescriptor::make(GroupFamily::SOplus, 6, GaloisRing::get(2, 1, 1)))
              .size() == 15);
    CHECK(lie_basis(GroupDescriptor::make(GroupFamily::GSOplus, 6, GaloisRing::get(2, 1, 1)))
              .size() == 16);
    CHECK(lie_basis(GroupDescriptor::make(GroupFamily::SOminus, 6, GaloisRing::get(2, 1, 1)))
              .size() == 15);
    CHECK(lie_basis(GroupDescriptor::make(GroupFamily::PGL, 2, GaloisRing::get(2, 1, 1))).size() ==
          3);
    CHECK(lie_basis(GroupDescriptor::make(GroupFamily::PGSp, 4, GaloisRing::get(3, 1, 1)))
              .size() == 10);
    CHECK(lie_basis(GroupDescriptor::make(GroupFamily::GL, 2, GaloisRing::get(2, 2, 2))).size() ==
          4);
}

TEST_CASE("layer kernel size matches the Lie dimension (smoothness witness)") {
    // scan all 1 + 2X over F_2 for membership at level 2: the kernel of the
    // reduction must have exactly 2^dim elements
    struct Row {
        GroupFamily f;
        unsigned size;
        unsigned expect_dim;
    };
    for (Row row : {Row{GroupFamily::SL, 2, 3}, Row{GroupFamily::Sp, 4, 10},
                    Row{GroupFamily::SOplus, 4, 6}, Row{GroupFamily::GSOplus, 4, 7}}) {
        const GaloisRing& R = GaloisRing::get(2, 1, 2);
        GroupDescriptor D = GroupDescriptor::make(row.f, row.size, R);
        u64 count = 0;
        unsigned nn = row.size * row.size;
        for (u64 mask = 0; mask < (1ull << nn); ++mask) {
            Mat M = Mat::identity(R, row.size);
            for (unsigned b = 0; b < nn; ++b)
                if ((mask >> b) & 1)
                    M.at(b / row.size, b % row.size) =
                        M.at(b / row.size, b % row.size) + R.from_int(2);
            if (membership_and_multiplier(M, D).member) ++count;
        }
        INFO(family_name(row.f));
        CHECK(count == (1ull << row.expect_dim));
    }
}

TEST_CASE("layer codec") {
    SECTION("decode of the identity is zero") {
        GroupDescriptor D = GroupDescriptor::make(GroupFamily::SL, 2, GaloisRing::get(2, 1, 2));
        CHECK(layer_decode(D, GroupElt::identity(D), 1).is_zero());
    }

    SECTION("encode then decode is the identity on sl_2 over Z/4, exhaustive") {
        GroupDescriptor D = GroupDescriptor::make(GroupFamily::SL, 2, GaloisRing::get(2, 1, 2));
        std::vector<Mat> basis = lie_basis_fp(D);
        REQUIRE(basis.size() == 3);
        for (u64 mask = 0; mask < 8; ++mask) {
            Mat X(GaloisRing::get(2, 1, 1), 2, 2);
            for (unsigned b = 0; b < 3; ++b)
                if ((mask >> b) & 1) X = X + basis[b];
            GroupElt e = layer_encode(D, X, 1);
            CHECK(layer_decode(D, e, 1) == X);
        }
    }

    SECTION("kernel products decode to sums (SL_2 over Z/8 at layer 2)") {
        GroupDescriptor D = GroupDescriptor::make(GroupFamily::SL, 2, GaloisRing::get(2, 1, 3));
        std::vector<Mat> basis = lie_basis_fp(D);
        std::mt19937_64 rng(41);
        for (int it = 0; it < 200; ++it) {
            const GaloisRing& k = GaloisRing::get(2, 1, 1);
            Mat X(k, 2, 2), Y(k, 2, 2);
            for (const Mat& b : basis) {
                if (rng() % 2) X = X + b;
                if (rng() % 2) Y = Y + b;
            }
            GroupElt ex = layer_encode(D, X, 2);
            GroupElt ey = layer_encode(D, Y, 2);
            CHECK(layer_decode(D, ex * ey, 2) == X + Y);
        }
    }

    SECTION("codec works for the quotient family PGL_2 over Z/27") {
        GroupDescriptor D = GroupDescriptor::make(GroupFamily::PGL, 2, GaloisRing::get(3, 1, 3));
        std::vector<Mat> basis = lie_basis_fp(D);
        REQUIRE(basis.size() == 3);
        const GaloisRing& k = GaloisRing::get(3, 1, 1);
        for (u64 idx = 0; idx < 27; ++idx) {
            Mat X(k, 2, 2);
            u64 kk = idx;
            for (unsigned b = 0; b < 3; ++b) {
                u64 c = kk % 3;
                kk /= 3;
                if (c) X = X + basis[b].scaled(k.from_int((i64)c));
            }
            X = lie_canonicalize(D.at_level(1), X);
            GroupElt e = layer_encode(D, X, 1);
            CHECK(layer_decode(D, e, 1) == X);
        }
    }
}

TEST_CASE("adjoint action commutes with the codec") {
    GroupDescriptor D = GroupDescriptor::make(GroupFamily::Sp, 4, GaloisRing::get(2, 1, 3));
    std::mt19937_64 rng(4242);
    std::vector<GroupElt> gens = standard_generators(D);
    std::vector<Mat> basis = lie_basis_fp(D);
    const GaloisRing& k = GaloisRing::get(2, 1, 1);
    for (int it = 0; it < 100; ++it) {
        GroupElt g = GroupElt::identity(D);
        for (int w = 0; w < 8; ++w) g = g * gens[rng() % gens.size()];
        Mat X(k, 4, 4);
        for (const Mat& b : basis)
            if (rng() % 2) X = X + b;
        GroupElt e = layer_encode(D, X, 1);
        // conjugation happens at level 2 where the encoded element lives
        GroupElt g2 = g.reduce(2);
        GroupElt conj = g2 * e * g2.inverse();
        Mat gk = g.reduce(1).mat();
        auto gkinv = gk.inverse();
        REQUIRE(gkinv.has_value());
        CHECK(layer_decode(D, conj, 1) == gk * X * *gkinv);
    }
}

TEST_CASE("commutator equals bracket at p = 2") {
    SECTION("equal inputs give zero on both sides") {
        const GaloisRing& R = GaloisRing::get(2, 1, 3);
        GroupDescriptor D = GroupDescriptor::make(GroupFamily::SL, 2, R);
        Mat x = Mat::identity(R, 2);
        x.at(0, 1) = R.from_int(2);
        x.at(1, 0) = R.from_int(4);
        GroupElt g = GroupElt::make(D, x);
        BracketCommutatorResult r = bracket_and_commutator_check(D, g, g);
        CHECK(r.equal);
        CHECK(r.bracket.is_zero());
        CHECK(r.commutator_layer2.is_zero());
    }

    SECTION("the 2x2 textbook pair: [E12, E21] = E11 - E22") {
        const GaloisRing& R = GaloisRing::get(2, 1, 3);
        GroupDescriptor D = GroupDescriptor::make(GroupFamily::SL, 2, R);
        Mat x = Mat::identity(R, 2);
        x.at(0, 1) = R.from_int(2);
        Mat y = Mat::identity(R, 2);
        y.at(1, 0) = R.from_int(2);
        BracketCommutatorResult r = bracket_and_commutator_check(
            D, GroupElt::unchecked(D, x), GroupElt::unchecked(D, y));
        CHECK(r.equal);
        const GaloisRing& k = GaloisRing::get(2, 1, 1);
        Mat expect(k, 2, 2);
        expect.at(0, 0) = k.one();
        expect.at(1, 1) = k.one();  // E11 - E22 = E11 + E22 over F_2
        CHECK(r.bracket == expect);
    }

    SECTION("random pairs in Sp_4(Z/8) satisfy the identity") {
        GroupDescriptor D = GroupDescriptor::make(GroupFamily::Sp, 4, GaloisRing::get(2, 1, 3));
        // random kernel elements: products of encoded layer-1/2 pieces lifted
        // via actual kernel elements of the group: use squares of layer-1
        // encodes times layer-2 encodes... build from group words instead:
        // pick random group elements g and use g^k so that the residue is
        // trivial: the residue group has exponent dividing |Sp_4(F_2)|.
        std::mt19937_64 rng(2025);
        std::vector<GroupElt> gens = standard_generators(D);
        auto random_kernel = [&]() {
            // a random word, pushed into the kernel by raising to the order
            // of its residue
            for (;;) {
                GroupElt g = GroupElt::identity(D);
                for (int w = 0; w < 6; ++w) g = g * gens[rng() % gens.size()];
                GroupElt r1 = g.reduce(1);
                // order of the residue element
                u64 ord = 1;
                GroupElt cur = r1;
                while (!cur.is_identity() && ord < 100) {
                    cur = cur * r1;
                    ++ord;
                }
                if (ord >= 100) continue;
                GroupElt kk = GroupElt::unchecked(D, mat_pow(g.mat(), ord));
                if (layer_depth(kk) >= 1 && !kk.is_identity()) return kk;
            }
        };
        for (int it = 0; it < 200; ++it) {
            GroupElt x = random_kernel();
            GroupElt y = random_kernel();
            BracketCommutatorResult r = bracket_and_commutator_check(D, x, y);
            CHECK(r.equal);
        }
    }
}

TEST_CASE("adjoint module analysis") {
    SECTION("sl_2 over F_3 under SL_2(F_3): simple, no codim-1 invariant") {
        GroupDescriptor D = GroupDescriptor::make(GroupFamily::SL, 2, GaloisRing::get(3, 1, 1));
        AdjointModule M = adjoint_module(D);
        AdjointAnalysis A = adjoint_module_analysis(M);
        CHECK(A.dim == 3);
        CHECK(A.derived_dim == 3);
        CHECK(A.is_simple_derived);
        CHECK(!A.has_codim1_invariant);
        REQUIRE(A.minimal_submodules.size() == 1);
        CHECK(A.minimal_submodules[0].dim() == 3);
    }

    SECTION("gl_2 over F_2 under GL_2(F_2): dim(lie/[lie,lie]) = 1") {
        GroupDescriptor D = GroupDescriptor::make(GroupFamily::GL, 2, GaloisRing::get(2, 1, 1));
        AdjointModule M = adjoint_module(D);
        AdjointAnalysis A = adjoint_module_analysis(M);
        CHECK(A.dim == 4);
        CHECK(A.dim - A.derived_dim == 1);
    }

    SECTION("pgsp_4 over F_2: dim(lie/[lie,lie]) = 1 (the adjoint algebra)") {
        GroupDescriptor D = GroupDescriptor::make(GroupFamily::PGSp, 4, GaloisRing::get(2, 1, 1));
        AdjointModule M = adjoint_module(D);
        AdjointAnalysis A = adjoint_module_analysis(M);
        CHECK(A.dim == 10);
        CHECK(A.dim - A.derived_dim == 1);
    }

    SECTION("sp_4 over F_2 itself has derived dimension 6 (exhaustive oracle)") {
        // independent route: scan all 2^16 matrices for the defining equation,
        // then span the brackets; this pins the value the adjoint statement
        // does NOT apply to
        const GaloisRing& k = GaloisRing::get(2, 1, 1);
        Mat J = symplectic_form(k, 4);
        std::vector<Mat> sols;
        for (u64 mask = 0; mask < (1ull << 16); ++mask) {
            Mat X(k, 4, 4);
            for (unsigned b = 0; b < 16; ++b)
                if ((mask >> b) & 1) X.at(b / 4, b % 4) = k.one();
            if ((X.transpose() * J + J * X).is_zero()) sols.push_back(X);
        }
        FpSpan whole(2, 16), derived(2, 16);
        for (const Mat& m : sols) whole.insert(fp_flatten(m));
        CHECK(whole.dim() == 10);
        for (const Mat& a : sols)
            for (const Mat& b : sols) derived.insert(fp_flatten(a * b - b * a));
        CHECK(derived.dim() == 6);
        // the library's own module analysis agrees
        GroupDescriptor D = GroupDescriptor::make(GroupFamily::Sp, 4, k);
        AdjointAnalysis A = adjoint_module_analysis(adjoint_module(D));
        CHECK(A.derived_dim == 6);
    }

    SECTION("pgl_2 over F_3: no codimension-1 invariant subspace") {
        GroupDescriptor D = GroupDescriptor::make(GroupFamily::PGL, 2, GaloisRing::get(3, 1, 1));
        AdjointModule M = adjoint_module(D);
        AdjointAnalysis A = adjoint_module_analysis(M);
        CHECK(A.dim == 3);
        CHECK(!A.has_codim1_invariant);
    }
}

TEST_CASE("derived codimension computations match the table") {
    // GL_{2} at p = 2 (p | m): 1
    CHECK(*codim_derived_computed(
              GroupDescriptor::make(GroupFamily::GL, 2, GaloisRing::get(2, 1, 1))) == 1);
    // GL_4 at p = 2: 1
    CHECK(*codim_derived_computed(
              GroupDescriptor::make(GroupFamily::GL, 4, GaloisRing::get(2, 1, 1))) == 1);
    // GL_3 at p = 3: 1
    CHECK(*codim_derived_computed(
              GroupDescriptor::make(GroupFamily::GL, 3, GaloisRing::get(3, 1, 1))) == 1);
    // GSp_4, GSp_6 at p = 2: 1
    CHECK(*codim_derived_computed(
              GroupDescriptor::make(GroupFamily::GSp, 4, GaloisRing::get(2, 1, 1))) == 1);
    CHECK(*codim_derived_computed(
              GroupDescriptor::make(GroupFamily::GSp, 6, GaloisRing::get(2, 1, 1))) == 1);
    // GSO_6 (plus and minus) at p = 2, h = 3 odd: 1
    CHECK(*codim_derived_computed(
              GroupDescriptor::make(GroupFamily::GSOplus, 6, GaloisRing::get(2, 1, 1))) == 1);
    CHECK(*codim_derived_computed(
              GroupDescriptor::make(GroupFamily::GSOminus, 6, GaloisRing::get(2, 1, 1))) == 1);
    // GL_2 over F_4 at p = 2: 1 (k-dimension)
    CHECK(*codim_derived_computed(
              GroupDescriptor::make(GroupFamily::GL, 2, GaloisRing::get(2, 2, 1))) == 1);
}
