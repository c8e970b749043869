// Copyright (c) 2026 the wittlift authors.
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "wittlift/oracle.hpp"

using namespace wittlift;

TEST_CASE("enumeration basics") {
    SECTION("standard generators of SL_2(F_2) give 6 elements") {
        GroupDescriptor D = GroupDescriptor::make(GroupFamily::SL, 2, GaloisRing::get(2, 1, 1));
        EnumeratedGroup G = enumerate_group(D);
        CHECK(G.size() == 6);
        // deterministic: rerunning yields the same order
        EnumeratedGroup G2 = enumerate_group(D);
        for (u32 i = 0; i < G.size(); ++i) CHECK(G.keys[i] == G2.keys[i]);
    }

    SECTION("the trivial generating set encloses only the identity") {
        GroupDescriptor D = GroupDescriptor::make(GroupFamily::SL, 2, GaloisRing::get(2, 1, 1));
        EnumeratedGroup G = enumerate_closure(D, {}, 10);
        CHECK(G.size() == 1);
    }

    SECTION("PGL_2(W_2(F_4)) enumerates to 3840") {
        GroupDescriptor D = GroupDescriptor::make(GroupFamily::PGL, 2, GaloisRing::get(2, 2, 2));
        EnumeratedGroup G = enumerate_group(D);
        CHECK(G.size() == 3840);
    }

    SECTION("bound is honored") {
        GroupDescriptor D = GroupDescriptor::make(GroupFamily::Sp, 4, GaloisRing::get(2, 1, 1));
        std::vector<Mat> gens;
        for (const GroupElt& g : standard_generators(D)) gens.push_back(g.mat());
        CHECK_THROWS_AS(enumerate_closure(D, gens, 100), BoundExceededError);
    }
}

TEST_CASE("composition factors") {
    SECTION("Sp_4(F_2): a simple factor of order 360 and a C_2") {
        GroupDescriptor D = GroupDescriptor::make(GroupFamily::Sp, 4, GaloisRing::get(2, 1, 1));
        auto f = composition_factors(enumerate_group(D));
        REQUIRE(f.size() == 2);
        u64 simple_order = 0, cyclic_order = 0;
        for (const auto& x : f) {
            if (x.order > 2) {
                simple_order = x.order;
                CHECK(x.simple);
                CHECK(!x.abelian);
            } else {
                cyclic_order = x.order;
                CHECK(x.abelian);
            }
        }
        CHECK(simple_order == 360);
        CHECK(cyclic_order == 2);
    }

    SECTION("SL_2(F_4) is simple of order 60") {
        GroupDescriptor D = GroupDescriptor::make(GroupFamily::SL, 2, GaloisRing::get(2, 2, 1));
        auto f = composition_factors(enumerate_group(D));
        REQUIRE(f.size() == 1);
        CHECK(f[0].order == 60);
        CHECK(f[0].simple);
        CHECK(!f[0].abelian);
    }

    SECTION("an elementary abelian 2-group decomposes into C_2 factors") {
        // the layer kernel of SL_2(Z/4) -> SL_2(F_2)
        GroupDescriptor D = GroupDescriptor::make(GroupFamily::SL, 2, GaloisRing::get(2, 1, 2));
        std::vector<Mat> gens;
        for (const Mat& b : lie_basis_fp(D)) gens.push_back(layer_encode(D, b, 1).mat());
        auto f = composition_factors(enumerate_closure(D, gens, 100));
        REQUIRE(f.size() == 3);
        for (const auto& x : f) {
            CHECK(x.order == 2);
            CHECK(x.abelian);
        }
    }

    SECTION("SL_2(F_3): factors 2, 2, 3, and a simple order-... chain multiplies to 24") {
        GroupDescriptor D = GroupDescriptor::make(GroupFamily::SL, 2, GaloisRing::get(3, 1, 1));
        auto f = composition_factors(enumerate_group(D));
        u64 prod = 1;
        for (const auto& x : f) prod *= x.order;
        CHECK(prod == 24);
        // SL_2(F_3) is solvable: every factor must be cyclic of prime order
        for (const auto& x : f) CHECK(x.abelian);
    }
}

TEST_CASE("section search") {
    SECTION("trivial base: identity section") {
        // SL_1 is the trivial group at any level
        GroupDescriptor D = GroupDescriptor::make(GroupFamily::SL, 1, GaloisRing::get(3, 1, 2));
        SectionSearchResult r = find_section(D, 1);
        CHECK(r.found);
    }

    SECTION("PGL_2(W_2(F_4)) -> PGL_2(F_4): a section exists") {
        GroupDescriptor D = GroupDescriptor::make(GroupFamily::PGL, 2, GaloisRing::get(2, 2, 2));
        SectionSearchResult r = find_section(D, 1);
        CHECK(r.found);
        REQUIRE(r.section_images.size() >= 2);
        // verify: the closure of the section images maps bijectively onto the base
        EnumeratedGroup up = enumerate_closure(D, r.section_images, 10000);
        CHECK(up.size() == 60);
        std::unordered_set<std::string> down;
        GroupDescriptor Dk = D.at_level(1);
        for (u32 i = 0; i < up.size(); ++i)
            down.insert(canonical_rep(Dk, up.element(i).reduce(1)).key());
        CHECK(down.size() == 60);
    }

    SECTION("SL_2(Z/9) -> SL_2(F_3): a section exists (settled empirically)") {
        // the q = 3 cases sit on the exceptional side of the dichotomy: the
        // adjoint factor PGL_2 is in the q = 3 exception list, and indeed a
        // complement exists (cross-checked by an independent enumeration)
        GroupDescriptor D = GroupDescriptor::make(GroupFamily::SL, 2, GaloisRing::get(3, 1, 2));
        SectionSearchResult r = find_section(D, 1);
        CHECK(r.found);
        EnumeratedGroup up = enumerate_closure(D, r.section_images, 10000);
        CHECK(up.size() == 24);
        std::unordered_set<std::string> down;
        GroupDescriptor Dk = D.at_level(1);
        for (u32 i = 0; i < up.size(); ++i)
            down.insert(canonical_rep(Dk, up.element(i).reduce(1)).key());
        CHECK(down.size() == 24);
    }

    SECTION("SL_2(Z/4) -> SL_2(F_2): no section, certified exhaustion") {
        // an order-2 determinant-1 lift of a transposition would need
        // tr(M) M = 2 I, impossible mod 4; the search must exhaust
        GroupDescriptor D = GroupDescriptor::make(GroupFamily::SL, 2, GaloisRing::get(2, 1, 2));
        SectionSearchResult r = find_section(D, 1);
        CHECK(!r.found);
        CHECK(r.exhausted);
        CHECK(r.candidates_total ==
              r.rejected_order + r.rejected_relations + r.rejected_full);
    }

    SECTION("PGL_2(Z/4) -> PGL_2(F_2): a section exists (recorded fact)") {
        // determinant is unconstrained in the quotient classes, so the
        // permutation-flavored lifts are available; cross-checked by an
        // independent enumeration
        GroupDescriptor D = GroupDescriptor::make(GroupFamily::PGL, 2, GaloisRing::get(2, 1, 2));
        SectionSearchResult r = find_section(D, 1);
        CHECK(r.found);
        EnumeratedGroup up = enumerate_closure(D, r.section_images, 1000);
        CHECK(up.size() == 6);
    }
}

TEST_CASE("generation properties") {
    SECTION("SL_2(F_3) is generated by its order-3 elements") {
        GroupDescriptor D = GroupDescriptor::make(GroupFamily::SL, 2, GaloisRing::get(3, 1, 1));
        GenerationReport rep = verify_order_p_generation(enumerate_group(D));
        CHECK(rep.sc_generated_by_order_p);
        CHECK(rep.order_p_count > 0);
    }

    SECTION("Sp_4(F_2) is generated by its order-2 elements") {
        GroupDescriptor D = GroupDescriptor::make(GroupFamily::Sp, 4, GaloisRing::get(2, 1, 1));
        GenerationReport rep = verify_order_p_generation(enumerate_group(D));
        CHECK(rep.sc_generated_by_order_p);
    }

    SECTION("subgroup forcing on SL_2(F_5): 20 random subgroups") {
        GroupDescriptor D = GroupDescriptor::make(GroupFamily::SL, 2, GaloisRing::get(5, 1, 1));
        EnumeratedGroup G = enumerate_group(D);
        REQUIRE(G.size() == 120);
        GroupDescriptor adjD = GroupDescriptor::make(GroupFamily::PGL, 2, GaloisRing::get(5, 1, 1));
        // sc image inside the adjoint group: canonical classes of SL elements
        std::vector<Mat> scmats;
        {
            std::unordered_set<std::string> seen;
            for (u32 i = 0; i < G.size(); ++i) {
                Mat c = canonical_rep(adjD, G.element(i));
                if (seen.insert(c.key()).second) scmats.push_back(c);
            }
        }
        EnumeratedGroup sc;
        sc.D = adjD;
        for (const Mat& m : scmats) {
            sc.index.emplace(m.key(), (u32)sc.keys.size());
            sc.keys.push_back(m.key());
        }
        std::mt19937_64 rng(606);
        EnumAbsGroup g(G);
        int hypothesis_held = 0;
        for (int it = 0; it < 20; ++it) {
            // random subgroup: closure of 1-3 random elements
            std::vector<u32> seeds;
            for (unsigned j = 0; j < 1 + rng() % 3; ++j) seeds.push_back(rng() % G.size());
            std::unordered_set<u32> cl = detail::subgroup_closure(g, seeds);
            std::vector<u32> ids(cl.begin(), cl.end());
            SubgroupForcingInstance inst = check_subgroup_forcing(G, adjD, ids, sc);
            if (inst.hypothesis_holds) {
                ++hypothesis_held;
                CHECK(inst.conclusion_holds);
            }
        }
        CHECK(hypothesis_held > 0);  // the full subgroup arises with these seeds
    }
}
