// Copyright (c) 2026 the wittlift authors.
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

#include <catch2/catch_amalgamated.hpp>

#include "wittlift/curves.hpp"

using namespace wittlift;

TEST_CASE("polynomial parsing and printing") {
    IntPoly f = parse_poly("x^6-x-1");
    CHECK(f.degree() == 6);
    CHECK(f.c[0] == -1);
    CHECK(f.c[1] == -1);
    CHECK(f.c[6] == 1);
    CHECK(parse_poly("3*x^2+5").c[2] == 3);
    CHECK(parse_poly("-x^3+2x").c[3] == -1);
    CHECK_THROWS_AS(parse_poly("x^"), ParseError);
}

TEST_CASE("discriminants via resultants") {
    CHECK(discriminant(parse_poly("x^3-x")) == 4);
    CHECK(discriminant(parse_poly("x^3-2")) == -108);
    CHECK(discriminant(parse_poly("x^2+1")) == -4);
    CHECK(discriminant(parse_poly("x^3-x-1")) == -23);
    // quadratic formula check: disc(ax^2+bx+c) = b^2 - 4ac
    CHECK(discriminant(parse_poly("3x^2+5x+7")) == 25 - 84);
}

TEST_CASE("squarefree parts") {
    SECTION("x^3 - x: disc 4, squarefree part 1") {
        DiscSquarefree d = disc_sqfree(parse_poly("x^3-x"));
        CHECK(d.disc == 4);
        CHECK(d.squarefree_part == 1);
    }
    SECTION("x^3 - 2: disc -108, squarefree part -3") {
        DiscSquarefree d = disc_sqfree(parse_poly("x^3-2"));
        CHECK(d.disc == -108);
        CHECK(d.squarefree_part == -3);
    }
    SECTION("x^2 + 1: disc -4, squarefree part -1") {
        DiscSquarefree d = disc_sqfree(parse_poly("x^2+1"));
        CHECK(d.squarefree_part == -1);
    }
    SECTION("zero discriminant raises") {
        CHECK_THROWS_AS(disc_sqfree(parse_poly("x^2")), ZeroDiscriminantError);
    }
}

TEST_CASE("factor patterns over F_ell") {
    SECTION("x^3 - 2 mod 5 factors as {1, 2}") {
        auto p = factor_pattern_mod(parse_poly("x^3-2"), 5);
        CHECK(p == std::vector<unsigned>{1, 2});
    }
    SECTION("x^3 - 2 mod 7 stays irreducible") {
        auto p = factor_pattern_mod(parse_poly("x^3-2"), 7);
        CHECK(p == std::vector<unsigned>{3});
    }
    SECTION("a rational root forces a part of size 1") {
        auto p = factor_pattern_mod(parse_poly("x^3-x+6"), 7);
        // f(-2) = -8+2+6 = 0, so every good pattern contains 1
        bool has1 = false;
        for (unsigned d : p) has1 = has1 || d == 1;
        CHECK(has1);
    }
    SECTION("patterns sum to the degree over many primes") {
        IntPoly f = parse_poly("x^6-x-1");
        for (u64 ell : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull}) {
            mpz_class bad = discriminant(f) * f.lead();
            if (bad % (long)ell == 0) continue;
            auto p = factor_pattern_mod(f, ell);
            unsigned sum = 0;
            for (unsigned d : p) sum += d;
            CHECK(sum == 6);
        }
    }
    SECTION("bad primes are rejected") {
        CHECK_THROWS_AS(factor_pattern_mod(parse_poly("x^3-2"), 3), BadPrimeError);
        CHECK_THROWS_AS(factor_pattern_mod(parse_poly("x^3-2"), 4), BadPrimeError);
    }
}

TEST_CASE("symmetric-group certification") {
    SECTION("x^3 - x - 1 is S_3") {
        GaloisCertificate c = certify_Sn(parse_poly("x^3-x-1"), 100);
        CHECK(c.verdict == SnVerdict::Certified);
        CHECK(c.irreducibility_certified);
    }
    SECTION("x^3 - x is not S_3 (square discriminant and reducible)") {
        GaloisCertificate c = certify_Sn(parse_poly("x^3-x"), 100);
        CHECK(c.verdict == SnVerdict::NotSn);
    }
    SECTION("x^3 - 3x - 1 is cyclic: square discriminant") {
        // disc = 81
        CHECK(discriminant(parse_poly("x^3-3x-1")) == 81);
        GaloisCertificate c = certify_Sn(parse_poly("x^3-3x-1"), 100);
        CHECK(c.verdict == SnVerdict::NotSn);
    }
    SECTION("x^6 - x - 1 is S_6 within budget") {
        GaloisCertificate c = certify_Sn(parse_poly("x^6-x-1"), 500);
        CHECK(c.verdict == SnVerdict::Certified);
        CHECK(c.irreducibility_certified);
        CHECK(c.n_minus_1_cycle_seen);
        CHECK(c.transposition_pattern_seen);
    }
    SECTION("degree guard") {
        CHECK_THROWS_AS(certify_Sn(parse_poly("x^4-x-1"), 10), BadDegreeError);
    }
}

TEST_CASE("the 2-adic image verdict") {
    SECTION("x^3 - 2: surjective") {
        ImageVerdict v = verdict_4_2_1(parse_poly("x^3-2"), 1, true);
        CHECK(v.outcome == ImageOutcome::Surjective);
        CHECK(v.disc.squarefree_part == -3);
    }
    SECTION("x^3 - x: condition (i) fails") {
        ImageVerdict v = verdict_4_2_1(parse_poly("x^3-x"), 1, true);
        CHECK(v.outcome == ImageOutcome::NotSurjective);
    }
    SECTION("x^3 + x: S_3 with squarefree part -1: condition (ii) fails") {
        // disc(x^3+x) = -4: squarefree part -1; f irreducible? x^3+x = x(x^2+1):
        // reducible, so pick a true (ii)-failure cubic instead:
        // x^3 - x - 2: disc = 4 - 27*4 = -104 = -2^3 * 13: squarefree part -26
        // not obstructing; search small cubics for squarefree part in {-1,2,-2}
        // x^3 + x - 1: disc = -4 - 27 = -31; x^3 - 2x - 2: disc = 32 - 108 =
        // -76 = -4*19 -> -19; x^3 + 2x - 2: disc = -32 - 108 = -140 -> -35;
        // x^3 - x + 1: disc = -23; x^3 + x + 1: disc = -31;
        // x^3 + 2x + 2: disc = -32 - 108 = -140; x^3 - 3x - 4: disc =
        // 108 - 432 = -324 = -18^2 -> -1: reducible? f(-1)=-2, f(1)=-6,
        // f(2)=-2, f(4)=48, f(-2)=-6, f(-4)=-56: no rational root among
        // divisors of 4: irreducible with squarefree part -1
        IntPoly f = parse_poly("x^3-3x-4");
        CHECK(discriminant(f) == -324);
        ImageVerdict v = verdict_4_2_1(f, 1, true);
        CHECK(v.disc.squarefree_part == -1);
        CHECK(v.outcome == ImageOutcome::NotSurjective);
        CHECK(v.squarefree_part_obstructs);
    }
    SECTION("x^6 - x - 1: verdict matches its squarefree part") {
        IntPoly f = parse_poly("x^6-x-1");
        DiscSquarefree d = disc_sqfree(f);
        ImageVerdict v = verdict_4_2_1(f, 2, true);
        bool obstructed = d.squarefree_part == -1 || d.squarefree_part == 2 ||
                          d.squarefree_part == -2;
        if (obstructed)
            CHECK(v.outcome == ImageOutcome::NotSurjective);
        else
            CHECK(v.outcome == ImageOutcome::Surjective);
    }
}

TEST_CASE("point counts and L-polynomials") {
    SECTION("y^2 = x^3 - 2 at ell = 5: six points, a_5 = 0") {
        FrobeniusData fd = count_points_lpoly(parse_poly("x^3-2"), 5);
        REQUIRE(fd.counts.size() == 1);
        CHECK(fd.counts[0] == 6);
        // L = 1 + a T + 5 T^2 with a = 5 + 1 - 6 = 0
        CHECK(fd.lpoly[1] == 0);
        CHECK(fd.lpoly[2] == 5);
        CHECK(fd.weil_bounds_ok);
        CHECK(fd.functional_equation_ok);
        CHECK(fd.jacobian_order == 6);
    }

    SECTION("y^2 = x^5 - x + 1 at ell = 7: genus 2 data validates") {
        FrobeniusData fd = count_points_lpoly(parse_poly("x^5-x+1"), 7);
        CHECK(fd.genus == 2);
        REQUIRE(fd.counts.size() == 2);
        CHECK(fd.weil_bounds_ok);
        CHECK(fd.functional_equation_ok);
        CHECK(fd.jacobian_order > 0);
    }

    SECTION("bad reduction and even primes are rejected") {
        CHECK_THROWS_AS(count_points_lpoly(parse_poly("x^3-2"), 3), BadReductionError);
        CHECK_THROWS_AS(count_points_lpoly(parse_poly("x^3-2"), 2), BadPrimeError);
    }

    SECTION("genus-3 odd-degree model validates at a few primes") {
        IntPoly f = parse_poly("x^7-x-1");
        for (u64 ell : {3ull, 5ull, 11ull}) {
            mpz_class bad = discriminant(f) * f.lead();
            if (bad % (long)ell == 0) continue;
            FrobeniusData fd = count_points_lpoly(f, ell);
            CHECK(fd.weil_bounds_ok);
            CHECK(fd.functional_equation_ok);
            CHECK(fd.jacobian_order > 0);
        }
    }
}

TEST_CASE("plane quartic evidence counts") {
    // x z^3 + z x^3 + z x^2 y + z y^3 + x^4 + x^3 y + x^2 y^2 + y^4
    std::vector<i64> quartic = {1, 1, 1, 1, 1, 0, 0, 0, 0, 1, 1, 1, 0, 0, 0};
    SECTION("four rational points over F_2 (hand-checked)") {
        CHECK(count_plane_quartic(quartic, 2) == 4);
    }
    SECTION("counts over small extensions satisfy the Weil bound for genus 3") {
        for (unsigned e = 1; e <= 3; ++e) {
            u64 cnt = count_plane_quartic(quartic, 2, e);
            double q = std::pow(2.0, e);
            CHECK((double)cnt >= q + 1 - 6 * std::sqrt(q));
            CHECK((double)cnt <= q + 1 + 6 * std::sqrt(q));
        }
    }
}

TEST_CASE("mod-2 consistency of the torsion module") {
    SECTION("degree 3, pattern {3}: charpoly t^2 + t + 1") {
        IntPoly f = parse_poly("x^3-2");
        Mod2Consistency m = mod2_consistency(f, 7);  // x^3-2 irreducible mod 7
        REQUIRE(m.pattern == std::vector<unsigned>{3});
        CHECK(m.permutation_charpoly == std::vector<u64>{1, 1, 1});
        CHECK(m.equal);
    }
    SECTION("degree 3, pattern {1,1,1}: charpoly (t+1)^2") {
        IntPoly f = parse_poly("x^3-2");
        // need a prime where 2 is a cube and mu_3ch lives: 31: cubes mod 31:
        // 2^10 = 1024 = 1 mod 31, so 2 = (2^21)^3... scan primes for {1,1,1}
        u64 found = 0;
        for (u64 ell : {31ull, 43ull, 109ull, 127ull, 157ull, 223ull, 229ull, 277ull}) {
            mpz_class bad = discriminant(f) * f.lead();
            if (bad % (long)ell == 0) continue;
            auto p = factor_pattern_mod(f, ell);
            if (p == std::vector<unsigned>{1, 1, 1}) { found = ell; break; }
        }
        REQUIRE(found != 0);
        Mod2Consistency m = mod2_consistency(f, found);
        CHECK(m.permutation_charpoly == std::vector<u64>{1, 0, 1});  // (t+1)^2 over F_2
        CHECK(m.equal);
    }
    SECTION("equality holds for the fixture curves at many good primes") {
        for (const char* poly : {"x^3-2", "x^6-x-1", "x^5-x+1"}) {
            IntPoly f = parse_poly(poly);
            mpz_class bad = discriminant(f) * f.lead();
            unsigned checked = 0;
            for (u64 ell = 3; checked < 12; ell += 2) {
                if (!wittlift::detail::is_prime_u64(ell)) continue;
                if (bad % (long)ell == 0) continue;
                Mod2Consistency m = mod2_consistency(f, ell);
                INFO(poly << " at ell = " << ell);
                CHECK(m.equal);
                ++checked;
            }
        }
    }
}
