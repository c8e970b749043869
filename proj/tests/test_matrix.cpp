// Copyright (c) 2026 the wittlift authors.
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "wittlift/matrix.hpp"

using namespace wittlift;

namespace {

Mat random_mat(const GaloisRing& R, unsigned n, std::mt19937_64& rng) {
    Mat m(R, n, n);
    u64 sz = R.size_as_u64();
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) m.at(i, j) = R.element_by_index(rng() % sz);
    return m;
}

}  // namespace

TEST_CASE("charpoly and det on small known cases") {
    const GaloisRing& R = GaloisRing::get(5, 1, 2);  // Z/25
    Mat a(R, 2, 2);
    a.at(0, 0) = R.from_int(1);
    a.at(0, 1) = R.from_int(2);
    a.at(1, 0) = R.from_int(3);
    a.at(1, 1) = R.from_int(4);
    auto cp = a.charpoly();  // t^2 - 5t - 2
    REQUIRE(cp.size() == 3);
    CHECK(cp[2] == R.one());
    CHECK(cp[1] == R.from_int(-5));
    CHECK(cp[0] == R.from_int(-2));
    CHECK(a.det() == R.from_int(-2));

    // det is multiplicative (randomized, including 3x3 and 4x4)
    std::mt19937_64 rng(99);
    for (unsigned n : {2u, 3u, 4u}) {
        for (int it = 0; it < 30; ++it) {
            Mat x = random_mat(R, n, rng), y = random_mat(R, n, rng);
            CHECK((x * y).det() == x.det() * y.det());
        }
    }
}

TEST_CASE("charpoly over an extension ring vs trace/det") {
    const GaloisRing& R = GaloisRing::get(2, 2, 2);  // W_2(F_4)
    std::mt19937_64 rng(7);
    for (int it = 0; it < 50; ++it) {
        Mat x = random_mat(R, 2, rng);
        auto cp = x.charpoly();
        REQUIRE(cp.size() == 3);
        CHECK(cp[1] == -x.trace());
        CHECK(cp[0] == x.det());
    }
}

TEST_CASE("inverse over a chain ring") {
    const GaloisRing& R = GaloisRing::get(2, 1, 3);  // Z/8
    std::mt19937_64 rng(3);
    int inverted = 0;
    for (int it = 0; it < 200; ++it) {
        Mat x = random_mat(R, 3, rng);
        auto inv = x.inverse();
        if (R.is_unit(x.det())) {
            REQUIRE(inv.has_value());
            CHECK((x * *inv).is_identity());
            CHECK((*inv * x).is_identity());
            ++inverted;
        } else {
            CHECK(!inv.has_value());
        }
    }
    CHECK(inverted > 0);
}

TEST_CASE("matrix key is injective on a small full scan") {
    const GaloisRing& R = GaloisRing::get(2, 1, 2);
    std::set<std::string> keys;
    for (u64 i = 0; i < 256; ++i) {
        Mat m(R, 2, 2);
        u64 k = i;
        for (unsigned a = 0; a < 2; ++a)
            for (unsigned b = 0; b < 2; ++b) {
                m.at(a, b) = R.from_int((i64)(k % 4));
                k /= 4;
            }
        keys.insert(m.key());
    }
    CHECK(keys.size() == 256);
}

TEST_CASE("FpSpan echelon bookkeeping") {
    FpSpan s(3, 4);
    CHECK(s.insert({1, 2, 0, 0}).has_value());
    CHECK(s.insert({0, 0, 1, 1}).has_value());
    // dependent vector: 2*(1,2,0,0) + (0,0,1,1)
    std::vector<u64> dep;
    CHECK(!s.insert({2, 4, 1, 1}, &dep).has_value());
    REQUIRE(dep.size() == 2);
    CHECK(dep[0] == 2);
    CHECK(dep[1] == 1);
    CHECK(s.dim() == 2);
    CHECK(s.contains({1, 2, 1, 1}));
    CHECK(!s.contains({1, 0, 0, 0}));
    CHECK(s.enumerate().size() == 9);
}

TEST_CASE("flatten round trip") {
    const GaloisRing& F4 = GaloisRing::get(2, 2, 1);
    std::mt19937_64 rng(5);
    for (int it = 0; it < 20; ++it) {
        Mat m = random_mat(F4, 3, rng);
        FpVec v = fp_flatten(m);
        CHECK(fp_unflatten(F4, 3, 3, v) == m);
    }
}
