#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "lefschetz/symplectic.hpp"

using namespace lefschetz;

TEST_CASE("intersection form matrix is block diagonal with [[0,1],[-1,0]]", "[symplectic]") {
    IntMat j = symplectic_form_matrix(2);
    REQUIRE(j.rows() == 4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            Int expect = 0;
            if (r / 2 == c / 2) expect = (r % 2 == 0 && c % 2 == 1) ? 1 : ((r % 2 == 1 && c % 2 == 0) ? -1 : 0);
            CHECK(j.at(r, c) == expect);
        }

    // J^2 = -I.
    IntMat j2 = j * j;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) CHECK(j2.at(r, c) == (r == c ? -1 : 0));
}

TEST_CASE("pairing normalization <a_i, b_i> = +1", "[symplectic]") {
    Vec a1{1, 0, 0, 0}, b1{0, 1, 0, 0}, a2{0, 0, 1, 0}, b2{0, 0, 0, 1};
    CHECK(symplectic_pairing(a1, b1) == 1);
    CHECK(symplectic_pairing(b1, a1) == -1);
    CHECK(symplectic_pairing(a2, b2) == 1);
    CHECK(symplectic_pairing(a1, b2) == 0);
    CHECK(symplectic_pairing(a1, a2) == 0);
}

TEST_CASE("pairing matches x^T J y and is antisymmetric", "[symplectic]") {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<Int> dist(-5, 5);
    for (int trial = 0; trial < 50; ++trial) {
        int g = 1 + static_cast<int>(rng() % 3);
        Vec x(2 * g), y(2 * g);
        for (auto& e : x) e = dist(rng);
        for (auto& e : y) e = dist(rng);
        IntMat j = symplectic_form_matrix(g);
        Vec jy = j * y;
        Int direct = 0;
        for (int i = 0; i < 2 * g; ++i) direct += x[i] * jy[i];
        CHECK(symplectic_pairing(x, y) == direct);
        CHECK(symplectic_pairing(x, y) == -symplectic_pairing(y, x));
    }
}

TEST_CASE("transvection about a_1 at genus 1 is [[1,-1],[0,1]]", "[symplectic]") {
    IntMat t = transvection_matrix(Vec{1, 0});
    CHECK(t.at(0, 0) == 1);
    CHECK(t.at(0, 1) == -1);
    CHECK(t.at(1, 0) == 0);
    CHECK(t.at(1, 1) == 1);

    // b_1 |-> b_1 - a_1 under the twist about a_1.
    Vec image = t * Vec{0, 1};
    CHECK(image == Vec{-1, 1});
}

TEST_CASE("transvection about a_1 + b_1 is [[2,-1],[1,0]]", "[symplectic]") {
    IntMat t = transvection_matrix(Vec{1, 1});
    CHECK(t.at(0, 0) == 2);
    CHECK(t.at(0, 1) == -1);
    CHECK(t.at(1, 0) == 1);
    CHECK(t.at(1, 1) == 0);
}

TEST_CASE("transvections fix their cycle and act by x + <x,v> v", "[symplectic]") {
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 40; ++trial) {
        int g = 1 + static_cast<int>(rng() % 3);
        Vec v = random_primitive_vector(g, rng);
        IntMat t = transvection_matrix(v);
        CHECK(t * v == v);
        Vec x = random_primitive_vector(g, rng);
        Vec expect = x;
        Int c = symplectic_pairing(x, v);
        for (int i = 0; i < 2 * g; ++i) expect[i] += c * v[i];
        CHECK(t * x == expect);
        CHECK(is_symplectic(t));
    }
}

TEST_CASE("products of transvections are symplectic", "[symplectic]") {
    std::mt19937_64 rng(2024);
    for (int g = 1; g <= 3; ++g) {
        IntMat m = random_symplectic(g, rng, 10);
        CHECK(is_symplectic(m));
        CHECK(is_symplectic_mod(reduce_mod(m, 5), 5));
    }
}

TEST_CASE("the elliptic relation (T_a T_b)^6 = identity", "[symplectic]") {
    IntMat ta = transvection_matrix(Vec{1, 0});
    IntMat tb = transvection_matrix(Vec{0, 1});
    IntMat prod = IntMat::identity(2);
    for (int i = 0; i < 6; ++i) prod = prod * ta * tb;
    CHECK(prod == IntMat::identity(2));

    // The factor itself has order exactly 6, not less.
    IntMat m = ta * tb;
    IntMat p = m;
    for (int i = 1; i < 6; ++i) {
        CHECK(p != IntMat::identity(2));
        p = p * m;
    }
    CHECK(p == IntMat::identity(2));
}

TEST_CASE("primitivity detection", "[symplectic]") {
    CHECK(is_primitive(Vec{1, 0}));
    CHECK(is_primitive(Vec{2, 3}));
    CHECK(is_primitive(Vec{0, 0, 2, 3}));
    CHECK_FALSE(is_primitive(Vec{2, 4}));
    CHECK_FALSE(is_primitive(Vec{0, 0}));
    CHECK_FALSE(is_primitive(Vec{-2, 6, 0, 4}));
    CHECK(is_primitive(Vec{-1, 0, 0, 0}));
}

TEST_CASE("modular reduction and direct sums", "[symplectic]") {
    CHECK(mod_reduce(-1, 5) == 4);
    CHECK(mod_reduce(7, 5) == 2);
    CHECK(mod_reduce(-10, 5) == 0);

    IntMat t = transvection_matrix(Vec{1, 0});
    IntMat r = reduce_mod(t, 3);
    CHECK(r.at(0, 1) == 2);

    IntMat s = direct_sum(t, transvection_matrix(Vec{1, 1}));
    CHECK(s.rows() == 4);
    CHECK(is_symplectic(s));
    CHECK(s.at(0, 1) == -1);
    CHECK(s.at(2, 2) == 2);
    CHECK(s.at(0, 2) == 0);
}
