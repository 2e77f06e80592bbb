#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qalg/linalg.hpp"

using namespace qalg;

namespace {

const FieldTag Q = FieldTag::rationals();
const FieldTag F2 = FieldTag::prime_field(2);
const FieldTag F5 = FieldTag::prime_field(5);

Matrix mat(FieldTag f, std::size_t r, std::size_t c, std::initializer_list<long> vals) {
    Matrix m(f, r, c);
    auto it = vals.begin();
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, Scalar::of_int(f, *it++));
    return m;
}

Vec vec(FieldTag f, std::initializer_list<long> vals) {
    Vec v;
    for (long x : vals) v.push_back(Scalar::of_int(f, x));
    return v;
}

Matrix random_matrix(std::mt19937_64& rng, FieldTag f, std::size_t r, std::size_t c) {
    Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m.set(i, j, Scalar::of_int(f, static_cast<long>(rng() % 7) - 3));
    return m;
}

} // namespace

TEST_CASE("scalar arithmetic is exact in both fields") {
    Scalar a = Scalar::of_fraction(1, 3);
    Scalar b = Scalar::of_fraction(1, 6);
    CHECK(a + b == Scalar::of_fraction(1, 2));
    CHECK((a * b).str() == "1/18");
    CHECK(Scalar::of_fraction(2, 4) == Scalar::of_fraction(1, 2));

    Scalar x = Scalar::of_int(F5, 3);
    CHECK(x.inverse() == Scalar::of_int(F5, 2));
    CHECK(x + Scalar::of_int(F5, 4) == Scalar::of_int(F5, 2));
    CHECK_THROWS_AS(Scalar::zero(F5).inverse(), DivisionByZeroError);
    CHECK_THROWS_AS(FieldTag::prime_field(6), Error);
    CHECK_THROWS_AS(a + x, FieldMismatchError);
}

TEST_CASE("rref on the stock examples") {
    SUBCASE("identity is fixed") {
        Matrix id = Matrix::identity(Q, 2);
        RrefResult r = rref(id);
        CHECK(r.mat == id);
        CHECK(r.pivots == std::vector<std::size_t>{0, 1});
    }
    SUBCASE("rank-1 rational matrix") {
        RrefResult r = rref(mat(Q, 2, 2, {1, 2, 2, 4}));
        CHECK(r.mat == mat(Q, 2, 2, {1, 2, 0, 0}));
        CHECK(r.pivots == std::vector<std::size_t>{0});
    }
    SUBCASE("2x2 over F2, eliminated by hand") {
        // [[1,1],[1,0]]: row2 -= row1 gives [0,1]; back-substitution clears
        // the (0,1) entry, leaving the identity with pivots {0,1}.
        RrefResult r = rref(mat(F2, 2, 2, {1, 1, 1, 0}));
        CHECK(r.mat == Matrix::identity(F2, 2));
        CHECK(r.pivots == std::vector<std::size_t>{0, 1});
    }
}

TEST_CASE("rref is idempotent") {
    std::mt19937_64 rng(12345);
    for (FieldTag f : {Q, F5, F2})
        for (int trial = 0; trial < 25; ++trial) {
            Matrix m = random_matrix(rng, f, 4, 5);
            RrefResult once = rref(m);
            RrefResult twice = rref(once.mat);
            CHECK(once.mat == twice.mat);
            CHECK(once.pivots == twice.pivots);
        }
}

TEST_CASE("kernel_basis on the stock examples") {
    CHECK(kernel_basis(Matrix::identity(Q, 3)).dim() == 0);
    CHECK(kernel_basis(Matrix(Q, 2, 3)).dim() == 3);

    // single equation x + 2y = 0: kernel spanned by (-2, 1)
    Subspace k = kernel_basis(mat(Q, 1, 2, {1, 2}));
    CHECK(k.dim() == 1);
    CHECK(k.contains(vec(Q, {-2, 1})));
    CHECK_FALSE(k.contains(vec(Q, {1, 0})));
}

TEST_CASE("solve picks the free-variables-zero solution") {
    Matrix id = Matrix::identity(Q, 2);
    CHECK(solve(id, vec(Q, {3, 7})) == vec(Q, {3, 7}));

    Matrix a = mat(Q, 2, 2, {1, 2, 2, 4});
    CHECK(solve(a, vec(Q, {1, 2})) == vec(Q, {1, 0}));
    CHECK_FALSE(solve(a, vec(Q, {1, 3})).has_value());
}

TEST_CASE("solve solutions verify exactly") {
    std::mt19937_64 rng(777);
    for (FieldTag f : {Q, F5}) {
        int solved = 0;
        for (int trial = 0; trial < 40; ++trial) {
            Matrix a = random_matrix(rng, f, 4, 3);
            Vec b;
            for (int i = 0; i < 4; ++i)
                b.push_back(Scalar::of_int(f, static_cast<long>(rng() % 5) - 2));
            auto x = solve(a, b);
            if (!x) continue;
            ++solved;
            CHECK(a.apply(*x) == b);
        }
        CHECK(solved > 0);
    }
}

TEST_CASE("membership decomposition") {
    Subspace s = Subspace::span(Q, 2, {vec(Q, {1, 0})});
    SUBCASE("zero vector lies in every subspace") {
        auto d = s.membership(vec(Q, {0, 0}));
        REQUIRE(d.has_value());
        CHECK(vec_is_zero(*d));
    }
    SUBCASE("a basis row decomposes with unit coefficient") {
        auto d = s.membership(vec(Q, {1, 0}));
        REQUIRE(d.has_value());
        CHECK(*d == vec(Q, {1}));
    }
    SUBCASE("independent directions are rejected") {
        CHECK_FALSE(s.membership(vec(Q, {1, 1})).has_value());
    }
    SUBCASE("decompositions reproduce the vector exactly") {
        std::mt19937_64 rng(99);
        Subspace big = Subspace::span(
            F5, 4, {vec(F5, {1, 2, 0, 3}), vec(F5, {0, 1, 1, 1}), vec(F5, {1, 3, 1, 4})});
        for (int trial = 0; trial < 30; ++trial) {
            Vec coeffs;
            Vec target = vec_zero(F5, 4);
            for (std::size_t r = 0; r < big.dim(); ++r) {
                Scalar c = Scalar::of_int(F5, static_cast<long>(rng() % 5));
                vec_add_scaled(target, c, big.basis().row(r));
            }
            auto d = big.membership(target);
            REQUIRE(d.has_value());
            Vec rebuilt = vec_zero(F5, 4);
            for (std::size_t r = 0; r < big.dim(); ++r)
                vec_add_scaled(rebuilt, (*d)[r], big.basis().row(r));
            CHECK(rebuilt == target);
        }
    }
}

TEST_CASE("rank plus nullity accounts for the column count") {
    std::mt19937_64 rng(2024);
    for (FieldTag f : {Q, F2, F5})
        for (int trial = 0; trial < 30; ++trial) {
            std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
            Matrix m = random_matrix(rng, f, r, c);
            CHECK(rank(m) + kernel_basis(m).dim() == c);
        }
}

TEST_CASE("subspace reduce yields canonical representatives") {
    Subspace s = Subspace::span(Q, 3, {vec(Q, {1, 1, 0}), vec(Q, {0, 0, 1})});
    Vec v = vec(Q, {2, 5, 7});
    Vec r = s.reduce(v);
    // pivot coordinates 0 and 2 are cleared, the difference stays in s
    CHECK(r[0].is_zero());
    CHECK(r[2].is_zero());
    CHECK(s.contains(vec_sub(v, r)));
    CHECK(s.reduce(r) == r);
}

TEST_CASE("matrix inverse round-trips") {
    Matrix a = mat(Q, 2, 2, {2, 1, 1, 1});
    auto inv = inverse(a);
    REQUIRE(inv.has_value());
    CHECK(a * *inv == Matrix::identity(Q, 2));
    CHECK_FALSE(inverse(mat(Q, 2, 2, {1, 2, 2, 4})).has_value());
}
