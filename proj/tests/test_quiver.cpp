#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "qalg/quiver.hpp"

using namespace qalg;

TEST_CASE("quiver construction validates input") {
    CHECK_THROWS_AS(Quiver({"1", "1"}, {}), Error);
    CHECK_THROWS_AS(Quiver({"1"}, {{"a", 0, 0}, {"a", 0, 0}}), Error);
    CHECK_THROWS_AS(Quiver({"1"}, {{"a", 0, 3}}), Error);
}

TEST_CASE("compose follows left-to-right composition") {
    Quiver q = fx::quiver_fx3();
    Path alpha = fx::word(q, {"alpha"});
    Path beta = fx::word(q, {"beta"});

    SUBCASE("trivial paths are identities") {
        Path e1 = Path::trivial(0);
        auto r = compose(e1, alpha);
        REQUIRE(r.has_value());
        CHECK(*r == alpha);
        auto l = compose(alpha, Path::trivial(1));
        REQUIRE(l.has_value());
        CHECK(*l == alpha);
    }
    SUBCASE("alpha then beta composes to alpha*beta") {
        auto r = compose(alpha, beta);
        REQUIRE(r.has_value());
        CHECK(*r == fx::word(q, {"alpha", "beta"}));
        CHECK(r->source() == 0);
        CHECK(r->target() == 2);
    }
    SUBCASE("beta then alpha does not compose") {
        CHECK_FALSE(compose(beta, alpha).has_value());
    }
    SUBCASE("composition is associative where defined") {
        Path eps = fx::word(q, {"epsilon"});
        auto ab = compose(alpha, beta);
        auto be = compose(beta, eps);
        REQUIRE(ab.has_value());
        REQUIRE(be.has_value());
        CHECK(*compose(*ab, eps) == *compose(alpha, *be));
    }
}

TEST_CASE("paths_up_to enumerates in length-lex order") {
    SUBCASE("single arrow quiver") {
        std::vector<Path> ps = paths_up_to(fx::quiver_fx1(), 1);
        REQUIRE(ps.size() == 3);
        CHECK(ps[0] == Path::trivial(0));
        CHECK(ps[1] == Path::trivial(1));
        CHECK(ps[2].length() == 1);
    }
    SUBCASE("loop quiver to length two") {
        Quiver q = fx::quiver_fx2();
        std::vector<Path> ps = paths_up_to(q, 2);
        REQUIRE(ps.size() == 3);
        CHECK(ps[0] == Path::trivial(0));
        CHECK(ps[1] == fx::word(q, {"alpha"}));
        CHECK(ps[2] == fx::word(q, {"alpha", "alpha"}));
    }
    SUBCASE("fx3 has nine paths of length at most one") {
        CHECK(paths_up_to(fx::quiver_fx3(), 1).size() == 9);
    }
    SUBCASE("the order is strictly increasing") {
        Quiver q = fx::quiver_fx3();
        std::vector<Path> ps = paths_up_to(q, 3);
        for (std::size_t i = 0; i + 1 < ps.size(); ++i)
            CHECK(path_compare(q, ps[i], ps[i + 1]) < 0);
    }
}

TEST_CASE("cyclic permutations") {
    Quiver q2 = fx::quiver_fx2();
    Quiver q4 = fx::quiver_fx4();

    SUBCASE("a loop has itself as only rotation") {
        Cycle c(fx::word(q2, {"alpha"}));
        auto rots = cyclic_permutations(q2, c);
        REQUIRE(rots.size() == 1);
        CHECK(rots[0] == c);
    }
    SUBCASE("alpha*beta rotates to beta*alpha") {
        Cycle c(fx::word(q4, {"alpha", "beta"}));
        auto rots = cyclic_permutations(q4, c);
        REQUIRE(rots.size() == 2);
        CHECK(rots[0].path() == fx::word(q4, {"alpha", "beta"}));
        CHECK(rots[1].path() == fx::word(q4, {"beta", "alpha"}));
    }
    SUBCASE("the square of a loop lists its duplicate rotation") {
        Cycle c(fx::word(q2, {"alpha", "alpha"}));
        auto rots = cyclic_permutations(q2, c);
        REQUIRE(rots.size() == 2);
        CHECK(rots[0] == c);
        CHECK(rots[1] == c);
    }
    SUBCASE("rotations keep length and support") {
        Quiver q3 = fx::quiver_fx3();
        Cycle c(fx::word(q3, {"alpha", "beta", "epsilon"}));
        auto rots = cyclic_permutations(q3, c);
        REQUIRE(rots.size() == 3);
        for (const Cycle& r : rots) {
            CHECK(r.length() == c.length());
            CHECK(support(q3, r) == support(q3, c));
        }
    }
}

TEST_CASE("support collects starting vertices") {
    Quiver q2 = fx::quiver_fx2();
    Quiver q4 = fx::quiver_fx4();
    CHECK(support(q2, Cycle(fx::word(q2, {"alpha"}))) == std::set<int>{0});
    CHECK(support(q4, Cycle(fx::word(q4, {"alpha", "beta"}))) == std::set<int>{0, 1});
    CHECK(support(q2, Cycle(fx::word(q2, {"alpha", "alpha"}))) == std::set<int>{0});
}

TEST_CASE("primitive_root extracts the shortest period") {
    Quiver q2 = fx::quiver_fx2();
    Quiver q4 = fx::quiver_fx4();

    CHECK(primitive_root(q2, Cycle(fx::word(q2, {"alpha", "alpha"}))).path() ==
          fx::word(q2, {"alpha"}));
    CHECK(primitive_root(q4, Cycle(fx::word(q4, {"alpha", "beta"}))).path() ==
          fx::word(q4, {"alpha", "beta"}));
    CHECK(primitive_root(q4, Cycle(fx::word(q4, {"alpha", "beta", "alpha", "beta"}))).path() ==
          fx::word(q4, {"alpha", "beta"}));

    SUBCASE("the root divides the cycle and keeps its support") {
        for (int reps = 1; reps <= 3; ++reps) {
            std::vector<int> w;
            for (int r = 0; r < reps; ++r) {
                w.push_back(q4.arrow_index("alpha"));
                w.push_back(q4.arrow_index("beta"));
            }
            Cycle c(Path::word(q4, w));
            Cycle root = primitive_root(q4, c);
            CHECK(c.length() % root.length() == 0);
            CHECK(support(q4, root) == support(q4, c));
            std::size_t k = c.length() / root.length();
            std::vector<int> rebuilt;
            for (std::size_t i = 0; i < k; ++i)
                rebuilt.insert(rebuilt.end(), root.path().arrows().begin(),
                               root.path().arrows().end());
            CHECK(Path::word(q4, rebuilt) == c.path());
        }
    }
}

TEST_CASE("path vector collects and cancels terms") {
    Quiver q = fx::quiver_fx3();
    FieldTag f = FieldTag::rationals();
    PathVector v(q);
    v.add_term(fx::word(q, {"alpha", "beta"}), Scalar::one(f));
    v.add_term(fx::word(q, {"gamma", "delta"}), -Scalar::one(f));
    CHECK(v.term_count() == 2);
    v.add_term(fx::word(q, {"alpha", "beta"}), -Scalar::one(f));
    CHECK(v.term_count() == 1);
    CHECK(v.str() == "-gamma*delta");
}

TEST_CASE("opposite quiver reverses arrows") {
    Quiver q = fx::quiver_fx3();
    Quiver o = q.opposite();
    CHECK(o.arrow(0).source == 1);
    CHECK(o.arrow(0).target == 0);
    CHECK(o.opposite() == q);
}
