#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "qalg/algebra.hpp"

using namespace qalg;

namespace {

const FieldTag Q = FieldTag::rationals();
const FieldTag F5 = FieldTag::prime_field(5);

AlgebraElement elem(const BoundQuiverAlgebra& a, std::initializer_list<const char*> labels) {
    return a.reduce_path(fx::word(a.quiver(), labels));
}

} // namespace

TEST_CASE("fx1 compiles to the hereditary A2 algebra") {
    BoundQuiverAlgebra a = fx::fx1();
    CHECK(a.nilpotency_degree() == 2);
    CHECK(a.dim() == 3);
    CHECK(a.basis_index(Path::trivial(0)) == 0);
    CHECK(a.basis_index(Path::trivial(1)) == 1);
    CHECK(a.basis_index(fx::word(a.quiver(), {"alpha"})) == 2);
}

TEST_CASE("fx2 kills the loop square") {
    BoundQuiverAlgebra a = fx::fx2();
    CHECK(a.nilpotency_degree() == 2);
    CHECK(a.dim() == 2);
    CHECK(elem(a, {"alpha", "alpha"}).is_zero());
}

TEST_CASE("fx3 has dimension eleven with gamma*delta reducing to alpha*beta") {
    BoundQuiverAlgebra a = fx::fx3();
    const Quiver& q = a.quiver();
    CHECK(a.nilpotency_degree() == 3);
    CHECK(a.dim() == 11);

    // 4 trivial paths, 5 arrows, and the two normal length-2 paths
    CHECK(a.basis_index(fx::word(q, {"alpha", "beta"})) >= 0);
    CHECK(a.basis_index(fx::word(q, {"epsilon", "gamma"})) >= 0);
    CHECK(a.basis_index(fx::word(q, {"gamma", "delta"})) == -1);

    CHECK(elem(a, {"gamma", "delta"}) == elem(a, {"alpha", "beta"}));
    CHECK(elem(a, {"beta", "epsilon"}).is_zero());
    CHECK(elem(a, {"delta", "epsilon"}).is_zero());
    CHECK(elem(a, {"epsilon", "alpha"}).is_zero());
}

TEST_CASE("multiplication on fx3 matches the relation rewrites") {
    for (FieldTag f : {Q, F5}) {
        BoundQuiverAlgebra a = fx::fx3(f);
        AlgebraElement alpha = elem(a, {"alpha"});
        AlgebraElement beta = elem(a, {"beta"});
        AlgebraElement gamma = elem(a, {"gamma"});
        AlgebraElement delta = elem(a, {"delta"});
        AlgebraElement eps = elem(a, {"epsilon"});

        CHECK(alpha * beta == elem(a, {"alpha", "beta"}));
        CHECK(gamma * delta == elem(a, {"alpha", "beta"}));
        CHECK((eps * alpha).is_zero());
        CHECK((beta * alpha).is_zero()); // not composable
    }
}

TEST_CASE("trivial paths are orthogonal idempotents summing to one") {
    for (const BoundQuiverAlgebra& a : fx::all_fixtures()) {
        AlgebraElement sum = a.zero();
        for (int v = 0; v < a.quiver().vertex_count(); ++v) {
            AlgebraElement ev = a.vertex_idempotent(v);
            CHECK(ev * ev == ev);
            for (int w = 0; w < a.quiver().vertex_count(); ++w)
                if (w != v) CHECK((ev * a.vertex_idempotent(w)).is_zero());
            sum = sum + ev;
        }
        CHECK(sum == a.one());
        // two-sided identity on every basis element
        for (int i = 0; i < a.dim(); ++i) {
            CHECK(a.multiply(sum, a.unit(i)) == a.unit(i));
            CHECK(a.multiply(a.unit(i), sum) == a.unit(i));
        }
    }
}

TEST_CASE("multiplication is associative on random triples") {
    std::mt19937_64 rng(4242);
    for (FieldTag f : {Q, F5})
        for (const BoundQuiverAlgebra& a : fx::all_fixtures(f)) {
            auto random_elem = [&]() {
                Vec v = vec_zero(f, static_cast<std::size_t>(a.dim()));
                for (auto& c : v) c = Scalar::of_int(f, static_cast<long>(rng() % 5) - 2);
                return AlgebraElement(a, std::move(v));
            };
            for (int trial = 0; trial < 25; ++trial) {
                AlgebraElement x = random_elem(), y = random_elem(), z = random_elem();
                CHECK(a.multiply(x, a.multiply(y, z)) == a.multiply(a.multiply(x, y), z));
            }
        }
}

TEST_CASE("radical is nilpotent of the certified degree") {
    for (const BoundQuiverAlgebra& a : fx::all_fixtures()) {
        std::vector<int> rad = a.radical_basis();
        // every product of n radical basis elements vanishes
        int n = a.nilpotency_degree();
        std::vector<AlgebraElement> power;
        for (int i : rad) power.push_back(a.unit(i));
        for (int step = 1; step < n && !power.empty(); ++step) {
            std::vector<AlgebraElement> next;
            for (const AlgebraElement& x : power)
                for (int i : rad) {
                    AlgebraElement p = a.multiply(x, a.unit(i));
                    if (!p.is_zero()) next.push_back(p);
                }
            power = std::move(next);
        }
        CHECK(power.empty());
    }
}

TEST_CASE("radical and peirce bases read off the normal paths") {
    BoundQuiverAlgebra a1 = fx::fx1();
    CHECK(a1.radical_basis().size() == 1);
    CHECK(a1.peirce(1, 0).empty());

    BoundQuiverAlgebra a2 = fx::fx2();
    CHECK(a2.radical_basis().size() == 1);
    CHECK(a2.peirce(0, 0).size() == 2); // e_1 and the loop

    BoundQuiverAlgebra a3 = fx::fx3();
    CHECK(a3.radical_basis().size() == 7);
    std::vector<int> p13 = a3.peirce(0, 2);
    REQUIRE(p13.size() == 1);
    CHECK(a3.basis_path(p13[0]) == fx::word(a3.quiver(), {"alpha", "beta"}));
}

TEST_CASE("length-n paths all reduce to zero") {
    for (const BoundQuiverAlgebra& a : fx::all_fixtures()) {
        for (const Path& p :
             paths_of_length(a.quiver(), static_cast<std::size_t>(a.nilpotency_degree())))
            CHECK(a.reduce_path(p).is_zero());
    }
}

TEST_CASE("opposite algebra reverses words and keeps dimension") {
    BoundQuiverAlgebra a1 = fx::fx1();
    BoundQuiverAlgebra o1 = a1.opposite();
    CHECK(o1.dim() == 3);
    CHECK(o1.quiver().arrow(0).source == 1);

    BoundQuiverAlgebra a2 = fx::fx2();
    BoundQuiverAlgebra o2 = a2.opposite();
    CHECK(o2.dim() == a2.dim());
    CHECK(o2.nilpotency_degree() == a2.nilpotency_degree());

    BoundQuiverAlgebra a3 = fx::fx3();
    BoundQuiverAlgebra o3 = a3.opposite();
    CHECK(o3.dim() == 11);
    // beta*alpha composes in the opposite quiver and equals delta*gamma
    const Quiver& oq = o3.quiver();
    CHECK(o3.reduce_path(fx::word(oq, {"beta", "alpha"})) ==
          o3.reduce_path(fx::word(oq, {"delta", "gamma"})));
    CHECK(o3.reduce_path(fx::word(oq, {"epsilon", "beta"})).is_zero());
    CHECK(o3.reduce_path(fx::word(oq, {"epsilon", "delta"})).is_zero());
    CHECK(o3.reduce_path(fx::word(oq, {"alpha", "epsilon"})).is_zero());
    // double opposite restores the original relation rewrites
    BoundQuiverAlgebra back = o3.opposite();
    CHECK(back.dim() == 11);
    CHECK(back.reduce_path(fx::word(back.quiver(), {"gamma", "delta"})) ==
          back.reduce_path(fx::word(back.quiver(), {"alpha", "beta"})));
}

TEST_CASE("malformed relations are rejected") {
    Quiver q = fx::quiver_fx3();
    SUBCASE("term of length one") {
        PathVector r(q);
        r.add_term(fx::word(q, {"alpha"}), Scalar::one(Q));
        CHECK_THROWS_AS(BoundQuiverAlgebra::build(q, {r}, Q), MalformedRelationError);
    }
    SUBCASE("mixed endpoints") {
        PathVector r(q);
        r.add_term(fx::word(q, {"alpha", "beta"}), Scalar::one(Q));
        r.add_term(fx::word(q, {"beta", "epsilon"}), Scalar::one(Q));
        CHECK_THROWS_AS(BoundQuiverAlgebra::build(q, {r}, Q), MalformedRelationError);
    }
}

TEST_CASE("an unrelated loop is not admissible within the cap") {
    Quiver q({"1"}, {{"alpha", 0, 0}});
    CHECK_THROWS_AS(BoundQuiverAlgebra::build(q, {}, Q, 10), NotAdmissibleError);
    try {
        BoundQuiverAlgebra::build(q, {}, Q, 10);
    } catch (const NotAdmissibleError& e) {
        CHECK(e.cap == 10);
    }
}

TEST_CASE("lambda_e with the full vertex set keeps everything") {
    BoundQuiverAlgebra a = fx::fx3();
    QuotientAlgebra q = lambda_e(a, Idempotent::all(a.quiver()));
    CHECK(q.killed_ideal().dim() == 0);
    CHECK(q.dim() == a.dim());
}

TEST_CASE("lambda_e on fx3 at {1,2,3} is the three-cycle with radical square zero") {
    for (FieldTag f : {Q, F5}) {
        BoundQuiverAlgebra a = fx::fx3(f);
        QuotientAlgebra q = lambda_e(a, Idempotent::of({0, 1, 2}));
        CHECK(q.dim() == 6);
        CHECK(q.dim() + static_cast<int>(q.killed_ideal().dim()) == a.dim());

        // surviving cosets: three trivial paths and the three arrows of the cycle
        CHECK(q.vertex_coset(0) >= 0);
        CHECK(q.vertex_coset(1) >= 0);
        CHECK(q.vertex_coset(2) >= 0);
        CHECK(q.vertex_coset(3) == -1);
        std::vector<int> rad = q.radical_cosets();
        CHECK(rad.size() == 3);
        // radical square vanishes
        for (int i : rad)
            for (int j : rad) CHECK(vec_is_zero(q.product_on_basis(i, j)));
        // alpha*beta passes through vertex 4 as gamma*delta, so its class dies
        AlgebraElement ab = a.reduce_path(fx::word(a.quiver(), {"alpha", "beta"}));
        CHECK(vec_is_zero(q.project(ab)));
    }
}

TEST_CASE("lambda_e on fx1 at {2} keeps a single coset") {
    BoundQuiverAlgebra a = fx::fx1();
    QuotientAlgebra q = lambda_e(a, Idempotent::of({1}));
    CHECK(q.dim() == 1);
    CHECK(q.vertex_coset(1) == 0);
}

TEST_CASE("quotient projection respects products on all basis pairs") {
    BoundQuiverAlgebra a = fx::fx3();
    for (auto e : {Idempotent::of({0, 1, 2}), Idempotent::of({0}), Idempotent::of({1, 3})}) {
        QuotientAlgebra q = lambda_e(a, e);
        for (int i = 0; i < a.dim(); ++i)
            for (int j = 0; j < a.dim(); ++j) {
                Vec lhs = q.project(a.multiply(a.unit(i), a.unit(j)));
                Vec rhs = q.multiply(q.project(a.unit(i)), q.project(a.unit(j)));
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("present extracts the three-cycle presentation of the fx3 quotient") {
    BoundQuiverAlgebra a = fx::fx3();
    QuotientAlgebra q = lambda_e(a, Idempotent::of({0, 1, 2}));
    PresentedQuotient p = present(q);
    CHECK(p.algebra.dim() == 6);
    CHECK(p.radical_nilpotency == 2);
    const Quiver& nq = p.algebra.quiver();
    REQUIRE(nq.vertex_count() == 3);
    REQUIRE(nq.arrow_count() == 3);
    // arrows close up into a single 3-cycle: out-degree and in-degree one each
    std::vector<int> outdeg(3, 0), indeg(3, 0);
    for (const Arrow& ar : nq.arrows()) {
        ++outdeg[static_cast<std::size_t>(ar.source)];
        ++indeg[static_cast<std::size_t>(ar.target)];
    }
    CHECK(outdeg == std::vector<int>{1, 1, 1});
    CHECK(indeg == std::vector<int>{1, 1, 1});
    CHECK(p.algebra.nilpotency_degree() == 2);
}

TEST_CASE("present round-trips the full algebra") {
    BoundQuiverAlgebra a = fx::fx4();
    QuotientAlgebra q = lambda_e(a, Idempotent::all(a.quiver()));
    PresentedQuotient p = present(q);
    CHECK(p.algebra.dim() == a.dim());
    CHECK(p.algebra.quiver().arrow_count() == a.quiver().arrow_count());
}

TEST_CASE("non-homogeneous relations rewrite long paths into short ones") {
    // one vertex, loop x with x^2 = x^3: forces x^2 = 0 in the quotient,
    // certified at degree 4 where the span closes
    Quiver q({"1"}, {{"x", 0, 0}});
    PathVector r(q);
    r.add_term(fx::word(q, {"x", "x"}), Scalar::one(Q));
    r.add_term(fx::word(q, {"x", "x", "x"}), -Scalar::one(Q));
    PathVector r2(q);
    r2.add_term(fx::word(q, {"x", "x", "x", "x"}), Scalar::one(Q));
    BoundQuiverAlgebra a = BoundQuiverAlgebra::build(q, {r, r2}, Q);
    CHECK(a.dim() == 2);
    AlgebraElement x = a.reduce_path(fx::word(q, {"x"}));
    CHECK((x * x).is_zero());
}
