#pragma once

// The shared fixture algebras used across the test suites:
//   FX1 the A2 quiver 1 -> 2, no relations
//   FX2 one vertex with a loop a, ideal (a^2)
//   FX3 the five-arrow algebra on vertices 1..4 with relations
//       alpha*beta - gamma*delta, beta*epsilon, delta*epsilon, epsilon*alpha
//   FX4 two vertices with arrows both ways, all length-3 paths killed
//   FX5 the Kronecker quiver: two parallel arrows 1 -> 2

#include "qalg/algebra.hpp"

namespace fx {

using namespace qalg;

inline Quiver quiver_fx1() {
    return Quiver({"1", "2"}, {{"alpha", 0, 1}});
}

inline Quiver quiver_fx2() {
    return Quiver({"1"}, {{"alpha", 0, 0}});
}

inline Quiver quiver_fx3() {
    return Quiver({"1", "2", "3", "4"}, {{"alpha", 0, 1},
                                         {"beta", 1, 2},
                                         {"gamma", 0, 3},
                                         {"delta", 3, 2},
                                         {"epsilon", 2, 0}});
}

inline Quiver quiver_fx4() {
    return Quiver({"1", "2"}, {{"alpha", 0, 1}, {"beta", 1, 0}});
}

inline Quiver quiver_fx5() {
    return Quiver({"1", "2"}, {{"alpha", 0, 1}, {"beta", 0, 1}});
}

inline Path word(const Quiver& q, std::initializer_list<const char*> labels) {
    std::vector<int> idx;
    for (const char* l : labels) idx.push_back(q.arrow_index(l));
    return Path::word(q, idx);
}

inline BoundQuiverAlgebra fx1(FieldTag f = FieldTag::rationals()) {
    Quiver q = quiver_fx1();
    return BoundQuiverAlgebra::build(q, {}, f);
}

inline BoundQuiverAlgebra fx2(FieldTag f = FieldTag::rationals()) {
    Quiver q = quiver_fx2();
    PathVector r(q);
    r.add_term(word(q, {"alpha", "alpha"}), Scalar::one(f));
    return BoundQuiverAlgebra::build(q, {r}, f);
}

inline std::vector<PathVector> relations_fx3(const Quiver& q, FieldTag f) {
    PathVector r1(q), r2(q), r3(q), r4(q);
    r1.add_term(word(q, {"alpha", "beta"}), Scalar::one(f));
    r1.add_term(word(q, {"gamma", "delta"}), -Scalar::one(f));
    r2.add_term(word(q, {"beta", "epsilon"}), Scalar::one(f));
    r3.add_term(word(q, {"delta", "epsilon"}), Scalar::one(f));
    r4.add_term(word(q, {"epsilon", "alpha"}), Scalar::one(f));
    return {r1, r2, r3, r4};
}

inline BoundQuiverAlgebra fx3(FieldTag f = FieldTag::rationals()) {
    Quiver q = quiver_fx3();
    return BoundQuiverAlgebra::build(q, relations_fx3(q, f), f);
}

inline BoundQuiverAlgebra fx4(FieldTag f = FieldTag::rationals()) {
    Quiver q = quiver_fx4();
    PathVector r1(q), r2(q);
    r1.add_term(word(q, {"alpha", "beta", "alpha"}), Scalar::one(f));
    r2.add_term(word(q, {"beta", "alpha", "beta"}), Scalar::one(f));
    return BoundQuiverAlgebra::build(q, {r1, r2}, f);
}

inline BoundQuiverAlgebra fx5(FieldTag f = FieldTag::rationals()) {
    Quiver q = quiver_fx5();
    return BoundQuiverAlgebra::build(q, {}, f);
}

/// All five fixtures over one field, for sweep-style suites.
inline std::vector<BoundQuiverAlgebra> all_fixtures(FieldTag f = FieldTag::rationals()) {
    std::vector<BoundQuiverAlgebra> out;
    out.push_back(fx1(f));
    out.push_back(fx2(f));
    out.push_back(fx3(f));
    out.push_back(fx4(f));
    out.push_back(fx5(f));
    return out;
}

} // namespace fx
