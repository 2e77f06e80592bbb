#pragma once

#include <functional>

#include "qalg/modules.hpp"

namespace qalg {

/// No e-bounded prefix of the minimal resolution was found within the depth
/// cap; the semisimple module of e may have infinite injective dimension.
struct HorizonNotReachedError : Error {
    explicit HorizonNotReachedError(int depth)
        : Error("no e-bounded resolution prefix within depth " + std::to_string(depth)),
          depth(depth) {}
    int depth;
};

class HH0Space;

/// A class in HH_0 = Lambda/[Lambda, Lambda], held in canonical coordinates
/// over a fixed complement of the commutator subspace.
class HH0Class {
public:
    HH0Class() = default;
    explicit HH0Class(Vec coords) : coords_(std::move(coords)) {}

    const Vec& coords() const { return coords_; }
    bool is_zero() const { return vec_is_zero(coords_); }

    HH0Class operator+(const HH0Class& o) const { return HH0Class(vec_add(coords_, o.coords_)); }
    HH0Class operator-(const HH0Class& o) const { return HH0Class(vec_sub(coords_, o.coords_)); }
    HH0Class scaled(const Scalar& c) const { return HH0Class(vec_scale(c, coords_)); }
    bool operator==(const HH0Class& o) const { return coords_ == o.coords_; }

private:
    Vec coords_;
};

/// HH_0 of a finite-dimensional algebra presented by a basis multiplication:
/// the commutator subspace in basis coordinates plus the complement used for
/// canonical representatives.
class HH0Space {
public:
    static HH0Space build(FieldTag f, int dim,
                          const std::function<Vec(int, int)>& basis_product);

    int ambient_dim() const { return ambient_; }
    int dim() const { return static_cast<int>(complement_.size()); }
    const Subspace& commutator() const { return commutator_; }

    HH0Class class_of(const Vec& coords) const;
    /// The canonical representative, supported on the complement coordinates.
    Vec representative(const HH0Class& c) const;
    HH0Class zero_class() const;

private:
    int ambient_ = 0;
    FieldTag field_ = FieldTag::rationals();
    Subspace commutator_;
    std::vector<std::size_t> complement_;
};

Subspace commutator_subspace(const BoundQuiverAlgebra& a);
Subspace commutator_subspace(const QuotientAlgebra& q);
HH0Space hh0(const BoundQuiverAlgebra& a);
HH0Space hh0(const QuotientAlgebra& q);
/// J is contained in the commutator subspace.
bool is_radical_trivial(const BoundQuiverAlgebra& a);
bool is_radical_trivial(const QuotientAlgebra& q);

/// An endomorphism of a projective sum, written as a lambda matrix with
/// source = target.
using ProjectiveEndo = LambdaMatrix;

/// Hattori-Stallings trace: the class of the sum of the diagonal entries.
HH0Class hs_trace(const BoundQuiverAlgebra& a, const HH0Space& space, const ProjectiveEndo& phi);

/// Shared data for e-trace computations over one pair (algebra, e): the
/// quotient algebra and the HH_0 spaces of both sides.
class ETrace {
public:
    ETrace(const BoundQuiverAlgebra& a, Idempotent e);

    const BoundQuiverAlgebra& algebra() const { return *algebra_; }
    const Idempotent& idempotent() const { return e_; }
    const QuotientAlgebra& quotient() const { return quotient_; }
    const HH0Space& parent_space() const { return parent_space_; }
    const HH0Space& quotient_space() const { return quotient_space_; }

    /// The map induced on HH_0 by the algebra projection.
    HH0Class he_map(const HH0Class& parent_class) const;
    /// e-trace of a projective endomorphism.
    HH0Class e_trace(const ProjectiveEndo& phi) const;
    /// Class of an algebra element in HH_0 of the quotient.
    HH0Class quotient_class(const AlgebraElement& x) const;

    /// e-trace along a given resolution: the alternating sum of the e-traces
    /// of the lifts up to the e-bounded horizon. Throws HorizonNotReached
    /// when the resolution has no e-bounded prefix.
    HH0Class e_trace_along(const Resolution& res, const ModuleHom& phi,
                           std::uint64_t perturb_seed = 0) const;

    /// e-trace of a module endomorphism via the minimal resolution.
    HH0Class e_trace_module(const FDModule& m, const ModuleHom& phi,
                            const ResolutionOptions& opts) const;

private:
    const BoundQuiverAlgebra* algebra_;
    Idempotent e_;
    QuotientAlgebra quotient_;
    HH0Space parent_space_;
    HH0Space quotient_space_;
};

/// Replay of the nilpotent filtration 0 = a^r L <= ... <= a L <= L: the
/// chain of e-traces of left multiplication by a on each a^i L collapses to
/// zero, and the class of a dies in HH_0 of the quotient.
struct FiltrationCertificate {
    int power = 0;                // least r with a^r = 0
    std::vector<HH0Class> traces; // tr_e(phi_i), i = 0..r
    bool chain_equal = false;     // consecutive traces agree
    bool trace_zero = false;      // the first trace vanishes
    bool commutator_member = false; // class of a dies in HH_0 of the quotient

    bool ok() const { return chain_equal && trace_zero && commutator_member; }
};

FiltrationCertificate filtration_certificate(const ETrace& ctx, const AlgebraElement& a,
                                             const ResolutionOptions& opts);

/// Left multiplication by x on the realized regular module, as a module
/// endomorphism.
ModuleHom left_multiplication_hom(const RealizedProjective& reg, const AlgebraElement& x);

/// Left multiplication by x as a projective endomorphism of the regular
/// module, entry (i, j) = e_i x e_j.
ProjectiveEndo left_multiplication_endo(const BoundQuiverAlgebra& a, const AlgebraElement& x);

} // namespace qalg
