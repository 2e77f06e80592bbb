#pragma once

#include <optional>
#include <vector>

#include "qalg/algebra.hpp"

namespace qalg {

/// A finite-dimensional right module: one vector space per vertex, one
/// matrix per arrow a: v -> w mapping the v-component into the w-component
/// (column-vector convention).
struct FDModule {
    const BoundQuiverAlgebra* algebra = nullptr;
    std::vector<int> dims;             // per vertex
    std::vector<Matrix> arrow_action;  // per arrow

    static FDModule zero(const BoundQuiverAlgebra& a);

    int total_dim() const;
    bool is_zero() const { return total_dim() == 0; }
    int dim_at(int v) const { return dims[static_cast<std::size_t>(v)]; }
    const Matrix& action(int arrow) const { return arrow_action[static_cast<std::size_t>(arrow)]; }

    /// Composite action of a path, a dims[target] x dims[source] matrix.
    Matrix path_action(const Path& p) const;
};

/// Checks shapes and that every relation of the algebra acts as zero.
void validate_module(const FDModule& m);

/// One-dimensional simple at a vertex.
FDModule simple_module(const BoundQuiverAlgebra& a, int v);
/// Direct sum of the simples over the idempotent's vertices: e Lambda / e J.
FDModule semisimple_module(const BoundQuiverAlgebra& a, const Idempotent& e);
FDModule direct_sum(const FDModule& m, const FDModule& n);

/// A module element, one column vector per vertex.
using MVec = std::vector<Vec>;

MVec mvec_zero(const FDModule& m);
bool mvec_is_zero(const MVec& x);
/// Right action x * p of a path.
MVec act_path(const FDModule& m, const MVec& x, const Path& p);

/// A homomorphism of modules: one matrix per vertex, commuting with the
/// arrow actions. The struct carries only the matrices; source and target
/// are supplied from context.
struct ModuleHom {
    std::vector<Matrix> maps;

    const Matrix& at(int v) const { return maps[static_cast<std::size_t>(v)]; }
    MVec apply(const MVec& x) const;
};

ModuleHom hom_zero(const FDModule& source, const FDModule& target);
ModuleHom hom_identity(const FDModule& m);
ModuleHom hom_compose(const ModuleHom& second, const ModuleHom& first); // second . first
ModuleHom hom_add(const ModuleHom& a, const ModuleHom& b);
ModuleHom hom_sub(const ModuleHom& a, const ModuleHom& b);
bool hom_equal(const ModuleHom& a, const ModuleHom& b);
bool is_module_hom(const FDModule& source, const FDModule& target, const ModuleHom& h);
std::size_t hom_rank(const ModuleHom& h);
/// The scalar multiple of the identity endomorphism.
ModuleHom hom_scale(const FDModule& m, const Scalar& c);
bool hom_invertible(const FDModule& source, const FDModule& target, const ModuleHom& h);
std::optional<ModuleHom> hom_inverse(const FDModule& source, const FDModule& target,
                                     const ModuleHom& h);

/// A finite direct sum of the indecomposable projectives e_v Lambda,
/// recorded by its vertex multiset.
struct ProjectiveSum {
    std::vector<int> vertices;

    int count() const { return static_cast<int>(vertices.size()); }
    bool empty() const { return vertices.empty(); }
    bool top_killed_by(const Idempotent& e) const;
};

/// A projective sum realized as a concrete module with its path basis: the
/// w-component is the concatenation, summand by summand, of the normal paths
/// v_k -> w.
struct RealizedProjective {
    ProjectiveSum sum;
    FDModule module;
    // paths[k][w] = algebra basis indices of the paths v_k -> w
    std::vector<std::vector<std::vector<int>>> paths;
    // offset[k][w] = offset of summand k inside the w-component
    std::vector<std::vector<int>> offset;

    /// Position of the generator (trivial path) of summand k.
    std::pair<int, int> generator_position(int k) const; // (vertex, index)
    MVec generator(int k) const;
};

RealizedProjective realize(const BoundQuiverAlgebra& a, const ProjectiveSum& s);
/// The regular module as the sum of all e_v Lambda in vertex order.
RealizedProjective realize_regular(const BoundQuiverAlgebra& a);
/// Coordinates of an algebra element inside the realized regular module.
MVec element_to_mvec(const RealizedProjective& reg, const AlgebraElement& x);

/// A map between projective sums as a grid of algebra entries, entry (i, j)
/// in e_{target_i} Lambda e_{source_j}, acting by left multiplication. The
/// same shape serves as differential and as endomorphism.
struct LambdaMatrix {
    ProjectiveSum source, target;
    std::vector<std::vector<AlgebraElement>> entries; // [target index][source index]

    const AlgebraElement& at(int i, int j) const {
        return entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    std::string str() const;
};

LambdaMatrix lm_zero(const BoundQuiverAlgebra& a, const ProjectiveSum& source,
                     const ProjectiveSum& target);
LambdaMatrix lm_identity(const BoundQuiverAlgebra& a, const ProjectiveSum& s);
/// Validates every entry against its Peirce component.
void lm_validate(const BoundQuiverAlgebra& a, const LambdaMatrix& m);
LambdaMatrix lm_mul(const BoundQuiverAlgebra& a, const LambdaMatrix& f, const LambdaMatrix& g);
LambdaMatrix lm_add(const LambdaMatrix& f, const LambdaMatrix& g);
LambdaMatrix lm_sub(const LambdaMatrix& f, const LambdaMatrix& g);
bool lm_equal(const LambdaMatrix& f, const LambdaMatrix& g);
bool lm_is_zero(const LambdaMatrix& f);
/// True when every entry lies in the radical (no trivial-path coordinate).
bool lm_radical_valued(const BoundQuiverAlgebra& a, const LambdaMatrix& m);

/// The concrete module map of a lambda matrix.
ModuleHom realize_hom(const RealizedProjective& source, const RealizedProjective& target,
                      const LambdaMatrix& m);
/// Extracts the lambda matrix of a module hom between realized projectives.
LambdaMatrix hom_to_lambda(const RealizedProjective& source, const RealizedProjective& target,
                           const ModuleHom& h);

/// Kernel of a hom as a module with its inclusion.
struct SubmoduleResult {
    FDModule module;
    ModuleHom inclusion;
};
SubmoduleResult kernel_of_hom(const FDModule& source, const FDModule& target,
                              const ModuleHom& h);
/// Smallest submodule containing the given elements.
SubmoduleResult submodule_generated(const FDModule& m, const std::vector<MVec>& generators);
/// Right ideal of the regular module generated by algebra elements.
SubmoduleResult right_ideal(const RealizedProjective& reg,
                            const std::vector<AlgebraElement>& generators);

struct QuotientModuleResult {
    FDModule module;
    ModuleHom projection;
};
/// Quotient of m by the image of the (injective) inclusion.
QuotientModuleResult quotient_module(const FDModule& m, const FDModule& sub,
                                     const ModuleHom& inclusion);

/// Per-vertex dimensions of M / MJ.
std::vector<int> top(const FDModule& m);

struct CoverResult {
    ProjectiveSum cover;
    RealizedProjective realized;
    ModuleHom surjection; // realized.module -> m
};
/// Projective cover: one summand per top basis vector, with a deterministic
/// choice of lifts. Throws on the zero module.
CoverResult projective_cover(const FDModule& m);

/// Kernel of the projective cover, with its inclusion into the cover.
SubmoduleResult syzygy(const FDModule& m);

/// A chain of projectives resolving a module. Stage k holds the syzygy
/// Omega^{k+1} inside term k together with the corestricted cover map of
/// term k onto Omega^k.
struct ResolutionStage {
    FDModule omega;      // Omega^{k+1}
    ModuleHom inclusion; // omega -> term k
    ModuleHom cover;     // term k ->> Omega^k (Omega^0 = the module)
};

struct Resolution {
    const BoundQuiverAlgebra* algebra = nullptr;
    FDModule module;
    std::vector<ProjectiveSum> terms;
    std::vector<RealizedProjective> realized;
    std::vector<LambdaMatrix> diffs; // diffs[k]: term k+1 -> term k
    ModuleHom augmentation;          // term 0 -> module
    std::vector<ResolutionStage> stages;
    bool terminated = false;
    bool dim_guard_hit = false;
    bool minimal = false;

    /// Index of the last computed term; -1 for the zero module.
    int length() const { return static_cast<int>(terms.size()) - 1; }
    /// Projective dimension when terminated.
    int pd() const;
    const FDModule& syzygy_module(int k) const; // Omega^k, k >= 1
    const FDModule& final_syzygy() const { return stages.back().omega; }
};

struct ResolutionOptions {
    int depth = 10;
    int max_term_dim = 4000; // abandon (dim_guard_hit) beyond this total size
};

/// Minimal projective resolution by iterated covers and syzygies.
Resolution minimal_resolution(const FDModule& m, const ResolutionOptions& opts);

/// Builds a Resolution out of explicit terms and differentials, verifying
/// exactness at every computed stage by exact rank computation. Throws on
/// non-exact input.
Resolution assemble_resolution(const BoundQuiverAlgebra& a, FDModule m,
                               std::vector<ProjectiveSum> terms, std::vector<LambdaMatrix> diffs,
                               ModuleHom augmentation, bool final_kernel_is_zero);

/// Inserts a trivial acyclic summand P -> P at the given stage; the result
/// resolves the same module.
Resolution pad_resolution(const Resolution& res, int stage, const ProjectiveSum& pad);

/// Least m such that every computed term past m has its top killed by e and
/// the window is stable (terminated, or the final syzygy's top avoids e).
/// nullopt when no such prefix exists within the computed window.
std::optional<int> e_bounded_horizon(const Resolution& res, const Idempotent& e);

/// A lifting of a module endomorphism along a resolution: maps phi_k with
/// d_k phi_k = phi_{k-1} d_k and aug phi_0 = phi aug, found by deterministic
/// linear solves. A nonzero perturbation seed adds an element of the
/// homotopy freedom, giving an independent second lift.
std::vector<LambdaMatrix> lift_endomorphism(const Resolution& res, const ModuleHom& phi,
                                            std::uint64_t perturb_seed = 0);

/// Short exact sequence data for the horseshoe construction.
struct ShortExactSequence {
    FDModule sub, middle, quotient;
    ModuleHom inject;  // sub -> middle
    ModuleHom project; // middle -> quotient
};

struct HorseshoeResult {
    Resolution resolution;                // of the middle module
    std::vector<LambdaMatrix> inject;     // q_k = (1, 0)^t
    std::vector<LambdaMatrix> project;    // p_k = (0, 1)
};

/// Horseshoe construction: resolves the middle term of a short exact
/// sequence by the termwise sums of the outer resolutions. Throws on
/// non-exact input.
HorseshoeResult horseshoe(const ShortExactSequence& ses, const Resolution& res_sub,
                          const Resolution& res_quot);

/// Basis of the space of module homs, by solving the commuting equations.
std::vector<ModuleHom> hom_space(const FDModule& m, const FDModule& n);

struct IsoTestResult {
    std::optional<ModuleHom> iso; // verified invertible when present
    bool dims_match = false;      // "none" is conclusive only when false
};

/// Searches the hom space for an invertible element: a deterministic sweep
/// over basis elements and small integer combinations, then seeded random
/// combinations. A returned map is always verified invertible.
IsoTestResult iso_test(const FDModule& m, const FDModule& n);

/// dim Ext^i(S_v, S_v) for i = 1..depth, reading multiplicities off the
/// tops of the minimal resolution.
std::vector<int> ext_self_dims(const BoundQuiverAlgebra& a, int v, int depth);

/// dim Ext^1(S_v, S_w) = multiplicity of w in the top of the first syzygy.
int ext1_dim(const BoundQuiverAlgebra& a, int v, int w);

struct PeriodicityCertificate {
    int i = 0, j = 0;  // Omega^i = Omega^j, both nonzero, i < j
    ModuleHom iso;     // verified isomorphism
};

/// Searches for repeating syzygies of S_v within the depth; a certificate
/// proves infinite projective dimension.
std::optional<PeriodicityCertificate> periodicity_certificate(const BoundQuiverAlgebra& a, int v,
                                                              const ResolutionOptions& opts);
/// Same search over the syzygies of an arbitrary module.
std::optional<PeriodicityCertificate> periodicity_certificate(const FDModule& m,
                                                              const ResolutionOptions& opts);

} // namespace qalg
