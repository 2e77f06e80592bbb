#include "qalg/hochschild.hpp"

namespace qalg {

HH0Space HH0Space::build(FieldTag f, int dim,
                         const std::function<Vec(int, int)>& basis_product) {
    std::vector<Vec> gens;
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j) {
            Vec c = vec_sub(basis_product(i, j), basis_product(j, i));
            if (!vec_is_zero(c)) gens.push_back(std::move(c));
        }
    HH0Space s;
    s.ambient_ = dim;
    s.field_ = f;
    s.commutator_ = Subspace::span(f, static_cast<std::size_t>(dim), gens);
    s.complement_ = s.commutator_.non_pivots();
    return s;
}

HH0Class HH0Space::class_of(const Vec& coords) const {
    Vec reduced = commutator_.reduce(coords);
    Vec out = vec_zero(field_, complement_.size());
    for (std::size_t i = 0; i < complement_.size(); ++i) out[i] = reduced[complement_[i]];
    return HH0Class(std::move(out));
}

Vec HH0Space::representative(const HH0Class& c) const {
    Vec full = vec_zero(field_, static_cast<std::size_t>(ambient_));
    for (std::size_t i = 0; i < complement_.size(); ++i) full[complement_[i]] = c.coords()[i];
    return full;
}

HH0Class HH0Space::zero_class() const {
    return HH0Class(vec_zero(field_, complement_.size()));
}

Subspace commutator_subspace(const BoundQuiverAlgebra& a) {
    std::vector<Vec> gens;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = i + 1; j < a.dim(); ++j) {
            Vec c = vec_sub(a.basis_product(i, j).coords(), a.basis_product(j, i).coords());
            if (!vec_is_zero(c)) gens.push_back(std::move(c));
        }
    return Subspace::span(a.field(), static_cast<std::size_t>(a.dim()), gens);
}

Subspace commutator_subspace(const QuotientAlgebra& q) {
    std::vector<Vec> gens;
    for (int i = 0; i < q.dim(); ++i)
        for (int j = i + 1; j < q.dim(); ++j) {
            Vec c = vec_sub(q.product_on_basis(i, j), q.product_on_basis(j, i));
            if (!vec_is_zero(c)) gens.push_back(std::move(c));
        }
    return Subspace::span(q.field(), static_cast<std::size_t>(q.dim()), gens);
}

HH0Space hh0(const BoundQuiverAlgebra& a) {
    return HH0Space::build(a.field(), a.dim(), [&](int i, int j) {
        return a.basis_product(i, j).coords();
    });
}

HH0Space hh0(const QuotientAlgebra& q) {
    return HH0Space::build(q.field(), q.dim(),
                           [&](int i, int j) { return q.product_on_basis(i, j); });
}

bool is_radical_trivial(const BoundQuiverAlgebra& a) {
    Subspace comm = commutator_subspace(a);
    for (int i : a.radical_basis())
        if (!comm.contains(a.unit(i).coords())) return false;
    return true;
}

bool is_radical_trivial(const QuotientAlgebra& q) {
    Subspace comm = commutator_subspace(q);
    FieldTag f = q.field();
    for (int i : q.radical_cosets()) {
        Vec unit = vec_zero(f, static_cast<std::size_t>(q.dim()));
        unit[static_cast<std::size_t>(i)] = Scalar::one(f);
        if (!comm.contains(unit)) return false;
    }
    return true;
}

HH0Class hs_trace(const BoundQuiverAlgebra& a, const HH0Space& space, const ProjectiveEndo& phi) {
    if (phi.source.vertices != phi.target.vertices)
        throw Error("trace requires an endomorphism");
    lm_validate(a, phi);
    AlgebraElement diag = a.zero();
    for (int i = 0; i < phi.source.count(); ++i) diag = diag + phi.at(i, i);
    return space.class_of(diag.coords());
}

ETrace::ETrace(const BoundQuiverAlgebra& a, Idempotent e)
    : algebra_(&a),
      e_(std::move(e)),
      quotient_(lambda_e(a, e_)),
      parent_space_(hh0(a)),
      quotient_space_(hh0(quotient_)) {}

HH0Class ETrace::he_map(const HH0Class& parent_class) const {
    Vec rep = parent_space_.representative(parent_class);
    Vec projected = quotient_.project(AlgebraElement(*algebra_, std::move(rep)));
    return quotient_space_.class_of(projected);
}

HH0Class ETrace::e_trace(const ProjectiveEndo& phi) const {
    return he_map(hs_trace(*algebra_, parent_space_, phi));
}

HH0Class ETrace::quotient_class(const AlgebraElement& x) const {
    return quotient_space_.class_of(quotient_.project(x));
}

HH0Class ETrace::e_trace_along(const Resolution& res, const ModuleHom& phi,
                               std::uint64_t perturb_seed) const {
    std::optional<int> horizon = e_bounded_horizon(res, e_);
    if (!horizon) throw HorizonNotReachedError(res.length());
    std::vector<LambdaMatrix> lifts = lift_endomorphism(res, phi, perturb_seed);
    HH0Class acc = quotient_space_.zero_class();
    Scalar sign = Scalar::one(algebra_->field());
    for (int i = 0; i <= *horizon && i < static_cast<int>(lifts.size()); ++i) {
        acc = acc + e_trace(lifts[static_cast<std::size_t>(i)]).scaled(sign);
        sign = -sign;
    }
    return acc;
}

HH0Class ETrace::e_trace_module(const FDModule& m, const ModuleHom& phi,
                                const ResolutionOptions& opts) const {
    if (m.is_zero()) return quotient_space_.zero_class();
    Resolution res = minimal_resolution(m, opts);
    if (!e_bounded_horizon(res, e_)) throw HorizonNotReachedError(opts.depth);
    return e_trace_along(res, phi);
}

ModuleHom left_multiplication_hom(const RealizedProjective& reg, const AlgebraElement& x) {
    const BoundQuiverAlgebra& a = *reg.module.algebra;
    ModuleHom h = hom_zero(reg.module, reg.module);
    for (int b = 0; b < a.dim(); ++b) {
        const Path& p = a.basis_path(b);
        MVec img = element_to_mvec(reg, a.multiply(x, a.unit(b)));
        // column of the basis vector b sits in component target(p)
        std::size_t k = static_cast<std::size_t>(p.source());
        const auto& list = reg.paths[k][static_cast<std::size_t>(p.target())];
        auto it = std::find(list.begin(), list.end(), b);
        int col = reg.offset[k][static_cast<std::size_t>(p.target())] +
                  static_cast<int>(it - list.begin());
        const Vec& comp = img[static_cast<std::size_t>(p.target())];
        for (std::size_t r = 0; r < comp.size(); ++r)
            if (!comp[r].is_zero())
                h.maps[static_cast<std::size_t>(p.target())].set(
                    r, static_cast<std::size_t>(col), comp[r]);
    }
    return h;
}

ProjectiveEndo left_multiplication_endo(const BoundQuiverAlgebra& a, const AlgebraElement& x) {
    ProjectiveSum reg;
    for (int v = 0; v < a.quiver().vertex_count(); ++v) reg.vertices.push_back(v);
    ProjectiveEndo endo = lm_zero(a, reg, reg);
    for (int i = 0; i < a.quiver().vertex_count(); ++i)
        for (int j = 0; j < a.quiver().vertex_count(); ++j) {
            AlgebraElement piece =
                a.multiply(a.vertex_idempotent(i), a.multiply(x, a.vertex_idempotent(j)));
            endo.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = piece;
        }
    return endo;
}

FiltrationCertificate filtration_certificate(const ETrace& ctx, const AlgebraElement& a,
                                             const ResolutionOptions& opts) {
    const BoundQuiverAlgebra& alg = ctx.algebra();
    // the element must lie in the radical
    for (int b = 0; b < alg.dim(); ++b)
        if (!a.coords()[static_cast<std::size_t>(b)].is_zero() &&
            alg.basis_path(b).is_trivial())
            throw Error("filtration certificate requires an element of the radical");

    FiltrationCertificate cert;
    // least r with a^r = 0; the radical is nilpotent so r <= n
    std::vector<AlgebraElement> powers{alg.one()};
    while (!powers.back().is_zero()) {
        powers.push_back(alg.multiply(powers.back(), a));
        if (static_cast<int>(powers.size()) > alg.nilpotency_degree() + 1)
            throw Error("internal: radical element fails to be nilpotent");
    }
    cert.power = static_cast<int>(powers.size()) - 1; // a^power = 0

    RealizedProjective reg = realize_regular(alg);
    ModuleHom lmul = left_multiplication_hom(reg, a);

    for (int i = 0; i < cert.power; ++i) {
        SubmoduleResult mi = right_ideal(reg, {powers[static_cast<std::size_t>(i)]});
        // restrict left multiplication by a to the ideal
        ModuleHom phi;
        for (std::size_t v = 0; v < mi.module.dims.size(); ++v) {
            const Matrix& inc = mi.inclusion.maps[v];
            Matrix big = lmul.maps[v] * inc;
            Matrix cm(alg.field(), inc.cols(), inc.cols());
            for (std::size_t c = 0; c < big.cols(); ++c) {
                auto sol = solve(inc, big.col(c));
                if (!sol)
                    throw Error("internal: left multiplication leaves the filtration ideal");
                for (std::size_t r = 0; r < sol->size(); ++r) cm.set(r, c, (*sol)[r]);
            }
            phi.maps.push_back(std::move(cm));
        }
        cert.traces.push_back(ctx.e_trace_module(mi.module, phi, opts));
    }
    cert.traces.push_back(ctx.quotient_space().zero_class()); // the zero module

    cert.chain_equal = true;
    for (std::size_t i = 0; i + 1 < cert.traces.size(); ++i)
        if (!(cert.traces[i] == cert.traces[i + 1])) cert.chain_equal = false;
    cert.trace_zero = cert.traces.front().is_zero();
    cert.commutator_member = ctx.quotient_class(a).is_zero();
    return cert;
}

} // namespace qalg
