#include "qalg/modules.hpp"

#include <algorithm>
#include <sstream>

namespace qalg {

namespace {

FieldTag field_of(const FDModule& m) { return m.algebra->field(); }

std::uint64_t splitmix(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace

FDModule FDModule::zero(const BoundQuiverAlgebra& a) {
    FDModule m;
    m.algebra = &a;
    m.dims.assign(static_cast<std::size_t>(a.quiver().vertex_count()), 0);
    for (int i = 0; i < a.quiver().arrow_count(); ++i)
        m.arrow_action.emplace_back(a.field(), 0, 0);
    return m;
}

int FDModule::total_dim() const {
    int t = 0;
    for (int d : dims) t += d;
    return t;
}

Matrix FDModule::path_action(const Path& p) const {
    FieldTag f = field_of(*this);
    Matrix acc = Matrix::identity(f, static_cast<std::size_t>(dim_at(p.source())));
    for (int a : p.arrows()) acc = action(a) * acc;
    return acc;
}

void validate_module(const FDModule& m) {
    const BoundQuiverAlgebra& a = *m.algebra;
    const Quiver& q = a.quiver();
    if (static_cast<int>(m.dims.size()) != q.vertex_count())
        throw Error("module has wrong number of components");
    for (int ai = 0; ai < q.arrow_count(); ++ai) {
        const Arrow& ar = q.arrow(ai);
        if (m.action(ai).rows() != static_cast<std::size_t>(m.dim_at(ar.target)) ||
            m.action(ai).cols() != static_cast<std::size_t>(m.dim_at(ar.source)))
            throw Error("arrow action has wrong shape at " + ar.label);
    }
    for (const PathVector& rel : a.relations()) {
        int src = rel.terms().begin()->first.source();
        int tgt = rel.terms().begin()->first.target();
        Matrix acc(a.field(), static_cast<std::size_t>(m.dim_at(tgt)),
                   static_cast<std::size_t>(m.dim_at(src)));
        for (const auto& [p, c] : rel.terms()) {
            Matrix pa = m.path_action(p);
            for (std::size_t i = 0; i < acc.rows(); ++i)
                for (std::size_t j = 0; j < acc.cols(); ++j)
                    acc.set(i, j, acc.at(i, j) + c * pa.at(i, j));
        }
        if (!acc.is_zero()) throw Error("a relation acts non-trivially on the module");
    }
}

namespace {

void zero_actions(FDModule& m) {
    const BoundQuiverAlgebra& a = *m.algebra;
    const Quiver& q = a.quiver();
    for (int ai = 0; ai < q.arrow_count(); ++ai) {
        const Arrow& ar = q.arrow(ai);
        m.arrow_action[static_cast<std::size_t>(ai)] =
            Matrix(a.field(), static_cast<std::size_t>(m.dim_at(ar.target)),
                   static_cast<std::size_t>(m.dim_at(ar.source)));
    }
}

} // namespace

FDModule simple_module(const BoundQuiverAlgebra& a, int v) {
    FDModule m = FDModule::zero(a);
    m.dims[static_cast<std::size_t>(v)] = 1;
    zero_actions(m);
    return m;
}

FDModule semisimple_module(const BoundQuiverAlgebra& a, const Idempotent& e) {
    FDModule m = FDModule::zero(a);
    for (int v : e.vertices) m.dims[static_cast<std::size_t>(v)] = 1;
    zero_actions(m);
    return m;
}

FDModule direct_sum(const FDModule& m, const FDModule& n) {
    const BoundQuiverAlgebra& a = *m.algebra;
    FDModule s = FDModule::zero(a);
    for (std::size_t v = 0; v < s.dims.size(); ++v) s.dims[v] = m.dims[v] + n.dims[v];
    const Quiver& q = a.quiver();
    for (int ai = 0; ai < q.arrow_count(); ++ai) {
        const Arrow& ar = q.arrow(ai);
        Matrix blk(a.field(), static_cast<std::size_t>(s.dim_at(ar.target)),
                   static_cast<std::size_t>(s.dim_at(ar.source)));
        const Matrix& am = m.action(ai);
        const Matrix& an = n.action(ai);
        for (std::size_t i = 0; i < am.rows(); ++i)
            for (std::size_t j = 0; j < am.cols(); ++j) blk.set(i, j, am.at(i, j));
        for (std::size_t i = 0; i < an.rows(); ++i)
            for (std::size_t j = 0; j < an.cols(); ++j)
                blk.set(am.rows() + i, am.cols() + j, an.at(i, j));
        s.arrow_action[static_cast<std::size_t>(ai)] = std::move(blk);
    }
    return s;
}

MVec mvec_zero(const FDModule& m) {
    MVec x;
    for (std::size_t v = 0; v < m.dims.size(); ++v)
        x.push_back(vec_zero(field_of(m), static_cast<std::size_t>(m.dims[v])));
    return x;
}

bool mvec_is_zero(const MVec& x) {
    return std::all_of(x.begin(), x.end(), [](const Vec& v) { return vec_is_zero(v); });
}

MVec act_path(const FDModule& m, const MVec& x, const Path& p) {
    Vec cur = x[static_cast<std::size_t>(p.source())];
    for (int a : p.arrows()) cur = m.action(a).apply(cur);
    MVec out = mvec_zero(m);
    out[static_cast<std::size_t>(p.target())] = std::move(cur);
    return out;
}

MVec ModuleHom::apply(const MVec& x) const {
    MVec out;
    out.reserve(x.size());
    for (std::size_t v = 0; v < x.size(); ++v) out.push_back(maps[v].apply(x[v]));
    return out;
}

ModuleHom hom_zero(const FDModule& source, const FDModule& target) {
    ModuleHom h;
    for (std::size_t v = 0; v < source.dims.size(); ++v)
        h.maps.emplace_back(field_of(source), static_cast<std::size_t>(target.dims[v]),
                            static_cast<std::size_t>(source.dims[v]));
    return h;
}

ModuleHom hom_identity(const FDModule& m) {
    ModuleHom h;
    for (int d : m.dims)
        h.maps.push_back(Matrix::identity(field_of(m), static_cast<std::size_t>(d)));
    return h;
}

ModuleHom hom_compose(const ModuleHom& second, const ModuleHom& first) {
    ModuleHom h;
    for (std::size_t v = 0; v < first.maps.size(); ++v)
        h.maps.push_back(second.maps[v] * first.maps[v]);
    return h;
}

ModuleHom hom_add(const ModuleHom& a, const ModuleHom& b) {
    ModuleHom h;
    for (std::size_t v = 0; v < a.maps.size(); ++v) h.maps.push_back(a.maps[v] + b.maps[v]);
    return h;
}

ModuleHom hom_sub(const ModuleHom& a, const ModuleHom& b) {
    ModuleHom h;
    for (std::size_t v = 0; v < a.maps.size(); ++v) h.maps.push_back(a.maps[v] - b.maps[v]);
    return h;
}

bool hom_equal(const ModuleHom& a, const ModuleHom& b) {
    if (a.maps.size() != b.maps.size()) return false;
    for (std::size_t v = 0; v < a.maps.size(); ++v)
        if (!(a.maps[v] == b.maps[v])) return false;
    return true;
}

bool is_module_hom(const FDModule& source, const FDModule& target, const ModuleHom& h) {
    const Quiver& q = source.algebra->quiver();
    if (h.maps.size() != source.dims.size()) return false;
    for (std::size_t v = 0; v < source.dims.size(); ++v)
        if (h.maps[v].rows() != static_cast<std::size_t>(target.dims[v]) ||
            h.maps[v].cols() != static_cast<std::size_t>(source.dims[v]))
            return false;
    for (int ai = 0; ai < q.arrow_count(); ++ai) {
        const Arrow& ar = q.arrow(ai);
        Matrix lhs = h.maps[static_cast<std::size_t>(ar.target)] * source.action(ai);
        Matrix rhs = target.action(ai) * h.maps[static_cast<std::size_t>(ar.source)];
        if (!(lhs == rhs)) return false;
    }
    return true;
}

std::size_t hom_rank(const ModuleHom& h) {
    std::size_t r = 0;
    for (const Matrix& m : h.maps) r += rank(m);
    return r;
}

ModuleHom hom_scale(const FDModule& m, const Scalar& c) {
    ModuleHom h = hom_identity(m);
    for (Matrix& mat : h.maps)
        for (std::size_t i = 0; i < mat.rows(); ++i) mat.set(i, i, c);
    return h;
}

bool hom_invertible(const FDModule& source, const FDModule& target, const ModuleHom& h) {
    for (std::size_t v = 0; v < source.dims.size(); ++v) {
        if (source.dims[v] != target.dims[v]) return false;
        if (rank(h.maps[v]) != static_cast<std::size_t>(source.dims[v])) return false;
    }
    return true;
}

std::optional<ModuleHom> hom_inverse(const FDModule& source, const FDModule& target,
                                     const ModuleHom& h) {
    if (!hom_invertible(source, target, h)) return std::nullopt;
    ModuleHom inv;
    for (std::size_t v = 0; v < source.dims.size(); ++v) {
        auto m = inverse(h.maps[v]);
        if (!m) return std::nullopt;
        inv.maps.push_back(std::move(*m));
    }
    return inv;
}

bool ProjectiveSum::top_killed_by(const Idempotent& e) const {
    return std::none_of(vertices.begin(), vertices.end(), [&](int v) { return e.contains(v); });
}

std::pair<int, int> RealizedProjective::generator_position(int k) const {
    int v = sum.vertices[static_cast<std::size_t>(k)];
    const BoundQuiverAlgebra& a = *module.algebra;
    int triv = a.basis_index(Path::trivial(v));
    const auto& list = paths[static_cast<std::size_t>(k)][static_cast<std::size_t>(v)];
    for (std::size_t i = 0; i < list.size(); ++i)
        if (list[i] == triv)
            return {v, offset[static_cast<std::size_t>(k)][static_cast<std::size_t>(v)] +
                           static_cast<int>(i)};
    throw Error("internal: generator not found in realized projective");
}

MVec RealizedProjective::generator(int k) const {
    MVec g = mvec_zero(module);
    auto [v, idx] = generator_position(k);
    g[static_cast<std::size_t>(v)][static_cast<std::size_t>(idx)] =
        Scalar::one(module.algebra->field());
    return g;
}

RealizedProjective realize(const BoundQuiverAlgebra& a, const ProjectiveSum& s) {
    RealizedProjective r;
    r.sum = s;
    r.module = FDModule::zero(a);
    int nv = a.quiver().vertex_count();
    r.paths.resize(s.vertices.size());
    r.offset.assign(s.vertices.size(), std::vector<int>(static_cast<std::size_t>(nv), 0));

    for (std::size_t k = 0; k < s.vertices.size(); ++k) {
        r.paths[k].resize(static_cast<std::size_t>(nv));
        for (int w = 0; w < nv; ++w) {
            r.offset[k][static_cast<std::size_t>(w)] = r.module.dims[static_cast<std::size_t>(w)];
            std::vector<int> pe = a.peirce(s.vertices[k], w);
            r.module.dims[static_cast<std::size_t>(w)] += static_cast<int>(pe.size());
            r.paths[k][static_cast<std::size_t>(w)] = std::move(pe);
        }
    }

    // arrow action: basis path p (v_k -> w) times arrow b: w -> w' expands
    // over the normal form of p*b within the same summand
    const Quiver& q = a.quiver();
    for (int ai = 0; ai < q.arrow_count(); ++ai) {
        const Arrow& ar = q.arrow(ai);
        Matrix act(a.field(), static_cast<std::size_t>(r.module.dim_at(ar.target)),
                   static_cast<std::size_t>(r.module.dim_at(ar.source)));
        for (std::size_t k = 0; k < s.vertices.size(); ++k) {
            const auto& src_paths = r.paths[k][static_cast<std::size_t>(ar.source)];
            const auto& dst_paths = r.paths[k][static_cast<std::size_t>(ar.target)];
            for (std::size_t j = 0; j < src_paths.size(); ++j) {
                auto prod = compose(a.basis_path(src_paths[j]), Path::of_arrow(q, ai));
                if (!prod) continue;
                AlgebraElement nf = a.reduce_path(*prod);
                for (std::size_t i = 0; i < dst_paths.size(); ++i) {
                    const Scalar& c = nf.coords()[static_cast<std::size_t>(dst_paths[i])];
                    if (!c.is_zero())
                        act.set(static_cast<std::size_t>(
                                    r.offset[k][static_cast<std::size_t>(ar.target)] +
                                    static_cast<int>(i)),
                                static_cast<std::size_t>(
                                    r.offset[k][static_cast<std::size_t>(ar.source)] +
                                    static_cast<int>(j)),
                                c);
                }
            }
        }
        r.module.arrow_action[static_cast<std::size_t>(ai)] = std::move(act);
    }
    return r;
}

RealizedProjective realize_regular(const BoundQuiverAlgebra& a) {
    ProjectiveSum s;
    for (int v = 0; v < a.quiver().vertex_count(); ++v) s.vertices.push_back(v);
    return realize(a, s);
}

MVec element_to_mvec(const RealizedProjective& reg, const AlgebraElement& x) {
    const BoundQuiverAlgebra& a = *reg.module.algebra;
    MVec out = mvec_zero(reg.module);
    for (int b = 0; b < a.dim(); ++b) {
        const Scalar& c = x.coords()[static_cast<std::size_t>(b)];
        if (c.is_zero()) continue;
        const Path& p = a.basis_path(b);
        std::size_t k = static_cast<std::size_t>(p.source()); // summand = source vertex
        const auto& list = reg.paths[k][static_cast<std::size_t>(p.target())];
        auto it = std::find(list.begin(), list.end(), b);
        if (it == list.end()) throw Error("internal: basis path missing from regular module");
        int pos = reg.offset[k][static_cast<std::size_t>(p.target())] +
                  static_cast<int>(it - list.begin());
        out[static_cast<std::size_t>(p.target())][static_cast<std::size_t>(pos)] = c;
    }
    return out;
}

std::string LambdaMatrix::str() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        out << "[";
        for (std::size_t j = 0; j < entries[i].size(); ++j)
            out << (j ? " | " : "") << entries[i][j].str();
        out << "]";
        if (i + 1 < entries.size()) out << "\n";
    }
    return out.str();
}

LambdaMatrix lm_zero(const BoundQuiverAlgebra& a, const ProjectiveSum& source,
                     const ProjectiveSum& target) {
    LambdaMatrix m;
    m.source = source;
    m.target = target;
    m.entries.assign(
        static_cast<std::size_t>(target.count()),
        std::vector<AlgebraElement>(static_cast<std::size_t>(source.count()), a.zero()));
    return m;
}

LambdaMatrix lm_identity(const BoundQuiverAlgebra& a, const ProjectiveSum& s) {
    LambdaMatrix m = lm_zero(a, s, s);
    for (int i = 0; i < s.count(); ++i)
        m.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] =
            a.vertex_idempotent(s.vertices[static_cast<std::size_t>(i)]);
    return m;
}

void lm_validate(const BoundQuiverAlgebra& a, const LambdaMatrix& m) {
    for (int i = 0; i < m.target.count(); ++i)
        for (int j = 0; j < m.source.count(); ++j) {
            const AlgebraElement& x = m.at(i, j);
            for (int b = 0; b < a.dim(); ++b) {
                if (x.coords()[static_cast<std::size_t>(b)].is_zero()) continue;
                const Path& p = a.basis_path(b);
                if (p.source() != m.target.vertices[static_cast<std::size_t>(i)] ||
                    p.target() != m.source.vertices[static_cast<std::size_t>(j)])
                    throw Error("lambda matrix entry outside its Peirce component");
            }
        }
}

LambdaMatrix lm_mul(const BoundQuiverAlgebra& a, const LambdaMatrix& f, const LambdaMatrix& g) {
    LambdaMatrix m = lm_zero(a, g.source, f.target);
    for (int i = 0; i < f.target.count(); ++i)
        for (int k = 0; k < g.source.count(); ++k) {
            AlgebraElement acc = a.zero();
            for (int j = 0; j < f.source.count(); ++j)
                acc = acc + a.multiply(f.at(i, j), g.at(j, k));
            m.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = acc;
        }
    return m;
}

LambdaMatrix lm_add(const LambdaMatrix& f, const LambdaMatrix& g) {
    LambdaMatrix m = f;
    for (std::size_t i = 0; i < m.entries.size(); ++i)
        for (std::size_t j = 0; j < m.entries[i].size(); ++j)
            m.entries[i][j] = m.entries[i][j] + g.entries[i][j];
    return m;
}

LambdaMatrix lm_sub(const LambdaMatrix& f, const LambdaMatrix& g) {
    LambdaMatrix m = f;
    for (std::size_t i = 0; i < m.entries.size(); ++i)
        for (std::size_t j = 0; j < m.entries[i].size(); ++j)
            m.entries[i][j] = m.entries[i][j] - g.entries[i][j];
    return m;
}

bool lm_equal(const LambdaMatrix& f, const LambdaMatrix& g) {
    if (f.entries.size() != g.entries.size()) return false;
    for (std::size_t i = 0; i < f.entries.size(); ++i) {
        if (f.entries[i].size() != g.entries[i].size()) return false;
        for (std::size_t j = 0; j < f.entries[i].size(); ++j)
            if (!(f.entries[i][j] == g.entries[i][j])) return false;
    }
    return true;
}

bool lm_is_zero(const LambdaMatrix& f) {
    for (const auto& row : f.entries)
        for (const auto& x : row)
            if (!x.is_zero()) return false;
    return true;
}

bool lm_radical_valued(const BoundQuiverAlgebra& a, const LambdaMatrix& m) {
    for (const auto& row : m.entries)
        for (const AlgebraElement& x : row)
            for (int b = 0; b < a.dim(); ++b)
                if (!x.coords()[static_cast<std::size_t>(b)].is_zero() &&
                    a.basis_path(b).is_trivial())
                    return false;
    return true;
}

ModuleHom realize_hom(const RealizedProjective& source, const RealizedProjective& target,
                      const LambdaMatrix& m) {
    const BoundQuiverAlgebra& a = *source.module.algebra;
    ModuleHom h = hom_zero(source.module, target.module);
    // basis vector (summand j, path p) maps to sum_i entry(i, j) * p placed
    // in summand i of the target
    for (int j = 0; j < m.source.count(); ++j) {
        for (int w = 0; w < a.quiver().vertex_count(); ++w) {
            const auto& plist =
                source.paths[static_cast<std::size_t>(j)][static_cast<std::size_t>(w)];
            for (std::size_t pj = 0; pj < plist.size(); ++pj) {
                int col = source.offset[static_cast<std::size_t>(j)][static_cast<std::size_t>(w)] +
                          static_cast<int>(pj);
                for (int i = 0; i < m.target.count(); ++i) {
                    AlgebraElement img = a.multiply(m.at(i, j), a.unit(plist[pj]));
                    if (img.is_zero()) continue;
                    const auto& tlist =
                        target.paths[static_cast<std::size_t>(i)][static_cast<std::size_t>(w)];
                    for (std::size_t ti = 0; ti < tlist.size(); ++ti) {
                        const Scalar& c = img.coords()[static_cast<std::size_t>(tlist[ti])];
                        if (c.is_zero()) continue;
                        int row = target.offset[static_cast<std::size_t>(i)]
                                               [static_cast<std::size_t>(w)] +
                                  static_cast<int>(ti);
                        Matrix& mw = h.maps[static_cast<std::size_t>(w)];
                        mw.set(static_cast<std::size_t>(row), static_cast<std::size_t>(col),
                               mw.at(static_cast<std::size_t>(row), static_cast<std::size_t>(col)) +
                                   c);
                    }
                }
            }
        }
    }
    return h;
}

LambdaMatrix hom_to_lambda(const RealizedProjective& source, const RealizedProjective& target,
                           const ModuleHom& h) {
    const BoundQuiverAlgebra& a = *source.module.algebra;
    LambdaMatrix m = lm_zero(a, source.sum, target.sum);
    for (int j = 0; j < source.sum.count(); ++j) {
        auto [v, pos] = source.generator_position(j);
        for (int i = 0; i < target.sum.count(); ++i) {
            Vec coords = vec_zero(a.field(), static_cast<std::size_t>(a.dim()));
            const auto& tlist =
                target.paths[static_cast<std::size_t>(i)][static_cast<std::size_t>(v)];
            for (std::size_t ti = 0; ti < tlist.size(); ++ti) {
                int row = target.offset[static_cast<std::size_t>(i)][static_cast<std::size_t>(v)] +
                          static_cast<int>(ti);
                const Scalar& c = h.maps[static_cast<std::size_t>(v)].at(
                    static_cast<std::size_t>(row), static_cast<std::size_t>(pos));
                if (!c.is_zero()) coords[static_cast<std::size_t>(tlist[ti])] = c;
            }
            m.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                AlgebraElement(a, std::move(coords));
        }
    }
    return m;
}

SubmoduleResult kernel_of_hom(const FDModule& source, const FDModule& target,
                              const ModuleHom& h) {
    (void)target;
    const BoundQuiverAlgebra& a = *source.algebra;
    FieldTag f = a.field();
    std::vector<Subspace> kernels;
    for (std::size_t v = 0; v < source.dims.size(); ++v) kernels.push_back(kernel_basis(h.maps[v]));

    FDModule k = FDModule::zero(a);
    for (std::size_t v = 0; v < kernels.size(); ++v) k.dims[v] = static_cast<int>(kernels[v].dim());

    ModuleHom incl;
    for (std::size_t v = 0; v < kernels.size(); ++v) {
        Matrix m(f, static_cast<std::size_t>(source.dims[v]), kernels[v].dim());
        for (std::size_t c = 0; c < kernels[v].dim(); ++c) {
            Vec row = kernels[v].basis().row(c);
            for (std::size_t r = 0; r < row.size(); ++r) m.set(r, c, row[r]);
        }
        incl.maps.push_back(std::move(m));
    }

    const Quiver& q = a.quiver();
    for (int ai = 0; ai < q.arrow_count(); ++ai) {
        const Arrow& ar = q.arrow(ai);
        std::size_t sv = static_cast<std::size_t>(ar.source),
                    tv = static_cast<std::size_t>(ar.target);
        Matrix act(f, kernels[tv].dim(), kernels[sv].dim());
        for (std::size_t c = 0; c < kernels[sv].dim(); ++c) {
            Vec img = source.action(ai).apply(kernels[sv].basis().row(c));
            auto dec = kernels[tv].membership(img);
            if (!dec) throw Error("internal: kernel is not arrow-stable");
            for (std::size_t r = 0; r < dec->size(); ++r) act.set(r, c, (*dec)[r]);
        }
        k.arrow_action[static_cast<std::size_t>(ai)] = std::move(act);
    }
    return SubmoduleResult{std::move(k), std::move(incl)};
}

SubmoduleResult submodule_generated(const FDModule& m, const std::vector<MVec>& generators) {
    const BoundQuiverAlgebra& a = *m.algebra;
    FieldTag f = a.field();
    const Quiver& q = a.quiver();
    std::size_t nv = m.dims.size();

    std::vector<std::vector<Vec>> gathered(nv);
    std::vector<std::pair<std::size_t, Vec>> frontier;
    auto add_vec = [&](std::size_t v, const Vec& x) {
        if (vec_is_zero(x)) return;
        Subspace cur = Subspace::span(f, static_cast<std::size_t>(m.dims[v]), gathered[v]);
        if (cur.contains(x)) return;
        gathered[v].push_back(x);
        frontier.emplace_back(v, x);
    };
    for (const MVec& g : generators)
        for (std::size_t v = 0; v < nv; ++v) add_vec(v, g[v]);
    while (!frontier.empty()) {
        auto [v, x] = frontier.back();
        frontier.pop_back();
        for (int ai = 0; ai < q.arrow_count(); ++ai) {
            const Arrow& ar = q.arrow(ai);
            if (static_cast<std::size_t>(ar.source) != v) continue;
            add_vec(static_cast<std::size_t>(ar.target), m.action(ai).apply(x));
        }
    }

    std::vector<Subspace> spans;
    for (std::size_t v = 0; v < nv; ++v)
        spans.push_back(Subspace::span(f, static_cast<std::size_t>(m.dims[v]), gathered[v]));

    FDModule s = FDModule::zero(a);
    ModuleHom incl;
    for (std::size_t v = 0; v < nv; ++v) {
        s.dims[v] = static_cast<int>(spans[v].dim());
        Matrix mm(f, static_cast<std::size_t>(m.dims[v]), spans[v].dim());
        for (std::size_t c = 0; c < spans[v].dim(); ++c) {
            Vec row = spans[v].basis().row(c);
            for (std::size_t r = 0; r < row.size(); ++r) mm.set(r, c, row[r]);
        }
        incl.maps.push_back(std::move(mm));
    }
    for (int ai = 0; ai < q.arrow_count(); ++ai) {
        const Arrow& ar = q.arrow(ai);
        std::size_t sv = static_cast<std::size_t>(ar.source),
                    tv = static_cast<std::size_t>(ar.target);
        Matrix act(f, spans[tv].dim(), spans[sv].dim());
        for (std::size_t c = 0; c < spans[sv].dim(); ++c) {
            Vec img = m.action(ai).apply(spans[sv].basis().row(c));
            auto dec = spans[tv].membership(img);
            if (!dec) throw Error("internal: generated span is not arrow-stable");
            for (std::size_t r = 0; r < dec->size(); ++r) act.set(r, c, (*dec)[r]);
        }
        s.arrow_action[static_cast<std::size_t>(ai)] = std::move(act);
    }
    return SubmoduleResult{std::move(s), std::move(incl)};
}

SubmoduleResult right_ideal(const RealizedProjective& reg,
                            const std::vector<AlgebraElement>& generators) {
    std::vector<MVec> gens;
    gens.reserve(generators.size());
    for (const AlgebraElement& g : generators) gens.push_back(element_to_mvec(reg, g));
    return submodule_generated(reg.module, gens);
}

QuotientModuleResult quotient_module(const FDModule& m, const FDModule& sub,
                                     const ModuleHom& inclusion) {
    (void)sub;
    const BoundQuiverAlgebra& a = *m.algebra;
    FieldTag f = a.field();
    std::size_t nv = m.dims.size();

    std::vector<Subspace> images;
    for (std::size_t v = 0; v < nv; ++v) {
        std::vector<Vec> cols;
        for (std::size_t c = 0; c < inclusion.maps[v].cols(); ++c)
            cols.push_back(inclusion.maps[v].col(c));
        images.push_back(Subspace::span(f, static_cast<std::size_t>(m.dims[v]), cols));
    }

    FDModule qm = FDModule::zero(a);
    ModuleHom proj;
    std::vector<std::vector<std::size_t>> free_coords(nv);
    for (std::size_t v = 0; v < nv; ++v) {
        free_coords[v] = images[v].non_pivots();
        qm.dims[v] = static_cast<int>(free_coords[v].size());
        Matrix p(f, free_coords[v].size(), static_cast<std::size_t>(m.dims[v]));
        for (std::size_t c = 0; c < static_cast<std::size_t>(m.dims[v]); ++c) {
            Vec unit = vec_zero(f, static_cast<std::size_t>(m.dims[v]));
            unit[c] = Scalar::one(f);
            Vec red = images[v].reduce(unit);
            for (std::size_t r = 0; r < free_coords[v].size(); ++r)
                p.set(r, c, red[free_coords[v][r]]);
        }
        proj.maps.push_back(std::move(p));
    }
    const Quiver& q = a.quiver();
    for (int ai = 0; ai < q.arrow_count(); ++ai) {
        const Arrow& ar = q.arrow(ai);
        std::size_t sv = static_cast<std::size_t>(ar.source),
                    tv = static_cast<std::size_t>(ar.target);
        Matrix act(f, free_coords[tv].size(), free_coords[sv].size());
        for (std::size_t c = 0; c < free_coords[sv].size(); ++c) {
            Vec lifted = vec_zero(f, static_cast<std::size_t>(m.dims[sv]));
            lifted[free_coords[sv][c]] = Scalar::one(f);
            Vec img = proj.maps[tv].apply(m.action(ai).apply(lifted));
            for (std::size_t r = 0; r < img.size(); ++r) act.set(r, c, img[r]);
        }
        qm.arrow_action[static_cast<std::size_t>(ai)] = std::move(act);
    }
    return QuotientModuleResult{std::move(qm), std::move(proj)};
}

std::vector<int> top(const FDModule& m) {
    const BoundQuiverAlgebra& a = *m.algebra;
    const Quiver& q = a.quiver();
    FieldTag f = a.field();
    std::vector<int> out(m.dims.size(), 0);
    for (std::size_t w = 0; w < m.dims.size(); ++w) {
        std::vector<Vec> images;
        for (int ai = 0; ai < q.arrow_count(); ++ai) {
            if (static_cast<std::size_t>(q.arrow(ai).target) != w) continue;
            for (std::size_t c = 0; c < m.action(ai).cols(); ++c)
                images.push_back(m.action(ai).col(c));
        }
        Subspace rad = Subspace::span(f, static_cast<std::size_t>(m.dims[w]), images);
        out[w] = m.dims[w] - static_cast<int>(rad.dim());
    }
    return out;
}

CoverResult projective_cover(const FDModule& m) {
    const BoundQuiverAlgebra& a = *m.algebra;
    const Quiver& q = a.quiver();
    FieldTag f = a.field();
    if (m.is_zero()) throw Error("the zero module has no projective cover");

    ProjectiveSum cover;
    std::vector<std::pair<int, Vec>> gens; // (vertex, lift of a top basis vector)
    for (std::size_t w = 0; w < m.dims.size(); ++w) {
        std::vector<Vec> images;
        for (int ai = 0; ai < q.arrow_count(); ++ai) {
            if (static_cast<std::size_t>(q.arrow(ai).target) != w) continue;
            for (std::size_t c = 0; c < m.action(ai).cols(); ++c)
                images.push_back(m.action(ai).col(c));
        }
        Subspace rad = Subspace::span(f, static_cast<std::size_t>(m.dims[w]), images);
        for (std::size_t free : rad.non_pivots()) {
            cover.vertices.push_back(static_cast<int>(w));
            Vec lift = vec_zero(f, static_cast<std::size_t>(m.dims[w]));
            lift[free] = Scalar::one(f);
            gens.emplace_back(static_cast<int>(w), std::move(lift));
        }
    }

    RealizedProjective rp = realize(a, cover);
    ModuleHom sur = hom_zero(rp.module, m);
    for (std::size_t k = 0; k < gens.size(); ++k) {
        auto& [v, lift] = gens[k];
        (void)v;
        for (int x = 0; x < q.vertex_count(); ++x) {
            const auto& plist = rp.paths[k][static_cast<std::size_t>(x)];
            for (std::size_t pj = 0; pj < plist.size(); ++pj) {
                int col = rp.offset[k][static_cast<std::size_t>(x)] + static_cast<int>(pj);
                Matrix pa = m.path_action(a.basis_path(plist[pj]));
                Vec img = pa.apply(lift);
                for (std::size_t r = 0; r < img.size(); ++r)
                    if (!img[r].is_zero())
                        sur.maps[static_cast<std::size_t>(x)].set(r, static_cast<std::size_t>(col),
                                                                  img[r]);
            }
        }
    }

    for (std::size_t v = 0; v < m.dims.size(); ++v)
        if (rank(sur.maps[v]) != static_cast<std::size_t>(m.dims[v]))
            throw Error("internal: projective cover fails to surject");

    return CoverResult{std::move(cover), std::move(rp), std::move(sur)};
}

SubmoduleResult syzygy(const FDModule& m) {
    CoverResult c = projective_cover(m);
    return kernel_of_hom(c.realized.module, m, c.surjection);
}

int Resolution::pd() const {
    if (!terminated) throw Error("projective dimension undefined: resolution not terminated");
    return length();
}

const FDModule& Resolution::syzygy_module(int k) const {
    return stages[static_cast<std::size_t>(k - 1)].omega;
}

Resolution minimal_resolution(const FDModule& m, const ResolutionOptions& opts) {
    const BoundQuiverAlgebra& a = *m.algebra;
    Resolution res;
    res.algebra = &a;
    res.module = m;
    res.minimal = true;

    FDModule cur = m;
    for (int i = 0;; ++i) {
        if (cur.is_zero()) {
            res.terminated = true;
            break;
        }
        if (i > opts.depth) break;
        if (cur.total_dim() > opts.max_term_dim) {
            res.dim_guard_hit = true;
            break;
        }
        CoverResult c = projective_cover(cur);
        SubmoduleResult ker = kernel_of_hom(c.realized.module, cur, c.surjection);
        res.terms.push_back(c.cover);
        res.realized.push_back(std::move(c.realized));
        res.stages.push_back(ResolutionStage{std::move(ker.module), std::move(ker.inclusion),
                                             std::move(c.surjection)});
        cur = res.stages.back().omega;
    }
    res.augmentation = res.terms.empty() ? hom_zero(FDModule::zero(a), m) : res.stages[0].cover;
    for (std::size_t k = 1; k < res.terms.size(); ++k) {
        ModuleHom d = hom_compose(res.stages[k - 1].inclusion, res.stages[k].cover);
        LambdaMatrix lm = hom_to_lambda(res.realized[k], res.realized[k - 1], d);
        if (!lm_radical_valued(a, lm)) res.minimal = false;
        res.diffs.push_back(std::move(lm));
    }
    return res;
}

Resolution assemble_resolution(const BoundQuiverAlgebra& a, FDModule m,
                               std::vector<ProjectiveSum> terms, std::vector<LambdaMatrix> diffs,
                               ModuleHom augmentation, bool final_kernel_is_zero) {
    Resolution res;
    res.algebra = &a;
    res.module = std::move(m);
    res.terms = std::move(terms);
    res.diffs = std::move(diffs);
    res.augmentation = std::move(augmentation);
    for (const ProjectiveSum& s : res.terms) res.realized.push_back(realize(a, s));

    if (res.terms.empty()) {
        if (!res.module.is_zero()) throw Error("resolution with no terms must resolve zero");
        res.terminated = true;
        return res;
    }

    if (!is_module_hom(res.realized[0].module, res.module, res.augmentation))
        throw Error("augmentation is not a module hom");
    for (std::size_t v = 0; v < res.module.dims.size(); ++v)
        if (rank(res.augmentation.maps[v]) != static_cast<std::size_t>(res.module.dims[v]))
            throw Error("augmentation is not onto");

    res.minimal = true;
    res.stages.reserve(res.terms.size());
    const FDModule* prev = &res.module;
    ModuleHom prev_onto = res.augmentation;
    for (std::size_t k = 0; k < res.terms.size(); ++k) {
        SubmoduleResult ker = kernel_of_hom(res.realized[k].module, *prev, prev_onto);
        res.stages.push_back(
            ResolutionStage{std::move(ker.module), std::move(ker.inclusion), prev_onto});
        ResolutionStage& st = res.stages.back();
        if (k + 1 < res.terms.size()) {
            ModuleHom d = realize_hom(res.realized[k + 1], res.realized[k], res.diffs[k]);
            if (!lm_radical_valued(a, res.diffs[k])) res.minimal = false;
            // corestrict d through the inclusion of the syzygy
            ModuleHom cor;
            for (std::size_t v = 0; v < st.omega.dims.size(); ++v) {
                const Matrix& inc = st.inclusion.maps[v];
                Matrix cm(a.field(), static_cast<std::size_t>(st.omega.dims[v]),
                          d.maps[v].cols());
                for (std::size_t c = 0; c < d.maps[v].cols(); ++c) {
                    auto x = solve(inc, d.maps[v].col(c));
                    if (!x) throw Error("resolution not exact: image escapes the kernel");
                    for (std::size_t r = 0; r < x->size(); ++r) cm.set(r, c, (*x)[r]);
                }
                cor.maps.push_back(std::move(cm));
            }
            if (hom_rank(cor) != static_cast<std::size_t>(st.omega.total_dim()))
                throw Error("resolution not exact: image smaller than the kernel");
            prev = &st.omega;
            prev_onto = cor;
        } else {
            if (final_kernel_is_zero && !st.omega.is_zero())
                throw Error("resolution does not terminate where claimed");
            res.terminated = st.omega.is_zero();
        }
    }
    return res;
}

Resolution pad_resolution(const Resolution& res, int stage, const ProjectiveSum& pad) {
    const BoundQuiverAlgebra& a = *res.algebra;
    if (stage < 0 || stage > res.length()) throw Error("padding stage out of range");
    std::vector<ProjectiveSum> terms = res.terms;
    std::vector<LambdaMatrix> diffs = res.diffs;

    auto splice = [&](const ProjectiveSum& s, const ProjectiveSum& extra) {
        ProjectiveSum out = s;
        out.vertices.insert(out.vertices.end(), extra.vertices.begin(), extra.vertices.end());
        return out;
    };
    std::size_t st = static_cast<std::size_t>(stage);
    ProjectiveSum old_s = terms[st];
    ProjectiveSum old_s1 = st + 1 < terms.size() ? terms[st + 1] : ProjectiveSum{};
    terms[st] = splice(old_s, pad);
    if (st + 1 < terms.size())
        terms[st + 1] = splice(old_s1, pad);
    else
        terms.push_back(pad);

    std::vector<LambdaMatrix> nd;
    for (std::size_t k = 0; k + 1 < terms.size(); ++k) {
        LambdaMatrix blk = lm_zero(a, terms[k + 1], terms[k]);
        const LambdaMatrix* old = k < diffs.size() ? &diffs[k] : nullptr;
        if (old)
            for (int i = 0; i < old->target.count(); ++i)
                for (int j = 0; j < old->source.count(); ++j)
                    blk.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                        old->at(i, j);
        if (k == st)
            for (int p = 0; p < pad.count(); ++p)
                blk.entries[static_cast<std::size_t>(old_s.count() + p)]
                           [static_cast<std::size_t>(old_s1.count() + p)] =
                    a.vertex_idempotent(pad.vertices[static_cast<std::size_t>(p)]);
        nd.push_back(std::move(blk));
    }

    ModuleHom aug = res.augmentation;
    if (stage == 0) {
        RealizedProjective r0 = realize(a, terms[0]);
        RealizedProjective old0 = realize(a, old_s);
        ModuleHom wider = hom_zero(r0.module, res.module);
        for (std::size_t v = 0; v < wider.maps.size(); ++v)
            for (int k = 0; k < old_s.count(); ++k) {
                const auto& plist = old0.paths[static_cast<std::size_t>(k)][v];
                for (std::size_t pj = 0; pj < plist.size(); ++pj) {
                    int oldcol = old0.offset[static_cast<std::size_t>(k)][v] + static_cast<int>(pj);
                    int newcol = r0.offset[static_cast<std::size_t>(k)][v] + static_cast<int>(pj);
                    for (std::size_t r = 0; r < wider.maps[v].rows(); ++r)
                        wider.maps[v].set(r, static_cast<std::size_t>(newcol),
                                          aug.maps[v].at(r, static_cast<std::size_t>(oldcol)));
                }
            }
        aug = std::move(wider);
    }

    bool final_zero = res.terminated && st + 1 < res.terms.size();
    return assemble_resolution(a, res.module, std::move(terms), std::move(nd), std::move(aug),
                               final_zero);
}

std::optional<int> e_bounded_horizon(const Resolution& res, const Idempotent& e) {
    int L = res.length();
    if (L < 0) return res.terminated ? std::optional<int>(-1) : std::nullopt;
    int m = L;
    while (m >= 0 && res.terms[static_cast<std::size_t>(m)].top_killed_by(e)) --m;
    if (res.terminated) return m;
    // unterminated window: demand a killed tail and a killed final syzygy top
    if (m >= L) return std::nullopt;
    std::vector<int> t = top(res.final_syzygy());
    for (std::size_t v = 0; v < t.size(); ++v)
        if (t[v] > 0 && e.contains(static_cast<int>(v))) return std::nullopt;
    return m;
}

namespace {

/// Solves sigma . h = psi for a hom h from a realized projective into x,
/// where sigma: x ->> t and psi is given by its generator images; free
/// variables zero, plus an optional seeded element of the kernel.
ModuleHom lift_through(const RealizedProjective& p, const FDModule& x, const ModuleHom& sigma,
                       const std::vector<MVec>& psi_of_generators, std::uint64_t perturb_seed) {
    const BoundQuiverAlgebra& a = *p.module.algebra;
    FieldTag f = a.field();

    std::vector<MVec> images;
    for (int k = 0; k < p.sum.count(); ++k) {
        int v = p.sum.vertices[static_cast<std::size_t>(k)];
        const Matrix& sv = sigma.maps[static_cast<std::size_t>(v)];
        const Vec& rhs =
            psi_of_generators[static_cast<std::size_t>(k)][static_cast<std::size_t>(v)];
        auto sol = solve(sv, rhs);
        if (!sol) throw Error("internal: lifting system inconsistent");
        if (perturb_seed != 0) {
            Subspace ker = kernel_basis(sv);
            std::uint64_t state = perturb_seed + static_cast<std::uint64_t>(k) * 1299709u;
            for (std::size_t r = 0; r < ker.dim(); ++r) {
                long c = static_cast<long>(splitmix(state) % 5) - 2;
                vec_add_scaled(*sol, Scalar::of_int(f, c), ker.basis().row(r));
            }
        }
        MVec img = mvec_zero(x);
        img[static_cast<std::size_t>(v)] = *sol;
        images.push_back(std::move(img));
    }

    ModuleHom h = hom_zero(p.module, x);
    const Quiver& quiv = a.quiver();
    for (int k = 0; k < p.sum.count(); ++k)
        for (int w = 0; w < quiv.vertex_count(); ++w) {
            const auto& plist = p.paths[static_cast<std::size_t>(k)][static_cast<std::size_t>(w)];
            for (std::size_t pj = 0; pj < plist.size(); ++pj) {
                int col = p.offset[static_cast<std::size_t>(k)][static_cast<std::size_t>(w)] +
                          static_cast<int>(pj);
                MVec img =
                    act_path(x, images[static_cast<std::size_t>(k)], a.basis_path(plist[pj]));
                const Vec& comp = img[static_cast<std::size_t>(w)];
                for (std::size_t r = 0; r < comp.size(); ++r)
                    if (!comp[r].is_zero())
                        h.maps[static_cast<std::size_t>(w)].set(r, static_cast<std::size_t>(col),
                                                                comp[r]);
            }
        }
    return h;
}

/// Corestricts through an injective inclusion: solves inc . y = img.
MVec corestrict(const ModuleHom& inc, const FDModule& omega, const MVec& img) {
    MVec cor = mvec_zero(omega);
    for (std::size_t v = 0; v < img.size(); ++v) {
        if (inc.maps[v].cols() == 0) {
            if (!vec_is_zero(img[v])) throw Error("internal: image escapes the syzygy");
            continue;
        }
        auto sol = solve(inc.maps[v], img[v]);
        if (!sol) throw Error("internal: image escapes the syzygy");
        cor[v] = *sol;
    }
    return cor;
}

} // namespace

std::vector<LambdaMatrix> lift_endomorphism(const Resolution& res, const ModuleHom& phi,
                                            std::uint64_t perturb_seed) {
    std::vector<LambdaMatrix> lifts;
    if (res.terms.empty()) return lifts;

    ModuleHom psi0 = hom_compose(phi, res.augmentation);
    std::vector<MVec> gen_imgs;
    for (int g = 0; g < res.realized[0].sum.count(); ++g)
        gen_imgs.push_back(psi0.apply(res.realized[0].generator(g)));
    ModuleHom prev = lift_through(res.realized[0], res.realized[0].module, res.augmentation,
                                  gen_imgs, perturb_seed);
    lifts.push_back(hom_to_lambda(res.realized[0], res.realized[0], prev));

    for (std::size_t k = 1; k < res.terms.size(); ++k) {
        ModuleHom d = hom_compose(res.stages[k - 1].inclusion, res.stages[k].cover);
        ModuleHom rhs = hom_compose(prev, d);
        const ModuleHom& inc = res.stages[k - 1].inclusion;
        const FDModule& omega = res.stages[k - 1].omega;
        std::vector<MVec> psi;
        for (int g = 0; g < res.realized[k].sum.count(); ++g)
            psi.push_back(corestrict(inc, omega, rhs.apply(res.realized[k].generator(g))));
        ModuleHom cur = lift_through(res.realized[k], res.realized[k].module, res.stages[k].cover,
                                     psi, perturb_seed ? perturb_seed + k : 0);
        lifts.push_back(hom_to_lambda(res.realized[k], res.realized[k], cur));
        prev = cur;
    }
    return lifts;
}

HorseshoeResult horseshoe(const ShortExactSequence& ses, const Resolution& res_sub,
                          const Resolution& res_quot) {
    const BoundQuiverAlgebra& a = *ses.middle.algebra;

    if (!is_module_hom(ses.sub, ses.middle, ses.inject) ||
        !is_module_hom(ses.middle, ses.quotient, ses.project))
        throw Error("horseshoe input maps are not module homs");
    if (hom_rank(ses.inject) != static_cast<std::size_t>(ses.sub.total_dim()))
        throw Error("horseshoe: injection is not injective");
    if (hom_rank(ses.project) != static_cast<std::size_t>(ses.quotient.total_dim()))
        throw Error("horseshoe: projection is not onto");
    if (ses.sub.total_dim() + ses.quotient.total_dim() != ses.middle.total_dim())
        throw Error("horseshoe: dimensions do not add up");
    for (std::size_t v = 0; v < ses.middle.dims.size(); ++v)
        if (!(ses.project.maps[v] * ses.inject.maps[v]).is_zero())
            throw Error("horseshoe: sequence is not a complex");

    int K;
    if (res_sub.terminated && res_quot.terminated)
        K = std::max(res_sub.length(), res_quot.length());
    else if (res_sub.terminated)
        K = res_quot.length();
    else if (res_quot.terminated)
        K = res_sub.length();
    else
        K = std::min(res_sub.length(), res_quot.length());
    if (K < 0) K = 0;

    auto terms_at = [&](const Resolution& r, int k) -> ProjectiveSum {
        return k <= r.length() ? r.terms[static_cast<std::size_t>(k)] : ProjectiveSum{};
    };

    std::vector<ProjectiveSum> terms;
    for (int k = 0; k <= K; ++k) {
        ProjectiveSum s = terms_at(res_sub, k);
        ProjectiveSum t = terms_at(res_quot, k);
        s.vertices.insert(s.vertices.end(), t.vertices.begin(), t.vertices.end());
        terms.push_back(std::move(s));
    }
    std::vector<RealizedProjective> realized;
    for (const ProjectiveSum& s : terms) realized.push_back(realize(a, s));

    // t_0 lifts the augmentation of the quotient resolution through the
    // projection of the sequence
    ModuleHom t0;
    if (!res_quot.terms.empty()) {
        std::vector<MVec> psi;
        for (int g = 0; g < res_quot.realized[0].sum.count(); ++g)
            psi.push_back(res_quot.augmentation.apply(res_quot.realized[0].generator(g)));
        t0 = lift_through(res_quot.realized[0], ses.middle, ses.project, psi, 0);
    }

    auto quot_d = [&](int k) -> ModuleHom {
        return hom_compose(res_quot.stages[static_cast<std::size_t>(k - 1)].inclusion,
                           res_quot.stages[static_cast<std::size_t>(k)].cover);
    };

    // corner corrections s_k: P'_k -> P_{k-1}
    std::vector<ModuleHom> s_corr(static_cast<std::size_t>(K) + 1);
    for (int k = 1; k <= K; ++k) {
        if (k > res_quot.length() || k - 1 > res_sub.length()) continue;
        const RealizedProjective& src = res_quot.realized[static_cast<std::size_t>(k)];
        if (k == 1) {
            // aug_sub . s_1 = -(inject^{-1} (t_0 . d'_1))
            ModuleHom r = hom_compose(t0, quot_d(1));
            std::vector<MVec> psi;
            for (int g = 0; g < src.sum.count(); ++g) {
                MVec cor = corestrict(ses.inject, ses.sub, r.apply(src.generator(g)));
                for (Vec& comp : cor) comp = vec_scale(-Scalar::one(a.field()), comp);
                psi.push_back(std::move(cor));
            }
            s_corr[1] = lift_through(src, res_sub.realized[0].module, res_sub.augmentation, psi, 0);
        } else {
            if (s_corr[static_cast<std::size_t>(k - 1)].maps.empty()) continue;
            // d_{k-1} . s_k = - s_{k-1} . d'_k, landing in Omega^{k-1}
            ModuleHom rhs = hom_compose(s_corr[static_cast<std::size_t>(k - 1)], quot_d(k));
            const ModuleHom& inc = res_sub.stages[static_cast<std::size_t>(k - 2)].inclusion;
            const FDModule& omega = res_sub.stages[static_cast<std::size_t>(k - 2)].omega;
            std::vector<MVec> psi;
            for (int g = 0; g < src.sum.count(); ++g) {
                MVec cor = corestrict(inc, omega, rhs.apply(src.generator(g)));
                for (Vec& comp : cor) comp = vec_scale(-Scalar::one(a.field()), comp);
                psi.push_back(std::move(cor));
            }
            s_corr[static_cast<std::size_t>(k)] =
                lift_through(src, res_sub.realized[static_cast<std::size_t>(k - 1)].module,
                             res_sub.stages[static_cast<std::size_t>(k - 1)].cover, psi, 0);
        }
    }

    std::vector<LambdaMatrix> diffs;
    for (int k = 1; k <= K; ++k) {
        LambdaMatrix blk =
            lm_zero(a, terms[static_cast<std::size_t>(k)], terms[static_cast<std::size_t>(k - 1)]);
        int soff_t = terms_at(res_sub, k - 1).count();
        int soff_s = terms_at(res_sub, k).count();
        if (k <= res_sub.length()) {
            const LambdaMatrix& d = res_sub.diffs[static_cast<std::size_t>(k - 1)];
            for (int i = 0; i < d.target.count(); ++i)
                for (int j = 0; j < d.source.count(); ++j)
                    blk.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                        d.at(i, j);
        }
        if (k <= res_quot.length()) {
            const LambdaMatrix& d = res_quot.diffs[static_cast<std::size_t>(k - 1)];
            for (int i = 0; i < d.target.count(); ++i)
                for (int j = 0; j < d.source.count(); ++j)
                    blk.entries[static_cast<std::size_t>(soff_t + i)]
                               [static_cast<std::size_t>(soff_s + j)] = d.at(i, j);
        }
        if (!s_corr[static_cast<std::size_t>(k)].maps.empty()) {
            LambdaMatrix s = hom_to_lambda(res_quot.realized[static_cast<std::size_t>(k)],
                                           res_sub.realized[static_cast<std::size_t>(k - 1)],
                                           s_corr[static_cast<std::size_t>(k)]);
            for (int i = 0; i < s.target.count(); ++i)
                for (int j = 0; j < s.source.count(); ++j)
                    blk.entries[static_cast<std::size_t>(i)]
                               [static_cast<std::size_t>(soff_s + j)] = s.at(i, j);
        }
        diffs.push_back(std::move(blk));
    }

    ModuleHom aug = hom_zero(realized[0].module, ses.middle);
    {
        int soff = terms_at(res_sub, 0).count();
        for (std::size_t v = 0; v < aug.maps.size(); ++v) {
            if (!res_sub.terms.empty()) {
                ModuleHom usub = hom_compose(ses.inject, res_sub.augmentation);
                const RealizedProjective& r0 = res_sub.realized[0];
                for (int k = 0; k < r0.sum.count(); ++k) {
                    const auto& plist = r0.paths[static_cast<std::size_t>(k)][v];
                    for (std::size_t pj = 0; pj < plist.size(); ++pj) {
                        int oldcol =
                            r0.offset[static_cast<std::size_t>(k)][v] + static_cast<int>(pj);
                        int newcol =
                            realized[0].offset[static_cast<std::size_t>(k)][v] +
                            static_cast<int>(pj);
                        for (std::size_t r = 0; r < aug.maps[v].rows(); ++r)
                            aug.maps[v].set(r, static_cast<std::size_t>(newcol),
                                            usub.maps[v].at(r, static_cast<std::size_t>(oldcol)));
                    }
                }
            }
            if (!res_quot.terms.empty()) {
                const RealizedProjective& r0 = res_quot.realized[0];
                for (int k = 0; k < r0.sum.count(); ++k) {
                    const auto& plist = r0.paths[static_cast<std::size_t>(k)][v];
                    for (std::size_t pj = 0; pj < plist.size(); ++pj) {
                        int oldcol =
                            r0.offset[static_cast<std::size_t>(k)][v] + static_cast<int>(pj);
                        int newcol =
                            realized[0].offset[static_cast<std::size_t>(soff + k)][v] +
                            static_cast<int>(pj);
                        for (std::size_t r = 0; r < aug.maps[v].rows(); ++r)
                            aug.maps[v].set(r, static_cast<std::size_t>(newcol),
                                            t0.maps[v].at(r, static_cast<std::size_t>(oldcol)));
                    }
                }
            }
        }
    }

    bool final_zero = res_sub.terminated && res_quot.terminated;
    HorseshoeResult out{
        assemble_resolution(a, ses.middle, terms, std::move(diffs), std::move(aug), final_zero),
        {},
        {}};

    for (int k = 0; k <= K; ++k) {
        ProjectiveSum subk = terms_at(res_sub, k);
        ProjectiveSum quotk = terms_at(res_quot, k);
        LambdaMatrix q = lm_zero(a, subk, terms[static_cast<std::size_t>(k)]);
        for (int i = 0; i < subk.count(); ++i)
            q.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] =
                a.vertex_idempotent(subk.vertices[static_cast<std::size_t>(i)]);
        LambdaMatrix p = lm_zero(a, terms[static_cast<std::size_t>(k)], quotk);
        for (int j = 0; j < quotk.count(); ++j)
            p.entries[static_cast<std::size_t>(j)][static_cast<std::size_t>(subk.count() + j)] =
                a.vertex_idempotent(quotk.vertices[static_cast<std::size_t>(j)]);
        out.inject.push_back(std::move(q));
        out.project.push_back(std::move(p));
    }
    return out;
}

std::vector<ModuleHom> hom_space(const FDModule& m, const FDModule& n) {
    const BoundQuiverAlgebra& a = *m.algebra;
    FieldTag f = a.field();
    const Quiver& q = a.quiver();

    std::vector<std::size_t> var_offset(m.dims.size() + 1, 0);
    for (std::size_t v = 0; v < m.dims.size(); ++v)
        var_offset[v + 1] = var_offset[v] + static_cast<std::size_t>(n.dims[v]) *
                                                static_cast<std::size_t>(m.dims[v]);
    std::size_t nvars = var_offset.back();

    std::vector<Vec> rows;
    for (int ai = 0; ai < q.arrow_count(); ++ai) {
        const Arrow& ar = q.arrow(ai);
        std::size_t sv = static_cast<std::size_t>(ar.source),
                    tv = static_cast<std::size_t>(ar.target);
        for (int r = 0; r < n.dims[tv]; ++r)
            for (int c = 0; c < m.dims[sv]; ++c) {
                Vec row = vec_zero(f, nvars);
                for (int k = 0; k < m.dims[tv]; ++k) {
                    std::size_t var =
                        var_offset[tv] +
                        static_cast<std::size_t>(r) * static_cast<std::size_t>(m.dims[tv]) +
                        static_cast<std::size_t>(k);
                    row[var] += m.action(ai).at(static_cast<std::size_t>(k),
                                                static_cast<std::size_t>(c));
                }
                for (int k = 0; k < n.dims[sv]; ++k) {
                    std::size_t var =
                        var_offset[sv] +
                        static_cast<std::size_t>(k) * static_cast<std::size_t>(m.dims[sv]) +
                        static_cast<std::size_t>(c);
                    row[var] -= n.action(ai).at(static_cast<std::size_t>(r),
                                                static_cast<std::size_t>(k));
                }
                if (!vec_is_zero(row)) rows.push_back(std::move(row));
            }
    }

    auto unpack = [&](const Vec& x) {
        ModuleHom h = hom_zero(m, n);
        for (std::size_t v = 0; v < m.dims.size(); ++v)
            for (int r = 0; r < n.dims[v]; ++r)
                for (int c = 0; c < m.dims[v]; ++c)
                    h.maps[v].set(
                        static_cast<std::size_t>(r), static_cast<std::size_t>(c),
                        x[var_offset[v] +
                          static_cast<std::size_t>(r) * static_cast<std::size_t>(m.dims[v]) +
                          static_cast<std::size_t>(c)]);
        return h;
    };

    std::vector<ModuleHom> out;
    if (rows.empty()) {
        for (std::size_t var = 0; var < nvars; ++var) {
            Vec x = vec_zero(f, nvars);
            x[var] = Scalar::one(f);
            out.push_back(unpack(x));
        }
        return out;
    }
    Subspace ker = kernel_basis(Matrix::from_rows(f, nvars, rows));
    for (std::size_t b = 0; b < ker.dim(); ++b) out.push_back(unpack(ker.basis().row(b)));
    return out;
}

IsoTestResult iso_test(const FDModule& m, const FDModule& n) {
    IsoTestResult res;
    res.dims_match = m.dims == n.dims;
    if (!res.dims_match) return res;
    if (m.total_dim() == 0) {
        res.iso = hom_zero(m, n);
        return res;
    }

    std::vector<ModuleHom> basis = hom_space(m, n);
    auto try_candidate = [&](const ModuleHom& h) {
        if (!hom_invertible(m, n, h)) return false;
        res.iso = h;
        return true;
    };
    for (const ModuleHom& h : basis)
        if (try_candidate(h)) return res;

    FieldTag f = m.algebra->field();
    std::size_t k = basis.size();
    if (k == 0) return res;

    if (f.kind == FieldKind::prime && k <= 2 && f.p <= 13) {
        // exhaustive over all coefficient tuples
        std::vector<long> idx(k, 0);
        while (true) {
            ModuleHom cand = hom_zero(m, n);
            for (std::size_t i = 0; i < k; ++i)
                if (idx[i] != 0)
                    cand = hom_add(cand,
                                   hom_compose(hom_scale(n, Scalar::of_int(f, idx[i])), basis[i]));
            if (try_candidate(cand)) return res;
            std::size_t pos = 0;
            while (pos < k && ++idx[pos] == f.p) idx[pos++] = 0;
            if (pos == k) break;
        }
        return res;
    }

    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            for (long ci : {1L, -1L, 2L})
                for (long cj : {1L, -1L, 2L}) {
                    ModuleHom cand =
                        hom_add(hom_compose(hom_scale(n, Scalar::of_int(f, ci)), basis[i]),
                                hom_compose(hom_scale(n, Scalar::of_int(f, cj)), basis[j]));
                    if (try_candidate(cand)) return res;
                }
    std::uint64_t state = 0xC0FFEEull;
    for (int trial = 0; trial < 200; ++trial) {
        ModuleHom cand = hom_zero(m, n);
        for (std::size_t i = 0; i < k; ++i) {
            long c = static_cast<long>(splitmix(state) % 7) - 3;
            if (c != 0)
                cand = hom_add(cand, hom_compose(hom_scale(n, Scalar::of_int(f, c)), basis[i]));
        }
        if (try_candidate(cand)) return res;
    }
    return res;
}

std::vector<int> ext_self_dims(const BoundQuiverAlgebra& a, int v, int depth) {
    ResolutionOptions opts;
    opts.depth = depth;
    Resolution res = minimal_resolution(simple_module(a, v), opts);
    std::vector<int> out;
    for (int i = 1; i <= depth; ++i) {
        int count = 0;
        if (i <= res.length())
            for (int w : res.terms[static_cast<std::size_t>(i)].vertices)
                if (w == v) ++count;
        out.push_back(count);
    }
    return out;
}

int ext1_dim(const BoundQuiverAlgebra& a, int v, int w) {
    ResolutionOptions opts;
    opts.depth = 1;
    Resolution res = minimal_resolution(simple_module(a, v), opts);
    int count = 0;
    if (res.length() >= 1)
        for (int x : res.terms[1].vertices)
            if (x == w) ++count;
    return count;
}

std::optional<PeriodicityCertificate> periodicity_certificate(const FDModule& m,
                                                              const ResolutionOptions& opts) {
    Resolution res = minimal_resolution(m, opts);
    std::vector<const FDModule*> omegas;
    omegas.push_back(&res.module);
    for (const ResolutionStage& s : res.stages) omegas.push_back(&s.omega);

    int avail = static_cast<int>(omegas.size()) - 1;
    for (int j = 1; j <= avail; ++j) {
        if (omegas[static_cast<std::size_t>(j)]->is_zero()) continue;
        for (int i = 0; i < j; ++i) {
            if (omegas[static_cast<std::size_t>(i)]->is_zero()) continue;
            IsoTestResult t = iso_test(*omegas[static_cast<std::size_t>(i)],
                                       *omegas[static_cast<std::size_t>(j)]);
            if (t.iso) return PeriodicityCertificate{i, j, std::move(*t.iso)};
        }
    }
    return std::nullopt;
}

std::optional<PeriodicityCertificate> periodicity_certificate(const BoundQuiverAlgebra& a, int v,
                                                              const ResolutionOptions& opts) {
    return periodicity_certificate(simple_module(a, v), opts);
}

} // namespace qalg
