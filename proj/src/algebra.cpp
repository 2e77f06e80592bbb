#include "qalg/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace qalg {

namespace {

/// Row-echelon reducer over path coordinates, greatest path leading.
class PathSpanReducer {
public:
    explicit PathSpanReducer(const Quiver& q) : quiver_(&q), rows_(PathGreater{&q}) {}

    SparsePathRow reduce(SparsePathRow v) const {
        auto it = v.begin();
        while (it != v.end()) {
            auto rit = rows_.find(it->first);
            if (rit == rows_.end()) {
                ++it;
                continue;
            }
            Path pivot = it->first;
            Scalar c = it->second;
            for (const auto& [p, s] : rit->second) {
                auto vit = v.find(p);
                if (vit == v.end()) {
                    Scalar nv = -(c * s);
                    if (!nv.is_zero()) v.emplace(p, nv);
                } else {
                    vit->second -= c * s;
                    if (vit->second.is_zero()) v.erase(vit);
                }
            }
            it = v.upper_bound(pivot);
        }
        return v;
    }

    /// Returns true when the row was independent and got installed.
    bool insert(SparsePathRow v) {
        v = reduce(std::move(v));
        if (v.empty()) return false;
        Scalar inv = v.begin()->second.inverse();
        for (auto& [p, s] : v) s *= inv;
        Path pivot = v.begin()->first;
        rows_.emplace(std::move(pivot), std::move(v));
        return true;
    }

    bool is_pivot(const Path& p) const { return rows_.count(p) > 0; }
    const std::map<Path, SparsePathRow, PathGreater>& rows() const { return rows_; }

private:
    const Quiver* quiver_;
    std::map<Path, SparsePathRow, PathGreater> rows_;
};

SparsePathRow make_row(const Quiver& q, std::initializer_list<std::pair<Path, Scalar>> terms) {
    SparsePathRow r(PathGreater{&q});
    for (const auto& [p, c] : terms)
        if (!c.is_zero()) r.emplace(p, c);
    return r;
}

} // namespace

AlgebraElement::AlgebraElement(const BoundQuiverAlgebra& a, Vec coords)
    : algebra_(&a), coords_(std::move(coords)) {
    if (coords_.size() != static_cast<std::size_t>(a.dim()))
        throw Error("coordinate length does not match algebra dimension");
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
    return AlgebraElement(*algebra_, vec_add(coords_, o.coords_));
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
    return AlgebraElement(*algebra_, vec_sub(coords_, o.coords_));
}

AlgebraElement AlgebraElement::operator-() const {
    return AlgebraElement(*algebra_, vec_scale(-Scalar::one(algebra_->field()), coords_));
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& o) const {
    return algebra_->multiply(*this, o);
}

AlgebraElement AlgebraElement::scaled(const Scalar& c) const {
    return AlgebraElement(*algebra_, vec_scale(c, coords_));
}

std::string AlgebraElement::str() const {
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (coords_[i].is_zero()) continue;
        std::string c = coords_[i].str();
        if (!first) out << (c[0] == '-' ? " - " : " + ");
        if (first && c[0] == '-') out << "-";
        std::string mag = c[0] == '-' ? c.substr(1) : c;
        if (mag != "1") out << mag << " ";
        out << algebra_->basis_path(static_cast<int>(i)).str(algebra_->quiver());
        first = false;
    }
    return first ? "0" : out.str();
}

Idempotent Idempotent::of(std::vector<int> vs) {
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return Idempotent{std::move(vs)};
}

Idempotent Idempotent::all(const Quiver& q) {
    std::vector<int> vs(static_cast<std::size_t>(q.vertex_count()));
    for (std::size_t i = 0; i < vs.size(); ++i) vs[i] = static_cast<int>(i);
    return Idempotent{std::move(vs)};
}

bool Idempotent::contains(int v) const {
    return std::binary_search(vertices.begin(), vertices.end(), v);
}

BoundQuiverAlgebra BoundQuiverAlgebra::build(const Quiver& q,
                                             const std::vector<PathVector>& relations,
                                             FieldTag field, int cap) {
    BoundQuiverAlgebra a;
    a.quiver_ = std::make_shared<const Quiver>(q);
    a.field_ = field;
    a.cap_ = cap;
    const Quiver& Q = *a.quiver_;

    // validate relations: every term of length >= 2, one endpoint pair each;
    // re-anchor them to the stored quiver
    for (const PathVector& rel : relations) {
        if (rel.is_zero()) continue;
        PathVector own(Q);
        int src = -1, tgt = -1;
        for (const auto& [p, c] : rel.terms()) {
            if (p.length() < 2)
                throw MalformedRelationError("relation term " + p.str(Q) + " has length < 2");
            if (src == -1) {
                src = p.source();
                tgt = p.target();
            } else if (p.source() != src || p.target() != tgt) {
                throw MalformedRelationError("relation mixes endpoint pairs at term " +
                                             p.str(Q));
            }
            own.add_term(p, c);
        }
        if (!own.is_zero()) a.relations_.push_back(std::move(own));
    }

    PathSpanReducer reducer(Q);
    std::vector<std::vector<Path>> by_len; // paths of each length, cached
    by_len.push_back(paths_of_length(Q, 0));
    by_len.push_back(paths_of_length(Q, 1));

    constexpr std::size_t kPathBudget = 1u << 20;
    std::size_t enumerated = by_len[0].size() + by_len[1].size();

    int n = -1;
    for (int deg = 2; deg <= cap; ++deg) {
        by_len.push_back(paths_of_length(Q, static_cast<std::size_t>(deg)));
        enumerated += by_len.back().size();
        if (enumerated > kPathBudget)
            throw Error("path enumeration budget exceeded while certifying admissibility");

        // install every u * rel * v whose longest term has length == deg
        for (const PathVector& rel : a.relations_) {
            std::size_t max_term = 0;
            for (const auto& [p, c] : rel.terms()) max_term = std::max(max_term, p.length());
            int rsrc = rel.terms().begin()->first.source();
            int rtgt = rel.terms().begin()->first.target();
            int slack = deg - static_cast<int>(max_term);
            if (slack < 0) continue;
            for (int lu = 0; lu <= slack; ++lu) {
                int lv = slack - lu;
                for (const Path& u : by_len[static_cast<std::size_t>(lu)]) {
                    if (u.target() != rsrc) continue;
                    for (const Path& v : by_len[static_cast<std::size_t>(lv)]) {
                        if (v.source() != rtgt) continue;
                        SparsePathRow row(PathGreater{&Q});
                        for (const auto& [p, c] : rel.terms()) {
                            Path upv = *compose(*compose(u, p), v);
                            auto it = row.find(upv);
                            if (it == row.end())
                                row.emplace(std::move(upv), c);
                            else {
                                it->second += c;
                                if (it->second.is_zero()) row.erase(it);
                            }
                        }
                        reducer.insert(std::move(row));
                    }
                }
            }
        }

        // admissible at this degree when every path of length deg reduces to 0
        bool closed = true;
        for (const Path& p : by_len[static_cast<std::size_t>(deg)]) {
            SparsePathRow unit = make_row(Q, {{p, Scalar::one(field)}});
            if (!reducer.reduce(std::move(unit)).empty()) {
                closed = false;
                break;
            }
        }
        if (closed) {
            n = deg;
            break;
        }
    }
    if (n < 0) throw NotAdmissibleError(cap);
    a.n_ = n;

    for (int len = 0; len < n; ++len)
        for (const Path& p : by_len[static_cast<std::size_t>(len)])
            if (!reducer.is_pivot(p)) {
                a.basis_lookup_.emplace(p, static_cast<int>(a.basis_.size()));
                a.basis_.push_back(p);
            }

    // normal forms of every path of length <= n
    for (int len = 0; len <= n; ++len)
        for (const Path& p : by_len[static_cast<std::size_t>(len)]) {
            SparsePathRow unit = make_row(Q, {{p, Scalar::one(field)}});
            SparsePathRow nf = reducer.reduce(std::move(unit));
            Vec coords = vec_zero(field, a.basis_.size());
            for (const auto& [bp, c] : nf) {
                auto it = a.basis_lookup_.find(bp);
                if (it == a.basis_lookup_.end())
                    throw Error("internal: normal form contains a non-basis path");
                coords[static_cast<std::size_t>(it->second)] = c;
            }
            a.reduction_.emplace(p, std::move(coords));
        }

    for (const auto& [pivot, row] : reducer.rows()) a.ideal_rows_.push_back(row);

    // right multiplication by each arrow on the basis
    for (int ai = 0; ai < Q.arrow_count(); ++ai) {
        Matrix m(field, a.basis_.size(), a.basis_.size());
        for (std::size_t j = 0; j < a.basis_.size(); ++j) {
            auto pa = compose(a.basis_[j], Path::of_arrow(Q, ai));
            if (!pa) continue;
            const Vec& col = a.reduction_.at(*pa);
            for (std::size_t i = 0; i < col.size(); ++i)
                if (!col[i].is_zero()) m.set(i, j, col[i]);
        }
        a.right_mult_.push_back(std::move(m));
    }

    // every input relation must be in the ideal span
    for (const PathVector& rel : a.relations_) {
        Vec acc = vec_zero(field, a.basis_.size());
        for (const auto& [p, c] : rel.terms()) vec_add_scaled(acc, c, a.reduction_.at(p));
        if (!vec_is_zero(acc)) throw Error("internal: relation does not reduce to zero");
    }

    return a;
}

int BoundQuiverAlgebra::basis_index(const Path& p) const {
    auto it = basis_lookup_.find(p);
    return it == basis_lookup_.end() ? -1 : it->second;
}

AlgebraElement BoundQuiverAlgebra::reduce_path(const Path& p) const {
    auto it = reduction_.find(p);
    if (it != reduction_.end()) return AlgebraElement(*this, it->second);
    if (static_cast<int>(p.length()) > n_) {
        // longer paths: fold in one arrow at a time
        AlgebraElement acc = vertex_idempotent(p.source());
        for (int a : p.arrows()) {
            Vec next = right_mult_[static_cast<std::size_t>(a)].apply(acc.coords());
            acc = AlgebraElement(*this, std::move(next));
        }
        return acc;
    }
    throw Error("internal: path of length <= n missing from reduction table");
}

AlgebraElement BoundQuiverAlgebra::zero() const {
    return AlgebraElement(*this, vec_zero(field_, basis_.size()));
}

AlgebraElement BoundQuiverAlgebra::one() const {
    Vec v = vec_zero(field_, basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i)
        if (basis_[i].is_trivial()) v[i] = Scalar::one(field_);
    return AlgebraElement(*this, std::move(v));
}

AlgebraElement BoundQuiverAlgebra::unit(int basis_idx) const {
    Vec v = vec_zero(field_, basis_.size());
    v[static_cast<std::size_t>(basis_idx)] = Scalar::one(field_);
    return AlgebraElement(*this, std::move(v));
}

AlgebraElement BoundQuiverAlgebra::vertex_idempotent(int v) const {
    int idx = basis_index(Path::trivial(v));
    if (idx < 0) throw Error("internal: trivial path missing from basis");
    return unit(idx);
}

AlgebraElement BoundQuiverAlgebra::element(const Idempotent& e) const {
    AlgebraElement acc = zero();
    for (int v : e.vertices) acc = acc + vertex_idempotent(v);
    return acc;
}

AlgebraElement BoundQuiverAlgebra::from_path_vector(const PathVector& pv) const {
    Vec acc = vec_zero(field_, basis_.size());
    for (const auto& [p, c] : pv.terms()) {
        if (static_cast<int>(p.length()) > n_) continue; // such paths lie in the ideal
        vec_add_scaled(acc, c, reduction_.at(p));
    }
    return AlgebraElement(*this, std::move(acc));
}

AlgebraElement BoundQuiverAlgebra::multiply(const AlgebraElement& x,
                                            const AlgebraElement& y) const {
    if (&x.algebra() != this || &y.algebra() != this)
        throw Error("operands belong to different algebras");
    Vec acc = vec_zero(field_, basis_.size());
    for (std::size_t j = 0; j < basis_.size(); ++j) {
        const Scalar& cy = y.coords()[j];
        if (cy.is_zero()) continue;
        const Path& q = basis_[j];
        Vec z;
        if (q.is_trivial()) {
            z = vec_zero(field_, basis_.size());
            for (std::size_t i = 0; i < basis_.size(); ++i)
                if (basis_[i].target() == q.source()) z[i] = x.coords()[i];
        } else {
            z = x.coords();
            for (int a : q.arrows()) z = right_mult_[static_cast<std::size_t>(a)].apply(z);
        }
        vec_add_scaled(acc, cy, z);
    }
    return AlgebraElement(*this, std::move(acc));
}

AlgebraElement BoundQuiverAlgebra::basis_product(int i, int j) const {
    const Path& p = basis_[static_cast<std::size_t>(i)];
    const Path& q = basis_[static_cast<std::size_t>(j)];
    if (p.target() != q.source()) return zero();
    Path pq = *compose(p, q);
    if (static_cast<int>(pq.length()) <= n_)
        return AlgebraElement(*this, reduction_.at(pq));
    Vec acc = reduction_.at(p);
    for (int a : q.arrows()) acc = right_mult_[static_cast<std::size_t>(a)].apply(acc);
    return AlgebraElement(*this, std::move(acc));
}

std::vector<int> BoundQuiverAlgebra::radical_basis() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < basis_.size(); ++i)
        if (!basis_[i].is_trivial()) out.push_back(static_cast<int>(i));
    return out;
}

std::vector<int> BoundQuiverAlgebra::peirce(int i, int j) const {
    std::vector<int> out;
    for (std::size_t k = 0; k < basis_.size(); ++k)
        if (basis_[k].source() == i && basis_[k].target() == j)
            out.push_back(static_cast<int>(k));
    return out;
}

const Matrix& BoundQuiverAlgebra::right_mult_arrow(int arrow_index) const {
    return right_mult_[static_cast<std::size_t>(arrow_index)];
}

Matrix BoundQuiverAlgebra::left_mult_matrix(const AlgebraElement& x) const {
    Matrix m(field_, basis_.size(), basis_.size());
    for (std::size_t j = 0; j < basis_.size(); ++j) {
        AlgebraElement col = multiply(x, unit(static_cast<int>(j)));
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (!col.coords()[i].is_zero()) m.set(i, j, col.coords()[i]);
    }
    return m;
}

BoundQuiverAlgebra BoundQuiverAlgebra::opposite() const {
    Quiver opp = quiver().opposite();
    std::vector<PathVector> rels;
    rels.reserve(relations_.size());
    for (const PathVector& rel : relations_) {
        PathVector r(opp);
        for (const auto& [p, c] : rel.terms()) {
            std::vector<int> word(p.arrows().rbegin(), p.arrows().rend());
            r.add_term(Path::word(opp, word), c);
        }
        rels.push_back(std::move(r));
    }
    return build(std::move(opp), std::move(rels), field_, cap_);
}

QuotientAlgebra lambda_e(const BoundQuiverAlgebra& a, const Idempotent& e) {
    FieldTag f = a.field();
    std::size_t dim = static_cast<std::size_t>(a.dim());

    // span of b1 * e_v * b2 over killed vertices v
    std::vector<Vec> gens;
    for (int v = 0; v < a.quiver().vertex_count(); ++v) {
        if (e.contains(v)) continue;
        for (int i = 0; i < a.dim(); ++i) {
            if (a.basis_path(i).target() != v) continue;
            for (int j = 0; j < a.dim(); ++j) {
                if (a.basis_path(j).source() != v) continue;
                AlgebraElement prod = a.basis_product(i, j);
                if (!prod.is_zero()) gens.push_back(prod.coords());
            }
        }
    }
    QuotientAlgebra q;
    q.parent_ = &a;
    q.e_ = e;
    q.killed_ = Subspace::span(f, dim, gens);
    q.coset_basis_.clear();
    for (std::size_t np : q.killed_.non_pivots()) q.coset_basis_.push_back(static_cast<int>(np));

    int qd = q.dim();
    q.table_.assign(static_cast<std::size_t>(qd), std::vector<Vec>());
    for (int i = 0; i < qd; ++i) {
        q.table_[static_cast<std::size_t>(i)].reserve(static_cast<std::size_t>(qd));
        for (int j = 0; j < qd; ++j) {
            AlgebraElement prod = a.basis_product(q.coset_basis_[static_cast<std::size_t>(i)],
                                                  q.coset_basis_[static_cast<std::size_t>(j)]);
            q.table_[static_cast<std::size_t>(i)].push_back(q.project(prod));
        }
    }

    // the induced multiplication must associate on basis triples; check all
    // triples on small quotients, a seeded sample on large ones
    auto check_triple = [&](int i, int j, int k) {
        const Vec& xy = q.table_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        const Vec& yz = q.table_[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
        Vec lhs = vec_zero(f, static_cast<std::size_t>(qd));
        for (std::size_t m = 0; m < xy.size(); ++m)
            if (!xy[m].is_zero())
                vec_add_scaled(lhs, xy[m], q.table_[m][static_cast<std::size_t>(k)]);
        Vec rhs = vec_zero(f, static_cast<std::size_t>(qd));
        for (std::size_t m = 0; m < yz.size(); ++m)
            if (!yz[m].is_zero())
                vec_add_scaled(rhs, yz[m], q.table_[static_cast<std::size_t>(i)][m]);
        if (lhs != rhs) throw Error("internal: quotient multiplication not associative");
    };
    if (qd <= 16) {
        for (int i = 0; i < qd; ++i)
            for (int j = 0; j < qd; ++j)
                for (int k = 0; k < qd; ++k) check_triple(i, j, k);
    } else if (qd > 0) {
        std::uint64_t state = 0x9e3779b97f4a7c15ull;
        auto next = [&]() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            return state;
        };
        for (int t = 0; t < 512; ++t)
            check_triple(static_cast<int>(next() % static_cast<std::uint64_t>(qd)),
                         static_cast<int>(next() % static_cast<std::uint64_t>(qd)),
                         static_cast<int>(next() % static_cast<std::uint64_t>(qd)));
    }
    return q;
}

Vec QuotientAlgebra::project(const AlgebraElement& x) const {
    Vec reduced = killed_.reduce(x.coords());
    Vec out = vec_zero(field(), coset_basis_.size());
    for (std::size_t i = 0; i < coset_basis_.size(); ++i)
        out[i] = reduced[static_cast<std::size_t>(coset_basis_[i])];
    return out;
}

AlgebraElement QuotientAlgebra::lift(const Vec& coords) const {
    Vec full = vec_zero(field(), static_cast<std::size_t>(parent_->dim()));
    for (std::size_t i = 0; i < coset_basis_.size(); ++i)
        full[static_cast<std::size_t>(coset_basis_[i])] = coords[i];
    return AlgebraElement(*parent_, std::move(full));
}

Vec QuotientAlgebra::product_on_basis(int i, int j) const {
    return table_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
}

Vec QuotientAlgebra::multiply(const Vec& x, const Vec& y) const {
    Vec acc = vec_zero(field(), coset_basis_.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < y.size(); ++j) {
            if (y[j].is_zero()) continue;
            vec_add_scaled(acc, x[i] * y[j], table_[i][j]);
        }
    }
    return acc;
}

std::vector<int> QuotientAlgebra::radical_cosets() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < coset_basis_.size(); ++i)
        if (!parent_->basis_path(coset_basis_[i]).is_trivial())
            out.push_back(static_cast<int>(i));
    return out;
}

int QuotientAlgebra::vertex_coset(int v) const {
    int idx = parent_->basis_index(Path::trivial(v));
    for (std::size_t i = 0; i < coset_basis_.size(); ++i)
        if (coset_basis_[i] == idx) return static_cast<int>(i);
    return -1;
}

std::string QuotientAlgebra::coset_str(int i) const {
    return parent_->basis_path(coset_basis_[static_cast<std::size_t>(i)]).str(parent_->quiver());
}

PresentedQuotient present(const QuotientAlgebra& q) {
    const BoundQuiverAlgebra& par = q.parent();
    FieldTag f = q.field();
    int qd = q.dim();

    // surviving vertices, in parent order
    std::vector<int> vertex_parent;
    std::vector<std::string> vnames;
    for (int v = 0; v < par.quiver().vertex_count(); ++v)
        if (q.vertex_coset(v) >= 0) {
            vertex_parent.push_back(v);
            vnames.push_back(par.quiver().vertex_name(v));
        }

    std::vector<int> rad = q.radical_cosets();
    auto in_span = [&](const std::vector<int>& idxs) {
        std::vector<Vec> vs;
        for (int i : idxs) {
            Vec v = vec_zero(f, static_cast<std::size_t>(qd));
            v[static_cast<std::size_t>(i)] = Scalar::one(f);
            vs.push_back(std::move(v));
        }
        return vs;
    };
    // powers of the radical until they vanish
    std::vector<Vec> rad_span = in_span(rad);
    std::vector<Vec> power = rad_span;
    int nilp = 1;
    while (!power.empty()) {
        std::vector<Vec> next;
        for (const Vec& x : power)
            for (const Vec& r : rad_span) {
                Vec p = q.multiply(x, r);
                if (!vec_is_zero(p)) next.push_back(std::move(p));
            }
        Subspace sp = Subspace::span(f, static_cast<std::size_t>(qd), next);
        power.clear();
        for (std::size_t i = 0; i < sp.dim(); ++i) power.push_back(sp.basis().row(i));
        ++nilp;
        if (nilp > qd + 2) throw Error("internal: quotient radical fails to be nilpotent");
    }

    // rad^2 as a subspace, then arrows = complement of rad^2 in rad per block
    std::vector<Vec> rad2_gens;
    for (int i : rad)
        for (int j : rad) {
            Vec p = q.product_on_basis(i, j);
            if (!vec_is_zero(p)) rad2_gens.push_back(std::move(p));
        }
    Subspace rad2 = Subspace::span(f, static_cast<std::size_t>(qd), rad2_gens);

    std::vector<Arrow> arrows;
    std::vector<Vec> arrow_images; // class of each arrow in the quotient
    for (std::size_t sv = 0; sv < vertex_parent.size(); ++sv)
        for (std::size_t tv = 0; tv < vertex_parent.size(); ++tv) {
            std::vector<int> block;
            for (int i : rad) {
                const Path& rep = par.basis_path(q.coset_parent_index(i));
                if (rep.source() == vertex_parent[sv] && rep.target() == vertex_parent[tv])
                    block.push_back(i);
            }
            if (block.empty()) continue;
            // rad^2 restricted to the block coordinates
            std::vector<Vec> sub;
            for (std::size_t r = 0; r < rad2.dim(); ++r) {
                Vec row = rad2.basis().row(r);
                Vec local = vec_zero(f, block.size());
                bool in_block = false, off_block = false;
                for (int bi = 0; bi < qd; ++bi) {
                    if (row[static_cast<std::size_t>(bi)].is_zero()) continue;
                    auto it = std::find(block.begin(), block.end(), bi);
                    if (it == block.end())
                        off_block = true;
                    else {
                        local[static_cast<std::size_t>(it - block.begin())] =
                            row[static_cast<std::size_t>(bi)];
                        in_block = true;
                    }
                }
                if (in_block && off_block)
                    throw Error("internal: radical square mixes Peirce blocks");
                if (in_block) sub.push_back(std::move(local));
            }
            Subspace rad2_block = Subspace::span(f, block.size(), sub);
            for (std::size_t np : rad2_block.non_pivots()) {
                int coset = block[np];
                const Path& rep = par.basis_path(q.coset_parent_index(coset));
                arrows.push_back(Arrow{rep.str(par.quiver()), static_cast<int>(sv),
                                       static_cast<int>(tv)});
                Vec img = vec_zero(f, static_cast<std::size_t>(qd));
                img[static_cast<std::size_t>(coset)] = Scalar::one(f);
                arrow_images.push_back(std::move(img));
            }
        }

    Quiver nq(vnames, arrows);

    // evaluate paths of the new quiver in the quotient
    auto evaluate = [&](const Path& p) {
        Vec acc = vec_zero(f, static_cast<std::size_t>(qd));
        int vc = q.vertex_coset(vertex_parent[static_cast<std::size_t>(p.source())]);
        acc[static_cast<std::size_t>(vc)] = Scalar::one(f);
        for (int a : p.arrows()) acc = q.multiply(acc, arrow_images[static_cast<std::size_t>(a)]);
        return acc;
    };

    // relations: kernel of evaluation on paths of length 2..nilp per endpoints
    std::vector<PathVector> rels;
    int max_len = std::max(nilp, 2);
    std::vector<Path> long_paths;
    for (int l = 2; l <= max_len; ++l) {
        std::vector<Path> layer = paths_of_length(nq, static_cast<std::size_t>(l));
        long_paths.insert(long_paths.end(), layer.begin(), layer.end());
    }
    for (int sv = 0; sv < nq.vertex_count(); ++sv)
        for (int tv = 0; tv < nq.vertex_count(); ++tv) {
            std::vector<Path> block;
            for (const Path& p : long_paths)
                if (p.source() == sv && p.target() == tv) block.push_back(p);
            if (block.empty()) continue;
            Matrix eval(f, static_cast<std::size_t>(qd), block.size());
            for (std::size_t c = 0; c < block.size(); ++c) {
                Vec col = evaluate(block[c]);
                for (std::size_t r = 0; r < col.size(); ++r)
                    if (!col[r].is_zero()) eval.set(r, c, col[r]);
            }
            Subspace ker = kernel_basis(eval);
            for (std::size_t r = 0; r < ker.dim(); ++r) {
                PathVector rel(nq);
                Vec row = ker.basis().row(r);
                for (std::size_t c = 0; c < block.size(); ++c)
                    if (!row[c].is_zero()) rel.add_term(block[c], row[c]);
                rels.push_back(std::move(rel));
            }
        }

    PresentedQuotient out{BoundQuiverAlgebra::build(nq, rels, f, max_len + 1),
                          std::move(vertex_parent), nilp};
    if (out.algebra.dim() != qd)
        throw Error("internal: extracted presentation has wrong dimension");
    return out;
}

} // namespace qalg
