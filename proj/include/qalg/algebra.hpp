#pragma once

#include <map>
#include <memory>
#include <unordered_map>
#include <vector>

#include "qalg/linalg.hpp"
#include "qalg/quiver.hpp"

namespace qalg {

/// No admissibility degree n <= cap certifies (kQ+)^n inside the ideal.
struct NotAdmissibleError : Error {
    explicit NotAdmissibleError(int cap)
        : Error("ideal not certified admissible within degree cap " + std::to_string(cap)),
          cap(cap) {}
    int cap;
};

/// A relation with a term of length < 2 or mixed endpoints.
struct MalformedRelationError : Error {
    explicit MalformedRelationError(const std::string& what) : Error(what) {}
};

/// Sparse vector over paths, greatest path (length-lex) first.
using SparsePathRow = std::map<Path, Scalar, PathGreater>;

class BoundQuiverAlgebra;

/// An element of the algebra in normal-path coordinates.
class AlgebraElement {
public:
    AlgebraElement() = default;
    AlgebraElement(const BoundQuiverAlgebra& a, Vec coords);

    const Vec& coords() const { return coords_; }
    const BoundQuiverAlgebra& algebra() const { return *algebra_; }
    bool is_zero() const { return vec_is_zero(coords_); }

    AlgebraElement operator+(const AlgebraElement& o) const;
    AlgebraElement operator-(const AlgebraElement& o) const;
    AlgebraElement operator-() const;
    AlgebraElement operator*(const AlgebraElement& o) const; // algebra product
    AlgebraElement scaled(const Scalar& c) const;
    bool operator==(const AlgebraElement& o) const { return coords_ == o.coords_; }

    std::string str() const;

private:
    const BoundQuiverAlgebra* algebra_ = nullptr;
    Vec coords_;
};

/// A sum of vertex (trivial-path) idempotents, given by its vertex set.
struct Idempotent {
    std::vector<int> vertices; // sorted, unique

    static Idempotent of(std::vector<int> vs);
    static Idempotent all(const Quiver& q);
    bool contains(int v) const;
    bool operator==(const Idempotent&) const = default;
};

/// The bound quiver algebra kQ/I, compiled to a normal-path basis. The
/// nilpotency degree n is the least certified degree with every length-n
/// path in the ideal; normal paths all have length < n.
///
/// The quiver lives behind a shared pointer, so algebra values may be moved
/// and copied freely; elements and quotients keep a raw pointer to the
/// algebra that made them and require it to stay in place.
class BoundQuiverAlgebra {
public:
    /// Compiles (Q, I) by row-reducing the ideal span degree by degree under
    /// the length-lex order. Throws NotAdmissibleError when no degree
    /// n <= cap closes the ideal, MalformedRelationError on bad input.
    static BoundQuiverAlgebra build(const Quiver& q, const std::vector<PathVector>& relations,
                                    FieldTag field, int cap = 30);

    const Quiver& quiver() const { return *quiver_; }
    FieldTag field() const { return field_; }
    int nilpotency_degree() const { return n_; }
    int cap() const { return cap_; }
    const std::vector<PathVector>& relations() const { return relations_; }

    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<Path>& basis() const { return basis_; }
    const Path& basis_path(int i) const { return basis_[static_cast<std::size_t>(i)]; }
    int basis_index(const Path& p) const; // -1 when p is not a normal path

    /// Normal form of any path of length <= n.
    AlgebraElement reduce_path(const Path& p) const;

    AlgebraElement zero() const;
    AlgebraElement one() const;
    AlgebraElement unit(int basis_idx) const;
    AlgebraElement vertex_idempotent(int v) const;
    AlgebraElement element(const Idempotent& e) const;
    AlgebraElement from_path_vector(const PathVector& pv) const;

    AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y) const;
    /// Product of two basis elements, via the reduction table when the
    /// concatenation stays within length n.
    AlgebraElement basis_product(int i, int j) const;

    /// Basis indices of the Jacobson radical: the nontrivial normal paths.
    std::vector<int> radical_basis() const;
    /// Basis indices of paths from vertex i to vertex j.
    std::vector<int> peirce(int i, int j) const;

    /// Matrix of right multiplication by the arrow, on basis coordinates.
    const Matrix& right_mult_arrow(int arrow_index) const;
    /// Matrix of left multiplication by x, on basis coordinates.
    Matrix left_mult_matrix(const AlgebraElement& x) const;

    /// The opposite algebra: arrows reversed, relation words reversed.
    BoundQuiverAlgebra opposite() const;

    /// Row-reduced span of the degree-truncated ideal, pivot path first per
    /// row; rows are endpoint-homogeneous.
    const std::vector<SparsePathRow>& ideal_rows() const { return ideal_rows_; }

    bool operator==(const BoundQuiverAlgebra& o) const = delete;

private:
    BoundQuiverAlgebra() = default;

    std::shared_ptr<const Quiver> quiver_;
    std::vector<PathVector> relations_;
    FieldTag field_ = FieldTag::rationals();
    int n_ = 2;
    int cap_ = 30;
    std::vector<Path> basis_;
    std::unordered_map<Path, int, PathHash> basis_lookup_;
    std::unordered_map<Path, Vec, PathHash> reduction_; // path of length <= n -> coords
    std::vector<Matrix> right_mult_;                    // per arrow
    std::vector<SparsePathRow> ideal_rows_;
};

/// The quotient algebra by the two-sided ideal generated by the trivial
/// paths outside e; basis cosets are the surviving normal paths.
class QuotientAlgebra {
public:
    const BoundQuiverAlgebra& parent() const { return *parent_; }
    const Idempotent& idempotent() const { return e_; }
    FieldTag field() const { return parent_->field(); }

    int dim() const { return static_cast<int>(coset_basis_.size()); }
    const Subspace& killed_ideal() const { return killed_; }
    /// Parent basis index represented by coset i.
    int coset_parent_index(int i) const { return coset_basis_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& coset_basis() const { return coset_basis_; }

    /// Quotient coordinates of the class of x.
    Vec project(const AlgebraElement& x) const;
    /// Canonical representative of a coordinate vector.
    AlgebraElement lift(const Vec& coords) const;

    Vec product_on_basis(int i, int j) const;
    Vec multiply(const Vec& x, const Vec& y) const;

    /// Coset indices whose representative is a nontrivial path.
    std::vector<int> radical_cosets() const;
    /// Coset index of the class of a trivial path, or -1 when killed.
    int vertex_coset(int v) const;

    std::string coset_str(int i) const;

private:
    friend QuotientAlgebra lambda_e(const BoundQuiverAlgebra& a, const Idempotent& e);

    const BoundQuiverAlgebra* parent_ = nullptr;
    Idempotent e_;
    Subspace killed_;
    std::vector<int> coset_basis_;
    std::vector<std::vector<Vec>> table_; // product table on cosets
};

/// The quotient by the ideal generated by 1 - e. The induced multiplication
/// is verified associative on basis triples at construction.
QuotientAlgebra lambda_e(const BoundQuiverAlgebra& a, const Idempotent& e);

/// A bound-quiver presentation extracted from a quotient algebra: the
/// Gabriel quiver on the surviving vertices with arrows a basis of rad/rad^2
/// and relations the kernel of the evaluation map.
struct PresentedQuotient {
    BoundQuiverAlgebra algebra;
    std::vector<int> vertex_parent; // new vertex index -> parent vertex index
    int radical_nilpotency = 1;     // least N with rad^N = 0 in the quotient
};

PresentedQuotient present(const QuotientAlgebra& q);

} // namespace qalg
