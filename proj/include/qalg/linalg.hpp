#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qalg/scalar.hpp"

namespace qalg {

using Vec = std::vector<Scalar>;

Vec vec_zero(FieldTag f, std::size_t n);
bool vec_is_zero(const Vec& v);
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Scalar& c, const Vec& v);
void vec_add_scaled(Vec& target, const Scalar& c, const Vec& v);

/// Dense row-major matrix over one exact field.
class Matrix {
public:
    Matrix() : field_(FieldTag::rationals()) {}
    Matrix(FieldTag f, std::size_t rows, std::size_t cols);
    static Matrix identity(FieldTag f, std::size_t n);
    static Matrix from_rows(FieldTag f, std::size_t cols, const std::vector<Vec>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    FieldTag field() const { return field_; }

    const Scalar& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, Scalar v);

    Vec row(std::size_t r) const;
    Vec col(std::size_t c) const;

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    bool operator==(const Matrix& o) const;

    Matrix transpose() const;
    bool is_zero() const;

    /// Matrix-vector product (column-vector convention).
    Vec apply(const Vec& x) const;

    std::string str() const;

private:
    FieldTag field_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> data_;
};

struct RrefResult {
    Matrix mat;
    std::vector<std::size_t> pivots; // pivot column per pivot row, ascending
};

/// Reduced row echelon form with leftmost-pivot, first-nonzero-row order.
RrefResult rref(const Matrix& m);

std::size_t rank(const Matrix& m);

/// Inverse of a square matrix, or nullopt when singular.
std::optional<Matrix> inverse(const Matrix& m);

/// One solution of a*x = b with free variables set to zero, or nullopt.
std::optional<Vec> solve(const Matrix& a, const Vec& b);

/// A linear subspace of k^n held as a reduced-row-echelon basis.
class Subspace {
public:
    Subspace() : basis_(FieldTag::rationals(), 0, 0) {}
    static Subspace zero(FieldTag f, std::size_t ambient);
    static Subspace span(FieldTag f, std::size_t ambient, const std::vector<Vec>& vectors);
    static Subspace row_space(const Matrix& m);

    std::size_t ambient_dim() const { return basis_.cols(); }
    std::size_t dim() const { return basis_.rows(); }
    const Matrix& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }
    std::vector<std::size_t> non_pivots() const;

    /// Coefficients expressing v over the basis rows, or nullopt.
    std::optional<Vec> membership(const Vec& v) const;
    bool contains(const Vec& v) const { return membership(v).has_value(); }

    /// Canonical representative of v modulo the subspace: the pivot
    /// coordinates are eliminated, leaving support on non-pivot coordinates.
    Vec reduce(Vec v) const;

    bool operator==(const Subspace& o) const { return basis_ == o.basis_; }

private:
    Matrix basis_;
    std::vector<std::size_t> pivots_;
};

/// Kernel {x : m x = 0} as a subspace of k^cols.
Subspace kernel_basis(const Matrix& m);

} // namespace qalg
