#include "qalg/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace qalg {

Vec vec_zero(FieldTag f, std::size_t n) { return Vec(n, Scalar::zero(f)); }

bool vec_is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

Vec vec_add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw Error("vector length mismatch");
    Vec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw Error("vector length mismatch");
    Vec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

Vec vec_scale(const Scalar& c, const Vec& v) {
    Vec r = v;
    for (auto& s : r) s *= c;
    return r;
}

void vec_add_scaled(Vec& target, const Scalar& c, const Vec& v) {
    if (target.size() != v.size()) throw Error("vector length mismatch");
    if (c.is_zero()) return;
    for (std::size_t i = 0; i < target.size(); ++i) target[i] += c * v[i];
}

Matrix::Matrix(FieldTag f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(f)) {}

Matrix Matrix::identity(FieldTag f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, Scalar::one(f));
    return m;
}

Matrix Matrix::from_rows(FieldTag f, std::size_t cols, const std::vector<Vec>& rows) {
    Matrix m(f, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw Error("row length mismatch");
        for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

void Matrix::set(std::size_t r, std::size_t c, Scalar v) {
    if (v.field() != field_) throw FieldMismatchError();
    data_[r * cols_ + c] = std::move(v);
}

Vec Matrix::row(std::size_t r) const {
    return Vec(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

Vec Matrix::col(std::size_t c) const {
    Vec v;
    v.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v.push_back(at(r, c));
    return v;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw Error("matrix shape mismatch in product");
    Matrix r(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Scalar& aik = at(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                const Scalar& bkj = o.at(k, j);
                if (bkj.is_zero()) continue;
                r.data_[i * r.cols_ + j] += aik * bkj;
            }
        }
    return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix shape mismatch in sum");
    Matrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix shape mismatch in difference");
    Matrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
    return r;
}

bool Matrix::operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && field_ == o.field_ && data_ == o.data_;
}

Matrix Matrix::transpose() const {
    Matrix r(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.set(j, i, at(i, j));
    return r;
}

bool Matrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
}

Vec Matrix::apply(const Vec& x) const {
    if (x.size() != cols_) throw Error("vector length mismatch in matrix apply");
    Vec y = vec_zero(field_, rows_);
    // column-major walk so sparse inputs skip whole columns
    for (std::size_t j = 0; j < cols_; ++j) {
        if (x[j].is_zero()) continue;
        for (std::size_t i = 0; i < rows_; ++i) {
            const Scalar& aij = at(i, j);
            if (!aij.is_zero()) y[i] += aij * x[j];
        }
    }
    return y;
}

std::string Matrix::str() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < rows_; ++i) {
        out << (i == 0 ? "[" : " ");
        for (std::size_t j = 0; j < cols_; ++j) out << (j ? " " : "[") << at(i, j).str();
        out << "]" << (i + 1 == rows_ ? "]" : "\n");
    }
    return out.str();
}

RrefResult rref(const Matrix& m) {
    Matrix a = m;
    std::vector<std::size_t> pivots;
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < a.cols() && pivot_row < a.rows(); ++col) {
        // first nonzero row at or below pivot_row
        std::size_t sel = a.rows();
        for (std::size_t r = pivot_row; r < a.rows(); ++r)
            if (!a.at(r, col).is_zero()) {
                sel = r;
                break;
            }
        if (sel == a.rows()) continue;
        if (sel != pivot_row)
            for (std::size_t j = 0; j < a.cols(); ++j) {
                Scalar tmp = a.at(sel, j);
                a.set(sel, j, a.at(pivot_row, j));
                a.set(pivot_row, j, tmp);
            }
        Scalar inv = a.at(pivot_row, col).inverse();
        for (std::size_t j = col; j < a.cols(); ++j) a.set(pivot_row, j, a.at(pivot_row, j) * inv);
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == pivot_row) continue;
            Scalar f = a.at(r, col);
            if (f.is_zero()) continue;
            for (std::size_t j = col; j < a.cols(); ++j)
                a.set(r, j, a.at(r, j) - f * a.at(pivot_row, j));
        }
        pivots.push_back(col);
        ++pivot_row;
    }
    return RrefResult{std::move(a), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    std::size_t n = m.rows();
    Matrix aug(m.field(), n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.set(i, j, m.at(i, j));
        aug.set(i, n + i, Scalar::one(m.field()));
    }
    RrefResult r = rref(aug);
    if (r.pivots.size() != n || r.pivots.back() != n - 1) return std::nullopt;
    Matrix inv(m.field(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv.set(i, j, r.mat.at(i, n + j));
    return inv;
}

std::optional<Vec> solve(const Matrix& a, const Vec& b) {
    if (b.size() != a.rows()) throw Error("right-hand side length mismatch");
    Matrix aug(a.field(), a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug.set(i, j, a.at(i, j));
        aug.set(i, a.cols(), b[i]);
    }
    RrefResult r = rref(aug);
    if (!r.pivots.empty() && r.pivots.back() == a.cols()) return std::nullopt; // inconsistent
    Vec x = vec_zero(a.field(), a.cols());
    for (std::size_t k = 0; k < r.pivots.size(); ++k) x[r.pivots[k]] = r.mat.at(k, a.cols());
    return x;
}

Subspace Subspace::zero(FieldTag f, std::size_t ambient) {
    Subspace s;
    s.basis_ = Matrix(f, 0, ambient);
    return s;
}

Subspace Subspace::span(FieldTag f, std::size_t ambient, const std::vector<Vec>& vectors) {
    return row_space(Matrix::from_rows(f, ambient, vectors));
}

Subspace Subspace::row_space(const Matrix& m) {
    RrefResult r = rref(m);
    Subspace s;
    s.pivots_ = r.pivots;
    s.basis_ = Matrix(m.field(), r.pivots.size(), m.cols());
    for (std::size_t i = 0; i < r.pivots.size(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) s.basis_.set(i, j, r.mat.at(i, j));
    return s;
}

std::vector<std::size_t> Subspace::non_pivots() const {
    std::vector<std::size_t> out;
    std::size_t k = 0;
    for (std::size_t j = 0; j < ambient_dim(); ++j) {
        if (k < pivots_.size() && pivots_[k] == j)
            ++k;
        else
            out.push_back(j);
    }
    return out;
}

std::optional<Vec> Subspace::membership(const Vec& v) const {
    if (v.size() != ambient_dim()) throw Error("ambient dimension mismatch");
    Vec rem = v;
    Vec coeffs = vec_zero(basis_.field(), dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        Scalar c = rem[pivots_[i]];
        if (c.is_zero()) continue;
        coeffs[i] = c;
        for (std::size_t j = 0; j < ambient_dim(); ++j) rem[j] -= c * basis_.at(i, j);
    }
    if (!vec_is_zero(rem)) return std::nullopt;
    return coeffs;
}

Vec Subspace::reduce(Vec v) const {
    if (v.size() != ambient_dim()) throw Error("ambient dimension mismatch");
    for (std::size_t i = 0; i < dim(); ++i) {
        const Scalar& c = v[pivots_[i]];
        if (c.is_zero()) continue;
        Scalar f = c;
        for (std::size_t j = 0; j < ambient_dim(); ++j) v[j] -= f * basis_.at(i, j);
    }
    return v;
}

Subspace kernel_basis(const Matrix& m) {
    RrefResult r = rref(m);
    std::vector<Vec> gens;
    std::size_t k = 0;
    std::vector<bool> is_pivot(m.cols(), false);
    std::vector<std::size_t> pivot_row(m.cols(), 0);
    for (std::size_t i = 0; i < r.pivots.size(); ++i) {
        is_pivot[r.pivots[i]] = true;
        pivot_row[r.pivots[i]] = i;
    }
    (void)k;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        if (is_pivot[j]) continue;
        Vec v = vec_zero(m.field(), m.cols());
        v[j] = Scalar::one(m.field());
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (is_pivot[c]) v[c] = -r.mat.at(pivot_row[c], j);
        gens.push_back(std::move(v));
    }
    return Subspace::span(m.field(), m.cols(), gens);
}

} // namespace qalg
