#include "flexcert/matrix.hpp"

#include "flexcert/errors.hpp"

namespace flexcert {

Vector Vector::unit(std::size_t size, std::size_t index) {
    Vector e(size);
    e[index] = 1;
    return e;
}

const Scalar& Vector::at(std::size_t i) const {
    if (i >= entries_.size()) throw UsageError("vector index out of range");
    return entries_[i];
}

bool Vector::is_zero() const {
    for (const auto& x : entries_)
        if (sgn(x) != 0) return false;
    return true;
}

Vector& Vector::operator+=(const Vector& other) {
    if (other.size() != size()) throw UsageError("vector length mismatch");
    for (std::size_t i = 0; i < size(); ++i) entries_[i] += other.entries_[i];
    return *this;
}

Vector& Vector::operator-=(const Vector& other) {
    if (other.size() != size()) throw UsageError("vector length mismatch");
    for (std::size_t i = 0; i < size(); ++i) entries_[i] -= other.entries_[i];
    return *this;
}

Vector& Vector::operator*=(const Scalar& factor) {
    for (auto& x : entries_) x *= factor;
    return *this;
}

Vector& Vector::add_scaled(const Scalar& factor, const Vector& other) {
    if (other.size() != size()) throw UsageError("vector length mismatch");
    if (sgn(factor) == 0) return *this;
    for (std::size_t i = 0; i < size(); ++i)
        if (sgn(other.entries_[i]) != 0) entries_[i] += factor * other.entries_[i];
    return *this;
}

Vector operator+(Vector a, const Vector& b) { return a += b; }
Vector operator-(Vector a, const Vector& b) { return a -= b; }
Vector operator-(Vector a) { return a *= Scalar(-1); }
Vector operator*(const Scalar& factor, Vector a) { return a *= factor; }

Scalar dot(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw UsageError("vector length mismatch");
    Scalar sum = 0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
    return sum;
}

std::string to_string(const Vector& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += format_scalar(v[i]);
    }
    return out + ")";
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Scalar>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    entries_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw UsageError("ragged matrix literal");
        entries_.insert(entries_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t size) {
    Matrix m(size, size);
    for (std::size_t i = 0; i < size; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw UsageError("row length mismatch");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& columns, std::size_t rows) {
    Matrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != rows) throw UsageError("column length mismatch");
        for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
    }
    return m;
}

Vector Matrix::row(std::size_t r) const {
    Vector v(cols_);
    for (std::size_t c = 0; c < cols_; ++c) v[c] = (*this)(r, c);
    return v;
}

Vector Matrix::column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

bool Matrix::is_zero() const {
    for (const auto& x : entries_)
        if (sgn(x) != 0) return false;
    return true;
}

Vector operator*(const Matrix& m, const Vector& v) {
    if (m.cols() != v.size()) throw UsageError("matrix-vector dimension mismatch");
    Vector out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Scalar sum = 0;
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (sgn(m(r, c)) != 0 && sgn(v[c]) != 0) sum += m(r, c) * v[c];
        out[r] = sum;
    }
    return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw UsageError("matrix-matrix dimension mismatch");
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (sgn(a(i, k)) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
        }
    return out;
}

std::string to_string(const Matrix& m) {
    std::string out = "[";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (r) out += ", ";
        out += to_string(m.row(r));
    }
    return out + "]";
}

}  // namespace flexcert
