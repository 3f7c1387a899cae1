#pragma once

#include "flexcert/scalar.hpp"

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace flexcert {

class Vector {
public:
    Vector() = default;
    explicit Vector(std::size_t size) : entries_(size) {}
    Vector(std::initializer_list<Scalar> values) : entries_(values) {}
    explicit Vector(std::vector<Scalar> values) : entries_(std::move(values)) {}

    static Vector unit(std::size_t size, std::size_t index);

    std::size_t size() const { return entries_.size(); }
    Scalar& operator[](std::size_t i) { return entries_[i]; }
    const Scalar& operator[](std::size_t i) const { return entries_[i]; }
    const Scalar& at(std::size_t i) const;

    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }
    const std::vector<Scalar>& entries() const { return entries_; }

    bool is_zero() const;

    Vector& operator+=(const Vector& other);
    Vector& operator-=(const Vector& other);
    Vector& operator*=(const Scalar& factor);
    // this += factor * other
    Vector& add_scaled(const Scalar& factor, const Vector& other);

    friend bool operator==(const Vector& a, const Vector& b) { return a.entries_ == b.entries_; }

private:
    std::vector<Scalar> entries_;
};

Vector operator+(Vector a, const Vector& b);
Vector operator-(Vector a, const Vector& b);
Vector operator-(Vector a);
Vector operator*(const Scalar& factor, Vector a);
Scalar dot(const Vector& a, const Vector& b);

std::string to_string(const Vector& v);

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<Scalar>> rows);

    static Matrix identity(std::size_t size);
    static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
    // Columns may be empty only when rows is given explicitly.
    static Matrix from_columns(const std::vector<Vector>& columns, std::size_t rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    Vector row(std::size_t r) const;
    Vector column(std::size_t c) const;
    Matrix transpose() const;
    bool is_zero() const;

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> entries_;
};

Vector operator*(const Matrix& m, const Vector& v);
Matrix operator*(const Matrix& a, const Matrix& b);

std::string to_string(const Matrix& m);

}  // namespace flexcert
