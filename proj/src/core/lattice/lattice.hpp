#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <vector>

namespace gjsum::lattice {

using Integer = mpz_class;

// Dense integer matrix, row-major; rows are lattice generators.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n);
    static Matrix from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    std::span<Integer> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const Integer> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    void append_row(std::span<const Integer> values);
    void swap_rows(std::size_t a, std::size_t b);
    // row[target] += factor * row[source]
    void add_row_multiple(std::size_t target, std::size_t source, const Integer& factor);
    Matrix columns(std::size_t first, std::size_t count) const;
    Matrix operator*(const Matrix& other) const;

    friend bool operator==(const Matrix& a, const Matrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

// Row Hermite normal form of the lattice spanned by the rows: zero rows dropped,
// pivots positive and strictly increasing in column, entries above a pivot in [0, pivot).
Matrix hermite_form(const Matrix& m);

std::size_t rank(const Matrix& m);

// Basis of the lattice {y in Z^rows : y * m = 0}.
Matrix left_kernel(const Matrix& m);

// Membership of v in the row lattice of a Hermite form basis.
bool contains(const Matrix& hermite, std::span<const Integer> v);

// Covolume of a full-rank lattice in Z^cols (index in Z^cols); 0 when the rank is deficient.
Integer covolume(const Matrix& m);

}  // namespace gjsum::lattice
