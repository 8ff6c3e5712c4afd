#include "lattice/lattice.hpp"

#include <algorithm>

#include "util/error.hpp"

namespace gjsum::lattice {

Matrix Matrix::identity(std::size_t n) {
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = 1;
    return out;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols) {
    Matrix out(0, cols);
    for (const auto& r : rows) out.append_row(r);
    return out;
}

void Matrix::append_row(std::span<const Integer> values) {
    if (values.size() != cols_) fail(ErrorCode::InvalidArgument, "row length does not match column count");
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
}

void Matrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(row(a).begin(), row(a).end(), row(b).begin());
}

void Matrix::add_row_multiple(std::size_t target, std::size_t source, const Integer& factor) {
    if (factor == 0) return;
    auto t = row(target);
    auto s = row(source);
    for (std::size_t j = 0; j < cols_; ++j) {
        if (s[j] != 0) t[j] += factor * s[j];
    }
}

Matrix Matrix::columns(std::size_t first, std::size_t count) const {
    Matrix out(rows_, count);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < count; ++j) out(i, j) = (*this)(i, first + j);
    }
    return out;
}

Matrix Matrix::operator*(const Matrix& other) const {
    if (cols_ != other.rows_) fail(ErrorCode::InvalidArgument, "matrix shapes do not match");
    Matrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const auto& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += a * other(k, j);
        }
    }
    return out;
}

namespace {

// Unimodular row reduction to echelon form over the first `width` columns. Pivots are
// chosen of least absolute value, which keeps the transformation entries small.
// Returns the number of pivot rows; they occupy the top of the matrix.
std::size_t echelon(Matrix& m, std::size_t width) {
    std::size_t top = 0;
    for (std::size_t col = 0; col < width && top < m.rows(); ++col) {
        while (true) {
            std::size_t best = m.rows();
            for (std::size_t i = top; i < m.rows(); ++i) {
                if (m(i, col) == 0) continue;
                if (best == m.rows() || abs(m(i, col)) < abs(m(best, col))) best = i;
            }
            if (best == m.rows()) break;
            m.swap_rows(top, best);
            bool done = true;
            for (std::size_t i = top + 1; i < m.rows(); ++i) {
                if (m(i, col) == 0) continue;
                Integer factor;
                mpz_fdiv_q(factor.get_mpz_t(), m(i, col).get_mpz_t(), m(top, col).get_mpz_t());
                m.add_row_multiple(i, top, -factor);
                if (m(i, col) != 0) done = false;
            }
            if (done) {
                ++top;
                break;
            }
        }
    }
    return top;
}

bool is_zero_row(std::span<const Integer> r) {
    return std::all_of(r.begin(), r.end(), [](const Integer& x) { return x == 0; });
}

}  // namespace

Matrix hermite_form(const Matrix& m) {
    Matrix work = m;
    const std::size_t count = echelon(work, work.cols());
    Matrix out(0, m.cols());
    for (std::size_t i = 0; i < count; ++i) out.append_row(work.row(i));
    std::size_t col = 0;
    for (std::size_t i = 0; i < out.rows(); ++i) {
        while (out(i, col) == 0) ++col;
        if (out(i, col) < 0) {
            for (auto& x : out.row(i)) x = -x;
        }
        for (std::size_t k = 0; k < i; ++k) {
            Integer factor;
            mpz_fdiv_q(factor.get_mpz_t(), out(k, col).get_mpz_t(), out(i, col).get_mpz_t());
            out.add_row_multiple(k, i, -factor);
        }
    }
    return out;
}

std::size_t rank(const Matrix& m) {
    Matrix work = m;
    return echelon(work, work.cols());
}

Matrix left_kernel(const Matrix& m) {
    const std::size_t n = m.rows();
    Matrix work(n, m.cols() + n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) work(i, j) = m(i, j);
        work(i, m.cols() + i) = 1;
    }
    const std::size_t pivots = echelon(work, m.cols());
    Matrix out(0, n);
    for (std::size_t i = pivots; i < n; ++i) {
        if (!is_zero_row(work.row(i).subspan(0, m.cols()))) fail(ErrorCode::Internal, "echelon left a nonzero row");
        out.append_row(work.row(i).subspan(m.cols()));
    }
    return out;
}

bool contains(const Matrix& hermite, std::span<const Integer> v) {
    if (v.size() != hermite.cols()) fail(ErrorCode::InvalidArgument, "vector length does not match lattice");
    std::vector<Integer> rest(v.begin(), v.end());
    std::size_t col = 0;
    for (std::size_t i = 0; i < hermite.rows(); ++i) {
        while (hermite(i, col) == 0) {
            if (rest[col] != 0) return false;
            ++col;
        }
        if (rest[col] % hermite(i, col) != 0) return false;
        const Integer factor = rest[col] / hermite(i, col);
        for (std::size_t j = col; j < rest.size(); ++j) rest[j] -= factor * hermite(i, j);
        ++col;
    }
    return std::all_of(rest.begin(), rest.end(), [](const Integer& x) { return x == 0; });
}

Integer covolume(const Matrix& m) {
    const auto h = hermite_form(m);
    if (h.rows() != m.cols()) return 0;
    Integer det = 1;
    for (std::size_t i = 0; i < h.rows(); ++i) det *= h(i, i);
    return det;
}

}  // namespace gjsum::lattice
