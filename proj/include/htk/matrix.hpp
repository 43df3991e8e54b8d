#pragma once

#include <initializer_list>
#include <ostream>
#include <vector>

#include "htk/numeric.hpp"

namespace htk {

// Dense integer matrix with checked arithmetic. Row-major.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols, 0) {
        if (rows < 0 || cols < 0) throw dimension_mismatch("negative matrix dimension");
    }
    IntMatrix(std::initializer_list<std::initializer_list<Int>> rows) {
        rows_ = int(rows.size());
        cols_ = rows_ == 0 ? 0 : int(rows.begin()->size());
        data_.reserve(std::size_t(rows_) * cols_);
        for (const auto& r : rows) {
            if (int(r.size()) != cols_) throw dimension_mismatch("ragged initializer");
            for (Int v : r) data_.push_back(v);
        }
    }

    static IntMatrix identity(int n) {
        IntMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int& operator()(int i, int j) { return data_[std::size_t(i) * cols_ + j]; }
    Int operator()(int i, int j) const { return data_[std::size_t(i) * cols_ + j]; }

    Int at(int i, int j) const {
        if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw dimension_mismatch("index out of range");
        return (*this)(i, j);
    }

    std::vector<Int> row(int i) const {
        std::vector<Int> r(cols_);
        for (int j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
        return r;
    }
    std::vector<Int> col(int j) const {
        std::vector<Int> c(rows_);
        for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    IntMatrix submatrix_cols(const std::vector<int>& cols) const {
        IntMatrix s(rows_, int(cols.size()));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < int(cols.size()); ++j) s(i, j) = at(i, cols[j]);
        return s;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        if (a.cols_ != b.rows_) throw dimension_mismatch("matrix product shape");
        IntMatrix c(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                Int aik = a(i, k);
                if (aik == 0) continue;
                for (int j = 0; j < b.cols_; ++j)
                    c(i, j) = checked_add(c(i, j), checked_mul(aik, b(k, j)));
            }
        return c;
    }

    std::vector<Int> apply(const std::vector<Int>& x) const {
        if (int(x.size()) != cols_) throw dimension_mismatch("matrix-vector shape");
        std::vector<Int> y(rows_, 0);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                y[i] = checked_add(y[i], checked_mul((*this)(i, j), x[j]));
        return y;
    }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const IntMatrix& a, const IntMatrix& b) { return !(a == b); }

    bool is_zero() const {
        for (Int v : data_) if (v != 0) return false;
        return true;
    }

    void swap_rows(int i, int j) {
        for (int c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
    }
    void swap_cols(int i, int j) {
        for (int r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
    }
    // row(i) += f * row(j)
    void add_row_multiple(int i, int j, Int f) {
        for (int c = 0; c < cols_; ++c)
            (*this)(i, c) = checked_add((*this)(i, c), checked_mul(f, (*this)(j, c)));
    }
    // col(i) += f * col(j)
    void add_col_multiple(int i, int j, Int f) {
        for (int r = 0; r < rows_; ++r)
            (*this)(r, i) = checked_add((*this)(r, i), checked_mul(f, (*this)(r, j)));
    }
    void negate_row(int i) {
        for (int c = 0; c < cols_; ++c) (*this)(i, c) = checked_neg((*this)(i, c));
    }
    void negate_col(int j) {
        for (int r = 0; r < rows_; ++r) (*this)(r, j) = checked_neg((*this)(r, j));
    }

    friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
        os << "[";
        for (int i = 0; i < m.rows_; ++i) {
            os << (i ? "; " : "");
            for (int j = 0; j < m.cols_; ++j) os << (j ? " " : "") << m(i, j);
        }
        return os << "]";
    }

private:
    int rows_;
    int cols_;
    std::vector<Int> data_;
};

// Exact determinant by fraction-free (Bareiss) elimination.
inline Int determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw dimension_mismatch("determinant of non-square matrix");
    int n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (a(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                Int num = checked_sub(checked_mul(a(i, j), a(k, k)), checked_mul(a(i, k), a(k, j)));
                a(i, j) = num / prev; // exact division in Bareiss
            }
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    Int d = a(n - 1, n - 1);
    return sign > 0 ? d : checked_neg(d);
}

// Rank over Q (equals the rank over Z as a linear map).
inline int rank(const IntMatrix& m) {
    IntMatrix a = m;
    int rows = a.rows(), cols = a.cols();
    int r = 0;
    Int prev = 1;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (a(i, c) != 0) { p = i; break; }
        if (p < 0) continue;
        a.swap_rows(r, p);
        for (int i = r + 1; i < rows; ++i) {
            for (int j = c + 1; j < cols; ++j) {
                Int num = checked_sub(checked_mul(a(i, j), a(r, c)), checked_mul(a(i, c), a(r, j)));
                a(i, j) = num / prev;
            }
            a(i, c) = 0;
        }
        prev = a(r, c);
        ++r;
    }
    return r;
}

} // namespace htk
