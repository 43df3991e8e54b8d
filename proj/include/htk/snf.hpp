#pragma once

#include <optional>
#include <tuple>
#include <vector>

#include "htk/matrix.hpp"

namespace htk {

// Result of Smith normal form: u * m * v == d, with u, v unimodular and d
// diagonal whose nonzero entries d_1 | d_2 | ... are nonnegative.
struct SmithForm {
    IntMatrix u;
    IntMatrix d;
    IntMatrix v;

    int rank() const {
        int r = 0;
        int n = std::min(d.rows(), d.cols());
        for (int i = 0; i < n; ++i)
            if (d(i, i) != 0) ++r;
        return r;
    }
    std::vector<Int> invariant_factors() const {
        std::vector<Int> f;
        int n = std::min(d.rows(), d.cols());
        for (int i = 0; i < n; ++i)
            if (d(i, i) != 0) f.push_back(d(i, i));
        return f;
    }
};

inline SmithForm smith_normal_form(const IntMatrix& m) {
    IntMatrix a = m;
    IntMatrix u = IntMatrix::identity(m.rows());
    IntMatrix v = IntMatrix::identity(m.cols());
    int n = std::min(m.rows(), m.cols());

    for (int t = 0; t < n; ++t) {
        // Locate a pivot of minimal absolute value in the remaining block.
        int pi = -1, pj = -1;
        Int best = 0;
        for (int i = t; i < a.rows(); ++i)
            for (int j = t; j < a.cols(); ++j) {
                Int x = abs_int(a(i, j));
                if (x != 0 && (pi < 0 || x < best)) {
                    pi = i;
                    pj = j;
                    best = x;
                }
            }
        if (pi < 0) break; // remaining block is zero
        if (pi != t) { a.swap_rows(t, pi); u.swap_rows(t, pi); }
        if (pj != t) { a.swap_cols(t, pj); v.swap_cols(t, pj); }

        for (;;) {
            bool clean = true;
            for (int i = t + 1; i < a.rows(); ++i) {
                if (a(i, t) == 0) continue;
                Int q = a(i, t) / a(t, t);
                if (q != 0) { a.add_row_multiple(i, t, checked_neg(q)); u.add_row_multiple(i, t, checked_neg(q)); }
                if (a(i, t) != 0) {
                    a.swap_rows(t, i);
                    u.swap_rows(t, i);
                    clean = false;
                }
            }
            for (int j = t + 1; j < a.cols(); ++j) {
                if (a(t, j) == 0) continue;
                Int q = a(t, j) / a(t, t);
                if (q != 0) { a.add_col_multiple(j, t, checked_neg(q)); v.add_col_multiple(j, t, checked_neg(q)); }
                if (a(t, j) != 0) {
                    a.swap_cols(t, j);
                    v.swap_cols(t, j);
                    clean = false;
                }
            }
            if (!clean) continue;
            // Divisibility: the pivot must divide every remaining entry.
            bool fixed = true;
            for (int i = t + 1; i < a.rows() && fixed; ++i)
                for (int j = t + 1; j < a.cols() && fixed; ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        a.add_row_multiple(t, i, 1);
                        u.add_row_multiple(t, i, 1);
                        fixed = false;
                    }
            if (fixed) break;
        }
        if (a(t, t) < 0) { a.negate_row(t); u.negate_row(t); }
    }
    return {u, a, v};
}

// Canonical (row-style) Hermite normal form: nonzero rows first, positive
// pivots in strictly increasing columns, entries above each pivot reduced
// into [0, pivot). Unique for a given row lattice.
inline IntMatrix hermite_row_form(const IntMatrix& m) {
    IntMatrix a = m;
    int r = 0;
    for (int c = 0; c < a.cols() && r < a.rows(); ++c) {
        // Euclidean reduction of column c among rows r..end.
        for (;;) {
            int p = -1;
            Int best = 0;
            for (int i = r; i < a.rows(); ++i) {
                Int x = abs_int(a(i, c));
                if (x != 0 && (p < 0 || x < best)) { p = i; best = x; }
            }
            if (p < 0) break;
            if (p != r) a.swap_rows(r, p);
            bool done = true;
            for (int i = r + 1; i < a.rows(); ++i) {
                if (a(i, c) == 0) continue;
                Int q = a(i, c) / a(r, c);
                a.add_row_multiple(i, r, checked_neg(q));
                if (a(i, c) != 0) done = false;
            }
            if (done) break;
        }
        if (a(r, c) == 0) continue;
        if (a(r, c) < 0) a.negate_row(r);
        for (int i = 0; i < r; ++i) {
            Int q = a(i, c) / a(r, c);
            if (a(i, c) % a(r, c) < 0) q = checked_sub(q, 1); // floor
            if (q != 0) a.add_row_multiple(i, r, checked_neg(q));
        }
        ++r;
    }
    return a;
}

// Column HNF: canonical basis of the column lattice of m.
inline IntMatrix hermite_column_form(const IntMatrix& m) {
    return hermite_row_form(m.transpose()).transpose();
}

// Z-basis of the saturated integer kernel of m, as columns of the returned
// matrix, in canonical (column-HNF) form. A zero-dimensional kernel yields
// a matrix with 0 columns.
inline IntMatrix kernel_basis(const IntMatrix& m) {
    SmithForm s = smith_normal_form(m);
    int r = s.rank();
    int k = m.cols() - r;
    IntMatrix basis(m.cols(), k);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < m.cols(); ++i) basis(i, j) = s.v(i, r + j);
    IntMatrix h = hermite_column_form(basis);
    // Drop zero columns that the HNF pushed to the right (there are none for
    // a basis, but keep the shape honest).
    IntMatrix out(m.cols(), k);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < m.cols(); ++i) out(i, j) = h(i, j);
    return out;
}

// Solves a * x = b over the integers; nullopt when no integer solution exists.
inline std::optional<std::vector<Int>> solve_integer(const IntMatrix& a, const std::vector<Int>& b) {
    if (int(b.size()) != a.rows()) throw dimension_mismatch("solve_integer shape");
    SmithForm s = smith_normal_form(a);
    std::vector<Int> ub = s.u.apply(b);
    int r = s.rank();
    std::vector<Int> z(a.cols(), 0);
    for (int i = 0; i < r; ++i) {
        Int d = s.d(i, i);
        if (ub[i] % d != 0) return std::nullopt;
        z[i] = ub[i] / d;
    }
    for (int i = r; i < a.rows(); ++i)
        if (ub[i] != 0) return std::nullopt;
    return s.v.apply(z);
}

// Integer right inverse r with a * r = identity; exists iff a is surjective
// as a map of lattices (all invariant factors 1).
inline std::optional<IntMatrix> right_inverse(const IntMatrix& a) {
    SmithForm s = smith_normal_form(a);
    if (s.rank() != a.rows()) return std::nullopt;
    for (int i = 0; i < a.rows(); ++i)
        if (s.d(i, i) != 1) return std::nullopt;
    IntMatrix dplus(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i) dplus(i, i) = 1;
    return s.v * dplus * s.u;
}

} // namespace htk
