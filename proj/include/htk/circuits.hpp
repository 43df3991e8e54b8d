#pragma once

#include <algorithm>
#include <vector>

#include "htk/config.hpp"

namespace htk {

// A minimal linearly dependent subset of a configuration, carrying its
// coefficient vector (unique up to a global sign; normalized so that the
// smallest support index has a positive coefficient) and, once a stability
// covector has been supplied, the induced splitting S = S+ u S-.
struct Circuit {
    std::vector<int> support;       // sorted indices, 0-based
    std::vector<Int> coefficients;  // length n, zero off support
    std::vector<int> s_plus;        // populated by circuit_splitting
    std::vector<int> s_minus;

    bool has_splitting() const { return !s_plus.empty() || !s_minus.empty(); }

    friend bool operator==(const Circuit& a, const Circuit& b) {
        return a.support == b.support && a.coefficients == b.coefficients;
    }
};

namespace detail {

inline bool subset_dependent(const IntMatrix& m, const std::vector<int>& idx) {
    return rank(m.submatrix_cols(idx)) < int(idx.size());
}

// Coefficient vector (length n) of a circuit: the primitive kernel vector of
// the support columns, sign-normalized.
inline std::vector<Int> circuit_coefficients(const IntMatrix& m, const std::vector<int>& support, int n) {
    IntMatrix ker = kernel_basis(m.submatrix_cols(support));
    // A circuit's support submatrix has nullity exactly 1.
    std::vector<Int> a(n, 0);
    for (int r = 0; r < int(support.size()); ++r) a[support[r]] = ker(r, 0);
    if (a[support[0]] < 0)
        for (Int& x : a) x = checked_neg(x);
    return a;
}

} // namespace detail

// All circuits of the configuration, each exactly once, ordered by
// lexicographic comparison of sorted supports.
inline std::vector<Circuit> circuits(const VectorConfig& cfg) {
    const int n = cfg.n();
    IntMatrix m = cfg.matrix();
    const int r = rank(m);
    std::vector<Circuit> out;

    // Circuits have size at most rank+1; enumerate subsets by size.
    std::vector<int> idx;
    for (int size = 1; size <= std::min(n, r + 1); ++size) {
        idx.assign(size, 0);
        for (int i = 0; i < size; ++i) idx[i] = i;
        for (;;) {
            if (detail::subset_dependent(m, idx)) {
                bool minimal = true;
                if (size > 1) {
                    std::vector<int> sub(size - 1);
                    for (int drop = 0; drop < size && minimal; ++drop) {
                        int p = 0;
                        for (int i = 0; i < size; ++i)
                            if (i != drop) sub[p++] = idx[i];
                        if (detail::subset_dependent(m, sub)) minimal = false;
                    }
                }
                if (minimal) {
                    Circuit c;
                    c.support = idx;
                    c.coefficients = detail::circuit_coefficients(m, idx, n);
                    out.push_back(std::move(c));
                }
            }
            int i = size - 1;
            while (i >= 0 && idx[i] == n - size + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    std::sort(out.begin(), out.end(),
              [](const Circuit& a, const Circuit& b) { return a.support < b.support; });
    return out;
}

// Fixes the splitting S+ = {i : a_i > 0}, S- = {i : a_i < 0}, flipping the
// global sign so that the sign vector beta_S pairs positively with the
// stability covector. Pairing exactly zero is refused: no splitting is
// determined then.
inline Circuit circuit_splitting(const Circuit& c, const std::vector<Rational>& alpha_hat) {
    Rational pairing(0);
    for (int i : c.support) {
        if (i >= int(alpha_hat.size())) throw dimension_mismatch("alpha_hat too short for circuit support");
        int s = c.coefficients[i] > 0 ? 1 : -1;
        pairing += (s > 0 ? alpha_hat[i] : -alpha_hat[i]);
    }
    if (pairing.is_zero())
        throw non_generic_alpha("stability covector pairs to zero on circuit");
    Circuit out = c;
    bool flip = pairing.sign() < 0;
    if (flip)
        for (Int& x : out.coefficients) x = checked_neg(x);
    out.s_plus.clear();
    out.s_minus.clear();
    for (int i : out.support)
        (out.coefficients[i] > 0 ? out.s_plus : out.s_minus).push_back(i);
    return out;
}

} // namespace htk
