#pragma once

// Shared helpers for the test suites. The oracles here are deliberately
// independent of the library's linear algebra: determinants by Laplace
// expansion, ranks by maximal nonzero minors, circuits by exhaustive subset
// scans with Cramer coefficients.

#include <algorithm>
#include <random>
#include <vector>

#include "htk/htk.hpp"

namespace testsupport {

using htk::Int;
using htk::IntMatrix;

inline Int det_laplace(const IntMatrix& m) {
    int n = m.rows();
    if (n == 0) return 1;
    if (n == 1) return m(0, 0);
    Int total = 0;
    for (int j = 0; j < n; ++j) {
        if (m(0, j) == 0) continue;
        IntMatrix minor(n - 1, n - 1);
        for (int r = 1; r < n; ++r) {
            int cc = 0;
            for (int c = 0; c < n; ++c) {
                if (c == j) continue;
                minor(r - 1, cc++) = m(r, c);
            }
        }
        Int term = m(0, j) * det_laplace(minor);
        total += (j % 2 == 0) ? term : -term;
    }
    return total;
}

// Rank as the largest size of a square submatrix with nonzero determinant.
inline int rank_oracle(const IntMatrix& m) {
    int best = 0;
    int maxsz = std::min(m.rows(), m.cols());
    for (int size = 1; size <= maxsz; ++size) {
        bool found = false;
        std::vector<int> rsel(size), csel(size);
        for (int i = 0; i < size; ++i) rsel[i] = i;
        auto next = [](std::vector<int>& idx, int limit) {
            int size = int(idx.size());
            int i = size - 1;
            while (i >= 0 && idx[i] == limit - size + i) --i;
            if (i < 0) return false;
            ++idx[i];
            for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        };
        do {
            for (int i = 0; i < size; ++i) csel[i] = i;
            do {
                IntMatrix sub(size, size);
                for (int i = 0; i < size; ++i)
                    for (int j = 0; j < size; ++j) sub(i, j) = m(rsel[i], csel[j]);
                if (det_laplace(sub) != 0) { found = true; }
            } while (!found && next(csel, m.cols()));
        } while (!found && next(rsel, m.rows()));
        if (found) best = size;
        else break;
    }
    return best;
}

inline bool dependent_oracle(const htk::VectorConfig& cfg, const std::vector<int>& subset) {
    IntMatrix sub = cfg.matrix().submatrix_cols(subset);
    return rank_oracle(sub) < int(subset.size());
}

struct OracleCircuit {
    std::vector<int> support;
    std::vector<Int> coefficients;
};

// Exhaustive circuit enumeration with Cramer-rule coefficients.
inline std::vector<OracleCircuit> circuits_oracle(const htk::VectorConfig& cfg) {
    int n = cfg.n();
    std::vector<OracleCircuit> out;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> s;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) s.push_back(i);
        if (!dependent_oracle(cfg, s)) continue;
        bool minimal = true;
        for (std::size_t drop = 0; drop < s.size() && minimal; ++drop) {
            std::vector<int> sub;
            for (std::size_t i = 0; i < s.size(); ++i)
                if (i != drop) sub.push_back(s[i]);
            if (!sub.empty() && dependent_oracle(cfg, sub)) minimal = false;
        }
        if (!minimal) continue;
        // brute-force the (unique up to sign) primitive dependency
        int len = int(s.size());
        std::vector<Int> coeff(len, 0);
        std::vector<Int> found;
        const Int bound = 6;
        auto rec = [&](auto&& self, int pos) -> void {
            if (!found.empty()) return;
            if (pos == len) {
                bool nonzero = false;
                for (Int c : coeff) nonzero = nonzero || c != 0;
                if (!nonzero) return;
                for (int r = 0; r < cfg.d(); ++r) {
                    Int sum = 0;
                    for (int i = 0; i < len; ++i) sum += coeff[i] * cfg.vector(s[i])[r];
                    if (sum != 0) return;
                }
                Int g = 0;
                for (Int c : coeff) g = htk::gcd_int(g, c);
                std::vector<Int> full(n, 0);
                for (int i = 0; i < len; ++i) full[s[i]] = coeff[i] / g;
                if (full[s[0]] < 0)
                    for (Int& c : full) c = -c;
                found = full;
                return;
            }
            for (Int c = -bound; c <= bound && found.empty(); ++c) {
                coeff[pos] = c;
                self(self, pos + 1);
            }
            coeff[pos] = 0;
        };
        rec(rec, 0);
        out.push_back({s, found});
    }
    std::sort(out.begin(), out.end(),
              [](const OracleCircuit& a, const OracleCircuit& b) { return a.support < b.support; });
    return out;
}

inline htk::VectorConfig config_of(std::vector<std::vector<Int>> rows) {
    int d = int(rows.front().size());
    return htk::VectorConfig(d, std::move(rows));
}

// Named small configurations used across the suites.
inline htk::VectorConfig tstar_p1_u() { return config_of({{1}, {-1}}); }       // u for T*P^1
inline htk::VectorConfig a1_u() { return config_of({{1}, {1}}); }              // u for the A_1 surface
inline htk::VectorConfig an_family(int n) {                                    // u_i all equal, d = 1
    std::vector<std::vector<Int>> rows(std::size_t(n), {1});
    return config_of(std::move(rows));
}
inline htk::VectorConfig tstar_pn(int n) { // u = {e_1..e_{n-1}, -sum}, d = n-1
    std::vector<std::vector<Int>> rows;
    for (int i = 0; i + 1 < n; ++i) {
        std::vector<Int> e(std::size_t(n - 1), 0);
        e[std::size_t(i)] = 1;
        rows.push_back(e);
    }
    rows.push_back(std::vector<Int>(std::size_t(n - 1), -1));
    return config_of(std::move(rows));
}
inline htk::VectorConfig standard_basis(int n) {
    std::vector<std::vector<Int>> rows;
    for (int i = 0; i < n; ++i) {
        std::vector<Int> e(std::size_t(n), 0);
        e[std::size_t(i)] = 1;
        rows.push_back(e);
    }
    return config_of(std::move(rows));
}

// Deterministic random primitive spanning configurations for property tests.
inline htk::VectorConfig random_config(std::mt19937_64& rng, int n, int d) {
    for (;;) {
        std::vector<std::vector<Int>> rows;
        for (int i = 0; i < n; ++i) {
            std::vector<Int> v(std::size_t(d), 0);
            Int g = 0;
            for (int j = 0; j < d; ++j) {
                v[std::size_t(j)] = Int(rng() % 5) - 2;
                g = htk::gcd_int(g, v[std::size_t(j)]);
            }
            if (g != 1) { --i; continue; }
            rows.push_back(v);
        }
        htk::VectorConfig cfg(d, rows);
        if (cfg.spans_lattice()) return cfg;
    }
}

} // namespace testsupport
