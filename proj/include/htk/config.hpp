#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "htk/snf.hpp"

namespace htk {

// A configuration of n integer vectors in Z^d. This is the combinatorial
// input everything else is derived from. A well-formed configuration has
// primitive vectors spanning Z^d over Z; Gale duals of well-formed
// configurations may contain zero or imprimitive vectors (loops and
// parallel multiples), so those are representable and only rejected where
// an operation genuinely needs them absent.
class VectorConfig {
public:
    VectorConfig() : d_(0) {}
    VectorConfig(int d, std::vector<std::vector<Int>> vectors) : d_(d), vectors_(std::move(vectors)) {
        for (const auto& v : vectors_)
            if (int(v.size()) != d_) throw dimension_mismatch("vector of wrong dimension");
    }

    static VectorConfig from_rows(const IntMatrix& rows) {
        std::vector<std::vector<Int>> vs;
        vs.reserve(rows.rows());
        for (int i = 0; i < rows.rows(); ++i) vs.push_back(rows.row(i));
        return VectorConfig(rows.cols(), std::move(vs));
    }

    int n() const { return int(vectors_.size()); }
    int d() const { return d_; }
    const std::vector<Int>& vector(int i) const { return vectors_[i]; }
    const std::vector<std::vector<Int>>& vectors() const { return vectors_; }

    // d x n matrix whose columns are the configuration vectors (the map pi).
    IntMatrix matrix() const {
        IntMatrix m(d_, n());
        for (int j = 0; j < n(); ++j)
            for (int i = 0; i < d_; ++i) m(i, j) = vectors_[j][i];
        return m;
    }

    bool vector_is_primitive(int i) const {
        Int g = 0;
        for (Int x : vectors_[i]) g = gcd_int(g, x);
        return g == 1;
    }
    bool all_primitive() const {
        for (int i = 0; i < n(); ++i)
            if (!vector_is_primitive(i)) return false;
        return true;
    }
    // Spans Z^d over Z: all d Smith invariant factors equal 1.
    bool spans_lattice() const {
        if (n() == 0 || d_ == 0) return d_ == 0;
        SmithForm s = smith_normal_form(matrix());
        if (s.rank() != d_) return false;
        for (Int f : s.invariant_factors())
            if (f != 1) return false;
        return true;
    }

    void validate() const {
        if (n() == 0 || d_ == 0) throw degenerate_config("empty configuration");
        for (int i = 0; i < n(); ++i)
            if (!vector_is_primitive(i))
                throw degenerate_config("vector " + std::to_string(i + 1) + " is not primitive");
        if (!spans_lattice()) throw degenerate_config("vectors do not span Z^d over Z");
    }

    friend bool operator==(const VectorConfig& a, const VectorConfig& b) {
        return a.d_ == b.d_ && a.vectors_ == b.vectors_;
    }

private:
    int d_;
    std::vector<std::vector<Int>> vectors_;
};

// The two exact sequences attached to a configuration: pi (d x n, columns
// u_i), iota (n x k) a canonical basis of ker pi, and their transposes.
struct ExactSequenceData {
    IntMatrix pi;      // d x n
    IntMatrix iota;    // n x k
    IntMatrix pi_vee;  // n x d
    IntMatrix iota_vee; // k x n
    int n = 0, d = 0, k = 0;
};

inline ExactSequenceData exact_sequences(const VectorConfig& cfg) {
    if (cfg.n() == 0 || cfg.d() == 0) throw degenerate_config("empty configuration");
    if (!cfg.spans_lattice()) throw degenerate_config("vectors do not span Z^d over Z");
    ExactSequenceData seq;
    seq.pi = cfg.matrix();
    seq.iota = kernel_basis(seq.pi);
    seq.pi_vee = seq.pi.transpose();
    seq.iota_vee = seq.iota.transpose();
    seq.n = cfg.n();
    seq.d = cfg.d();
    seq.k = seq.iota.cols();
    return seq;
}

// Gale duality: v_i is the i-th row of the canonical kernel basis of the
// configuration matrix. Spanning is required (the dual of a non-spanning
// collection is not defined here); individual dual vectors may be zero or
// imprimitive and are returned as they are.
inline VectorConfig gale_dual(const VectorConfig& cfg) {
    ExactSequenceData seq = exact_sequences(cfg);
    return VectorConfig::from_rows(seq.iota);
}

// True iff every d-subset of linearly independent vectors has determinant +-1.
inline bool is_unimodular(const VectorConfig& cfg) {
    int n = cfg.n(), d = cfg.d();
    if (n < d) return false;
    std::vector<int> idx(d);
    IntMatrix m = cfg.matrix();
    // iterate over all d-subsets of columns
    for (int i = 0; i < d; ++i) idx[i] = i;
    for (;;) {
        Int det = determinant(m.submatrix_cols(idx));
        if (det != 0 && det != 1 && det != -1) return false;
        int i = d - 1;
        while (i >= 0 && idx[i] == n - d + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
    }
    return true;
}

} // namespace htk
