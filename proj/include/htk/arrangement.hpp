#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "htk/circuits.hpp"
#include "htk/elliptic.hpp"

namespace htk {

struct RealHyperplane {
    std::vector<Int> normal; // u_i, primitive
    Rational level;          // alpha_i
};

struct EllipticHyperplane {
    int index = 0;        // 1-based index i of the constraint b_i = beta_i
    EllipticPoint level;  // beta_i
};

// The combined arrangement: one pair A_i = (real hyperplane, elliptic
// constraint) per configuration vector, together with the exact-sequence
// data, the parameter lifts actually used, and the section that produced
// the beta lift (recorded so reports can state the choice).
struct CombinedArrangement {
    VectorConfig cfg;
    ExactSequenceData seq;
    ModularParam modular;
    std::vector<Rational> alpha; // lift, one level per index
    TorusPointE beta;            // input, in E^k
    TorusPointE beta_lift;       // chosen lift in E^n
    IntMatrix section;           // n x k right inverse of iota_vee
    std::vector<RealHyperplane> real_planes;
    std::vector<EllipticHyperplane> elliptic_planes;

    CombinedArrangement(VectorConfig c, ModularParam m) : cfg(std::move(c)), modular(m) {}
};

namespace detail {

// Exact feasibility of the rational linear system rows * x = rhs.
struct RationalSystem {
    bool feasible = false;
    bool unique = false;
    std::vector<Rational> point; // valid when unique
};

inline RationalSystem solve_rational(const std::vector<std::vector<Int>>& rows,
                                     const std::vector<Rational>& rhs, int dim) {
    std::size_t nrows = rows.size();
    std::vector<std::vector<Rational>> a(nrows, std::vector<Rational>(dim + 1));
    for (std::size_t i = 0; i < nrows; ++i) {
        for (int j = 0; j < dim; ++j) a[i][j] = Rational(rows[i][j]);
        a[i][dim] = rhs[i];
    }
    int r = 0;
    std::vector<int> pivot_col;
    for (int c = 0; c < dim && r < int(nrows); ++c) {
        int p = -1;
        for (int i = r; i < int(nrows); ++i)
            if (!a[i][c].is_zero()) { p = i; break; }
        if (p < 0) continue;
        std::swap(a[r], a[p]);
        for (int i = 0; i < int(nrows); ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            Rational f = a[i][c] / a[r][c];
            for (int j = c; j <= dim; ++j) a[i][j] -= f * a[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    RationalSystem out;
    for (int i = r; i < int(nrows); ++i)
        if (!a[i][dim].is_zero()) return out; // inconsistent
    out.feasible = true;
    out.unique = (r == dim);
    if (out.unique) {
        out.point.assign(dim, Rational(0));
        for (int i = 0; i < r; ++i) out.point[pivot_col[i]] = a[i][dim] / a[i][pivot_col[i]];
    }
    return out;
}

} // namespace detail

// Builds the arrangement from explicit n-component lifts of the levels.
inline CombinedArrangement build_arrangement_lifted(const VectorConfig& cfg,
                                                    const std::vector<Rational>& alpha,
                                                    const TorusPointE& beta_lift,
                                                    const ModularParam& m) {
    cfg.validate();
    if (int(alpha.size()) != cfg.n()) throw dimension_mismatch("alpha lift must have one level per vector");
    if (int(beta_lift.size()) != cfg.n()) throw dimension_mismatch("beta lift must have one level per vector");
    CombinedArrangement arr(cfg, m);
    arr.seq = exact_sequences(cfg);
    arr.alpha = alpha;
    arr.beta_lift = beta_lift;
    arr.section = IntMatrix(cfg.n(), arr.seq.k);
    arr.beta = arr.seq.k > 0 ? map_matrix(arr.seq.iota_vee, beta_lift, m) : TorusPointE{};
    for (int i = 0; i < cfg.n(); ++i) {
        arr.real_planes.push_back({cfg.vector(i), alpha[i]});
        arr.elliptic_planes.push_back({i + 1, arr.beta_lift[i]});
    }
    return arr;
}

// Builds the arrangement for a configuration with parameters (alpha, beta).
// alpha is given as its lift (one rational level per index); beta lives in
// E^k and is lifted to E^n through a fixed integer section of iota_vee.
inline CombinedArrangement build_arrangement(const VectorConfig& cfg,
                                             const std::vector<Rational>& alpha,
                                             const TorusPointE& beta,
                                             const ModularParam& m) {
    cfg.validate();
    if (int(alpha.size()) != cfg.n()) throw dimension_mismatch("alpha lift must have one level per vector");
    CombinedArrangement arr(cfg, m);
    arr.seq = exact_sequences(cfg);
    if (int(beta.size()) != arr.seq.k) throw dimension_mismatch("beta must lie in E^k");
    arr.alpha = alpha;
    arr.beta = beta;
    if (arr.seq.k > 0) {
        auto section = right_inverse(arr.seq.iota_vee);
        if (!section) throw degenerate_config("kernel basis is not saturated"); // unreachable for valid cfg
        arr.section = *section;
        arr.beta_lift = map_matrix(arr.section, beta, m);
    } else {
        arr.section = IntMatrix(cfg.n(), 0);
        arr.beta_lift = torus_zero(cfg.n());
    }
    for (int i = 0; i < cfg.n(); ++i) {
        arr.real_planes.push_back({cfg.vector(i), alpha[i]});
        arr.elliptic_planes.push_back({i + 1, arr.beta_lift[i]});
    }
    return arr;
}

// Solutions in E^d of the elliptic constraints indexed by S (0-based).
inline EllipticSolutions elliptic_intersection(const CombinedArrangement& arr, const std::vector<int>& subset) {
    IntMatrix rows(int(subset.size()), arr.cfg.d());
    TorusPointE rhs;
    for (int r = 0; r < int(subset.size()); ++r) {
        int i = subset[r];
        for (int j = 0; j < arr.cfg.d(); ++j) rows(r, j) = arr.cfg.vector(i)[j];
        rhs.push_back(arr.beta_lift[i]);
    }
    return solve_elliptic(rows, rhs, arr.modular);
}

inline bool real_feasible(const CombinedArrangement& arr, const std::vector<int>& subset) {
    std::vector<std::vector<Int>> rows;
    std::vector<Rational> rhs;
    for (int i : subset) {
        rows.push_back(arr.cfg.vector(i));
        rhs.push_back(arr.alpha[i]);
    }
    return detail::solve_rational(rows, rhs, arr.cfg.d()).feasible;
}

// The combined subspace is a product, so it is nonempty iff both factors are.
inline bool combined_feasible(const CombinedArrangement& arr, const std::vector<int>& subset) {
    if (!real_feasible(arr, subset)) return false;
    EllipticSolutions sol = elliptic_intersection(arr, subset);
    return sol.infinite || !sol.points.empty();
}

struct SimplicityReport {
    bool simple = true;
    std::vector<std::vector<int>> witnesses; // minimal violating subsets (0-based)
};

// Simplicity: no subset with dependent normals has nonempty combined
// intersection. A violating subset always contains a violating circuit, so
// the circuits are scanned and returned as the minimal witnesses.
inline SimplicityReport is_simple(const CombinedArrangement& arr) {
    SimplicityReport rep;
    for (const Circuit& c : circuits(arr.cfg)) {
        if (combined_feasible(arr, c.support)) {
            rep.simple = false;
            rep.witnesses.push_back(c.support);
        }
    }
    return rep;
}

enum class SmoothnessVerdict { smooth, orbifold, non_orbifold_singular };

inline const char* to_string(SmoothnessVerdict v) {
    switch (v) {
        case SmoothnessVerdict::smooth: return "smooth";
        case SmoothnessVerdict::orbifold: return "orbifold";
        default: return "non-orbifold-singular";
    }
}

struct SmoothnessReport {
    bool simple = false;
    bool unimodular = false;
    SmoothnessVerdict verdict = SmoothnessVerdict::non_orbifold_singular;
    std::vector<std::vector<int>> simplicity_witnesses;
    std::vector<std::vector<int>> unimodularity_witnesses; // d-subsets with |det| >= 2
};

inline SmoothnessReport smoothness_report(const CombinedArrangement& arr) {
    SmoothnessReport rep;
    SimplicityReport s = is_simple(arr);
    rep.simple = s.simple;
    rep.simplicity_witnesses = std::move(s.witnesses);
    rep.unimodular = is_unimodular(arr.cfg);
    if (!rep.unimodular) {
        int n = arr.cfg.n(), d = arr.cfg.d();
        IntMatrix m = arr.cfg.matrix();
        std::vector<int> idx(d);
        for (int i = 0; i < d; ++i) idx[i] = i;
        for (;;) {
            Int det = determinant(m.submatrix_cols(idx));
            if (det != 0 && abs_int(det) != 1) rep.unimodularity_witnesses.push_back(idx);
            int i = d - 1;
            while (i >= 0 && idx[i] == n - d + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    rep.verdict = rep.simple
                      ? (rep.unimodular ? SmoothnessVerdict::smooth : SmoothnessVerdict::orbifold)
                      : SmoothnessVerdict::non_orbifold_singular;
    return rep;
}

struct FixedPoint {
    std::vector<Rational> real_point; // in a_R^vee, dimension d
    TorusPointE elliptic_point;       // in E^d
    std::vector<int> subset;          // defining d-subset (0-based)
};

// Intersection points of d elements: every independent d-subset meets in
// exactly one real point and finitely many elliptic points (one per torsion
// translate; a single one in the unimodular case).
inline std::vector<FixedPoint> fixed_points(const CombinedArrangement& arr) {
    SimplicityReport s = is_simple(arr);
    if (!s.simple) throw not_simple("arrangement is not simple; fixed points are not isolated");
    int n = arr.cfg.n(), d = arr.cfg.d();
    std::vector<FixedPoint> out;
    std::vector<int> idx(d);
    for (int i = 0; i < d; ++i) idx[i] = i;
    IntMatrix m = arr.cfg.matrix();
    for (;;) {
        if (rank(m.submatrix_cols(idx)) == d) {
            std::vector<std::vector<Int>> rows;
            std::vector<Rational> rhs;
            for (int i : idx) {
                rows.push_back(arr.cfg.vector(i));
                rhs.push_back(arr.alpha[i]);
            }
            detail::RationalSystem real = detail::solve_rational(rows, rhs, d);
            EllipticSolutions ell = elliptic_intersection(arr, idx);
            for (const auto& p : ell.points) out.push_back({real.point, p, idx});
        }
        int i = d - 1;
        while (i >= 0 && idx[i] == n - d + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

// Indices whose combined subspace contains the given point.
inline std::vector<int> incident_indices(const CombinedArrangement& arr,
                                         const std::vector<Rational>& real_point,
                                         const TorusPointE& elliptic_point) {
    std::vector<int> on;
    for (int i = 0; i < arr.cfg.n(); ++i) {
        Rational pairing(0);
        for (int j = 0; j < arr.cfg.d(); ++j)
            pairing += Rational(arr.cfg.vector(i)[j]) * real_point[j];
        if (pairing != arr.alpha[i]) continue;
        EllipticPoint b_i = EllipticPoint::combination(arr.cfg.vector(i), elliptic_point, arr.modular);
        if (points_equal(b_i, arr.beta_lift[i])) on.push_back(i);
    }
    return on;
}

// Dimension of the stabilizing subtorus at a point: the rank of the span of
// the normals through it.
inline int stabilizer_dimension(const CombinedArrangement& arr,
                                const std::vector<Rational>& real_point,
                                const TorusPointE& elliptic_point) {
    std::vector<int> on = incident_indices(arr, real_point, elliptic_point);
    if (on.empty()) return 0;
    IntMatrix m = arr.cfg.matrix();
    return rank(m.submatrix_cols(on));
}

} // namespace htk
