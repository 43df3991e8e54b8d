#pragma once

#include <set>
#include <vector>

#include "htk/branch_ring.hpp"

namespace htk {

// The squarefree ideal with one generator prod_{i in S} theta(x_i) per
// circuit of v.
inline ThetaMonomialIdeal circuit_ideal_from(int n, const std::vector<Circuit>& circs) {
    std::vector<std::vector<Int>> gens;
    for (const Circuit& c : circs) {
        std::vector<Int> g(std::size_t(n), 0);
        for (int i : c.support) g[std::size_t(i)] = 1;
        gens.push_back(std::move(g));
    }
    return ThetaMonomialIdeal::make(n, false, std::move(gens));
}

inline ThetaMonomialIdeal circuit_ideal(const VectorConfig& v) {
    return circuit_ideal_from(v.n(), circuits(v));
}

namespace detail {

// Componentwise absolute values of all nonzero lattice vectors lambda with
// sum_i lambda_i v_i = 0 and max |lambda_i| <= radius, sorted and
// deduplicated. The depth-first search walks basis coefficients through the
// triangular structure of the canonical kernel basis; the pivot row of
// column j is untouched by later columns, so it bounds the j-th coefficient
// exactly. Only one of each +-lambda pair is visited.
inline std::vector<std::vector<Int>> coinvariant_exponents(const IntMatrix& basis, Int radius) {
    const int n = basis.rows(), rank = basis.cols();
    std::vector<std::vector<Int>> out;
    if (rank == 0) return out;
    std::vector<int> pivot(std::size_t(rank), 0);
    for (int j = 0; j < rank; ++j) {
        int r = 0;
        while (r < n && basis(r, j) == 0) ++r;
        pivot[std::size_t(j)] = r;
    }
    std::vector<Int> partial(std::size_t(n), 0); // sum of chosen columns so far

    // exponent vectors fit one byte per slot at desk scale, which makes
    // divisibility a single SWAR comparison
    const bool packed = n <= 8 && radius + 1 <= 120;
    std::vector<std::uint64_t> keys;

    auto rec = [&](auto&& self, int j, bool zero_prefix) -> void {
        if (j == rank) {
            bool nonzero = false;
            for (Int x : partial)
                if (x != 0) { nonzero = true; break; }
            if (!nonzero) return;
            for (Int x : partial)
                if (abs_int(x) > radius) return;
            if (packed) {
                std::uint64_t key = 0;
                for (int r = 0; r < n; ++r)
                    key |= std::uint64_t(abs_int(partial[std::size_t(r)])) << (8 * r);
                keys.push_back(key);
            } else {
                std::vector<Int> g(std::size_t(n), 0);
                for (int r = 0; r < n; ++r) g[std::size_t(r)] = abs_int(partial[std::size_t(r)]);
                out.push_back(std::move(g));
            }
            return;
        }
        int pr = pivot[std::size_t(j)];
        Int pv = basis(pr, j);
        Int base = partial[std::size_t(pr)];
        // need |base + c * pv| <= radius
        Int lo = -((radius + base) / pv);
        Int hi = (radius - base) / pv;
        while (base + (lo - 1) * pv >= -radius) --lo;
        while (base + lo * pv < -radius) ++lo;
        while (base + (hi + 1) * pv <= radius) ++hi;
        while (base + hi * pv > radius) --hi;
        // lambda and -lambda have the same exponent vector: only visit
        // coefficient vectors whose first nonzero entry is positive
        if (zero_prefix) lo = std::max<Int>(lo, 0);
        for (Int c = lo; c <= hi; ++c) {
            for (int r = 0; r < n; ++r) partial[std::size_t(r)] += c * basis(r, j);
            self(self, j + 1, zero_prefix && c == 0);
            for (int r = 0; r < n; ++r) partial[std::size_t(r)] -= c * basis(r, j);
        }
    };
    rec(rec, 0, true);
    if (packed) {
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        // minimalize under componentwise divisibility before unpacking; the
        // survivors are re-minimalized (now trivially) by the ideal type
        constexpr std::uint64_t kHigh = 0x8080808080808080ull;
        auto byte_sum = [](std::uint64_t key) {
            Int s = 0;
            for (int r = 0; r < 8; ++r) s += Int((key >> (8 * r)) & 0xFF);
            return s;
        };
        std::vector<std::pair<Int, std::uint64_t>> order;
        order.reserve(keys.size());
        for (std::uint64_t key : keys) order.emplace_back(byte_sum(key), key);
        std::sort(order.begin(), order.end());
        std::vector<std::uint64_t> kept;
        for (const auto& [sum, key] : order) {
            bool redundant = false;
            for (std::uint64_t h : kept)
                if ((((key | kHigh) - h) & kHigh) == kHigh) { redundant = true; break; }
            if (!redundant) kept.push_back(key);
        }
        out.reserve(kept.size());
        for (std::uint64_t key : kept) {
            std::vector<Int> g(std::size_t(n), 0);
            for (int r = 0; r < n; ++r) g[std::size_t(r)] = Int((key >> (8 * r)) & 0xFF);
            out.push_back(std::move(g));
        }
        return out;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace detail

struct CoinvariantIdeal {
    ThetaMonomialIdeal ideal;
    Int radius = 0;
    // minimal generators unchanged when the search radius grows by one
    bool stable = false;
};

// Generators prod_i theta(x_i)^{|lambda_i|} over the nonzero kernel vectors
// in the box max|lambda_i| <= radius, minimalized. The family is infinite;
// the box is a truncation, so stability under radius+1 is reported.
inline CoinvariantIdeal coinvariant_ideal(const VectorConfig& v, Int radius) {
    if (radius < 1) throw std::domain_error("coinvariant radius must be >= 1");
    IntMatrix basis = kernel_basis(v.matrix());
    CoinvariantIdeal out;
    out.radius = radius;
    out.ideal = ThetaMonomialIdeal::make(v.n(), false, detail::coinvariant_exponents(basis, radius));
    ThetaMonomialIdeal grown =
        ThetaMonomialIdeal::make(v.n(), false, detail::coinvariant_exponents(basis, radius + 1));
    out.stable = (grown == out.ideal);
    return out;
}

// hbar -> 0: theta(h - x_i) specializes to -theta(x_i); the unit -1 is
// irrelevant for the ideal, so the two variable blocks merge.
inline ThetaMonomialIdeal specialize_hbar_zero(const ThetaMonomialIdeal& ideal) {
    if (!ideal.extended) throw variable_set_mismatch("specialization expects the extended variable set");
    std::vector<std::vector<Int>> gens;
    for (const auto& g : ideal.generators) {
        std::vector<Int> merged(std::size_t(ideal.n), 0);
        for (int i = 0; i < ideal.n; ++i)
            merged[std::size_t(i)] = checked_add(g[std::size_t(i)], g[std::size_t(ideal.n + i)]);
        gens.push_back(std::move(merged));
    }
    return ThetaMonomialIdeal::make(ideal.n, false, std::move(gens));
}

// Multidegree of an extended generator in Z^{n+1}: the hbar slot counts the
// theta(h - x_i) factors, slot i counts both factors involving x_i.
inline std::vector<Int> extended_grading(const ThetaMonomialIdeal& ideal, const std::vector<Int>& gen) {
    std::vector<Int> deg(std::size_t(ideal.n + 1), 0);
    for (int i = 0; i < ideal.n; ++i) {
        deg[0] = checked_add(deg[0], gen[std::size_t(ideal.n + i)]);
        deg[std::size_t(i + 1)] = checked_add(gen[std::size_t(i)], gen[std::size_t(ideal.n + i)]);
    }
    return deg;
}

// The machine verification of the fixed-locus equality: the circuit ideal,
// the coinvariant ideal at the given radius, and the hbar -> 0
// specialization of the extended circuit presentation, with pairwise
// equality certificates. The equality is a theorem for unimodular v;
// non-unimodular inputs are verified anyway and flagged.
struct HikitaReport {
    VectorConfig v;
    bool unimodular = false;
    Int radius = 0;
    ThetaMonomialIdeal circuits_ideal;
    CoinvariantIdeal coinvariants;
    ThetaMonomialIdeal ell_ideal;        // extended variables
    ThetaMonomialIdeal specialized_ideal;
    IdealEqualityResult circuit_vs_coinvariant;
    IdealEqualityResult circuit_vs_specialized;
    IdealEqualityResult coinvariant_vs_specialized;
    bool pass = false;
};

inline HikitaReport hikita_verify(const VectorConfig& v, const std::vector<Rational>& alpha_hat,
                                  Int radius) {
    v.validate();
    HikitaReport rep;
    rep.v = v;
    rep.unimodular = is_unimodular(v);
    rep.radius = radius;
    std::vector<Circuit> circs = circuits(v);
    rep.circuits_ideal = circuit_ideal_from(v.n(), circs);
    rep.coinvariants = coinvariant_ideal(v, radius);
    rep.ell_ideal = ell_presentation_from(v.n(), circs, alpha_hat);
    rep.specialized_ideal = specialize_hbar_zero(rep.ell_ideal);
    rep.circuit_vs_coinvariant = ideal_equal(rep.circuits_ideal, rep.coinvariants.ideal);
    rep.circuit_vs_specialized = ideal_equal(rep.circuits_ideal, rep.specialized_ideal);
    rep.coinvariant_vs_specialized = ideal_equal(rep.coinvariants.ideal, rep.specialized_ideal);
    rep.pass = rep.circuit_vs_coinvariant.equal && rep.circuit_vs_specialized.equal &&
               rep.coinvariant_vs_specialized.equal;
    return rep;
}

} // namespace htk
