#pragma once

#include <algorithm>
#include <vector>

#include "htk/numeric.hpp"

namespace htk {

// g divides f componentwise.
inline bool monomial_divides(const std::vector<Int>& g, const std::vector<Int>& f) {
    if (g.size() != f.size()) return false;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g[i] > f[i]) return false;
    return true;
}

// A monomial ideal in formal theta symbols. Variables are theta(x_1) ..
// theta(x_n), optionally extended by theta(h-x_1) .. theta(h-x_n) in slots
// n .. 2n-1. Generators are kept minimal (no generator divides another) and
// sorted, so equal ideals have identical representations.
struct ThetaMonomialIdeal {
    int n = 0;             // number of base symbols theta(x_i)
    bool extended = false; // variables include the theta(h-x_i) block
    std::vector<std::vector<Int>> generators;

    int nvars() const { return extended ? 2 * n : n; }
    bool is_zero_ideal() const { return generators.empty(); }

    static ThetaMonomialIdeal make(int n, bool extended, std::vector<std::vector<Int>> gens) {
        ThetaMonomialIdeal ideal;
        ideal.n = n;
        ideal.extended = extended;
        for (const auto& g : gens)
            if (int(g.size()) != ideal.nvars()) throw dimension_mismatch("generator of wrong length");
        ideal.generators = std::move(gens);
        ideal.minimalize();
        return ideal;
    }

    void minimalize() {
        // by increasing total degree, so every divisor of a generator was
        // processed (and, inductively, kept or itself dominated) earlier
        std::sort(generators.begin(), generators.end(),
                  [](const std::vector<Int>& a, const std::vector<Int>& b) {
                      Int sa = 0, sb = 0;
                      for (Int x : a) sa += x;
                      for (Int x : b) sb += x;
                      return sa != sb ? sa < sb : a < b;
                  });
        generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
        std::vector<std::vector<Int>> kept;
        for (const auto& g : generators) {
            bool redundant = false;
            for (const auto& h : kept)
                if (monomial_divides(h, g)) { redundant = true; break; }
            if (!redundant) kept.push_back(g);
        }
        generators = std::move(kept);
        std::sort(generators.begin(), generators.end());
    }

    friend bool operator==(const ThetaMonomialIdeal& a, const ThetaMonomialIdeal& b) {
        return a.n == b.n && a.extended == b.extended && a.generators == b.generators;
    }
};

// Certificates of ideal equality: for each generator of one side, the index
// of a generator of the other side dividing it.
struct IdealEqualityResult {
    bool equal = false;
    bool left_in_right = false;
    bool right_in_left = false;
    std::vector<int> left_divisor;  // index into right.generators, -1 when none
    std::vector<int> right_divisor; // index into left.generators, -1 when none
};

inline IdealEqualityResult ideal_equal(const ThetaMonomialIdeal& lhs, const ThetaMonomialIdeal& rhs) {
    if (lhs.n != rhs.n || lhs.extended != rhs.extended)
        throw variable_set_mismatch("ideals live in different variable sets");
    IdealEqualityResult out;
    out.left_in_right = true;
    out.right_in_left = true;
    for (const auto& g : lhs.generators) {
        int found = -1;
        for (std::size_t j = 0; j < rhs.generators.size(); ++j)
            if (monomial_divides(rhs.generators[j], g)) { found = int(j); break; }
        out.left_divisor.push_back(found);
        if (found < 0) out.left_in_right = false;
    }
    for (const auto& g : rhs.generators) {
        int found = -1;
        for (std::size_t j = 0; j < lhs.generators.size(); ++j)
            if (monomial_divides(lhs.generators[j], g)) { found = int(j); break; }
        out.right_divisor.push_back(found);
        if (found < 0) out.right_in_left = false;
    }
    out.equal = out.left_in_right && out.right_in_left;
    return out;
}

} // namespace htk
