#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "htk/circuits.hpp"
#include "htk/ideal.hpp"
#include "htk/sparse_poly.hpp"
#include "htk/theta.hpp"

namespace htk {

// The exponent rule governing multiplication in all three ring flavors:
// min(|l|,|m|) for opposite signs, 0 otherwise (zero counts as same sign).
inline Int delta_exponent(Int l, Int m) {
    if (l == 0 || m == 0) return 0;
    if ((l > 0) == (m > 0)) return 0;
    return std::min(abs_int(l), abs_int(m));
}

enum class Flavor { additive, multiplicative, elliptic };

inline const char* to_string(Flavor f) {
    switch (f) {
        case Flavor::additive: return "additive";
        case Flavor::multiplicative: return "multiplicative";
        default: return "elliptic";
    }
}

// A grading index: an integer vector lambda with sum_i lambda_i v_i = 0 for
// the Gale dual v of the ring's configuration, stored both in ambient
// coordinates and in the fixed kernel-basis coordinates.
struct LambdaIndex {
    std::vector<Int> ambient; // length n
    std::vector<Int> basis;   // length equal to the lattice rank

    friend bool operator==(const LambdaIndex& a, const LambdaIndex& b) { return a.ambient == b.ambient; }
    friend bool operator<(const LambdaIndex& a, const LambdaIndex& b) { return a.ambient < b.ambient; }
};

// An element sum_lambda c_lambda r^lambda of one ring flavor. Coefficients
// are sparse polynomials: in y_1..y_d (additive), Laurent in s_1..s_d
// (multiplicative), or in the formal symbols theta-bar_1..theta-bar_n
// (elliptic). Zero coefficients are never stored.
class SymbolElement {
public:
    SymbolElement(Flavor f, int n) : flavor_(f), n_(n) {}

    Flavor flavor() const { return flavor_; }
    int ambient_rank() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::vector<Int>, SparsePoly>& terms() const { return terms_; }

    void add_term(const std::vector<Int>& lambda, const SparsePoly& coeff) {
        if (int(lambda.size()) != n_) throw dimension_mismatch("lambda of wrong length");
        if (coeff.is_zero()) return;
        auto it = terms_.find(lambda);
        if (it == terms_.end()) {
            terms_.emplace(lambda, coeff);
        } else {
            it->second += coeff;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend SymbolElement operator+(const SymbolElement& a, const SymbolElement& b) {
        if (a.flavor_ != b.flavor_) throw flavor_mismatch("adding elements of different flavors");
        if (a.n_ != b.n_) throw config_mismatch("adding elements over different configurations");
        SymbolElement r = a;
        for (const auto& [l, c] : b.terms_) r.add_term(l, c);
        return r;
    }

    friend bool operator==(const SymbolElement& a, const SymbolElement& b) {
        return a.flavor_ == b.flavor_ && a.n_ == b.n_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const SymbolElement& a, const SymbolElement& b) { return !(a == b); }

private:
    Flavor flavor_;
    int n_;
    std::map<std::vector<Int>, SparsePoly> terms_;
};

// One flavor of the lambda-graded coordinate ring attached to a
// configuration u: the additive and multiplicative rings carry polynomial
// coefficients in d variables, the elliptic ring carries monomials in the
// pulled-back theta symbols. Multiplication follows the delta rule
//
//   r^lambda r^mu = r^{lambda+mu} prod_i image_i^{delta(lambda_i, mu_i)},
//
// where image_i is <y, u_i>, 1 - prod_j s_j^{u_ij}, or theta-bar_i by
// flavor. An independent oracle multiplies the underlying invariant
// monomials in 2n commuting variables instead and must always agree.
class BranchRing {
public:
    BranchRing(VectorConfig u, Flavor flavor) : u_(std::move(u)), flavor_(flavor) {
        u_.validate();
        seq_ = exact_sequences(u_);
        lambda_basis_ = kernel_basis(seq_.iota_vee); // = column lattice of pi_vee
        const int n = u_.n(), d = u_.d();
        images_.reserve(std::size_t(n));
        for (int i = 0; i < n; ++i) {
            switch (flavor_) {
                case Flavor::additive: {
                    SparsePoly p(d);
                    for (int j = 0; j < d; ++j) {
                        std::vector<Int> e(std::size_t(d), 0);
                        e[std::size_t(j)] = 1;
                        p.add_term(e, Rational(u_.vector(i)[j]));
                    }
                    images_.push_back(p);
                    break;
                }
                case Flavor::multiplicative: {
                    std::vector<Int> e(std::size_t(d), 0);
                    for (int j = 0; j < d; ++j) e[j] = u_.vector(i)[j];
                    images_.push_back(SparsePoly::one(d) - SparsePoly::monomial(e, Rational(1)));
                    break;
                }
                case Flavor::elliptic:
                    images_.push_back(SparsePoly::variable(n, i));
                    break;
            }
        }
    }

    const VectorConfig& config() const { return u_; }
    Flavor flavor() const { return flavor_; }
    const ExactSequenceData& sequences() const { return seq_; }
    const IntMatrix& lambda_basis() const { return lambda_basis_; }
    int lattice_rank() const { return lambda_basis_.cols(); }
    int coeff_vars() const { return flavor_ == Flavor::elliptic ? u_.n() : u_.d(); }
    // The image of the i-th central generator in the coefficient algebra.
    const SparsePoly& image(int i) const { return images_[std::size_t(i)]; }

    LambdaIndex lambda_index(const std::vector<Int>& ambient) const {
        auto coords = solve_integer(lambda_basis_, ambient);
        if (!coords) throw config_mismatch("lambda is not in the grading lattice");
        return {ambient, *coords};
    }
    LambdaIndex lambda_from_basis(const std::vector<Int>& basis_coords) const {
        return {lambda_basis_.apply(basis_coords), basis_coords};
    }

    SymbolElement element() const { return SymbolElement(flavor_, u_.n()); }
    SymbolElement one() const { return generator(std::vector<Int>(std::size_t(u_.n()), 0)); }
    SymbolElement generator(const std::vector<Int>& ambient_lambda) const {
        return generator(ambient_lambda, SparsePoly::one(coeff_vars()));
    }
    SymbolElement generator(const std::vector<Int>& ambient_lambda, const SparsePoly& coeff) const {
        lambda_index(ambient_lambda); // validates lattice membership
        SymbolElement e = element();
        e.add_term(ambient_lambda, coeff);
        return e;
    }
    // r^{+-B_j} for the j-th column of the fixed kernel basis.
    SymbolElement basis_generator(int j, int sign = 1) const {
        std::vector<Int> c(std::size_t(lattice_rank()), 0);
        c[std::size_t(j)] = sign >= 0 ? 1 : -1;
        return generator(lambda_basis_.apply(c));
    }

    SymbolElement mul(const SymbolElement& a, const SymbolElement& b) const {
        check_operands(a, b);
        SymbolElement r = element();
        for (const auto& [la, ca] : a.terms())
            for (const auto& [lb, cb] : b.terms()) {
                SparsePoly c = ca * cb;
                std::vector<Int> sum(la.size());
                for (std::size_t i = 0; i < la.size(); ++i) {
                    sum[i] = checked_add(la[i], lb[i]);
                    Int e = delta_exponent(la[i], lb[i]);
                    if (e > 0) c *= images_[i].pow(e);
                }
                r.add_term(sum, c);
            }
        return r;
    }

    // Independent multiplication route: each r^lambda is realized as the
    // monomial prod z_i^{max(lambda_i,0)} w_i^{max(-lambda_i,0)} in 2n
    // commuting variables; after multiplying, every z_i w_i pair reduces to
    // the flavor's central element image.
    SymbolElement monomial_oracle_mul(const SymbolElement& a, const SymbolElement& b) const {
        check_operands(a, b);
        const int n = u_.n();
        auto lift = [&](const SymbolElement& x) {
            std::map<std::vector<Int>, SparsePoly> mono;
            for (const auto& [l, c] : x.terms()) {
                std::vector<Int> e(std::size_t(2 * n), 0);
                for (int i = 0; i < n; ++i) {
                    e[std::size_t(i)] = std::max<Int>(l[std::size_t(i)], 0);
                    e[std::size_t(n + i)] = std::max<Int>(-l[std::size_t(i)], 0);
                }
                mono[e] = c;
            }
            return mono;
        };
        auto ma = lift(a);
        auto mb = lift(b);
        std::map<std::vector<Int>, SparsePoly> prod;
        for (const auto& [ea, ca] : ma)
            for (const auto& [eb, cb] : mb) {
                std::vector<Int> e(ea.size());
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = checked_add(ea[i], eb[i]);
                auto it = prod.find(e);
                if (it == prod.end())
                    prod.emplace(e, ca * cb);
                else
                    it->second += ca * cb;
            }
        SymbolElement r = element();
        for (const auto& [e, c] : prod) {
            SparsePoly coeff = c;
            std::vector<Int> lambda(std::size_t(n), 0);
            for (int i = 0; i < n; ++i) {
                Int zi = e[std::size_t(i)], wi = e[std::size_t(n + i)];
                Int pairs = std::min(zi, wi);
                if (pairs > 0) coeff *= images_[std::size_t(i)].pow(pairs);
                lambda[std::size_t(i)] = checked_sub(zi, wi);
            }
            r.add_term(lambda, coeff);
        }
        return r;
    }

    // Numeric evaluation of an elliptic coefficient at y in C^d: the symbol
    // theta-bar_i becomes theta(<u_i, y>).
    Complex eval_elliptic_coeff(const SparsePoly& coeff, const std::vector<Complex>& y,
                                const ModularParam& m, int terms = kThetaDefaultTerms) const {
        if (flavor_ != Flavor::elliptic) throw flavor_mismatch("numeric evaluation is for the elliptic flavor");
        if (int(y.size()) != u_.d()) throw dimension_mismatch("evaluation point dimension");
        Complex total = 0.0;
        for (const auto& [e, c] : coeff.terms()) {
            Complex term = c.to_double();
            for (int i = 0; i < u_.n(); ++i) {
                if (e[std::size_t(i)] == 0) continue;
                Complex arg = 0.0;
                for (int j = 0; j < u_.d(); ++j) arg += double(u_.vector(i)[j]) * y[std::size_t(j)];
                Complex th = theta(arg, m, terms);
                for (Int k = 0; k < e[std::size_t(i)]; ++k) term *= th;
            }
            total += term;
        }
        return total;
    }

private:
    void check_operands(const SymbolElement& a, const SymbolElement& b) const {
        if (a.flavor() != flavor_ || b.flavor() != flavor_)
            throw flavor_mismatch("element flavor does not match ring");
        if (a.ambient_rank() != u_.n() || b.ambient_rank() != u_.n())
            throw config_mismatch("element does not match ring configuration");
    }

    VectorConfig u_;
    Flavor flavor_;
    ExactSequenceData seq_;
    IntMatrix lambda_basis_;
    std::vector<SparsePoly> images_;
};

// Convenience constructor for the elliptic coordinate ring of u.
inline BranchRing elliptic_coordinate_ring(const VectorConfig& u) {
    return BranchRing(u, Flavor::elliptic);
}

// Presentation of the hbar-equivariant ring attached to a configuration v:
// polynomial ring C[h, x_1..x_n] with one generator
// prod_{i in S+} x_i prod_{i in S-} (h - x_i) per circuit, splittings fixed
// by the stability covector.
struct HbarPresentation {
    int n = 0;
    bool unimodular = true; // the presentation is only a theorem under this
    std::vector<Circuit> split_circuits;

    std::vector<std::string> generator_strings() const {
        std::vector<std::string> out;
        for (const Circuit& c : split_circuits) {
            std::string g;
            for (int i : c.s_plus) g += (g.empty() ? "" : "*") + std::string("x") + std::to_string(i + 1);
            for (int i : c.s_minus) g += (g.empty() ? "" : "*") + std::string("(h-x") + std::to_string(i + 1) + ")";
            out.push_back(g.empty() ? "1" : g);
        }
        return out;
    }
};

inline HbarPresentation presentation_hbar(const VectorConfig& v, const std::vector<Rational>& alpha_hat) {
    HbarPresentation pres;
    pres.n = v.n();
    pres.unimodular = is_unimodular(v);
    for (const Circuit& c : circuits(v)) pres.split_circuits.push_back(circuit_splitting(c, alpha_hat));
    return pres;
}

// The elliptic counterpart: a monomial ideal in the extended symbols
// theta(x_i), theta(h - x_i), one squarefree generator per circuit.
inline ThetaMonomialIdeal ell_presentation_from(int n, const std::vector<Circuit>& circs,
                                                const std::vector<Rational>& alpha_hat) {
    std::vector<std::vector<Int>> gens;
    for (const Circuit& c : circs) {
        Circuit sc = circuit_splitting(c, alpha_hat);
        std::vector<Int> g(std::size_t(2 * n), 0);
        for (int i : sc.s_plus) g[std::size_t(i)] = 1;
        for (int i : sc.s_minus) g[std::size_t(n + i)] = 1;
        gens.push_back(std::move(g));
    }
    return ThetaMonomialIdeal::make(n, true, std::move(gens));
}

inline ThetaMonomialIdeal ell_presentation(const VectorConfig& v, const std::vector<Rational>& alpha_hat) {
    return ell_presentation_from(v.n(), circuits(v), alpha_hat);
}

} // namespace htk
