#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "htk/numeric.hpp"

namespace htk {

// Sparse multivariate (Laurent) polynomial with exact rational coefficients,
// kept in canonical form: exponent vectors of a fixed length mapped to
// nonzero coefficients, ordered by the map. Serves as the coefficient
// algebra for all three ring flavors.
class SparsePoly {
public:
    using Exponents = std::vector<Int>;

    SparsePoly() : nvars_(0) {}
    explicit SparsePoly(int nvars) : nvars_(nvars) {}

    static SparsePoly zero(int nvars) { return SparsePoly(nvars); }
    static SparsePoly constant(int nvars, const Rational& c) {
        SparsePoly p(nvars);
        if (!c.is_zero()) p.terms_[Exponents(std::size_t(nvars), 0)] = c;
        return p;
    }
    static SparsePoly one(int nvars) { return constant(nvars, Rational(1)); }
    static SparsePoly monomial(Exponents e, const Rational& c) {
        SparsePoly p(int(e.size()));
        if (!c.is_zero()) p.terms_[std::move(e)] = c;
        return p;
    }
    static SparsePoly variable(int nvars, int index, Int power = 1) {
        Exponents e(std::size_t(nvars), 0);
        e[std::size_t(index)] = power;
        return monomial(std::move(e), Rational(1));
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Exponents, Rational>& terms() const { return terms_; }

    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && terms_.begin()->first == Exponents(std::size_t(nvars_), 0));
    }
    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        return terms_.begin()->second;
    }

    SparsePoly& add_term(const Exponents& e, const Rational& c) {
        if (int(e.size()) != nvars_) throw dimension_mismatch("exponent vector length");
        if (c.is_zero()) return *this;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
        return *this;
    }

    friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) {
        check_vars(a, b);
        SparsePoly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) {
        check_vars(a, b);
        SparsePoly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
        return r;
    }
    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
        check_vars(a, b);
        SparsePoly r(a.nvars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e(ea.size());
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = checked_add(ea[i], eb[i]);
                r.add_term(e, ca * cb);
            }
        return r;
    }
    SparsePoly& operator+=(const SparsePoly& o) { return *this = *this + o; }
    SparsePoly& operator*=(const SparsePoly& o) { return *this = *this * o; }

    SparsePoly scaled(const Rational& c) const {
        SparsePoly r(nvars_);
        if (c.is_zero()) return r;
        for (const auto& [e, v] : terms_) r.terms_[e] = v * c;
        return r;
    }

    SparsePoly pow(Int k) const {
        if (k < 0) throw std::domain_error("negative polynomial power");
        SparsePoly r = one(nvars_);
        for (Int i = 0; i < k; ++i) r = r * (*this);
        return r;
    }

    friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const SparsePoly& a, const SparsePoly& b) { return !(a == b); }
    friend bool operator<(const SparsePoly& a, const SparsePoly& b) {
        if (a.nvars_ != b.nvars_) return a.nvars_ < b.nvars_;
        return std::lexicographical_compare(
            a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end());
    }

    // Renders with the given variable names, e.g. "y1^2 - 3 y1 y2".
    std::string str(const std::string& var_prefix) const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            Rational coeff = c;
            if (!first) {
                out += coeff.sign() < 0 ? " - " : " + ";
                if (coeff.sign() < 0) coeff = -coeff;
            } else if (coeff.sign() < 0) {
                out += "-";
                coeff = -coeff;
            }
            first = false;
            std::string mono;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += var_prefix + std::to_string(i + 1);
                if (e[i] != 1) mono += "^" + std::to_string(e[i]);
            }
            if (mono.empty()) {
                out += coeff.str();
            } else {
                if (coeff != Rational(1)) out += coeff.str() + "*";
                out += mono;
            }
        }
        return out;
    }

private:
    static void check_vars(const SparsePoly& a, const SparsePoly& b) {
        if (a.nvars_ != b.nvars_) throw dimension_mismatch("polynomial variable count");
    }

    int nvars_;
    std::map<Exponents, Rational> terms_;
};

} // namespace htk
