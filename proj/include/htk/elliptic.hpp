#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "htk/snf.hpp"

namespace htk {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
// Equality tolerance on lattice (s,t) coordinates of reduced points.
inline constexpr double kLatticeTol = 1e-9;

// The modular parameter tau (Im tau > 0) with its nome q = exp(2*pi*i*tau).
class ModularParam {
public:
    explicit ModularParam(Complex tau) : tau_(tau), q_(std::exp(Complex(0, 2 * kPi) * tau)) {
        if (!(tau.imag() > 0)) throw std::domain_error("tau must have positive imaginary part");
    }

    Complex tau() const { return tau_; }
    Complex q() const { return q_; }
    double im_tau() const { return tau_.imag(); }

private:
    Complex tau_;
    Complex q_;
};

// A point of E_tau = C / <1, tau>, stored through its lattice coordinates
// (s, t) in [0,1)^2 with representative s + t*tau. Points may additionally
// carry exact rational coordinates; integer-linear operations preserve
// exactness, which lets arrangement predicates decide membership exactly
// for rational input data.
class EllipticPoint {
public:
    EllipticPoint() : s_(0), t_(0), rep_(0, 0), exact_(true), sr_(0), tr_(0) {}

    static EllipticPoint reduce(Complex x, const ModularParam& m) {
        double t = x.imag() / m.im_tau();
        double s = x.real() - t * m.tau().real();
        EllipticPoint p;
        p.exact_ = false;
        p.s_ = wrap_unit(s);
        p.t_ = wrap_unit(t);
        p.rep_ = Complex(p.s_, 0) + p.t_ * m.tau();
        return p;
    }

    static EllipticPoint from_rational(const Rational& s, const Rational& t, const ModularParam& m) {
        EllipticPoint p;
        p.exact_ = true;
        p.sr_ = s.mod1();
        p.tr_ = t.mod1();
        p.s_ = p.sr_.to_double();
        p.t_ = p.tr_.to_double();
        p.rep_ = Complex(p.s_, 0) + p.t_ * m.tau();
        return p;
    }

    double s() const { return s_; }
    double t() const { return t_; }
    Complex rep() const { return rep_; }
    bool exact() const { return exact_; }
    const Rational& s_rational() const { return sr_; }
    const Rational& t_rational() const { return tr_; }

    bool is_zero() const {
        if (exact_) return sr_.is_zero() && tr_.is_zero();
        return circle_dist(s_, 0.0) < kLatticeTol && circle_dist(t_, 0.0) < kLatticeTol;
    }

    friend bool points_equal(const EllipticPoint& a, const EllipticPoint& b) {
        if (a.exact_ && b.exact_) return a.sr_ == b.sr_ && a.tr_ == b.tr_;
        return circle_dist(a.s_, b.s_) < kLatticeTol && circle_dist(a.t_, b.t_) < kLatticeTol;
    }

    // Integer linear combination sum_i c_i * p_i, reduced.
    static EllipticPoint combination(const std::vector<Int>& coeffs,
                                     const std::vector<EllipticPoint>& pts,
                                     const ModularParam& m) {
        if (coeffs.size() != pts.size()) throw dimension_mismatch("combination size");
        bool exact = true;
        for (const auto& p : pts) exact = exact && p.exact_;
        if (exact) {
            Rational s(0), t(0);
            for (std::size_t i = 0; i < pts.size(); ++i) {
                s += Rational(coeffs[i]) * pts[i].sr_;
                t += Rational(coeffs[i]) * pts[i].tr_;
            }
            return from_rational(s, t, m);
        }
        double s = 0, t = 0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            s += double(coeffs[i]) * pts[i].s_;
            t += double(coeffs[i]) * pts[i].t_;
        }
        EllipticPoint p;
        p.exact_ = false;
        p.s_ = wrap_unit(s);
        p.t_ = wrap_unit(t);
        p.rep_ = Complex(p.s_, 0) + p.t_ * m.tau();
        return p;
    }

    EllipticPoint negated(const ModularParam& m) const {
        return combination({-1}, {*this}, m);
    }

    // Canonical solution of d*y = this with coordinates in [0, 1/d)^2.
    EllipticPoint divided(Int d, const ModularParam& m) const {
        if (d <= 0) throw std::domain_error("division by non-positive integer");
        if (exact_) return from_rational(sr_ / Rational(d), tr_ / Rational(d), m);
        EllipticPoint p;
        p.exact_ = false;
        p.s_ = s_ / double(d);
        p.t_ = t_ / double(d);
        p.rep_ = Complex(p.s_, 0) + p.t_ * m.tau();
        return p;
    }

    // Translation by the torsion point (j + k*tau)/d.
    EllipticPoint torsion_translate(Int j, Int k, Int d, const ModularParam& m) const {
        if (exact_)
            return from_rational(sr_ + Rational(j, d), tr_ + Rational(k, d), m);
        EllipticPoint p;
        p.exact_ = false;
        p.s_ = wrap_unit(s_ + double(j) / double(d));
        p.t_ = wrap_unit(t_ + double(k) / double(d));
        p.rep_ = Complex(p.s_, 0) + p.t_ * m.tau();
        return p;
    }

    static double circle_dist(double a, double b) {
        double d = std::fabs(wrap_unit(a) - wrap_unit(b));
        return std::min(d, 1.0 - d);
    }

private:
    static double wrap_unit(double u) {
        u -= std::floor(u);
        // Values within rounding of the next integer are the same lattice
        // point; snap them so reduction is idempotent.
        if (u >= 1.0 - 1e-12) u = 0.0;
        return u;
    }

    double s_, t_;
    Complex rep_;
    bool exact_;
    Rational sr_, tr_;
};

// A point of E_tau^m.
using TorusPointE = std::vector<EllipticPoint>;

inline bool torus_points_equal(const TorusPointE& a, const TorusPointE& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!points_equal(a[i], b[i])) return false;
    return true;
}

inline bool torus_point_is_zero(const TorusPointE& p) {
    for (const auto& c : p)
        if (!c.is_zero()) return false;
    return true;
}

inline TorusPointE torus_zero(int n) { return TorusPointE(std::size_t(n)); }

inline TorusPointE reduce_all(const std::vector<Complex>& xs, const ModularParam& m) {
    TorusPointE p;
    p.reserve(xs.size());
    for (Complex x : xs) p.push_back(EllipticPoint::reduce(x, m));
    return p;
}

// The group homomorphism E^c -> E^r given by an integer r x c matrix.
inline TorusPointE map_matrix(const IntMatrix& mat, const TorusPointE& p, const ModularParam& m) {
    if (mat.cols() != int(p.size())) throw dimension_mismatch("map_matrix shape");
    TorusPointE out;
    out.reserve(mat.rows());
    for (int i = 0; i < mat.rows(); ++i)
        out.push_back(EllipticPoint::combination(mat.row(i), p, m));
    return out;
}

inline TorusPointE torus_sub(const TorusPointE& a, const TorusPointE& b, const ModularParam& m) {
    if (a.size() != b.size()) throw dimension_mismatch("torus_sub size");
    TorusPointE out;
    out.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out.push_back(EllipticPoint::combination({1, -1}, {a[i], b[i]}, m));
    return out;
}

// Solution set of an integer-linear system a * y = rhs on E_tau^d, computed
// through the Smith form of a. The set is either empty, finite (all torsion
// translates listed), or positive-dimensional (flagged, not enumerated).
struct EllipticSolutions {
    bool infinite = false;
    std::vector<TorusPointE> points; // empty and !infinite means no solution
    Int multiplicity = 0;            // number of solutions when finite
};

inline EllipticSolutions solve_elliptic(const IntMatrix& a, const TorusPointE& rhs, const ModularParam& m) {
    if (a.rows() != int(rhs.size())) throw dimension_mismatch("solve_elliptic shape");
    EllipticSolutions out;
    if (a.cols() == 0) {
        // No unknowns: solvable iff rhs is the identity.
        if (torus_point_is_zero(rhs)) {
            out.points.push_back(TorusPointE{});
            out.multiplicity = 1;
        }
        return out;
    }
    SmithForm s = smith_normal_form(a);
    int r = s.rank();
    TorusPointE w = map_matrix(s.u, rhs, m);
    for (int i = r; i < a.rows(); ++i)
        if (!w[i].is_zero()) return out; // inconsistent: empty
    if (r < a.cols()) {
        out.infinite = true;
        return out;
    }
    // Unique up to torsion: enumerate all translates.
    std::vector<Int> d(r);
    for (int i = 0; i < r; ++i) d[i] = s.d(i, i);
    std::vector<TorusPointE> zs;
    zs.push_back(TorusPointE{});
    for (int i = 0; i < r; ++i) {
        EllipticPoint base = w[i].divided(d[i], m);
        std::vector<TorusPointE> next;
        next.reserve(zs.size() * std::size_t(d[i]) * std::size_t(d[i]));
        for (const auto& prefix : zs)
            for (Int j = 0; j < d[i]; ++j)
                for (Int k = 0; k < d[i]; ++k) {
                    TorusPointE z = prefix;
                    z.push_back(base.torsion_translate(j, k, d[i], m));
                    next.push_back(std::move(z));
                }
        zs = std::move(next);
    }
    for (const auto& z : zs) out.points.push_back(map_matrix(s.v, z, m));
    out.multiplicity = Int(out.points.size());
    return out;
}

// Unique preimage under an injective lattice map psi: E^d -> E^n of the
// translated point p - a0, with the canonical torsion representative
// (coordinates in [0, 1/d_i)^2 before the basis change back).
struct KernelPreimage {
    TorusPointE point;
    Int torsion_count = 1; // d_i^2 over the invariant factors
};

inline KernelPreimage kernel_preimage(const IntMatrix& psi, const TorusPointE& p,
                                      const TorusPointE& a0, const ModularParam& m) {
    if (psi.rows() != int(p.size()) || p.size() != a0.size())
        throw dimension_mismatch("kernel_preimage shape");
    SmithForm s = smith_normal_form(psi);
    if (s.rank() < psi.cols())
        throw ambiguous_preimage("psi is not injective as a lattice map");
    TorusPointE c = torus_sub(p, a0, m);
    TorusPointE w = map_matrix(s.u, c, m);
    for (int i = psi.cols(); i < psi.rows(); ++i)
        if (!w[i].is_zero())
            throw not_in_kernel("point is not in the image of psi");
    TorusPointE z;
    Int torsion = 1;
    for (int i = 0; i < psi.cols(); ++i) {
        Int d = s.d(i, i);
        z.push_back(w[i].divided(d, m));
        torsion = checked_mul(torsion, checked_mul(d, d));
    }
    return {map_matrix(s.v, z, m), torsion};
}

} // namespace htk
