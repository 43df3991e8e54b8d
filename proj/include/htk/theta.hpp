#pragma once

#include <cmath>
#include <complex>

#include "htk/elliptic.hpp"

namespace htk {

// Truncated q-product evaluation of the odd Jacobi theta function
//
//   theta(x) = (t^{1/2} - t^{-1/2}) prod_{m=1..N} (1 - q^m t)(1 - q^m t^{-1}),
//   t = exp(2 pi i x),  t^{1/2} fixed as exp(pi i x),
//
// a section of the degree-1 bundle over E_tau with a single zero at the
// lattice. It is odd, and satisfies
//
//   theta(x + a + b tau) = (-1)^{a+b} q^{-b^2/2} t^{-b} theta(x)
//
// (see quasi_period_factor). Truncation at N is flagged, not fatal: the
// value is returned together with a warning when |q|^N is above tolerance.

inline constexpr int kThetaDefaultTerms = 40;
inline constexpr double kThetaTruncationTol = 1e-12;

struct ThetaResult {
    Complex value;
    bool truncation_warning = false;
};

inline ThetaResult theta_eval(Complex x, const ModularParam& m, int terms = kThetaDefaultTerms) {
    if (terms < 1) throw std::domain_error("theta truncation order must be >= 1");
    const Complex q = m.q();
    const Complex t = std::exp(Complex(0, 2 * kPi) * x);
    const Complex half = std::exp(Complex(0, kPi) * x);
    Complex value = half - 1.0 / half;
    Complex qm = 1.0;
    for (int k = 1; k <= terms; ++k) {
        qm *= q;
        value *= (1.0 - qm * t) * (1.0 - qm / t);
    }
    bool warn = std::pow(std::abs(q), terms) > kThetaTruncationTol;
    return {value, warn};
}

inline Complex theta(Complex x, const ModularParam& m, int terms = kThetaDefaultTerms) {
    return theta_eval(x, m, terms).value;
}

// d/dx of the truncated product. Safe whenever no product factor vanishes,
// which holds for every x with lattice t-coordinate in [0,1).
inline Complex theta_derivative(Complex x, const ModularParam& m, int terms = kThetaDefaultTerms) {
    const Complex q = m.q();
    const Complex t = std::exp(Complex(0, 2 * kPi) * x);
    const Complex half = std::exp(Complex(0, kPi) * x);
    const Complex i2pi(0, 2 * kPi);
    Complex s = half - 1.0 / half;
    Complex ds = Complex(0, kPi) * (half + 1.0 / half);
    Complex prod = 1.0;
    Complex dlog = 0.0; // (FG)'/(FG)
    Complex qm = 1.0;
    for (int k = 1; k <= terms; ++k) {
        qm *= q;
        Complex f = 1.0 - qm * t;
        Complex g = 1.0 - qm / t;
        prod *= f * g;
        dlog += -i2pi * qm * t / f + i2pi * qm / t / g;
    }
    return ds * prod + s * prod * dlog;
}

// Multiplier relating theta(x + a + b*tau) to theta(x):
// (-1)^{a+b} q^{-b^2/2} t^{-b}, with q^{1/2} = exp(pi i tau) and
// t = exp(2 pi i x).
inline Complex quasi_period_factor(Int a, Int b, Complex x, const ModularParam& m) {
    double sign = ((a + b) % 2 == 0) ? 1.0 : -1.0;
    Complex qpow = std::exp(Complex(0, -kPi) * m.tau() * double(b) * double(b));
    Complex tpow = std::exp(Complex(0, -2 * kPi) * x * double(b));
    return sign * qpow * tpow;
}

// Appell-Humbert automorphy data: hermitian form H(x,y) = k x conj(y) / Im tau
// and the twisted character chi(gamma) = (-1)^{ab} exp(2 pi i E(x0, gamma)),
// E = Im H.
struct AutomorphyData {
    int degree = 1;
    Complex shift_x0 = 0.0;
};

inline double automorphy_pairing_e(const AutomorphyData& ad, Complex x, Complex y, const ModularParam& m) {
    return double(ad.degree) * std::imag(x * std::conj(y)) / m.im_tau();
}

inline Complex automorphy_chi(const AutomorphyData& ad, Int a, Int b, const ModularParam& m) {
    Complex gamma = double(a) + double(b) * m.tau();
    double sign = ((a % 2 != 0) && (b % 2 != 0)) ? -1.0 : 1.0;
    return sign * std::exp(Complex(0, 2 * kPi) * automorphy_pairing_e(ad, ad.shift_x0, gamma, m));
}

// e_{(H,chi)}(gamma, x) = chi(gamma) exp(pi H(x,gamma) + (pi/2) H(gamma,gamma)).
inline Complex automorphy_eval(const AutomorphyData& ad, Int a, Int b, Complex x, const ModularParam& m) {
    Complex gamma = double(a) + double(b) * m.tau();
    Complex h_xg = double(ad.degree) * x * std::conj(gamma) / m.im_tau();
    Complex h_gg = double(ad.degree) * gamma * std::conj(gamma) / m.im_tau();
    return automorphy_chi(ad, a, b, m) * std::exp(kPi * h_xg + (kPi / 2.0) * h_gg);
}

// The degree-1 pair whose factor is gauge-equivalent to quasi_period_factor
// through theta_gauge_coboundary.
inline AutomorphyData automorphy_o_e(const ModularParam& m) {
    return {1, (1.0 + m.tau()) / 2.0};
}

// c(x) with  automorphy_eval(o_e; gamma, x) = quasi_period_factor(gamma, x)
// * c(x + gamma) / c(x).
inline Complex theta_gauge_coboundary(Complex x, const ModularParam& m) {
    return std::exp(kPi * x * x / (2.0 * m.im_tau()));
}

// dim H^0 of a line bundle on an elliptic curve by degree.
inline Int section_dim(Int degree) {
    if (degree < 0) return 0;
    if (degree == 0) return 1;
    return degree;
}

} // namespace htk
