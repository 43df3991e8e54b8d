#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "htk/config.hpp"
#include "htk/theta.hpp"

namespace htk {

// Deterministic uniform sampler: identical seeds give identical draws on
// every platform (no reliance on distribution internals).
class SampleRng {
public:
    explicit SampleRng(std::uint64_t seed) : eng_(seed) {}
    double unit() { return double(eng_() >> 11) * 0x1.0p-53; }
    double range(double lo, double hi) { return lo + (hi - lo) * unit(); }
    Complex box(double re_lo, double re_hi, double im_lo, double im_hi) {
        double re = range(re_lo, re_hi);
        return {re, range(im_lo, im_hi)};
    }

private:
    std::mt19937_64 eng_;
};

// A point of the surface z w = theta(x).
struct SurfacePoint {
    Complex z, w, x;
};

struct CheckResult {
    std::string name;
    double residual = 0;
    double tolerance = 0;
    bool pass = false;
    std::uint64_t seed = 0;
    double step = 0;
    std::string detail;
};

inline CheckResult make_check(std::string name, double residual, double tolerance,
                              std::uint64_t seed = 0, double step = 0, std::string detail = {}) {
    CheckResult r;
    r.name = std::move(name);
    r.residual = residual;
    r.tolerance = tolerance;
    r.pass = residual < tolerance;
    r.seed = seed;
    r.step = step;
    r.detail = std::move(detail);
    return r;
}

// Draws z from the annulus 0.5 <= |z| <= 2 and completes to a surface
// point over x. Over a theta zero the fiber is two crossing lines; the
// branch flag picks which line to land on.
inline SurfacePoint sample_surface(Complex x, const ModularParam& m, std::uint64_t seed,
                                   int branch = 0, int terms = kThetaDefaultTerms) {
    SampleRng rng(seed);
    double radius = rng.range(0.5, 2.0);
    double angle = rng.range(0.0, 2 * kPi);
    Complex zdraw = std::polar(radius, angle);
    Complex th = theta(x, m, terms);
    if (std::abs(th) < 1e-12)
        return branch == 0 ? SurfacePoint{zdraw, 0.0, x} : SurfacePoint{0.0, zdraw, x};
    return {zdraw, th / zdraw, x};
}

enum class FiberType { smooth_torus_fiber, nodal_fiber };

inline constexpr double kFiberTol = 1e-6;

// The fiber over x degenerates exactly where theta vanishes, i.e. on the
// lattice for the degree-1 bundle.
inline FiberType fiber_type(Complex x, const ModularParam& m, int terms = kThetaDefaultTerms) {
    EllipticPoint p = EllipticPoint::reduce(x, m);
    return std::abs(theta(p.rep(), m, terms)) < kFiberTol ? FiberType::nodal_fiber
                                                          : FiberType::smooth_torus_fiber;
}

namespace detail {

// Projects an ambient direction onto the holomorphic tangent space of
// {zw = theta(x)} at p, then normalizes.
inline void project_tangent(const SurfacePoint& p, const ModularParam& m, int terms,
                            Complex& dz, Complex& dw, Complex& dx) {
    Complex grad[3] = {p.w, p.z, -theta_derivative(p.x, m, terms)};
    Complex dir[3] = {dz, dw, dx};
    Complex pairing = grad[0] * dir[0] + grad[1] * dir[1] + grad[2] * dir[2];
    double norm2 = std::norm(grad[0]) + std::norm(grad[1]) + std::norm(grad[2]);
    for (int i = 0; i < 3; ++i) dir[i] -= pairing / norm2 * std::conj(grad[i]);
    double len = std::sqrt(std::norm(dir[0]) + std::norm(dir[1]) + std::norm(dir[2]));
    if (len > 0)
        for (auto& c : dir) c /= len;
    dz = dir[0];
    dw = dir[1];
    dx = dir[2];
}

} // namespace detail

// Verifies the moment-map identity omega(v_zeta, -) = zeta dx on the
// surface: a random tangent direction is realized as a central-difference
// secant through two exact surface points, the symplectic form is evaluated
// on it through the x-free chart expression dz^dw / theta'(x), and the
// result is compared with zeta dx. The secant is tangent up to O(h^2), so
// the residual scales quadratically in the step.
inline CheckResult e_moment_check(const SurfacePoint& p, const ModularParam& m, double h,
                                  std::uint64_t seed, Complex zeta = 1.0, double tolerance = 1e-5,
                                  int terms = kThetaDefaultTerms) {
    if (std::abs(p.z) <= 0.1) throw chart_failure("|z| too small for the z != 0 chart");
    Complex dtheta = theta_derivative(p.x, m, terms);
    if (std::abs(dtheta) <= 0.05) throw chart_failure("theta'(x) too small for the dz^dw chart");
    if (zeta == Complex(0.0))
        return make_check("e_moment", 0.0, tolerance, seed, h, "zeta = 0");

    SampleRng rng(seed);
    Complex dz = rng.box(-1, 1, -1, 1), dw = rng.box(-1, 1, -1, 1), dx = rng.box(-1, 1, -1, 1);
    detail::project_tangent(p, m, terms, dz, dw, dx);

    auto on_surface = [&](double sgn) {
        Complex x = p.x + sgn * h * dx;
        Complex z = p.z + sgn * h * dz;
        return SurfacePoint{z, theta(x, m, terms) / z, x};
    };
    SurfacePoint plus = on_surface(1.0), minus = on_surface(-1.0);
    Complex sz = (plus.z - minus.z) / (2 * h);
    Complex sw = (plus.w - minus.w) / (2 * h);
    Complex sx = (plus.x - minus.x) / (2 * h);

    Complex omega = zeta * (p.z * sw + p.w * sz) / dtheta;
    Complex expected = zeta * sx;
    return make_check("e_moment", std::abs(omega - expected), tolerance, seed, h);
}

// Lattice translation gamma . (z, w, x) = (z, alpha(gamma,x) w, x + gamma):
// checks that the surface equation is preserved and that the symplectic
// form takes the same value on pushed-forward tangent pairs.
inline CheckResult gamma_equivariance_check(const SurfacePoint& p, Int a, Int b,
                                            const ModularParam& m, std::uint64_t seed = 1,
                                            double tolerance = 1e-9,
                                            int terms = kThetaDefaultTerms) {
    Complex gamma = double(a) + double(b) * m.tau();
    Complex alpha = quasi_period_factor(a, b, p.x, m);
    Complex x2 = p.x + gamma;
    Complex w2 = alpha * p.w;
    Complex th2 = theta(x2, m, terms);
    double surface_residual = std::abs(p.z * w2 - th2) / (1.0 + std::abs(th2));

    double form_residual = 0;
    Complex dth1 = theta_derivative(p.x, m, terms);
    Complex dth2 = theta_derivative(x2, m, terms);
    if (std::abs(p.z) > 0.1 && std::abs(dth1) > 0.05 && std::abs(dth2) > 0.05) {
        SampleRng rng(seed);
        Complex dalpha = Complex(0, -2 * kPi) * double(b) * alpha; // d/dx of the multiplier
        Complex v1[3], v2[3];
        for (auto* v : {&v1, &v2}) {
            (*v)[0] = rng.box(-1, 1, -1, 1);
            (*v)[1] = rng.box(-1, 1, -1, 1);
            (*v)[2] = rng.box(-1, 1, -1, 1);
            detail::project_tangent(p, m, terms, (*v)[0], (*v)[1], (*v)[2]);
        }
        auto push = [&](const Complex v[3], Complex out[3]) {
            out[0] = v[0];
            out[1] = alpha * v[1] + dalpha * p.w * v[2];
            out[2] = v[2];
        };
        Complex u1[3], u2[3];
        push(v1, u1);
        push(v2, u2);
        Complex before = (v1[0] * v2[1] - v1[1] * v2[0]) / dth1;
        Complex after = (u1[0] * u2[1] - u1[1] * u2[0]) / dth2;
        form_residual = std::abs(before - after) / (1.0 + std::abs(before));
    }
    double residual = std::max(surface_residual, form_residual);
    return make_check("gamma_equivariance", residual, tolerance, seed, 0,
                      "gamma = " + std::to_string(a) + " + " + std::to_string(b) + " tau");
}

// ---------------------------------------------------------------------------
// Theta identity checks shared by the test suites and the verify command.
// Residuals of identities whose two sides can grow like exp(b^2 pi Im tau)
// are scaled by the magnitude of the sides; identities between O(1)
// quantities use plain absolute residuals.

inline double scaled_residual(Complex lhs, Complex rhs) {
    return std::abs(lhs - rhs) / std::max(1.0, std::max(std::abs(lhs), std::abs(rhs)));
}

inline Complex random_fundamental_point(SampleRng& rng, const ModularParam& m) {
    return rng.unit() + rng.unit() * m.tau();
}

inline CheckResult theta_zero_check(const ModularParam& m, int terms = kThetaDefaultTerms,
                                    double tol = 1e-12) {
    return make_check("theta_zero_at_identity", std::abs(theta(0.0, m, terms)), tol);
}

inline CheckResult theta_oddness_check(const ModularParam& m, int samples, std::uint64_t seed,
                                       int terms = kThetaDefaultTerms, double tol = 1e-10) {
    SampleRng rng(seed);
    double worst = 0;
    for (int i = 0; i < samples; ++i) {
        Complex x = random_fundamental_point(rng, m);
        worst = std::max(worst, scaled_residual(theta(-x, m, terms), -theta(x, m, terms)));
    }
    return make_check("theta_oddness", worst, tol, seed);
}

inline CheckResult theta_quasi_periodicity_check(const ModularParam& m, int samples,
                                                 std::uint64_t seed, Int max_shift = 3,
                                                 int terms = kThetaDefaultTerms, double tol = 1e-9) {
    SampleRng rng(seed);
    double worst = 0;
    for (int i = 0; i < samples; ++i) {
        Complex x = random_fundamental_point(rng, m);
        Complex base = theta(x, m, terms);
        for (Int a = -max_shift; a <= max_shift; ++a)
            for (Int b = -max_shift; b <= max_shift; ++b) {
                Complex shifted = theta(x + double(a) + double(b) * m.tau(), m, terms);
                Complex predicted = quasi_period_factor(a, b, x, m) * base;
                worst = std::max(worst, scaled_residual(shifted, predicted));
            }
    }
    return make_check("theta_quasi_periodicity", worst, tol, seed);
}

inline CheckResult theta_convergence_check(const ModularParam& m, int samples, std::uint64_t seed,
                                           double tol = 1e-12) {
    SampleRng rng(seed);
    double worst = 0;
    for (int i = 0; i < samples; ++i) {
        Complex x = random_fundamental_point(rng, m);
        worst = std::max(worst, std::abs(theta(x, m, 40) - theta(x, m, 80)));
    }
    return make_check("theta_truncation_convergence", worst, tol, seed);
}

inline CheckResult automorphy_cocycle_check(const AutomorphyData& ad, const ModularParam& m,
                                            int samples, std::uint64_t seed, double tol = 1e-9) {
    SampleRng rng(seed);
    double worst = 0;
    const Int gens[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (int i = 0; i < samples; ++i) {
        Complex x = random_fundamental_point(rng, m);
        int gi = int(rng.unit() * 4) % 4, gj = int(rng.unit() * 4) % 4;
        Int a1 = gens[gi][0], b1 = gens[gi][1], a2 = gens[gj][0], b2 = gens[gj][1];
        Complex sum = automorphy_eval(ad, a1 + a2, b1 + b2, x, m);
        Complex split = automorphy_eval(ad, a1, b1, x + double(a2) + double(b2) * m.tau(), m) *
                        automorphy_eval(ad, a2, b2, x, m);
        worst = std::max(worst, scaled_residual(sum, split));
    }
    return make_check("automorphy_cocycle", worst, tol, seed);
}

// Grid scan of the fundamental domain: the fiber degenerates exactly at the
// lattice node. The residual counts misclassified grid points.
inline CheckResult fiber_scan_check(const ModularParam& m, int grid = 41,
                                    int terms = kThetaDefaultTerms) {
    int mismatches = 0;
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            Complex x = double(i) / grid + double(j) / grid * m.tau();
            bool nodal = fiber_type(x, m, terms) == FiberType::nodal_fiber;
            bool expected = (i == 0 && j == 0);
            if (nodal != expected) ++mismatches;
        }
    return make_check("fiber_type_grid_scan", double(mismatches), 0.5, 0, 0,
                      std::to_string(grid) + "x" + std::to_string(grid) + " grid");
}

// Moment-map formula evaluation for the additive, multiplicative and
// elliptic reductions. The point data is (z, w) with x entering only the
// elliptic flavors.
inline std::vector<Complex> moment_additive_complex(const std::vector<Complex>& z,
                                                    const std::vector<Complex>& w,
                                                    const ExactSequenceData& seq) {
    if (int(z.size()) != seq.n || int(w.size()) != seq.n) throw dimension_mismatch("point size");
    std::vector<Complex> out(std::size_t(seq.k), 0.0);
    for (int j = 0; j < seq.k; ++j)
        for (int i = 0; i < seq.n; ++i)
            out[std::size_t(j)] += double(seq.iota_vee(j, i)) * z[std::size_t(i)] * w[std::size_t(i)];
    return out;
}

inline std::vector<double> moment_additive_real(const std::vector<Complex>& z,
                                                const std::vector<Complex>& w,
                                                const ExactSequenceData& seq) {
    if (int(z.size()) != seq.n || int(w.size()) != seq.n) throw dimension_mismatch("point size");
    std::vector<double> out(std::size_t(seq.k), 0.0);
    for (int j = 0; j < seq.k; ++j)
        for (int i = 0; i < seq.n; ++i)
            out[std::size_t(j)] +=
                0.5 * double(seq.iota_vee(j, i)) * (std::norm(z[std::size_t(i)]) - std::norm(w[std::size_t(i)]));
    return out;
}

// Real moment map of the elliptic model, with the Gaussian weight
// exp(-2 pi (Im x_i)^2 / Im tau) on the fiber coordinate.
inline std::vector<double> moment_elliptic_real(const std::vector<Complex>& z,
                                                const std::vector<Complex>& w,
                                                const std::vector<Complex>& x,
                                                const ExactSequenceData& seq, const ModularParam& m) {
    if (int(z.size()) != seq.n || int(w.size()) != seq.n || int(x.size()) != seq.n)
        throw dimension_mismatch("point size");
    std::vector<double> out(std::size_t(seq.k), 0.0);
    for (int j = 0; j < seq.k; ++j)
        for (int i = 0; i < seq.n; ++i) {
            double im = x[std::size_t(i)].imag();
            double weight = std::exp(-2 * kPi * im * im / m.im_tau());
            out[std::size_t(j)] += 0.5 * double(seq.iota_vee(j, i)) *
                                   (std::norm(z[std::size_t(i)]) - weight * std::norm(w[std::size_t(i)]));
        }
    return out;
}

// (prod_i (1 - z_i w_i)^{iota_{ij}})_j, defined away from z_i w_i = 1.
inline std::vector<Complex> moment_multiplicative(const std::vector<Complex>& z,
                                                  const std::vector<Complex>& w,
                                                  const ExactSequenceData& seq) {
    if (int(z.size()) != seq.n || int(w.size()) != seq.n) throw dimension_mismatch("point size");
    std::vector<Complex> factors(std::size_t(seq.n));
    for (int i = 0; i < seq.n; ++i) {
        factors[std::size_t(i)] = 1.0 - z[std::size_t(i)] * w[std::size_t(i)];
        if (std::abs(factors[std::size_t(i)]) < 1e-14)
            throw off_locus("z_i w_i = 1 is outside the multiplicative locus");
    }
    std::vector<Complex> out(std::size_t(seq.k), 1.0);
    for (int j = 0; j < seq.k; ++j)
        for (int i = 0; i < seq.n; ++i) {
            Int e = seq.iota_vee(j, i);
            Complex f = factors[std::size_t(i)];
            for (Int r = 0; r < abs_int(e); ++r) out[std::size_t(j)] *= (e > 0 ? f : 1.0 / f);
        }
    return out;
}

// Curve-valued moment map: the projection to E^n followed by the map of the
// dual inclusion, i.e. map_matrix(iota_vee, [x]).
inline TorusPointE moment_elliptic_curve(const std::vector<Complex>& x, const ExactSequenceData& seq,
                                         const ModularParam& m) {
    if (int(x.size()) != seq.n) throw dimension_mismatch("point size");
    return map_matrix(seq.iota_vee, reduce_all(x, m), m);
}

// Level membership of a surface-product point for the elliptic reduction:
// real component against the alpha level (when given), curve component
// against beta.
inline bool level_set_member(const std::vector<Complex>& z, const std::vector<Complex>& w,
                             const std::vector<Complex>& x, const ExactSequenceData& seq,
                             const ModularParam& m, const std::vector<double>* alpha_level,
                             const TorusPointE& beta, double tol) {
    if (alpha_level) {
        std::vector<double> mu = moment_elliptic_real(z, w, x, seq, m);
        for (int j = 0; j < seq.k; ++j)
            if (std::fabs(mu[std::size_t(j)] - (*alpha_level)[std::size_t(j)]) > tol) return false;
    }
    TorusPointE muc = moment_elliptic_curve(x, seq, m);
    if (int(beta.size()) != seq.k) throw dimension_mismatch("beta size");
    for (int j = 0; j < seq.k; ++j) {
        double ds = EllipticPoint::circle_dist(muc[std::size_t(j)].s(), beta[std::size_t(j)].s());
        double dt = EllipticPoint::circle_dist(muc[std::size_t(j)].t(), beta[std::size_t(j)].t());
        if (ds > tol || dt > tol) return false;
    }
    return true;
}

} // namespace htk
