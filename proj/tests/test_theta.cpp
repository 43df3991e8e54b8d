#include "doctest.h"

#include "test_support.hpp"

using namespace htk;

namespace {
const ModularParam kTau{Complex(0.3, 1.1)};
}

TEST_CASE("theta vanishes at the identity and is odd") {
    CHECK(std::abs(theta(0.0, kTau)) < 1e-12);
    CheckResult odd = theta_oddness_check(kTau, 100, 42);
    CHECK(odd.pass);
    CHECK(odd.residual < 1e-10);
}

TEST_CASE("quasi-periodicity against the multiplier, including pure integer shifts") {
    // The generator multipliers: x -> x+1 flips the sign; x -> x+tau
    // contributes -q^{-1/2} t^{-1}.
    SampleRng rng(7);
    for (int i = 0; i < 20; ++i) {
        Complex x = random_fundamental_point(rng, kTau);
        Complex t = std::exp(Complex(0, 2 * kPi) * x);
        CHECK(quasi_period_factor(1, 0, x, kTau) == Complex(-1.0));
        Complex expected_b = -std::exp(Complex(0, -kPi) * kTau.tau()) / t;
        CHECK(std::abs(quasi_period_factor(0, 1, x, kTau) - expected_b) < 1e-12 * std::abs(expected_b));

        CHECK(scaled_residual(theta(x + 1.0, kTau), -theta(x, kTau)) < 1e-12);
        CHECK(scaled_residual(theta(x + kTau.tau(), kTau),
                              quasi_period_factor(0, 1, x, kTau) * theta(x, kTau)) < 1e-9);
    }
    CheckResult qp = theta_quasi_periodicity_check(kTau, 100, 42, 3);
    CHECK(qp.pass);
    CHECK(qp.residual < 1e-9);
}

TEST_CASE("truncation behavior") {
    CheckResult conv = theta_convergence_check(kTau, 100, 9);
    CHECK(conv.pass);
    CHECK(conv.residual < 1e-12);

    // shallow tau: |q|^40 is far above tolerance, the flag must raise
    ModularParam shallow{Complex(0.0, 0.05)};
    CHECK(theta_eval(Complex(0.3, 0.01), shallow, 40).truncation_warning);
    CHECK_FALSE(theta_eval(Complex(0.3, 0.01), kTau, 40).truncation_warning);
}

TEST_CASE("theta derivative matches central differences") {
    SampleRng rng(5);
    for (int i = 0; i < 30; ++i) {
        Complex x = random_fundamental_point(rng, kTau);
        double h = 1e-5;
        Complex numeric = (theta(x + h, kTau) - theta(x - h, kTau)) / (2 * h);
        Complex analytic = theta_derivative(x, kTau);
        CHECK(std::abs(numeric - analytic) < 1e-6 * (1.0 + std::abs(analytic)));
    }
}

TEST_CASE("automorphy factor: trivial element, cocycle, character law") {
    AutomorphyData oe = automorphy_o_e(kTau);
    SampleRng rng(3);
    for (int i = 0; i < 10; ++i) {
        Complex x = random_fundamental_point(rng, kTau);
        CHECK(std::abs(automorphy_eval(oe, 0, 0, x, kTau) - 1.0) < 1e-13);
    }

    CheckResult cocycle = automorphy_cocycle_check(oe, kTau, 200, 42);
    CHECK(cocycle.pass);
    CHECK(cocycle.residual < 1e-9);

    // twisted character law on generators
    for (Int a1 = -2; a1 <= 2; ++a1)
        for (Int b1 = -2; b1 <= 2; ++b1)
            for (Int a2 = -2; a2 <= 2; ++a2)
                for (Int b2 = -2; b2 <= 2; ++b2) {
                    Complex lhs = automorphy_chi(oe, a1 + a2, b1 + b2, kTau);
                    double e = automorphy_pairing_e(
                        oe, double(a1) + double(b1) * kTau.tau(),
                        double(a2) + double(b2) * kTau.tau(), kTau);
                    Complex rhs = automorphy_chi(oe, a1, b1, kTau) * automorphy_chi(oe, a2, b2, kTau) *
                                  std::exp(Complex(0, kPi) * e);
                    CHECK(scaled_residual(lhs, rhs) < 1e-10);
                }
}

TEST_CASE("degree-1 automorphy factor is the theta multiplier up to the gauge coboundary") {
    AutomorphyData oe = automorphy_o_e(kTau);
    SampleRng rng(21);
    for (int i = 0; i < 50; ++i) {
        Complex x = random_fundamental_point(rng, kTau);
        Int a = Int(rng.unit() * 5) - 2;
        Int b = Int(rng.unit() * 5) - 2;
        Complex gamma = double(a) + double(b) * kTau.tau();
        Complex lhs = automorphy_eval(oe, a, b, x, kTau);
        Complex rhs = quasi_period_factor(a, b, x, kTau) *
                      theta_gauge_coboundary(x + gamma, kTau) / theta_gauge_coboundary(x, kTau);
        CHECK(scaled_residual(lhs, rhs) < 1e-9);
    }
}
