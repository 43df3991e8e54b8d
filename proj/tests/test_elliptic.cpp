#include "doctest.h"

#include <random>

#include "test_support.hpp"

using namespace htk;

namespace {
const ModularParam kTau{Complex(0.3, 1.1)};

bool close(double a, double b, double tol = 1e-12) { return std::fabs(a - b) < tol; }
} // namespace

TEST_CASE("point reduction: stated examples and idempotence") {
    EllipticPoint p0 = EllipticPoint::reduce(0.0, kTau);
    CHECK(close(p0.s(), 0.0));
    CHECK(close(p0.t(), 0.0));

    EllipticPoint lattice = EllipticPoint::reduce(1.0 + kTau.tau(), kTau);
    CHECK(close(lattice.s(), 0.0));
    CHECK(close(lattice.t(), 0.0));

    EllipticPoint p = EllipticPoint::reduce(2.5 + 0.75 * kTau.tau(), kTau);
    CHECK(close(p.s(), 0.5, 1e-9));
    CHECK(close(p.t(), 0.75, 1e-9));

    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        Complex x(double(rng() % 1000) / 100.0 - 5.0, double(rng() % 1000) / 100.0 - 5.0);
        EllipticPoint once = EllipticPoint::reduce(x, kTau);
        EllipticPoint twice = EllipticPoint::reduce(once.rep(), kTau);
        CHECK(points_equal(once, twice));
    }
}

TEST_CASE("rational points stay exact through integer operations") {
    EllipticPoint p = EllipticPoint::from_rational(Rational(1, 3), Rational(2, 5), kTau);
    CHECK(p.exact());
    EllipticPoint q = EllipticPoint::combination({3}, {p}, kTau);
    CHECK(q.exact());
    CHECK(q.s_rational() == Rational(0));
    CHECK(q.t_rational() == Rational(1, 5));
    EllipticPoint r = p.divided(2, kTau);
    CHECK(r.s_rational() == Rational(1, 6));
    CHECK(r.t_rational() == Rational(1, 5));
    EllipticPoint tr = r.torsion_translate(1, 1, 2, kTau);
    CHECK(tr.s_rational() == Rational(2, 3));
    CHECK(tr.t_rational() == Rational(7, 10));
}

TEST_CASE("map_matrix: diagonal example, zero map, homomorphism") {
    std::mt19937_64 rng(11);
    auto rand_point = [&] {
        return EllipticPoint::reduce(Complex(double(rng() % 997) / 997.0, 0) +
                                         double(rng() % 997) / 997.0 * kTau.tau(),
                                     kTau);
    };

    // phi = (1,1)^T acting through its transpose: [x1, x2] -> [x1 + x2]
    IntMatrix diag_sum{{1, 1}};
    TorusPointE p{rand_point(), rand_point()};
    TorusPointE image = map_matrix(diag_sum, p, kTau);
    REQUIRE(image.size() == 1);
    EllipticPoint direct = EllipticPoint::reduce(p[0].rep() + p[1].rep(), kTau);
    CHECK(points_equal(image[0], direct));

    IntMatrix zero(2, 2);
    CHECK(torus_point_is_zero(map_matrix(zero, p, kTau)));

    // f(p + q) = f(p) + f(q)
    IntMatrix m{{2, -1}, {1, 3}};
    for (int trial = 0; trial < 50; ++trial) {
        TorusPointE a{rand_point(), rand_point()};
        TorusPointE b{rand_point(), rand_point()};
        TorusPointE sum;
        for (int i = 0; i < 2; ++i) sum.push_back(EllipticPoint::combination({1, 1}, {a[i], b[i]}, kTau));
        TorusPointE lhs = map_matrix(m, sum, kTau);
        TorusPointE fa = map_matrix(m, a, kTau), fb = map_matrix(m, b, kTau);
        TorusPointE rhs;
        for (int i = 0; i < 2; ++i) rhs.push_back(EllipticPoint::combination({1, 1}, {fa[i], fb[i]}, kTau));
        CHECK(torus_points_equal(lhs, rhs));
    }
}

TEST_CASE("exactness of the dual sequences on random configurations") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        int d = 1 + int(rng() % 2);
        int n = d + 1 + int(rng() % 2);
        VectorConfig cfg = testsupport::random_config(rng, n, d);
        ExactSequenceData seq = exact_sequences(cfg);
        if (seq.k == 0) continue;
        TorusPointE y;
        for (int i = 0; i < seq.d; ++i)
            y.push_back(EllipticPoint::reduce(double(rng() % 997) / 997.0 +
                                                  double(rng() % 997) / 997.0 * kTau.tau(),
                                              kTau));
        // iota_vee after pi_vee is the zero map E^d -> E^k
        TorusPointE through = map_matrix(seq.iota_vee, map_matrix(seq.pi_vee, y, kTau), kTau);
        for (const auto& c : through) {
            CHECK(EllipticPoint::circle_dist(c.s(), 0.0) < 1e-7);
            CHECK(EllipticPoint::circle_dist(c.t(), 0.0) < 1e-7);
        }
    }
}

TEST_CASE("kernel_preimage: diagonal embedding and failure modes") {
    IntMatrix psi{{1}, {1}};
    EllipticPoint x = EllipticPoint::from_rational(Rational(1, 7), Rational(3, 7), kTau);
    TorusPointE p{x, x};
    KernelPreimage pre = kernel_preimage(psi, p, torus_zero(2), kTau);
    REQUIRE(pre.point.size() == 1);
    CHECK(points_equal(pre.point[0], x));
    CHECK(pre.torsion_count == 1);

    // off the diagonal: not in the image
    EllipticPoint y = EllipticPoint::from_rational(Rational(1, 7), Rational(0), kTau);
    EllipticPoint y2 = EllipticPoint::from_rational(Rational(2, 5), Rational(0), kTau);
    CHECK_THROWS_AS(kernel_preimage(psi, TorusPointE{y, y2}, torus_zero(2), kTau), not_in_kernel);

    // non-injective lattice map
    IntMatrix wide{{1, 1}};
    CHECK_THROWS_AS(kernel_preimage(wide, TorusPointE{y}, torus_zero(1), kTau), ambiguous_preimage);
}

TEST_CASE("kernel_preimage round trip, including torsion normalization") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        int d = 1 + int(rng() % 2);
        int n = d + 1 + int(rng() % 2);
        IntMatrix psi(n, d);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < d; ++j) psi(i, j) = Int(rng() % 5) - 2;
        if (rank(psi) < d) { --trial; continue; }
        TorusPointE y;
        for (int j = 0; j < d; ++j)
            y.push_back(EllipticPoint::from_rational(Rational(Int(rng() % 97), 97),
                                                     Rational(Int(rng() % 97), 97), kTau));
        TorusPointE p = map_matrix(psi, y, kTau);
        KernelPreimage pre = kernel_preimage(psi, p, torus_zero(n), kTau);
        // psi(pre) = p again; pre itself may differ from y by torsion
        TorusPointE back = map_matrix(psi, pre.point, kTau);
        CHECK(torus_points_equal(back, p));
        if (pre.torsion_count == 1) CHECK(torus_points_equal(pre.point, y));
    }
}

TEST_CASE("solve_elliptic counts torsion translates") {
    // determinant-2 system: 4 = det^2 solutions
    IntMatrix m2{{1, 0}, {1, 2}};
    TorusPointE rhs{EllipticPoint::from_rational(Rational(1, 5), Rational(0), kTau),
                    EllipticPoint::from_rational(Rational(2, 5), Rational(1, 3), kTau)};
    EllipticSolutions sol = solve_elliptic(m2, rhs, kTau);
    CHECK_FALSE(sol.infinite);
    CHECK(sol.multiplicity == 4);
    REQUIRE(sol.points.size() == 4);
    for (const auto& pt : sol.points) {
        // each solution satisfies both equations exactly
        EllipticPoint e1 = EllipticPoint::combination({1, 0}, pt, kTau);
        EllipticPoint e2 = EllipticPoint::combination({1, 2}, pt, kTau);
        CHECK(points_equal(e1, rhs[0]));
        CHECK(points_equal(e2, rhs[1]));
    }
    EllipticSolutions one = solve_elliptic(IntMatrix{{1, 0}, {0, 1}}, rhs, kTau);
    CHECK(one.multiplicity == 1);

    // underdetermined system: positive-dimensional solution set
    EllipticSolutions inf = solve_elliptic(IntMatrix{{1, 1}}, TorusPointE{rhs[0]}, kTau);
    CHECK(inf.infinite);
}

TEST_CASE("section dimensions by degree") {
    CHECK(section_dim(-1) == 0);
    CHECK(section_dim(0) == 1);
    CHECK(section_dim(3) == 3);
    CHECK(section_dim(-7) == 0);
}
