#include "doctest.h"

#include <random>

#include "test_support.hpp"

using namespace htk;
using testsupport::config_of;

namespace {
std::vector<Rational> generic_alpha(int n) {
    std::vector<Rational> a;
    Int den = 1;
    for (int i = 0; i < n; ++i) {
        a.emplace_back(1, den);
        den *= 2;
    }
    return a;
}

std::vector<Int> gen(std::initializer_list<Int> v) { return std::vector<Int>(v); }
} // namespace

TEST_CASE("circuit ideal on the stated examples") {
    ThetaMonomialIdeal tp1 = circuit_ideal(config_of({{1}, {-1}}));
    CHECK(tp1.generators == std::vector<std::vector<Int>>{gen({1, 1})});

    ThetaMonomialIdeal a2 = circuit_ideal(testsupport::an_family(3));
    CHECK(a2.generators ==
          std::vector<std::vector<Int>>{gen({0, 1, 1}), gen({1, 0, 1}), gen({1, 1, 0})});

    CHECK(circuit_ideal(testsupport::standard_basis(3)).is_zero_ideal());
}

TEST_CASE("coinvariant ideal: box enumeration, minimalization, stability") {
    CoinvariantIdeal tp1 = coinvariant_ideal(config_of({{1}, {-1}}), 3);
    CHECK(tp1.ideal.generators == std::vector<std::vector<Int>>{gen({1, 1})});
    CHECK(tp1.stable);

    CHECK(coinvariant_ideal(testsupport::standard_basis(3), 2).ideal.is_zero_ideal());

    CoinvariantIdeal a2 = coinvariant_ideal(testsupport::an_family(3), 3);
    CHECK(a2.ideal.generators ==
          std::vector<std::vector<Int>>{gen({0, 1, 1}), gen({1, 0, 1}), gen({1, 1, 0})});
    CHECK(a2.stable);

    // non-unimodular: the kernel vector (1,2,-1) yields an exponent > 1
    CoinvariantIdeal orb = coinvariant_ideal(config_of({{1, 0}, {0, 1}, {1, 2}}), 3);
    CHECK(orb.ideal.generators == std::vector<std::vector<Int>>{gen({1, 2, 1})});
}

TEST_CASE("coinvariant box enumeration matches a direct scan") {
    std::mt19937_64 rng(606);
    for (int trial = 0; trial < 10; ++trial) {
        int d = 1 + int(rng() % 2);
        int n = d + 1 + int(rng() % 2);
        VectorConfig v = testsupport::random_config(rng, n, d);
        const Int radius = 2;
        // direct scan of the full box, testing kernel membership per vector
        std::set<std::vector<Int>> expect;
        std::vector<Int> lambda(std::size_t(n), 0);
        auto rec = [&](auto&& self, int pos) -> void {
            if (pos == n) {
                bool zero = true;
                for (Int x : lambda) zero = zero && x == 0;
                if (zero) return;
                for (int r = 0; r < d; ++r) {
                    Int s = 0;
                    for (int i = 0; i < n; ++i) s += lambda[std::size_t(i)] * v.vector(i)[r];
                    if (s != 0) return;
                }
                std::vector<Int> g(lambda.size());
                for (std::size_t i = 0; i < lambda.size(); ++i) g[i] = abs_int(lambda[i]);
                expect.insert(g);
                return;
            }
            for (Int x = -radius; x <= radius; ++x) {
                lambda[std::size_t(pos)] = x;
                self(self, pos + 1);
            }
        };
        rec(rec, 0);
        ThetaMonomialIdeal direct = ThetaMonomialIdeal::make(
            n, false, std::vector<std::vector<Int>>(expect.begin(), expect.end()));
        CHECK(coinvariant_ideal(v, radius).ideal == direct);
    }
}

TEST_CASE("specialization at hbar = 0 merges the two symbol blocks") {
    ThetaMonomialIdeal ext = ThetaMonomialIdeal::make(2, true, {gen({1, 0, 0, 1})});
    ThetaMonomialIdeal spec = specialize_hbar_zero(ext);
    CHECK_FALSE(spec.extended);
    CHECK(spec.generators == std::vector<std::vector<Int>>{gen({1, 1})});

    CHECK(specialize_hbar_zero(ThetaMonomialIdeal::make(2, true, {})).is_zero_ideal());

    // A_2 generators {theta_i theta'_j} -> the three pair products
    ThetaMonomialIdeal a2ext = ThetaMonomialIdeal::make(
        3, true, {gen({1, 0, 0, 0, 1, 0}), gen({1, 0, 0, 0, 0, 1}), gen({0, 1, 0, 0, 0, 1})});
    ThetaMonomialIdeal a2spec = specialize_hbar_zero(a2ext);
    CHECK(a2spec.generators ==
          std::vector<std::vector<Int>>{gen({0, 1, 1}), gen({1, 0, 1}), gen({1, 1, 0})});

    CHECK_THROWS_AS(specialize_hbar_zero(ThetaMonomialIdeal::make(2, false, {gen({1, 1})})),
                    variable_set_mismatch);
}

TEST_CASE("ideal equality with certificates") {
    ThetaMonomialIdeal a = ThetaMonomialIdeal::make(2, false, {gen({1, 1})});
    ThetaMonomialIdeal powers =
        ThetaMonomialIdeal::make(2, false, {gen({1, 1}), gen({2, 2}), gen({3, 3})});
    IdealEqualityResult eq = ideal_equal(a, powers);
    CHECK(eq.equal);
    CHECK(eq.left_divisor == std::vector<int>{0});
    CHECK(eq.right_divisor == std::vector<int>{0});

    ThetaMonomialIdeal b = ThetaMonomialIdeal::make(2, false, {gen({1, 0})});
    IdealEqualityResult neq = ideal_equal(b, a);
    CHECK_FALSE(neq.equal);
    CHECK_FALSE(neq.left_in_right); // theta_1 is not divisible by theta_1 theta_2
    CHECK(neq.right_in_left);

    CHECK(ideal_equal(a, a).equal); // reflexivity

    ThetaMonomialIdeal ext = ThetaMonomialIdeal::make(1, true, {gen({1, 1})});
    CHECK_THROWS_AS(ideal_equal(a, ext), variable_set_mismatch);
}

TEST_CASE("ideal equality is an equivalence relation on minimalized ideals") {
    std::mt19937_64 rng(9090);
    std::vector<ThetaMonomialIdeal> pool;
    for (int i = 0; i < 6; ++i) {
        std::vector<std::vector<Int>> gens;
        int g = 1 + int(rng() % 3);
        for (int j = 0; j < g; ++j) {
            std::vector<Int> e(3, 0);
            for (auto& x : e) x = Int(rng() % 3);
            gens.push_back(e);
        }
        pool.push_back(ThetaMonomialIdeal::make(3, false, gens));
    }
    for (const auto& x : pool)
        for (const auto& y : pool) {
            IdealEqualityResult xy = ideal_equal(x, y);
            CHECK(xy.equal == ideal_equal(y, x).equal); // symmetry
            for (const auto& z : pool)
                if (xy.equal && ideal_equal(y, z).equal) CHECK(ideal_equal(x, z).equal);
        }
}

TEST_CASE("hikita verification on the stated examples") {
    std::vector<Rational> alpha2 = generic_alpha(2);
    HikitaReport tp1 = hikita_verify(config_of({{1}, {-1}}), alpha2, 2);
    CHECK(tp1.pass);
    CHECK(tp1.unimodular);
    CHECK(tp1.circuits_ideal.generators == std::vector<std::vector<Int>>{gen({1, 1})});

    HikitaReport basis = hikita_verify(testsupport::standard_basis(3), generic_alpha(3), 3);
    CHECK(basis.pass);
    CHECK(basis.circuits_ideal.is_zero_ideal());
    CHECK(basis.coinvariants.ideal.is_zero_ideal());

    HikitaReport a2 = hikita_verify(testsupport::an_family(3), generic_alpha(3), 3);
    CHECK(a2.pass);
    CHECK(a2.circuits_ideal.generators.size() == 3);

    // outside the theorem's hypotheses: flagged, equality genuinely fails
    HikitaReport orb = hikita_verify(config_of({{1, 0}, {0, 1}, {1, 2}}), generic_alpha(3), 3);
    CHECK_FALSE(orb.unimodular);
    CHECK_FALSE(orb.pass);
    CHECK_FALSE(orb.circuit_vs_coinvariant.equal);
    // the inclusion that survives: coinvariant generators divide into circuits
    CHECK(orb.circuit_vs_coinvariant.right_in_left);
}

TEST_CASE("circuit ideal is contained in every coinvariant truncation (unimodular case)") {
    std::mt19937_64 rng(111);
    int tested = 0;
    while (tested < 8) {
        int d = 1 + int(rng() % 2);
        int n = d + 1 + int(rng() % 2);
        VectorConfig v = testsupport::random_config(rng, n, d);
        if (!is_unimodular(v)) continue;
        ++tested;
        ThetaMonomialIdeal ci = circuit_ideal(v);
        for (Int radius = 1; radius <= n; ++radius) {
            IdealEqualityResult eq = ideal_equal(ci, coinvariant_ideal(v, radius).ideal);
            CHECK(eq.left_in_right); // every circuit generator is in the coinvariant ideal
        }
        // radius n suffices and is stable
        CHECK(coinvariant_ideal(v, n).stable);
    }
}

TEST_CASE("specialized presentation does not depend on the generic covector") {
    std::mt19937_64 rng(222);
    int tested = 0;
    while (tested < 6) {
        int d = 1 + int(rng() % 2);
        int n = d + 1 + int(rng() % 2);
        VectorConfig v = testsupport::random_config(rng, n, d);
        std::vector<std::vector<Rational>> covectors = {
            generic_alpha(n),
            {},
            {},
        };
        // two more deterministic generic covectors
        for (int k = 1; k <= 2; ++k) {
            std::vector<Rational> a;
            for (int i = 0; i < n; ++i) a.emplace_back(Int(2 * k + 3 * i + 1), Int(k + i + 2));
            covectors[std::size_t(k)] = a;
        }
        std::vector<ThetaMonomialIdeal> specs;
        bool generic_everywhere = true;
        for (const auto& a : covectors) {
            try {
                specs.push_back(specialize_hbar_zero(ell_presentation(v, a)));
            } catch (const non_generic_alpha&) {
                generic_everywhere = false;
                break;
            }
        }
        if (!generic_everywhere) continue;
        ++tested;
        CHECK(specs[1] == specs[0]);
        CHECK(specs[2] == specs[0]);
        CHECK(specs[0] == circuit_ideal(v)); // and equals the circuit ideal outright
    }
}
