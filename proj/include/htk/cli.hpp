#pragma once

#include <cstdlib>
#include <functional>
#include <thread>

#include "htk/hikita.hpp"
#include "htk/plot.hpp"
#include "htk/report.hpp"

namespace htk {

// ---------------------------------------------------------------------------
// Role resolution: analysis, rings and verification work on the u side,
// the fixed-locus verification on the v side; a file declaring the other
// role is converted through Gale duality.

inline VectorConfig u_side(const ProblemSpec& spec) {
    VectorConfig cfg = spec.config();
    if (spec.role_is_u) return cfg;
    cfg.validate();
    VectorConfig dual = gale_dual(cfg);
    if (dual.d() == 0)
        throw degenerate_config("the Gale dual is empty (the matrix spans all of the lattice)");
    return dual;
}

inline VectorConfig v_side_of(const IntMatrix& matrix, bool role_is_u) {
    VectorConfig cfg = VectorConfig::from_rows(matrix);
    if (!role_is_u) return cfg;
    cfg.validate();
    VectorConfig dual = gale_dual(cfg);
    if (dual.d() == 0)
        throw degenerate_config("the Gale dual is empty (the subtorus K is trivial)");
    return dual;
}

inline VectorConfig v_side(const ProblemSpec& spec) { return v_side_of(spec.matrix, spec.role_is_u); }

// HTK_THREADS caps worker threads; sweeps fill indexed slots so outputs do
// not depend on scheduling.
inline int thread_cap() {
    if (const char* env = std::getenv("HTK_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : int(hw);
}

inline void parallel_for(int count, const std::function<void(int)>& body) {
    int workers = std::min(thread_cap(), count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (int i = w; i < count; i += workers) body(i);
        });
    for (auto& t : pool) t.join();
}

namespace detail {

inline json circuit_json(const Circuit& c) {
    json out;
    json support = json::array();
    for (int i : c.support) support.push_back(i + 1);
    out["support"] = support;
    json coeffs = json::array();
    for (int i : c.support) coeffs.push_back(c.coefficients[std::size_t(i)]);
    out["coefficients"] = coeffs;
    if (c.has_splitting()) {
        json plus = json::array(), minus = json::array();
        for (int i : c.s_plus) plus.push_back(i + 1);
        for (int i : c.s_minus) minus.push_back(i + 1);
        out["s_plus"] = plus;
        out["s_minus"] = minus;
    }
    return out;
}

inline std::string monomial_string(const ThetaMonomialIdeal& ideal, const std::vector<Int>& gen) {
    std::string out;
    auto append = [&](const std::string& sym, Int e) {
        if (e == 0) return;
        if (!out.empty()) out += "*";
        out += sym;
        if (e != 1) out += "^" + std::to_string(e);
    };
    for (int i = 0; i < ideal.n; ++i) append("th(x" + std::to_string(i + 1) + ")", gen[std::size_t(i)]);
    if (ideal.extended)
        for (int i = 0; i < ideal.n; ++i)
            append("th(h-x" + std::to_string(i + 1) + ")", gen[std::size_t(ideal.n + i)]);
    return out.empty() ? "1" : out;
}

inline json ideal_json(const ThetaMonomialIdeal& ideal) {
    json gens = json::array();
    for (const auto& g : ideal.generators) {
        json entry;
        entry["monomial"] = monomial_string(ideal, g);
        json exps = json::array();
        for (Int e : g) exps.push_back(e);
        entry["exponents"] = exps;
        if (ideal.extended) {
            json deg = json::array();
            for (Int e : extended_grading(ideal, g)) deg.push_back(e);
            entry["grading"] = deg;
        }
        gens.push_back(entry);
    }
    json out;
    out["zero_ideal"] = ideal.is_zero_ideal();
    out["generators"] = gens;
    return out;
}

inline json equality_json(const IdealEqualityResult& eq, const ThetaMonomialIdeal& lhs,
                          const ThetaMonomialIdeal& rhs) {
    json out;
    out["equal"] = eq.equal;
    json forward = json::array();
    for (std::size_t i = 0; i < lhs.generators.size(); ++i) {
        json c;
        c["generator"] = monomial_string(lhs, lhs.generators[i]);
        int j = eq.left_divisor[i];
        c["divided_by"] = j >= 0 ? json(monomial_string(rhs, rhs.generators[std::size_t(j)])) : json();
        forward.push_back(c);
    }
    json backward = json::array();
    for (std::size_t i = 0; i < rhs.generators.size(); ++i) {
        json c;
        c["generator"] = monomial_string(rhs, rhs.generators[i]);
        int j = eq.right_divisor[i];
        c["divided_by"] = j >= 0 ? json(monomial_string(lhs, lhs.generators[std::size_t(j)])) : json();
        backward.push_back(c);
    }
    out["forward_certificates"] = forward;
    out["backward_certificates"] = backward;
    return out;
}

inline json config_json(const VectorConfig& cfg) {
    json out;
    out["n"] = cfg.n();
    out["d"] = cfg.d();
    json vectors = json::array();
    for (int i = 0; i < cfg.n(); ++i) {
        json v = json::array();
        for (Int x : cfg.vector(i)) v.push_back(x);
        vectors.push_back(v);
    }
    out["vectors"] = vectors;
    return out;
}

} // namespace detail

// ---------------------------------------------------------------------------
// analyze: exact sequences, Gale dual, circuits, unimodularity, smoothness,
// fixed points with stabilizer dimensions.

inline json cmd_analyze(const ProblemSpec& spec) {
    VectorConfig u = u_side(spec);
    u.validate();
    ModularParam m = spec.modular();
    ExactSequenceData seq = exact_sequences(u);
    std::vector<Rational> alpha = spec.alpha_or_default(u.n());
    TorusPointE beta = spec.beta_or_default(seq.k, m);
    CombinedArrangement arr = build_arrangement(u, alpha, beta, m);

    json out;
    out["command"] = "analyze";
    out["provenance"] = provenance_json(spec);
    out["configuration"] = detail::config_json(u);
    json seqj;
    seqj["pi"] = matrix_json(seq.pi);
    seqj["iota"] = matrix_json(seq.iota);
    seqj["k"] = seq.k;
    out["exact_sequences"] = seqj;
    out["gale_dual"] = seq.k > 0 ? detail::config_json(gale_dual(u)) : json();

    json circs = json::array();
    for (const Circuit& c : circuits(u)) circs.push_back(detail::circuit_json(c));
    out["circuits"] = circs;
    out["unimodular"] = is_unimodular(u);

    json params;
    json alphas = json::array();
    for (const auto& a : alpha) alphas.push_back(rational_json(a));
    params["alpha"] = alphas;
    params["alpha_defaulted"] = spec.alpha_defaulted;
    params["beta"] = torus_json(beta);
    params["beta_defaulted"] = spec.beta_defaulted;
    params["beta_lift"] = torus_json(arr.beta_lift);
    params["section"] = matrix_json(arr.section);
    out["parameters"] = params;

    SmoothnessReport sm = smoothness_report(arr);
    json smj;
    smj["simple"] = sm.simple;
    smj["unimodular"] = sm.unimodular;
    smj["verdict"] = to_string(sm.verdict);
    json sw = json::array();
    for (const auto& w : sm.simplicity_witnesses) {
        json s = json::array();
        for (int i : w) s.push_back(i + 1);
        sw.push_back(s);
    }
    smj["simplicity_witnesses"] = sw;
    json uw = json::array();
    for (const auto& w : sm.unimodularity_witnesses) {
        json s = json::array();
        for (int i : w) s.push_back(i + 1);
        uw.push_back(s);
    }
    smj["unimodularity_witnesses"] = uw;
    out["smoothness"] = smj;

    if (sm.simple) {
        json fps = json::array();
        for (const auto& fp : fixed_points(arr)) {
            json f;
            json subset = json::array();
            for (int i : fp.subset) subset.push_back(i + 1);
            f["subset"] = subset;
            json real = json::array();
            for (const auto& r : fp.real_point) real.push_back(rational_json(r));
            f["real_point"] = real;
            f["elliptic_point"] = torus_json(fp.elliptic_point);
            f["stabilizer_dimension"] = stabilizer_dimension(arr, fp.real_point, fp.elliptic_point);
            fps.push_back(f);
        }
        out["fixed_points"] = fps;
        out["fixed_point_count"] = fps.size();
    } else {
        out["fixed_points"] = json();
        out["fixed_point_note"] = "arrangement is not simple; fixed points are not isolated";
    }
    return out;
}

// ---------------------------------------------------------------------------
// rings: multiplication tables of the three flavors, every entry checked
// against the invariant-monomial oracle.

inline json cmd_rings(const ProblemSpec& spec) {
    VectorConfig u = u_side(spec);
    u.validate();
    Int degree = spec.options.degree;
    json out;
    out["command"] = "rings";
    out["provenance"] = provenance_json(spec);
    out["configuration"] = detail::config_json(u);
    out["degree_bound"] = degree;

    const char* coeff_prefix[3] = {"y", "s", "thb"};
    const Flavor flavors[3] = {Flavor::additive, Flavor::multiplicative, Flavor::elliptic};
    json tables = json::array();
    for (int f = 0; f < 3; ++f) {
        BranchRing ring(u, flavors[f]);
        // generator indices: all lattice vectors with basis coordinates in
        // the degree box, the identity first
        std::vector<std::vector<Int>> lambdas;
        std::vector<Int> coords(std::size_t(ring.lattice_rank()), 0);
        auto rec = [&](auto&& self, int pos) -> void {
            if (pos == ring.lattice_rank()) {
                lambdas.push_back(ring.lambda_basis().apply(coords));
                return;
            }
            for (Int c = -degree; c <= degree; ++c) {
                coords[std::size_t(pos)] = c;
                self(self, pos + 1);
            }
            coords[std::size_t(pos)] = 0;
        };
        rec(rec, 0);
        std::sort(lambdas.begin(), lambdas.end());
        lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());

        json table = json::array();
        for (std::size_t i = 0; i < lambdas.size(); ++i)
            for (std::size_t j = i; j < lambdas.size(); ++j) {
                SymbolElement a = ring.generator(lambdas[i]);
                SymbolElement b = ring.generator(lambdas[j]);
                SymbolElement prod = ring.mul(a, b);
                if (prod != ring.monomial_oracle_mul(a, b))
                    throw oracle_mismatch("delta-rule product disagrees with the monomial oracle");
                json entry;
                json la = json::array(), lb = json::array();
                for (Int x : lambdas[i]) la.push_back(x);
                for (Int x : lambdas[j]) lb.push_back(x);
                entry["a"] = la;
                entry["b"] = lb;
                // single-term product: lambda_a + lambda_b with one coefficient
                const auto& [lam, coeff] = *prod.terms().begin();
                json ls = json::array();
                for (Int x : lam) ls.push_back(x);
                entry["lambda"] = ls;
                entry["coefficient"] = coeff.str(coeff_prefix[f]);
                table.push_back(entry);
            }
        json tj;
        tj["flavor"] = to_string(flavors[f]);
        tj["generators"] = json::array();
        for (const auto& l : lambdas) {
            json v = json::array();
            for (Int x : l) v.push_back(x);
            tj["generators"].push_back(v);
        }
        tj["products"] = table;
        tj["oracle_checked"] = true;
        tables.push_back(tj);
    }
    out["tables"] = tables;
    return out;
}

// ---------------------------------------------------------------------------
// hikita: the three-ideal equality with certificates, over the main matrix
// and any sweep entries.

inline json cmd_hikita(const ProblemSpec& spec) {
    json out;
    out["command"] = "hikita";
    out["provenance"] = provenance_json(spec);
    json results = json::array();
    bool all_pass = true;

    std::vector<IntMatrix> matrices{spec.matrix};
    for (const auto& m : spec.sweep) matrices.push_back(m);

    for (std::size_t idx = 0; idx < matrices.size(); ++idx) {
        VectorConfig v = v_side_of(matrices[idx], spec.role_is_u);
        v.validate();
        Int radius = spec.options.radius > 0 ? spec.options.radius : Int(v.n());
        std::vector<Rational> alpha = (idx == 0 && !spec.alpha_defaulted)
                                          ? spec.alpha_or_default(v.n())
                                          : ProblemSpec::default_alpha(v.n());
        HikitaReport rep = hikita_verify(v, alpha, radius);
        all_pass = all_pass && rep.pass;

        json r;
        r["configuration"] = detail::config_json(v);
        r["unimodular"] = rep.unimodular;
        if (!rep.unimodular)
            r["note"] = "not unimodular: outside the hypotheses of the fixed-locus equality";
        r["radius"] = rep.radius;
        r["coinvariant_stable"] = rep.coinvariants.stable;
        r["circuit_ideal"] = detail::ideal_json(rep.circuits_ideal);
        r["coinvariant_ideal"] = detail::ideal_json(rep.coinvariants.ideal);
        r["ell_presentation"] = detail::ideal_json(rep.ell_ideal);
        r["specialized_ideal"] = detail::ideal_json(rep.specialized_ideal);
        json verdicts;
        verdicts["circuit_vs_coinvariant"] =
            detail::equality_json(rep.circuit_vs_coinvariant, rep.circuits_ideal, rep.coinvariants.ideal);
        verdicts["circuit_vs_specialized"] =
            detail::equality_json(rep.circuit_vs_specialized, rep.circuits_ideal, rep.specialized_ideal);
        verdicts["coinvariant_vs_specialized"] = detail::equality_json(
            rep.coinvariant_vs_specialized, rep.coinvariants.ideal, rep.specialized_ideal);
        verdicts["all_equal"] = rep.pass;
        r["verdicts"] = verdicts;
        r["pass"] = rep.pass;
        results.push_back(r);
    }
    out["results"] = results;
    out["pass"] = all_pass;
    return out;
}

// ---------------------------------------------------------------------------
// verify: the numeric identity suite.

inline json cmd_verify(const ProblemSpec& spec) {
    VectorConfig u = u_side(spec);
    u.validate();
    ModularParam m = spec.modular();
    const ProblemOptions& opt = spec.options;
    std::vector<CheckResult> checks;

    checks.push_back(theta_zero_check(m, opt.terms));
    checks.push_back(theta_oddness_check(m, opt.samples, opt.seed, opt.terms));
    checks.push_back(theta_quasi_periodicity_check(m, opt.samples, opt.seed, 3, opt.terms));
    checks.push_back(theta_convergence_check(m, opt.samples, opt.seed));
    checks.push_back(automorphy_cocycle_check(automorphy_o_e(m), m, 2 * opt.samples, opt.seed));

    // e-moment identity over seeded surface points in the z-chart
    struct Sample {
        SurfacePoint p;
        std::uint64_t seed;
    };
    std::vector<Sample> samples;
    {
        SampleRng xs(opt.seed);
        std::uint64_t s = opt.seed;
        int guard = 0;
        while (int(samples.size()) < opt.samples && guard < 100 * opt.samples + 1000) {
            ++guard;
            ++s;
            Complex x = random_fundamental_point(xs, m);
            SurfacePoint p = sample_surface(x, m, s, 0, opt.terms);
            if (std::abs(p.z) <= 0.1 || std::abs(p.w) < 1e-6) continue;
            if (std::abs(theta_derivative(p.x, m, opt.terms)) <= 0.05) continue;
            samples.push_back({p, s});
        }
    }
    std::vector<double> at_h(samples.size(), 0.0), at_half(samples.size(), 0.0);
    parallel_for(int(samples.size()), [&](int i) {
        at_h[std::size_t(i)] =
            e_moment_check(samples[std::size_t(i)].p, m, opt.step, samples[std::size_t(i)].seed, 1.0,
                           1e-5, opt.terms)
                .residual;
        at_half[std::size_t(i)] = e_moment_check(samples[std::size_t(i)].p, m, opt.step / 2,
                                                 samples[std::size_t(i)].seed, 1.0, 1e-5, opt.terms)
                                      .residual;
    });
    double worst = 0;
    std::vector<double> ratios;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        worst = std::max(worst, at_h[i]);
        if (at_half[i] > 0) ratios.push_back(at_h[i] / at_half[i]);
    }
    checks.push_back(make_check("e_moment_identity", worst, 1e-5, opt.seed, opt.step,
                                std::to_string(samples.size()) + " surface points"));
    std::sort(ratios.begin(), ratios.end());
    double median = ratios.empty() ? 0.0 : ratios[ratios.size() / 2];
    // second-order scheme: halving the step must divide the defect by >= 3.5
    CheckResult order = make_check("e_moment_convergence_order", median > 0 ? 1.0 / median : 1e9,
                                   1.0 / 3.5, opt.seed, opt.step,
                                   "median residual gain under step halving = " + std::to_string(median));
    checks.push_back(order);

    // lattice equivariance over |a|,|b| <= 3 at a quarter of the samples
    {
        double worst_eq = 0;
        int count = std::max(5, opt.samples / 4);
        for (int i = 0; i < int(samples.size()) && i < count; ++i)
            for (Int a = -3; a <= 3; a += 2)
                for (Int b = -3; b <= 3; ++b)
                    worst_eq = std::max(worst_eq, gamma_equivariance_check(samples[std::size_t(i)].p, a,
                                                                           b, m, samples[std::size_t(i)].seed,
                                                                           1e-9, opt.terms)
                                                      .residual);
        checks.push_back(make_check("gamma_equivariance", worst_eq, 1e-9, opt.seed));
    }

    checks.push_back(fiber_scan_check(m, 41, opt.terms));

    // exactness of the torus sequence on random points
    {
        ExactSequenceData seq = exact_sequences(u);
        double worst_ex = 0;
        if (seq.k > 0) {
            SampleRng rng(opt.seed + 17);
            for (int trial = 0; trial < 50; ++trial) {
                TorusPointE y;
                for (int j = 0; j < seq.d; ++j) y.push_back(EllipticPoint::reduce(random_fundamental_point(rng, m), m));
                TorusPointE through = map_matrix(seq.iota_vee, map_matrix(seq.pi_vee, y, m), m);
                for (const auto& c : through)
                    worst_ex = std::max({worst_ex, EllipticPoint::circle_dist(c.s(), 0.0),
                                         EllipticPoint::circle_dist(c.t(), 0.0)});
            }
        }
        checks.push_back(make_check("torus_sequence_exactness", worst_ex, 1e-7, opt.seed + 17));
    }

    json out;
    out["command"] = "verify";
    out["provenance"] = provenance_json(spec);
    out["configuration"] = detail::config_json(u);
    json list = json::array();
    bool all = true;
    for (const auto& c : checks) {
        list.push_back(check_json(c));
        all = all && c.pass;
    }
    out["checks"] = list;
    out["all_passed"] = all;
    return out;
}

// ---------------------------------------------------------------------------
// plot: static vector graphics of the real and elliptic arrangements.

inline json cmd_plot(const ProblemSpec& spec, const std::string& out_prefix) {
    VectorConfig u = u_side(spec);
    u.validate();
    if (u.d() > 2) throw unsupported_dimension("plots are available for d <= 2");
    ModularParam m = spec.modular();
    ExactSequenceData seq = exact_sequences(u);
    CombinedArrangement arr =
        build_arrangement(u, spec.alpha_or_default(u.n()), spec.beta_or_default(seq.k, m), m);

    std::string real_path = out_prefix + "_real.svg";
    std::string ell_path = out_prefix + "_elliptic.svg";
    plot_real_arrangement(arr, real_path);
    plot_elliptic_arrangement(arr, ell_path);

    json out;
    out["command"] = "plot";
    out["provenance"] = provenance_json(spec);
    out["files"] = json::array({real_path, ell_path});
    return out;
}

} // namespace htk
