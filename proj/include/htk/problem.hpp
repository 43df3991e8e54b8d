#pragma once

#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "htk/config.hpp"
#include "htk/elliptic.hpp"

namespace htk {

using json = nlohmann::ordered_json;

// Options shared by the commands; file values can be overridden on the
// command line.
struct ProblemOptions {
    int terms = 40;          // theta truncation order
    Int radius = 0;          // coinvariant search radius; 0 means "use n"
    std::uint64_t seed = 42;
    double tolerance = 1e-9;
    int samples = 100;
    Int degree = 1;          // generator degree bound for the ring tables
    double step = 1e-4;      // finite-difference step
};

// A parsed problem file: the configuration matrix (rows are vectors), the
// role the matrix plays (u or v), the modular parameter, stability and
// level parameters, options, and an optional sweep of extra matrices for
// batch verification.
struct ProblemSpec {
    IntMatrix matrix;
    bool role_is_u = true;
    Complex tau{0.3, 1.1};
    bool tau_defaulted = true;
    std::vector<Rational> alpha; // lift, one level per vector; may be defaulted
    bool alpha_defaulted = true;
    std::vector<std::pair<Rational, Rational>> beta; // exact (s, t) pairs: s + t*tau
    bool beta_defaulted = true;
    std::vector<IntMatrix> sweep;
    ProblemOptions options;

    VectorConfig config() const { return VectorConfig::from_rows(matrix); }

    ModularParam modular() const {
        if (!(tau.imag() > 0)) throw parse_error("tau must have positive imaginary part");
        return ModularParam(tau);
    }

    // The deterministic generic covector 1, 1/2, 1/4, ... used when alpha
    // is omitted.
    static std::vector<Rational> default_alpha(int n) {
        std::vector<Rational> a;
        Int den = 1;
        for (int i = 0; i < n; ++i) {
            a.emplace_back(1, den);
            if (i + 1 < n) den = checked_mul(den, 2);
        }
        return a;
    }

    std::vector<Rational> alpha_or_default(int n) const {
        if (!alpha_defaulted) {
            if (int(alpha.size()) != n) throw parse_error("alpha must have one entry per vector");
            return alpha;
        }
        return default_alpha(n);
    }

    TorusPointE beta_or_default(int k, const ModularParam& m) const {
        if (beta_defaulted) return torus_zero(k);
        if (int(beta.size()) != k)
            throw parse_error("beta must have " + std::to_string(k) + " components (one per E^k factor)");
        TorusPointE b;
        for (const auto& [s, t] : beta) b.push_back(EllipticPoint::from_rational(s, t, m));
        return b;
    }
};

namespace detail {

inline Rational json_rational(const json& v, const char* what) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<Int>());
    if (v.is_number_float()) {
        // exactness matters: route decimals through the string parser
        double d = v.get<double>();
        json repr = d;
        return parse_rational(repr.dump());
    }
    throw parse_error(std::string("expected a rational for ") + what);
}

inline IntMatrix json_matrix(const json& v) {
    if (!v.is_array() || v.empty()) throw parse_error("matrix must be a nonempty array of rows");
    int cols = -1;
    std::vector<std::vector<Int>> rows;
    for (const auto& row : v) {
        if (!row.is_array() || row.empty()) throw parse_error("matrix rows must be nonempty arrays");
        if (cols < 0) cols = int(row.size());
        if (int(row.size()) != cols) throw parse_error("matrix rows must have equal length");
        std::vector<Int> r;
        for (const auto& x : row) {
            if (!x.is_number_integer()) throw parse_error("matrix entries must be integers");
            r.push_back(x.get<Int>());
        }
        rows.push_back(std::move(r));
    }
    IntMatrix m(int(rows.size()), cols);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = rows[std::size_t(i)][std::size_t(j)];
    return m;
}

} // namespace detail

inline ProblemSpec parse_problem(const json& doc) {
    if (!doc.is_object()) throw parse_error("problem file must contain a JSON object");
    ProblemSpec spec;
    if (!doc.contains("matrix")) throw parse_error("problem file is missing 'matrix'");
    spec.matrix = detail::json_matrix(doc.at("matrix"));

    if (doc.contains("role")) {
        std::string role = doc.at("role").get<std::string>();
        if (role == "u") spec.role_is_u = true;
        else if (role == "v") spec.role_is_u = false;
        else throw parse_error("role must be 'u' or 'v'");
    }

    if (doc.contains("tau")) {
        const json& t = doc.at("tau");
        if (!t.is_object() || !t.contains("re") || !t.contains("im"))
            throw parse_error("tau must be an object with 're' and 'im'");
        spec.tau = Complex(detail::json_rational(t.at("re"), "tau.re").to_double(),
                           detail::json_rational(t.at("im"), "tau.im").to_double());
        spec.tau_defaulted = false;
    }

    if (doc.contains("alpha")) {
        for (const auto& a : doc.at("alpha")) spec.alpha.push_back(detail::json_rational(a, "alpha"));
        spec.alpha_defaulted = false;
    }

    if (doc.contains("beta")) {
        for (const auto& b : doc.at("beta")) {
            if (!b.is_array() || b.size() != 2)
                throw parse_error("beta entries must be pairs [s, t] meaning s + t*tau");
            spec.beta.emplace_back(detail::json_rational(b[0], "beta"), detail::json_rational(b[1], "beta"));
        }
        spec.beta_defaulted = false;
    }

    if (doc.contains("sweep"))
        for (const auto& m : doc.at("sweep")) spec.sweep.push_back(detail::json_matrix(m));

    if (doc.contains("options")) {
        const json& o = doc.at("options");
        if (o.contains("terms")) spec.options.terms = o.at("terms").get<int>();
        if (o.contains("radius")) spec.options.radius = o.at("radius").get<Int>();
        if (o.contains("seed")) spec.options.seed = o.at("seed").get<std::uint64_t>();
        if (o.contains("tolerance")) spec.options.tolerance = o.at("tolerance").get<double>();
        if (o.contains("samples")) spec.options.samples = o.at("samples").get<int>();
        if (o.contains("degree")) spec.options.degree = o.at("degree").get<Int>();
        if (o.contains("step")) spec.options.step = o.at("step").get<double>();
    }
    return spec;
}

inline ProblemSpec load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open problem file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
    return parse_problem(doc);
}

} // namespace htk
