#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "htk/geometry.hpp"
#include "htk/problem.hpp"

namespace htk {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

inline json rational_json(const Rational& r) { return r.str(); }

inline json matrix_json(const IntMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

// Lattice coordinates of a point, exact strings when available.
inline json point_json(const EllipticPoint& p) {
    json out;
    if (p.exact()) {
        out["s"] = p.s_rational().str();
        out["t"] = p.t_rational().str();
    } else {
        out["s"] = p.s();
        out["t"] = p.t();
    }
    return out;
}

inline json torus_json(const TorusPointE& p) {
    json arr = json::array();
    for (const auto& c : p) arr.push_back(point_json(c));
    return arr;
}

inline json check_json(const CheckResult& c) {
    json out;
    out["name"] = c.name;
    out["residual"] = c.residual;
    out["tolerance"] = c.tolerance;
    out["pass"] = c.pass;
    out["seed"] = c.seed;
    if (c.step > 0) out["step"] = c.step;
    if (!c.detail.empty()) out["detail"] = c.detail;
    return out;
}

inline json provenance_json(const ProblemSpec& spec) {
    json p;
    p["tool"] = "htk";
    p["version"] = kToolVersion;
    p["schema_version"] = kSchemaVersion;
    p["seed"] = spec.options.seed;
    p["tolerance"] = spec.options.tolerance;
    p["theta_terms"] = spec.options.terms;
    json tau;
    tau["re"] = spec.tau.real();
    tau["im"] = spec.tau.imag();
    tau["defaulted"] = spec.tau_defaulted;
    p["tau"] = tau;
    return p;
}

// ---------------------------------------------------------------------------
// Human-readable rendering: objects as indented key/value lines, arrays of
// uniform objects as aligned tables.

namespace detail {

inline std::string scalar_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

inline bool uniform_object_array(const json& arr) {
    if (!arr.is_array() || arr.empty() || !arr.front().is_object()) return false;
    std::vector<std::string> keys;
    for (auto it = arr.front().begin(); it != arr.front().end(); ++it) keys.push_back(it.key());
    for (const auto& row : arr) {
        if (!row.is_object() || row.size() != keys.size()) return false;
        for (const auto& k : keys)
            if (!row.contains(k)) return false;
        for (auto it = row.begin(); it != row.end(); ++it)
            if (!it.value().is_primitive() && !it.value().is_array()) return false;
    }
    return true;
}

inline std::string inline_text(const json& v) {
    if (v.is_array()) {
        std::string out = "[";
        bool first = true;
        for (const auto& x : v) {
            if (!first) out += ", ";
            first = false;
            out += inline_text(x);
        }
        return out + "]";
    }
    return scalar_text(v);
}

inline void render_node(const json& v, std::ostringstream& os, int indent) {
    std::string pad(std::size_t(indent) * 2, ' ');
    if (v.is_object()) {
        for (auto it = v.begin(); it != v.end(); ++it) {
            if (it.value().is_object() || (it.value().is_array() && !it.value().empty() &&
                                           !it.value().front().is_primitive())) {
                os << pad << it.key() << ":\n";
                render_node(it.value(), os, indent + 1);
            } else {
                os << pad << it.key() << ": " << inline_text(it.value()) << "\n";
            }
        }
        return;
    }
    if (v.is_array()) {
        if (uniform_object_array(v)) {
            std::vector<std::string> keys;
            for (auto it = v.front().begin(); it != v.front().end(); ++it) keys.push_back(it.key());
            std::vector<std::size_t> widths;
            for (const auto& k : keys) widths.push_back(k.size());
            std::vector<std::vector<std::string>> cells;
            for (const auto& row : v) {
                std::vector<std::string> line;
                for (std::size_t c = 0; c < keys.size(); ++c) {
                    line.push_back(inline_text(row.at(keys[c])));
                    widths[c] = std::max(widths[c], line.back().size());
                }
                cells.push_back(std::move(line));
            }
            os << pad;
            for (std::size_t c = 0; c < keys.size(); ++c)
                os << keys[c] << std::string(widths[c] - keys[c].size() + 2, ' ');
            os << "\n";
            for (const auto& line : cells) {
                os << pad;
                for (std::size_t c = 0; c < keys.size(); ++c)
                    os << line[c] << std::string(widths[c] - line[c].size() + 2, ' ');
                os << "\n";
            }
            return;
        }
        for (const auto& x : v) {
            if (x.is_primitive() || (x.is_array() && (x.empty() || x.front().is_primitive()))) {
                os << pad << "- " << inline_text(x) << "\n";
            } else {
                os << pad << "-\n";
                render_node(x, os, indent + 1);
            }
        }
        return;
    }
    os << pad << scalar_text(v) << "\n";
}

} // namespace detail

inline std::string render_text(const json& report) {
    std::ostringstream os;
    detail::render_node(report, os, 0);
    return os.str();
}

} // namespace htk
