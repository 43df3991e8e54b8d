#pragma once

#include <stdexcept>
#include <string>

namespace htk {

struct overflow_error : std::runtime_error {
    explicit overflow_error(const std::string& what) : std::runtime_error(what) {}
};

struct dimension_mismatch : std::invalid_argument {
    explicit dimension_mismatch(const std::string& what) : std::invalid_argument(what) {}
};

// Configuration fails the spanning/primitivity requirements.
struct degenerate_config : std::invalid_argument {
    explicit degenerate_config(const std::string& what) : std::invalid_argument(what) {}
};

// The stability covector pairs to zero with a circuit; no splitting is determined.
struct non_generic_alpha : std::invalid_argument {
    explicit non_generic_alpha(const std::string& what) : std::invalid_argument(what) {}
};

struct not_in_kernel : std::invalid_argument {
    explicit not_in_kernel(const std::string& what) : std::invalid_argument(what) {}
};

struct ambiguous_preimage : std::invalid_argument {
    explicit ambiguous_preimage(const std::string& what) : std::invalid_argument(what) {}
};

struct flavor_mismatch : std::invalid_argument {
    explicit flavor_mismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct config_mismatch : std::invalid_argument {
    explicit config_mismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct variable_set_mismatch : std::invalid_argument {
    explicit variable_set_mismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct not_simple : std::invalid_argument {
    explicit not_simple(const std::string& what) : std::invalid_argument(what) {}
};

struct chart_failure : std::invalid_argument {
    explicit chart_failure(const std::string& what) : std::invalid_argument(what) {}
};

struct off_locus : std::invalid_argument {
    explicit off_locus(const std::string& what) : std::invalid_argument(what) {}
};

struct parse_error : std::invalid_argument {
    explicit parse_error(const std::string& what) : std::invalid_argument(what) {}
};

struct unsupported_dimension : std::invalid_argument {
    explicit unsupported_dimension(const std::string& what) : std::invalid_argument(what) {}
};

// An implementation bug: the delta-rule product disagrees with the monomial oracle.
struct oracle_mismatch : std::logic_error {
    explicit oracle_mismatch(const std::string& what) : std::logic_error(what) {}
};

} // namespace htk
