#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "loopcoh/hirsch_ops.hpp"
#include "loopcoh/polynomial.hpp"

namespace loopcoh::cli {

struct Bounds {
    int max_degree = 8;
    int max_resolution_degree = 3;  // RH work covers resolution degrees >= -this
    int weight_cap = 0;             // 0: max_degree + 1
    int iteration_cap = 8;

    int effective_weight_cap() const { return weight_cap > 0 ? weight_cap : max_degree + 1; }
};

struct SqOverride {
    int p = 0, q = 0;
    std::vector<std::string> args;
    std::string value;
};

struct JobConfig {
    linalg::Ring ring = linalg::Ring::integers();
    std::vector<poly::Generator> generators;
    std::optional<std::vector<std::pair<std::string, std::string>>> sq1;  // in document order
    std::vector<SqOverride> sq_overrides;
    Bounds bounds;
    std::optional<std::string> cache_dir;

    poly::PolynomialAlgebra algebra() const;
    /// The Sq_1 structure: present over F_2 (zero table if none was given).
    std::optional<poly::Steenrod> steenrod() const;
    /// The operations used for mu_E: Sq structure plus overrides over F_2.
    std::optional<hirsch::HirschOpTable> op_table() const;
    /// Normalized document covering every field that affects computed values.
    nlohmann::ordered_json canonical() const;
};

struct ConfigIssue {
    std::string path;  // JSON pointer into the document
    std::string message;
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<ConfigIssue> issues);
    const std::vector<ConfigIssue>& issues() const { return issues_; }

private:
    std::vector<ConfigIssue> issues_;
};

/// Parses and validates a JSON job description; all violations are reported together.
JobConfig parse_config(const std::string& text);

/// Accepts "Z", "integers", "Q", "rationals", "F<p>", "prime_field(<p>)".
std::optional<linalg::Ring> parse_ring(const std::string& text);

}  // namespace loopcoh::cli
