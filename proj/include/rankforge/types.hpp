#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

namespace rankforge {

using Index = std::ptrdiff_t;
using Vector = Eigen::VectorXd;

/// Marker for an undefined ranking (item without raters in the relevant user set).
inline constexpr double kAbsent = std::numeric_limits<double>::quiet_NaN();

inline bool is_absent(double v) { return std::isnan(v); }

/// Malformed input data. Carries the 1-based line number when known.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Value outside its admissible domain (rating bounds, strategy limits, ...).
class DomainError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid or unknown configuration.
class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Unknown user, item or component.
class LookupError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Case that has no closed form or exhaustive fallback here.
class UnsupportedError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Quantity that is mathematically undefined for the given input.
class UndefinedError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace rankforge
