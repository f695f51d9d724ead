#ifndef CAPQ_ERRORS_HPP
#define CAPQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace capq {

/// Base class for all errors raised by the kernel.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Evaluation of a symbolic scalar at a point where its denominator vanishes.
struct PoleError : Error {
  explicit PoleError(const std::string& msg) : Error(msg) {}
};

/// A reduction or product was requested above the degree bound of a system.
struct DegreeOverflow : Error {
  explicit DegreeOverflow(const std::string& msg) : Error(msg) {}
};

/// Completion exceeded the configured rule cap.
struct RuleExplosion : Error {
  explicit RuleExplosion(const std::string& msg) : Error(msg) {}
};

/// Malformed input text (scalar strings, R-matrix files, cache files).
struct ParseError : Error {
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

/// An R-matrix or other object failed a required validation identity.
struct ValidationError : Error {
  explicit ValidationError(const std::string& msg) : Error(msg) {}
};

/// Bad run configuration or a size guard violation.
struct ConfigError : Error {
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

}  // namespace capq

#endif
