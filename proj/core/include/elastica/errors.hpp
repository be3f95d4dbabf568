#ifndef ELASTICA_ERRORS_HPP
#define ELASTICA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace elastica {

/// Bad input data or configuration: malformed files, shape mismatches,
/// out-of-range options. CLI exit code 2.
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure on well-formed input: non-immersion, undefined lift,
/// degenerate geometry. CLI exit code 1.
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace elastica

#endif
