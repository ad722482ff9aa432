#ifndef KTU_ERRORS_HPP
#define KTU_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ktu {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A domain or feasibility constraint was violated; the message names the
/// offending constraint line.
class ConstraintError : public Error {
 public:
  using Error::Error;
};

/// Numerical breakdown (singular matrix, degenerate direction, ...).
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration, CLI arguments, or input files.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace ktu

#endif
