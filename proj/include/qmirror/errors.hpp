#pragma once

#include <stdexcept>
#include <string>

namespace qmirror {

/// Numerical-integrity violation: a quantity that must be real, positive,
/// Hermitian or unitary came out otherwise by more than roundoff allows.
/// The CLI maps this to exit code 2.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

/// Truncation or convergence failure: the requested computation is not
/// trustworthy on the given truncated space. The CLI maps this to exit code 3.
class truncation_error : public std::runtime_error {
 public:
  explicit truncation_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qmirror
