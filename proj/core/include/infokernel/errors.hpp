#ifndef INFOKERNEL_ERRORS_HPP
#define INFOKERNEL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace infokernel {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input: dimension mismatch, violated precondition, malformed data.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what, std::string field = {})
      : Error(what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// Well-formed input on which the numerics fail: non-convergence,
// infeasible targets, divergent sums.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace infokernel

#endif  // INFOKERNEL_ERRORS_HPP
