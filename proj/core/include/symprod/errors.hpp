#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace symprod {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the inputs was violated.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The requested operation is not available for the given input class
/// (too many roots for exhaustive matching, unbounded base domain, ...).
class UnsupportedError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// An iterative solver or optimizer failed to reach its tolerance.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Aberth iteration did not converge. Carries the best iterate seen and the
/// residual |p(x_k)| of every entry of it.
class RootSolveError : public NumericalError {
 public:
  RootSolveError(const std::string& what, std::vector<std::complex<double>> best,
                 std::vector<double> residuals)
      : NumericalError(what), best_iterate_(std::move(best)), residuals_(std::move(residuals)) {}

  const std::vector<std::complex<double>>& best_iterate() const noexcept { return best_iterate_; }
  const std::vector<double>& residuals() const noexcept { return residuals_; }

 private:
  std::vector<std::complex<double>> best_iterate_;
  std::vector<double> residuals_;
};

}  // namespace symprod
