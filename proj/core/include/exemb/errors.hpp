#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace exemb {

// Bad or unreadable input data (files, malformed records, missing datasets).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public DataError {
 public:
  ParseError(const std::string& path, std::size_t line, const std::string& what)
      : DataError(path + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Floating-point failures: non-finite values, lost margins, non-convergence.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, int iterations, double worst_residual)
      : NumericalError(what + " (iterations=" + std::to_string(iterations) +
                       ", worst residual=" + std::to_string(worst_residual) + ")"),
        iterations_(iterations),
        worst_residual_(worst_residual) {}

  int iterations() const noexcept { return iterations_; }
  double worst_residual() const noexcept { return worst_residual_; }

 private:
  int iterations_;
  double worst_residual_;
};

}  // namespace exemb
