#pragma once

#include <stdexcept>
#include <string>

namespace nclandau {

/// Grid spacing too coarse for the requested accuracy.
class ResolutionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Two sampled fields do not live on the same quadrature grid.
class GridMismatchError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Iterative eigensolver gave up. The message carries the iteration diagnostics.
class ConvergenceError : public std::runtime_error {
  public:
    ConvergenceError(const std::string &what, int iterations, double residual)
        : std::runtime_error(what), iterations_(iterations), residual_(residual) {}

    [[nodiscard]] int iterations() const noexcept { return iterations_; }
    [[nodiscard]] double residual() const noexcept { return residual_; }

  private:
    int iterations_;
    double residual_;
};

/// File system failure; the message always names the offending path.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace nclandau
