#pragma once

#include <stdexcept>
#include <string>

namespace lrmp {

/// Thrown when an argument violates a documented precondition.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// Thrown when a matrix logarithm is requested for a rank-deficient matrix.
class SingularLog : public std::domain_error {
 public:
  explicit SingularLog(const std::string& what) : std::domain_error(what) {}
};

/// Thrown by solvers in Assert certificate mode when a low-rank update
/// cannot be certified to match its exact counterpart.
class CertificateViolation : public std::runtime_error {
 public:
  CertificateViolation(int iteration, const std::string& leg)
      : std::runtime_error("certificate failed at t=" + std::to_string(iteration) +
                           " (" + leg + ")"),
        iteration(iteration),
        leg(leg) {}

  int iteration;
  std::string leg;
};

}  // namespace lrmp
