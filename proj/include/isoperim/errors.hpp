#pragma once

#include <stdexcept>
#include <string>

namespace isoperim {

/// A parameter set fails one of the admissibility lines required by an operation.
class ConditionNotMet : public std::domain_error {
 public:
  ConditionNotMet(std::string condition, std::string failed_line)
      : std::domain_error("condition " + condition + " not met: " + failed_line),
        condition_(std::move(condition)),
        failed_line_(std::move(failed_line)) {}

  [[nodiscard]] const std::string& condition() const noexcept { return condition_; }
  [[nodiscard]] const std::string& failed_line() const noexcept { return failed_line_; }

 private:
  std::string condition_;
  std::string failed_line_;
};

/// The curve fails its strict-convexity certificate.
class NotConvex : public std::domain_error {
 public:
  NotConvex(double min_rho, double margin)
      : std::domain_error("curve fails convexity certificate: min curvature radius " +
                          std::to_string(min_rho) + " <= margin " + std::to_string(margin)),
        min_rho_(min_rho) {}
  [[nodiscard]] double min_rho() const noexcept { return min_rho_; }

 private:
  double min_rho_;
};

/// A stability constant whose discriminant is not positive.
class UndefinedConstant : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The minimax solver stopped before its bracket closed.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double lower, double upper)
      : std::runtime_error(what + " (bracket [" + std::to_string(lower) + ", " + std::to_string(upper) + "])"),
        lower_(lower),
        upper_(upper) {}
  [[nodiscard]] double lower() const noexcept { return lower_; }
  [[nodiscard]] double upper() const noexcept { return upper_; }

 private:
  double lower_;
  double upper_;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace isoperim
