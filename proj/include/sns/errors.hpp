#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace sns {

/// Violated precondition on a public operation (bad dimensions, invalid
/// window, malformed partition, ...).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Base for failures raised while a chain is running. Carries optional
/// iteration / subset context that the run driver attaches on the way out.
class SamplerError : public std::runtime_error {
 public:
  explicit SamplerError(std::string what);

  const std::optional<std::size_t>& iteration() const { return iteration_; }
  const std::optional<std::size_t>& subset() const { return subset_; }

  void set_iteration(std::size_t it);
  void set_subset(std::size_t s);

  const char* what() const noexcept override { return full_.c_str(); }

 private:
  void rebuild();

  std::string base_;
  std::string full_;
  std::optional<std::size_t> iteration_;
  std::optional<std::size_t> subset_;
};

/// Cholesky of -H hit a non-positive pivot: the target is not log-concave
/// at the evaluated point. `pivot` is zero-based.
class NotNegativeDefinite : public SamplerError {
 public:
  NotNegativeDefinite(std::size_t pivot, double value);

  std::size_t pivot() const { return pivot_; }
  double pivot_value() const { return value_; }

 private:
  std::size_t pivot_;
  double value_;
};

class LineSearchFailure : public SamplerError {
 public:
  LineSearchFailure(double f_old, double f_last, int halvings);

  double f_old() const { return f_old_; }
  double f_last() const { return f_last_; }

 private:
  double f_old_;
  double f_last_;
};

/// Scalar base model was asked to exponentiate a linear predictor outside
/// the representable range.
class OverflowError : public std::overflow_error {
 public:
  explicit OverflowError(double u);
  double u() const { return u_; }

 private:
  double u_;
};

}  // namespace sns
