#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <memory>

namespace sns {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Log-density value, gradient and Hessian at a point.
struct DiffState {
  double f = 0.0;
  Vector g;
  Matrix h;

  Eigen::Index dim() const { return g.size(); }
};

/// Checks shape (g length K, h K x K) and finiteness. Throws ContractError.
void validate(const DiffState& ds, Eigen::Index k);

/// A twice-differentiable log-density. Implementations must be deterministic
/// and safe to evaluate concurrently.
class LogDensityTarget {
 public:
  virtual ~LogDensityTarget() = default;

  virtual Eigen::Index dim() const = 0;
  virtual DiffState evaluate(const Vector& x) const = 0;
};

/// Multivariate Gaussian log-density with mean `mean` and precision `prec`.
class MvGaussianTarget final : public LogDensityTarget {
 public:
  /// Throws NotNegativeDefinite if `prec` is not positive-definite.
  MvGaussianTarget(Vector mean, Matrix prec);

  Eigen::Index dim() const override { return mean_.size(); }
  DiffState evaluate(const Vector& x) const override;

  const Vector& mean() const { return mean_; }
  const Matrix& precision() const { return prec_; }

 private:
  Vector mean_;
  Matrix prec_;
  double log_norm_;
};

DiffState eval_mvgaussian_target(const Vector& x, const Vector& mean, const Matrix& prec);

/// Value and first two derivatives of a per-observation log-likelihood with
/// respect to the linear predictor.
struct ScalarDerivs {
  double f0;
  double g0;
  double h0;
};

/// One-parameter GLM base distribution.
class ScalarBaseModel {
 public:
  virtual ~ScalarBaseModel() = default;
  virtual ScalarDerivs eval(double u, double y) const = 0;
};

/// Poisson with log link. Rejects |u| > 700 instead of saturating.
ScalarDerivs poisson_base(double u, double y);

class PoissonLogBase final : public ScalarBaseModel {
 public:
  ScalarDerivs eval(double u, double y) const override { return poisson_base(u, y); }
};

struct GlmData {
  Matrix x;
  Vector y;

  /// N >= 1, K >= 1, finite X, y length N. Throws ContractError.
  void validate() const;
};

/// f = sum f0(u_i, y_i), g = X' g0, H = X' diag(h0) X with u = X beta.
DiffState expand_glm_1par(const Vector& beta, const GlmData& data, const ScalarBaseModel& base);

/// Regression log-likelihood assembled by `expand_glm_1par`.
class GlmTarget final : public LogDensityTarget {
 public:
  GlmTarget(GlmData data, std::shared_ptr<const ScalarBaseModel> base);

  Eigen::Index dim() const override { return data_.x.cols(); }
  DiffState evaluate(const Vector& beta) const override;

  const GlmData& data() const { return data_; }

 private:
  GlmData data_;
  std::shared_ptr<const ScalarBaseModel> base_;
};

std::unique_ptr<GlmTarget> make_poisson_target(GlmData data);

}  // namespace sns
