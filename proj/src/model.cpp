#include "sns/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "sns/errors.hpp"
#include "sns/gaussian_proposal.hpp"

namespace sns {

void validate(const DiffState& ds, Eigen::Index k) {
  if (ds.g.size() != k || ds.h.rows() != k || ds.h.cols() != k) {
    std::ostringstream os;
    os << "DiffState shape mismatch: expected dimension " << k << ", got g of length "
       << ds.g.size() << " and h of " << ds.h.rows() << "x" << ds.h.cols();
    throw ContractError(os.str());
  }
  if (!std::isfinite(ds.f) || !ds.g.allFinite() || !ds.h.allFinite()) {
    throw ContractError("DiffState has non-finite entries");
  }
}

namespace {

double log_det_from_chol(const Matrix& l) {
  return 2.0 * l.diagonal().array().log().sum();
}

}  // namespace

MvGaussianTarget::MvGaussianTarget(Vector mean, Matrix prec)
    : mean_(std::move(mean)), prec_(std::move(prec)) {
  if (prec_.rows() != mean_.size() || prec_.cols() != mean_.size()) {
    throw ContractError("precision matrix must be K x K with K = length of mean");
  }
  const Matrix l = cholesky_lower(symmetrized(prec_));
  const double k = static_cast<double>(mean_.size());
  log_norm_ = -0.5 * k * std::log(2.0 * std::numbers::pi) + 0.5 * log_det_from_chol(l);
}

DiffState MvGaussianTarget::evaluate(const Vector& x) const {
  if (x.size() != mean_.size()) throw ContractError("state dimension does not match target");
  const Vector d = x - mean_;
  const Vector pd = prec_ * d;
  return DiffState{log_norm_ - 0.5 * d.dot(pd), -pd, -prec_};
}

DiffState eval_mvgaussian_target(const Vector& x, const Vector& mean, const Matrix& prec) {
  return MvGaussianTarget(mean, prec).evaluate(x);
}

ScalarDerivs poisson_base(double u, double y) {
  if (!std::isfinite(u) || std::abs(u) > 700.0) throw OverflowError(u);
  if (!(y >= 0.0) || std::floor(y) != y) {
    std::ostringstream os;
    os << "Poisson response must be a nonnegative integer, got " << y;
    throw ContractError(os.str());
  }
  const double mu = std::exp(u);
  return {y * u - mu - std::lgamma(y + 1.0), y - mu, -mu};
}

void GlmData::validate() const {
  if (x.rows() < 1 || x.cols() < 1) throw ContractError("GLM design matrix must be at least 1x1");
  if (y.size() != x.rows()) {
    std::ostringstream os;
    os << "GLM response length " << y.size() << " does not match " << x.rows() << " design rows";
    throw ContractError(os.str());
  }
  if (!x.allFinite()) throw ContractError("GLM design matrix has non-finite entries");
}

DiffState expand_glm_1par(const Vector& beta, const GlmData& data, const ScalarBaseModel& base) {
  if (beta.size() != data.x.cols()) {
    std::ostringstream os;
    os << "coefficient length " << beta.size() << " does not match " << data.x.cols()
       << " design columns";
    throw ContractError(os.str());
  }
  if (data.y.size() != data.x.rows()) throw ContractError("GLM response length mismatch");

  const Vector u = data.x * beta;
  const Eigen::Index n = u.size();
  Vector g0(n);
  Vector h0(n);
  double f = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const ScalarDerivs d = base.eval(u[i], data.y[i]);
    f += d.f0;
    g0[i] = d.g0;
    h0[i] = d.h0;
  }

  DiffState ds;
  ds.f = f;
  ds.g = data.x.transpose() * g0;
  Matrix h = data.x.transpose() * (h0.asDiagonal() * data.x);
  ds.h = 0.5 * (h + h.transpose());
  return ds;
}

GlmTarget::GlmTarget(GlmData data, std::shared_ptr<const ScalarBaseModel> base)
    : data_(std::move(data)), base_(std::move(base)) {
  data_.validate();
  if (!base_) throw ContractError("GLM target needs a base model");
}

DiffState GlmTarget::evaluate(const Vector& beta) const {
  return expand_glm_1par(beta, data_, *base_);
}

std::unique_ptr<GlmTarget> make_poisson_target(GlmData data) {
  return std::make_unique<GlmTarget>(std::move(data), std::make_shared<PoissonLogBase>());
}

}  // namespace sns
