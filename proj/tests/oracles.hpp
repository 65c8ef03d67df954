#pragma once
// Test-only reference computations. Nothing here calls into the code paths
// it is used to check.

#include <Eigen/Dense>

#include <cmath>
#include <deque>
#include <functional>
#include <stdexcept>

#include "sns/model.hpp"
#include "sns/random.hpp"

namespace oracle {

using sns::Matrix;
using sns::Vector;

inline double fd_step(double x) { return 1e-6 * std::max(1.0, std::abs(x)); }

/// Central finite-difference gradient of a scalar function.
inline Vector fd_gradient(const std::function<double(const Vector&)>& f, const Vector& x) {
  Vector g(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const double h = fd_step(x[j]);
    Vector xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    g[j] = (f(xp) - f(xm)) / (2.0 * h);
  }
  return g;
}

/// Central finite-difference Jacobian of a vector function (column j is the
/// derivative with respect to x_j).
inline Matrix fd_jacobian(const std::function<Vector(const Vector&)>& g, const Vector& x) {
  const Eigen::Index k = x.size();
  Matrix out(g(x).size(), k);
  for (Eigen::Index j = 0; j < k; ++j) {
    const double h = fd_step(x[j]);
    Vector xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    out.col(j) = (g(xp) - g(xm)) / (2.0 * h);
  }
  return out;
}

/// max_ij |a - b| / max(1, |b|)
inline double max_rel_err(const Matrix& a, const Matrix& b) {
  return ((a - b).array().abs() / b.array().abs().max(1.0)).maxCoeff();
}

/// Poisson log-likelihood with log link, written out directly.
inline double poisson_loglik(const Vector& beta, const Matrix& x, const Vector& y) {
  double f = 0.0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double u = x.row(i).dot(beta);
    f += y[i] * u - std::exp(u) - std::lgamma(y[i] + 1.0);
  }
  return f;
}

/// Poisson MLE by iteratively reweighted least squares: repeatedly solves
/// the weighted least-squares problem for the working response with a QR
/// factorization of W^{1/2} X. No line search, no Hessian of f.
inline Vector irls_poisson(const Matrix& x, const Vector& y, int max_iter = 100, double tol = 1e-13) {
  Vector beta = Vector::Zero(x.cols());
  for (int it = 0; it < max_iter; ++it) {
    const Vector eta = x * beta;
    const Vector mu = eta.array().exp().matrix();
    const Vector z = eta.array() + (y - mu).array() / mu.array();
    const Vector sw = mu.array().sqrt().matrix();
    const Matrix xw = sw.asDiagonal() * x;
    const Vector zw = sw.asDiagonal() * z;
    const Vector next = xw.householderQr().solve(zw);
    const double change = (next - beta).cwiseAbs().maxCoeff();
    beta = next;
    if (change < tol) break;
  }
  return beta;
}

/// Dense multivariate normal log-density using an explicit inverse and
/// determinant of the covariance.
inline double dense_mvn_logpdf(const Vector& x, const Vector& mean, const Matrix& precision) {
  const Matrix cov = precision.inverse();
  const double k = static_cast<double>(x.size());
  const Vector d = x - mean;
  return -0.5 * k * std::log(2.0 * M_PI) - 0.5 * std::log(cov.determinant()) -
         0.5 * d.dot(cov.inverse() * d);
}

/// Stream that replays scripted deviates; throws if a value is requested
/// that was not scripted.
class ScriptedStream final : public sns::RandomStream {
 public:
  std::deque<double> normals;
  std::deque<double> uniforms;
  int normals_used = 0;
  int uniforms_used = 0;

  double normal() override {
    if (normals.empty()) throw std::logic_error("unscripted normal deviate requested");
    ++normals_used;
    const double v = normals.front();
    normals.pop_front();
    return v;
  }
  double uniform() override {
    if (uniforms.empty()) throw std::logic_error("unscripted uniform deviate requested");
    ++uniforms_used;
    const double v = uniforms.front();
    uniforms.pop_front();
    return v;
  }
  std::int64_t poisson(double) override { throw std::logic_error("poisson not scripted"); }
};

/// Random symmetric positive-definite matrix A A' + k I.
inline Matrix random_spd(Eigen::Index k, sns::Rng& rng) {
  Matrix a(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) a(i, j) = rng.normal();
  return a * a.transpose() + static_cast<double>(k) * Matrix::Identity(k, k);
}

inline Vector random_vector(Eigen::Index k, sns::Rng& rng, double scale = 1.0) {
  Vector v(k);
  for (Eigen::Index i = 0; i < k; ++i) v[i] = scale * rng.normal();
  return v;
}

/// f(x) = sum_j (-a_j x_j^2 / 2 - x_j^4 / 4 + b_j x_j): separable, strictly
/// concave, not quadratic.
class QuarticTarget final : public sns::LogDensityTarget {
 public:
  QuarticTarget(Vector a, Vector b) : a_(std::move(a)), b_(std::move(b)) {}
  Eigen::Index dim() const override { return a_.size(); }
  sns::DiffState evaluate(const Vector& x) const override {
    sns::DiffState ds;
    ds.f = 0.0;
    ds.g.resize(dim());
    ds.h = Matrix::Zero(dim(), dim());
    for (Eigen::Index j = 0; j < dim(); ++j) {
      const double v = x[j];
      ds.f += -0.5 * a_[j] * v * v - 0.25 * v * v * v * v + b_[j] * v;
      ds.g[j] = -a_[j] * v - v * v * v + b_[j];
      ds.h(j, j) = -a_[j] - 3.0 * v * v;
    }
    return ds;
  }

 private:
  Vector a_;
  Vector b_;
};

}  // namespace oracle
