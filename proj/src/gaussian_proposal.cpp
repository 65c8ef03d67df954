#include "sns/gaussian_proposal.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "sns/errors.hpp"

namespace sns {

Matrix cholesky_lower(const Matrix& a) {
  const Eigen::Index k = a.rows();
  if (a.cols() != k) throw ContractError("cholesky_lower: matrix is not square");
  Matrix l = Matrix::Zero(k, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    double d = a(j, j) - l.row(j).head(j).squaredNorm();
    if (!(d > 0.0)) throw NotNegativeDefinite(static_cast<std::size_t>(j), d);
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (Eigen::Index i = j + 1; i < k; ++i) {
      l(i, j) = (a(i, j) - l.row(i).head(j).dot(l.row(j).head(j))) / ljj;
    }
  }
  return l;
}

Matrix symmetrized(const Matrix& h) {
  if (h.rows() != h.cols()) throw ContractError("Hessian is not square");
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    for (Eigen::Index j = 0; j < i; ++j) {
      const double a = h(i, j);
      const double b = h(j, i);
      const double scale = std::max({std::abs(a), std::abs(b), 1.0});
      if (std::abs(a - b) > kSymmetryTol * scale) {
        std::ostringstream os;
        os << "Hessian is not symmetric at (" << i << ", " << j << "): " << a << " vs " << b;
        throw ContractError(os.str());
      }
    }
  }
  return 0.5 * (h + h.transpose());
}

GaussianFit fit_gaussian(const Vector& at, const DiffState& ds) {
  validate(ds, at.size());
  GaussianFit fit;
  fit.prec_chol = cholesky_lower(-symmetrized(ds.h));
  // -H d = g  =>  L L' d = g
  const auto l = fit.prec_chol.triangularView<Eigen::Lower>();
  const Vector w = l.solve(ds.g);
  const Vector step = fit.prec_chol.transpose().triangularView<Eigen::Upper>().solve(w);
  fit.mean = at + step;
  fit.log_det_prec = 2.0 * fit.prec_chol.diagonal().array().log().sum();
  if (!fit.mean.allFinite()) throw ContractError("Gaussian fit produced a non-finite mean");
  return fit;
}

Vector sample(const GaussianFit& fit, RandomStream& rng) {
  const Eigen::Index k = fit.dim();
  Vector z(k);
  for (Eigen::Index i = 0; i < k; ++i) z[i] = rng.normal();
  // cov = (L L')^{-1}, so L'^{-1} z has the right covariance.
  return fit.mean + fit.prec_chol.transpose().triangularView<Eigen::Upper>().solve(z);
}

double log_pdf(const GaussianFit& fit, const Vector& x) {
  const Eigen::Index k = fit.dim();
  if (x.size() != k) throw ContractError("log_pdf: dimension mismatch");
  // (x-m)' L L' (x-m) = |L'(x-m)|^2
  const Vector v = fit.prec_chol.transpose().triangularView<Eigen::Upper>() * (x - fit.mean);
  return -0.5 * static_cast<double>(k) * std::log(2.0 * std::numbers::pi) +
         0.5 * fit.log_det_prec - 0.5 * v.squaredNorm();
}

}  // namespace sns
