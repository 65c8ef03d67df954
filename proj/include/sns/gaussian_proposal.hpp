#pragma once

#include "sns/model.hpp"
#include "sns/random.hpp"

namespace sns {

/// Local Gaussian proposal: mean is the full Newton point, precision is -H,
/// stored as its lower Cholesky factor.
struct GaussianFit {
  Vector mean;
  Matrix prec_chol;
  double log_det_prec = 0.0;

  Eigen::Index dim() const { return mean.size(); }
};

/// Lower Cholesky factor of a symmetric positive-definite matrix. Throws
/// NotNegativeDefinite with the zero-based index of the first non-positive
/// pivot.
Matrix cholesky_lower(const Matrix& a);

/// Relative elementwise symmetry tolerance applied to Hessians before they
/// are symmetrized.
inline constexpr double kSymmetryTol = 1e-8;

/// Symmetric part of `h`; throws ContractError if `h` deviates from symmetry
/// by more than kSymmetryTol (relative, elementwise).
Matrix symmetrized(const Matrix& h);

/// Fit the local Gaussian at `at` from the target's derivatives there.
GaussianFit fit_gaussian(const Vector& at, const DiffState& ds);

/// Draw mean + L^{-T} z, consuming exactly K normal deviates.
Vector sample(const GaussianFit& fit, RandomStream& rng);

double log_pdf(const GaussianFit& fit, const Vector& x);

}  // namespace sns
