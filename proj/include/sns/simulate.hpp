#pragma once

#include <cstdint>
#include <utility>

#include "sns/model.hpp"

namespace sns {

/// Random mean and precision for a K-dimensional Gaussian: mean entries
/// U(-0.5, 0.5), off-diagonal precision U(0.1, 0.2) symmetrized, diagonal 0.5.
std::pair<Vector, Matrix> random_mvgaussian(Eigen::Index k, std::uint64_t seed);

/// X entries U(-0.5, 0.5) drawn column by column, beta U(-0.5, 0.5),
/// y ~ Poisson(exp(X beta)).
struct SimulatedGlm {
  GlmData data;
  Vector beta;
};
SimulatedGlm simulate_poisson(Eigen::Index n, Eigen::Index k, std::uint64_t seed);

}  // namespace sns
