#include "sns/simulate.hpp"

#include "sns/errors.hpp"
#include "sns/random.hpp"

namespace sns {

std::pair<Vector, Matrix> random_mvgaussian(Eigen::Index k, std::uint64_t seed) {
  Rng rng(seed);
  Vector mean(k);
  for (Eigen::Index i = 0; i < k; ++i) mean[i] = rng.uniform(-0.5, 0.5);
  Matrix prec(k, k);
  for (Eigen::Index c = 0; c < k; ++c) {
    for (Eigen::Index r = 0; r < k; ++r) prec(r, c) = rng.uniform(0.1, 0.2);
  }
  Matrix sym = 0.5 * (prec + prec.transpose());
  sym.diagonal().setConstant(0.5);
  return {mean, sym};
}

SimulatedGlm simulate_poisson(Eigen::Index n, Eigen::Index k, std::uint64_t seed) {
  if (n < 1 || k < 1) throw ContractError("simulate_poisson: N and K must be positive");
  Rng rng(seed);
  SimulatedGlm sim;
  sim.data.x.resize(n, k);
  for (Eigen::Index c = 0; c < k; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) sim.data.x(r, c) = rng.uniform(-0.5, 0.5);
  }
  sim.beta.resize(k);
  for (Eigen::Index j = 0; j < k; ++j) sim.beta[j] = rng.uniform(-0.5, 0.5);
  const Vector mu = (sim.data.x * sim.beta).array().exp().matrix();
  sim.data.y.resize(n);
  for (Eigen::Index r = 0; r < n; ++r) sim.data.y[r] = static_cast<double>(rng.poisson(mu[r]));
  return sim;
}

}  // namespace sns
