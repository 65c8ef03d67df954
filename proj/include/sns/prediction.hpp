#pragma once

#include <functional>
#include <vector>

#include "sns/diagnostics.hpp"

namespace sns {

enum class PredictionKind { Deterministic, Stochastic };

/// M prediction targets x S retained samples; column j comes from the j-th
/// retained state, in iteration order.
struct PredictionMatrix {
  Matrix values;
  PredictionKind kind = PredictionKind::Deterministic;
};

/// A function of the state vector. Stochastic predictors draw from the
/// stream they are handed; deterministic ones ignore it.
struct Predictor {
  std::function<Vector(const Vector& state, RandomStream* rng)> fn;
  PredictionKind kind = PredictionKind::Deterministic;
};

/// Applies `pred` to every retained sample. `rng` is required iff the
/// predictor is stochastic.
PredictionMatrix predict(const ChainOutput& chain, const Predictor& pred,
                         const SummaryWindow& window, RandomStream* rng = nullptr);

/// Same, over an explicit S x K sample matrix (e.g. one read back from disk).
PredictionMatrix predict(const Matrix& retained_samples, const Predictor& pred,
                         RandomStream* rng = nullptr);

/// Row-wise mean, sd, ess and quantiles.
std::vector<CoordinateStats> summarize_prediction(const PredictionMatrix& pm);

/// exp(X_new beta)
Predictor poisson_mean_predictor(Matrix x_new);
/// One Poisson(exp(X_new beta)) draw per row.
Predictor poisson_draw_predictor(Matrix x_new);

}  // namespace sns
