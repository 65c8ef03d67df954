#include "sns/prediction.hpp"

#include <cmath>
#include <sstream>

#include "sns/errors.hpp"

namespace sns {

PredictionMatrix predict(const Matrix& retained_samples, const Predictor& pred,
                         RandomStream* rng) {
  if (!pred.fn) throw ContractError("predict: empty predictor");
  if (pred.kind == PredictionKind::Stochastic && rng == nullptr) {
    throw ContractError("predict: stochastic predictor needs a random stream");
  }
  const Eigen::Index s = retained_samples.rows();
  if (s < 1) throw ContractError("predict: no retained samples");

  PredictionMatrix pm;
  pm.kind = pred.kind;
  for (Eigen::Index j = 0; j < s; ++j) {
    const Vector out = pred.fn(retained_samples.row(j).transpose(), rng);
    if (j == 0) {
      pm.values.resize(out.size(), s);
    } else if (out.size() != pm.values.rows()) {
      std::ostringstream os;
      os << "predict: predictor returned " << out.size() << " values for sample " << j
         << ", expected " << pm.values.rows();
      throw ContractError(os.str());
    }
    pm.values.col(j) = out;
  }
  return pm;
}

PredictionMatrix predict(const ChainOutput& chain, const Predictor& pred,
                         const SummaryWindow& window, RandomStream* rng) {
  const auto rows = window.rows(static_cast<std::size_t>(chain.niter()));
  Matrix retained(static_cast<Eigen::Index>(rows.size()), chain.dim());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    retained.row(static_cast<Eigen::Index>(i)) = chain.samples.row(rows[i]);
  }
  return predict(retained, pred, rng);
}

std::vector<CoordinateStats> summarize_prediction(const PredictionMatrix& pm) {
  std::vector<CoordinateStats> out;
  out.reserve(static_cast<std::size_t>(pm.values.rows()));
  std::vector<double> row(static_cast<std::size_t>(pm.values.cols()));
  for (Eigen::Index i = 0; i < pm.values.rows(); ++i) {
    for (Eigen::Index j = 0; j < pm.values.cols(); ++j) row[static_cast<std::size_t>(j)] = pm.values(i, j);
    out.push_back(coordinate_stats(row));
  }
  return out;
}

Predictor poisson_mean_predictor(Matrix x_new) {
  return {[x = std::move(x_new)](const Vector& beta, RandomStream*) -> Vector {
            return (x * beta).array().exp().matrix();
          },
          PredictionKind::Deterministic};
}

Predictor poisson_draw_predictor(Matrix x_new) {
  return {[x = std::move(x_new)](const Vector& beta, RandomStream* rng) -> Vector {
            const Vector mu = (x * beta).array().exp().matrix();
            Vector out(mu.size());
            for (Eigen::Index i = 0; i < mu.size(); ++i) {
              out[i] = static_cast<double>(rng->poisson(mu[i]));
            }
            return out;
          },
          PredictionKind::Stochastic};
}

}  // namespace sns
