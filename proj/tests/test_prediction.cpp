#include "doctest.h"

#include <cmath>

#include "sns/config.hpp"
#include "sns/errors.hpp"
#include "sns/prediction.hpp"

using namespace sns;

namespace {

ChainOutput poisson_chain(const GlmData& data, std::size_t niter, std::uint64_t seed) {
  auto t = make_poisson_target(data);
  SamplerSpec spec;
  spec.niter = niter;
  spec.nnr = 20;
  spec.seed = seed;
  return run(Vector::Zero(data.x.cols()), *t, spec);
}

}  // namespace

TEST_CASE("identity predictor returns the transposed retained samples") {
  const auto sim = simulate_poisson(100, 3, 5);
  const ChainOutput c = poisson_chain(sim.data, 60, 1);
  const SummaryWindow w{20, 60, 2};
  const Predictor id{[](const Vector& b, RandomStream*) { return b; }, PredictionKind::Deterministic};
  const PredictionMatrix pm = predict(c, id, w);
  const auto rows = w.rows(60);
  REQUIRE(pm.values.cols() == static_cast<Eigen::Index>(rows.size()));
  for (std::size_t j = 0; j < rows.size(); ++j) {
    CHECK(pm.values.col(static_cast<Eigen::Index>(j)) == c.samples.row(rows[j]).transpose());
  }

  // Row statistics agree with the chain summary over the same window.
  const auto stats = summarize_prediction(pm);
  const ChainSummary s = summarize(c, w);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(std::abs(stats[k].mean - s.coords[k].mean) <= 1e-12);
    CHECK(std::abs(stats[k].sd - s.coords[k].sd) <= 1e-12);
    CHECK(std::abs(stats[k].ess - s.coords[k].ess) <= 1e-12);
    CHECK(std::abs(stats[k].q975 - s.coords[k].q975) <= 1e-12);
  }
}

TEST_CASE("mean-response predictor on a one-sample window") {
  Matrix one(1, 2);
  one << 0.3, -0.2;
  Matrix xnew(3, 2);
  xnew << 1, 0, 0, 1, 0.5, 0.5;
  const PredictionMatrix pm = predict(one, poisson_mean_predictor(xnew));
  REQUIRE(pm.values.cols() == 1);
  const Vector expect = (xnew * one.row(0).transpose()).array().exp().matrix();
  CHECK(pm.values.col(0).isApprox(expect, 1e-15));
}

TEST_CASE("stochastic predictors need a stream and are reproducible") {
  Matrix samples = Matrix::Constant(15, 2, 0.1);
  Matrix xnew = Matrix::Ones(4, 2);
  CHECK_THROWS_AS(predict(samples, poisson_draw_predictor(xnew)), ContractError);
  Rng a(7), b(7);
  const PredictionMatrix pa = predict(samples, poisson_draw_predictor(xnew), &a);
  const PredictionMatrix pb = predict(samples, poisson_draw_predictor(xnew), &b);
  CHECK(pa.values == pb.values);
  CHECK(pa.kind == PredictionKind::Stochastic);
  CHECK((pa.values.array() == pa.values.array().round()).all());
}

TEST_CASE("predictor output length must not vary") {
  Matrix samples(2, 1);
  samples << 1.0, 2.0;
  const Predictor bad{[](const Vector& b, RandomStream*) { return Vector::Zero(b[0] > 1.5 ? 3 : 2); },
                      PredictionKind::Deterministic};
  CHECK_THROWS_AS(predict(samples, bad), ContractError);
}

TEST_CASE("constant prediction rows have zero sd") {
  PredictionMatrix pm{Matrix::Constant(2, 30, 4.0), PredictionKind::Deterministic};
  for (const auto& s : summarize_prediction(pm)) {
    CHECK(s.sd == 0.0);
    CHECK(s.mean == 4.0);
  }
}

TEST_CASE("posterior-predictive draws are wider than mean responses") {
  const auto sim = simulate_poisson(1000, 5, 31);
  const ChainOutput c = poisson_chain(sim.data, 1000, 4);
  const SummaryWindow w{100, 1000, 1};
  Rng rng(8);
  const auto mean_stats = summarize_prediction(predict(c, poisson_mean_predictor(sim.data.x), w));
  const auto draw_stats = summarize_prediction(predict(c, poisson_draw_predictor(sim.data.x), w, &rng));
  int wider = 0;
  for (std::size_t i = 0; i < mean_stats.size(); ++i) {
    wider += draw_stats[i].sd > mean_stats[i].sd;
    CHECK(draw_stats[i].q50 == std::round(draw_stats[i].q50));
  }
  CHECK(wider == 1000);
}
