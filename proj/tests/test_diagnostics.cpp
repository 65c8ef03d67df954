#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "sns/config.hpp"
#include "sns/diagnostics.hpp"
#include "sns/errors.hpp"

using namespace sns;

namespace {

/// Hand-built chain: `nnr` NR rows followed by MCMC rows with the given
/// acceptance flags.
ChainOutput synthetic_chain(const Matrix& samples, std::size_t nnr, const std::vector<char>& accepted) {
  ChainOutput c;
  c.spec.niter = static_cast<std::size_t>(samples.rows());
  c.spec.nnr = nnr;
  c.samples = samples;
  c.lp = Vector::Zero(samples.rows());
  for (Eigen::Index i = 0; i < samples.rows(); ++i) {
    IterationRecord r;
    const auto ui = static_cast<std::size_t>(i);
    r.mode = ui < nnr ? StepMode::NR : StepMode::MCMC;
    if (ui >= nnr) r.accepted.push_back(accepted[ui - nnr]);
    c.records.push_back(r);
  }
  if (nnr > 0) c.nr_end_state = samples.row(static_cast<Eigen::Index>(nnr) - 1).transpose();
  return c;
}

std::vector<double> ar1(std::size_t n, double rho, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> x(n);
  double v = rng.normal() / std::sqrt(1.0 - rho * rho);
  for (auto& xi : x) {
    v = rho * v + rng.normal();
    xi = v;
  }
  return x;
}

}  // namespace

TEST_CASE("summary window") {
  const SummaryWindow d = SummaryWindow::defaults(201);
  CHECK(d.nburnin == 100);
  CHECK(d.end == 201);
  CHECK(d.thin == 1);
  CHECK(d.rows(201).size() == 101);
  CHECK(d.rows(201).front() == 100);

  CHECK_THROWS_AS((SummaryWindow{10, 10, 1}.rows(20)), ContractError);
  CHECK_THROWS_AS((SummaryWindow{0, 30, 1}.rows(20)), ContractError);
  CHECK_THROWS_AS((SummaryWindow{0, 10, 0}.rows(20)), ContractError);

  for (std::size_t nb = 0; nb < 20; ++nb) {
    for (std::size_t end = nb + 1; end <= 40; ++end) {
      for (std::size_t thin = 1; thin <= 7; ++thin) {
        const auto rows = SummaryWindow{nb, end, thin}.rows(40);
        CHECK(rows.size() == (end - nb + thin - 1) / thin);
      }
    }
  }
}

TEST_CASE("quantile uses linear interpolation between order statistics") {
  const std::vector<double> x{4.0, 1.0, 3.0, 2.0};
  CHECK(quantile(x, 0.0) == 1.0);
  CHECK(quantile(x, 0.25) == doctest::Approx(1.75));
  CHECK(quantile(x, 0.5) == doctest::Approx(2.5));
  CHECK(quantile(x, 1.0) == 4.0);
}

TEST_CASE("ess of i.i.d. draws is close to n") {
  Rng rng(42);
  std::vector<double> x(10000);
  for (auto& v : x) v = rng.normal();
  CHECK(std::abs(ess(x) - 10000.0) < 0.15 * 10000.0);
}

TEST_CASE("ess of an AR(1) series matches the closed form") {
  const double rho = 0.9;
  const double expect = 10000.0 * (1.0 - rho) / (1.0 + rho);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto x = ar1(10000, rho, seed);
    CHECK(std::abs(ess(x) - expect) < 0.25 * expect);
  }
}

TEST_CASE("ess conventions") {
  CHECK(ess(std::vector<double>(50, 3.0)) == 50.0);
  const auto x = ar1(500, 0.5, 9);
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = -3.5 * x[i] + 12.0;
  CHECK(std::abs(ess(y) - ess(x)) < 1e-8);
  // Anti-correlated series would exceed n without the clamp.
  std::vector<double> alt(200);
  for (std::size_t i = 0; i < alt.size(); ++i) alt[i] = (i % 2 ? 1.0 : -1.0) + 0.01 * static_cast<double>(i % 7);
  const double e = ess(alt);
  CHECK(e > 0.0);
  CHECK(e <= 200.0);
}

TEST_CASE("sample p-value") {
  CHECK(sample_p_value(std::vector<double>{1, 2, 3}) == 0.0);
  CHECK(sample_p_value(std::vector<double>{-1, 1, -2, 2}) == 1.0);
  std::vector<double> x(100, 1.0);
  for (int i = 0; i < 4; ++i) x[static_cast<std::size_t>(i)] = -1.0;
  CHECK(sample_p_value(x) == doctest::Approx(0.08));
  std::vector<double> scaled(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) scaled[i] = 7.25 * x[i];
  CHECK(sample_p_value(scaled) == sample_p_value(x));

  CHECK(signif_stars(0.0) == "***");
  CHECK(signif_stars(0.01) == "**");
  CHECK(signif_stars(0.04) == "*");
  CHECK(signif_stars(0.06) == ".");
  CHECK(signif_stars(0.9) == " ");
}

TEST_CASE("summary of a constant chain") {
  Matrix s(20, 2);
  s.col(0).setConstant(1.5);
  s.col(1).setConstant(-2.0);
  const ChainOutput c = synthetic_chain(s, 0, std::vector<char>(20, 1));
  const ChainSummary sum = summarize(c, SummaryWindow::defaults(20));
  for (const auto& cs : sum.coords) {
    CHECK(cs.sd == 0.0);
    CHECK(cs.q025 == cs.mean);
    CHECK(cs.q50 == cs.mean);
    CHECK(cs.q975 == cs.mean);
    CHECK(cs.ess == 10.0);
  }
  CHECK(sum.acceptance_rate == 1.0);
}

TEST_CASE("acceptance rate counts windowed transitions") {
  Matrix s = Matrix::Random(20, 1);
  std::vector<char> acc(20, 1);
  for (std::size_t i = 10; i < 20; ++i) acc[i] = (i == 11 || i == 14 || i == 19) ? 1 : 0;
  const ChainOutput c = synthetic_chain(s, 0, acc);
  const ChainSummary sum = summarize(c, SummaryWindow::defaults(20));
  CHECK(sum.acceptance_rate == doctest::Approx(0.3));
  CHECK(sum.nominal_sample_size == 10);

  const ChainOutput nr = synthetic_chain(s, 20, {});
  CHECK_FALSE(summarize(nr, SummaryWindow::defaults(20)).acceptance_rate.has_value());
}

TEST_CASE("summary ignores NR iterations outside the window") {
  Rng rng(3);
  Matrix s(40, 2);
  for (Eigen::Index i = 0; i < s.size(); ++i) s.data()[i] = rng.normal();
  std::vector<char> acc(35);
  for (auto& a : acc) a = rng.uniform() < 0.7;
  const ChainOutput a = synthetic_chain(s, 5, acc);
  Matrix s2 = s;
  s2.topRows(5).setConstant(100.0);
  const ChainOutput b = synthetic_chain(s2, 5, acc);
  const ChainSummary sa = summarize(a, SummaryWindow::defaults(40));
  const ChainSummary sb = summarize(b, SummaryWindow::defaults(40));
  CHECK(sa.acceptance_rate == sb.acceptance_rate);
  for (std::size_t j = 0; j < 2; ++j) {
    CHECK(sa.coords[j].mean == sb.coords[j].mean);
    CHECK(sa.coords[j].ess == sb.coords[j].ess);
  }
}

TEST_CASE("reldev_mean is zero on quadratic targets") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    auto [mean, prec] = random_mvgaussian(3, seed);
    MvGaussianTarget t(mean, prec);
    SamplerSpec spec;
    spec.niter = 300;
    spec.nnr = 10;
    spec.seed = seed * 11;
    spec.collect_mh_diag = true;
    const ChainOutput c = run(Vector::Zero(3), t, spec);
    CHECK(std::abs(reldev_mean(c, t, SummaryWindow::defaults(300))) < 1e-8);
  }
}

TEST_CASE("reldev_mean skips samples at the maximum and needs NR iterations") {
  oracle::QuarticTarget t(Vector::Ones(1), Vector::Zero(1));
  Matrix s(4, 1);
  s << 0.0, 0.0, 0.0, 0.5;  // row 1 is the NR end state (the maximum)
  ChainOutput c = synthetic_chain(s, 1, {1, 1, 1});
  for (Eigen::Index i = 0; i < 4; ++i) c.lp[i] = t.evaluate(s.row(i).transpose()).f;
  // Rows 2..4 retained; rows at x = 0 are skipped, only x = 0.5 counts:
  // df = -0.125 - 0.015625, dq = -0.125.
  const double got = reldev_mean(c, t, SummaryWindow{1, 4, 1});
  CHECK(got == doctest::Approx((-0.140625 + 0.125) / 0.125));

  ChainOutput no_nr = synthetic_chain(s, 0, {1, 1, 1, 1});
  CHECK_THROWS_AS(reldev_mean(no_nr, t, SummaryWindow{1, 4, 1}), ContractError);
}

TEST_CASE("render lists the summary fields in order") {
  auto [mean, prec] = random_mvgaussian(3, 1);
  MvGaussianTarget t(mean, prec);
  SamplerSpec spec;
  spec.niter = 100;
  spec.nnr = 5;
  spec.collect_mh_diag = true;
  const ChainOutput c = run(Vector::Zero(3), t, spec);
  const std::string text = render(summarize(c, SummaryWindow::defaults(100), &t));
  const char* fields[] = {"dimensionality", "total iterations", "NR iterations", "burn-in",
                          "end iteration", "thinning", "acceptance rate", "quadratic approx",
                          "nominal sample size", "summary of ess"};
  std::size_t pos = 0;
  for (const char* f : fields) {
    const auto at = text.find(f, pos);
    CHECK_MESSAGE(at != std::string::npos, f);
    if (at != std::string::npos) pos = at;
  }
}
