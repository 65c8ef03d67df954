#include "sns/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>

#include "sns/errors.hpp"

namespace sns {

SummaryWindow SummaryWindow::defaults(std::size_t niter) { return {niter / 2, niter, 1}; }

void SummaryWindow::validate(std::size_t niter) const {
  if (thin < 1) throw ContractError("thin must be positive");
  if (end > niter) {
    std::ostringstream os;
    os << "window end (" << end << ") exceeds niter (" << niter << ")";
    throw ContractError(os.str());
  }
  if (nburnin >= end) {
    std::ostringstream os;
    os << "window is empty: nburnin (" << nburnin << ") must be below end (" << end << ")";
    throw ContractError(os.str());
  }
}

std::vector<Eigen::Index> SummaryWindow::rows(std::size_t niter) const {
  validate(niter);
  std::vector<Eigen::Index> out;
  for (std::size_t r = nburnin; r < end; r += thin) out.push_back(static_cast<Eigen::Index>(r));
  return out;
}

double quantile(std::span<const double> x, double p) {
  if (x.empty()) throw ContractError("quantile of empty sample");
  std::vector<double> v(x.begin(), x.end());
  std::sort(v.begin(), v.end());
  const double h = (static_cast<double>(v.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= v.size()) return v.back();
  return v[lo] + (h - static_cast<double>(lo)) * (v[lo + 1] - v[lo]);
}

namespace {

double mean_of(std::span<const double> x) {
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double var_of(std::span<const double> x) {
  if (x.size() < 2) return 0.0;
  const double m = mean_of(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return ss / static_cast<double>(x.size() - 1);
}

/// Spectral density at zero of an autoregressive fit selected by AIC over
/// orders 0..min(n-2, floor(10 log10 n)), Yule-Walker via Levinson-Durbin.
double spectrum0_ar(std::span<const double> x) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  const double m = mean_of(x);
  const std::ptrdiff_t max_order =
      std::min<std::ptrdiff_t>(n - 2, static_cast<std::ptrdiff_t>(std::floor(10.0 * std::log10(n))));

  std::vector<double> acov(static_cast<std::size_t>(max_order + 1), 0.0);
  for (std::ptrdiff_t lag = 0; lag <= max_order; ++lag) {
    double s = 0.0;
    for (std::ptrdiff_t t = lag; t < n; ++t) s += (x[t] - m) * (x[t - lag] - m);
    acov[lag] = s / static_cast<double>(n);
  }
  if (!(acov[0] > 0.0)) return 0.0;

  // Levinson-Durbin, keeping coefficients and innovation variance per order.
  std::vector<std::vector<double>> coef(static_cast<std::size_t>(max_order + 1));
  std::vector<double> vars(static_cast<std::size_t>(max_order + 1));
  vars[0] = acov[0];
  std::vector<double> phi;
  for (std::ptrdiff_t k = 1; k <= max_order; ++k) {
    double num = acov[k];
    for (std::ptrdiff_t j = 1; j < k; ++j) num -= phi[j - 1] * acov[k - j];
    const double pacf = num / vars[k - 1];
    std::vector<double> next(static_cast<std::size_t>(k));
    for (std::ptrdiff_t j = 1; j < k; ++j) next[j - 1] = phi[j - 1] - pacf * phi[k - j - 1];
    next[k - 1] = pacf;
    phi = std::move(next);
    coef[k] = phi;
    vars[k] = vars[k - 1] * (1.0 - pacf * pacf);
    if (!(vars[k] > 0.0)) {
      vars.resize(static_cast<std::size_t>(k));
      coef.resize(static_cast<std::size_t>(k));
      break;
    }
  }

  std::size_t best = 0;
  double best_aic = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < vars.size(); ++k) {
    const double aic = static_cast<double>(n) * std::log(vars[k]) + 2.0 * static_cast<double>(k);
    if (aic < best_aic) {
      best_aic = aic;
      best = k;
    }
  }

  const double var_pred = vars[best] * static_cast<double>(n) /
                          static_cast<double>(n - static_cast<std::ptrdiff_t>(best) - 1);
  const double sum_ar = std::accumulate(coef[best].begin(), coef[best].end(), 0.0);
  return var_pred / ((1.0 - sum_ar) * (1.0 - sum_ar));
}

}  // namespace

double ess(std::span<const double> x) {
  const auto n = static_cast<double>(x.size());
  if (x.size() < 2) return n;
  const double v = var_of(x);
  if (!(v > 0.0)) return n;
  const double s0 = spectrum0_ar(x);
  if (!(s0 > 0.0) || !std::isfinite(s0)) return n;
  const double e = n * v / s0;
  return std::clamp(e, std::numeric_limits<double>::min(), n);
}

double sample_p_value(std::span<const double> x) {
  if (x.empty()) throw ContractError("p-value of empty sample");
  std::size_t pos = 0;
  std::size_t neg = 0;
  for (double v : x) {
    if (v > 0.0) ++pos;
    else if (v < 0.0) ++neg;
  }
  const double p = 2.0 * static_cast<double>(std::min(pos, neg)) / static_cast<double>(x.size());
  return std::clamp(p, 0.0, 1.0);
}

std::string signif_stars(double p) {
  if (p <= 0.001) return "***";
  if (p <= 0.01) return "**";
  if (p <= 0.05) return "*";
  if (p <= 0.1) return ".";
  return " ";
}

double reldev_mean(const ChainOutput& chain, const LogDensityTarget& target,
                   const SummaryWindow& window) {
  if (!chain.nr_end_state) {
    throw ContractError(
        "reldev_mean requires NR iterations (nnr >= 1): the quadratic approximation is built at "
        "the NR end state, which must have converged to the density maximum");
  }
  const Vector& xhat = *chain.nr_end_state;
  const DiffState at_max = target.evaluate(xhat);
  double sum = 0.0;
  std::size_t count = 0;
  for (Eigen::Index r : window.rows(static_cast<std::size_t>(chain.niter()))) {
    const Vector d = chain.samples.row(r).transpose() - xhat;
    const double dq = at_max.g.dot(d) + 0.5 * d.dot(at_max.h * d);
    if (std::abs(dq) < 1e-12) continue;
    const double df = chain.lp[r] - at_max.f;
    sum += (df - dq) / std::abs(dq);
    ++count;
  }
  return count ? sum / static_cast<double>(count) : std::numeric_limits<double>::quiet_NaN();
}

FiveNum five_num(std::span<const double> x) {
  FiveNum f;
  f.min = *std::min_element(x.begin(), x.end());
  f.max = *std::max_element(x.begin(), x.end());
  f.q1 = quantile(x, 0.25);
  f.median = quantile(x, 0.5);
  f.q3 = quantile(x, 0.75);
  f.mean = mean_of(x);
  return f;
}

CoordinateStats coordinate_stats(std::span<const double> x) {
  CoordinateStats c;
  c.mean = mean_of(x);
  c.sd = std::sqrt(var_of(x));
  c.ess = ess(x);
  c.q025 = quantile(x, 0.025);
  c.q50 = quantile(x, 0.5);
  c.q975 = quantile(x, 0.975);
  c.p_value = sample_p_value(x);
  return c;
}

ChainSummary summarize(const ChainOutput& chain, const SummaryWindow& window,
                       const LogDensityTarget* target) {
  const auto niter = static_cast<std::size_t>(chain.niter());
  const std::vector<Eigen::Index> rows = window.rows(niter);

  ChainSummary s;
  s.dim = chain.dim();
  s.niter = niter;
  s.nnr = chain.spec.nnr;
  if (chain.spec.part) s.nsubsets = chain.spec.part->size();
  s.window = window;
  s.sampling_iterations = window.end - window.nburnin;
  s.nominal_sample_size = rows.size();

  std::size_t transitions = 0;
  std::size_t accepted = 0;
  for (std::size_t it = window.nburnin; it < window.end && it < chain.records.size(); ++it) {
    for (char a : chain.records[it].accepted) {
      ++transitions;
      accepted += a ? 1 : 0;
    }
  }
  if (transitions) s.acceptance_rate = static_cast<double>(accepted) / static_cast<double>(transitions);

  if (target && chain.spec.collect_mh_diag && chain.nr_end_state) {
    const double r = reldev_mean(chain, *target, window);
    if (std::isfinite(r)) s.reldev_mean = r;
  }

  std::vector<double> col(rows.size());
  std::vector<double> ess_values;
  for (Eigen::Index j = 0; j < chain.dim(); ++j) {
    for (std::size_t i = 0; i < rows.size(); ++i) col[i] = chain.samples(rows[i], j);
    s.coords.push_back(coordinate_stats(col));
    ess_values.push_back(s.coords.back().ess);
  }
  if (!ess_values.empty()) s.ess_summary = five_num(ess_values);
  return s;
}

std::string render(const ChainSummary& s) {
  std::ostringstream os;
  os << "Stochastic Newton Sampler (SNS)\n";
  os << "state space dimensionality:  " << s.dim << "\n";
  if (s.nsubsets) os << "state space partitioning:  " << *s.nsubsets << "  subsets\n";
  os << "total iterations:  " << s.niter << "\n";
  os << "\tNR iterations:  " << s.nnr << "\n";
  os << "\tburn-in iterations:  " << s.window.nburnin << "\n";
  os << "\tend iteration:  " << s.window.end << "\n";
  os << "\tthinning interval:  " << s.window.thin << "\n";
  os << "\tsampling iterations (before thinning):  " << s.sampling_iterations << "\n";
  os << "acceptance rate:  ";
  if (s.acceptance_rate) os << std::setprecision(3) << *s.acceptance_rate << "\n";
  else os << "NA\n";
  if (s.reldev_mean) {
    os << "\tmean relative deviation from quadratic approx: " << std::setprecision(3)
       << *s.reldev_mean << "\n";
  }
  os << "sample statistics:\n";
  os << "\t(nominal sample size: " << s.nominal_sample_size << ")\n";
  os << std::setw(5) << "" << std::setw(14) << "mean" << std::setw(14) << "sd" << std::setw(14)
     << "ess" << std::setw(14) << "2.5%" << std::setw(14) << "50%" << std::setw(14) << "97.5%"
     << std::setw(8) << "p-val" << "\n";
  os << std::setprecision(6);
  for (std::size_t j = 0; j < s.coords.size(); ++j) {
    const auto& c = s.coords[j];
    os << std::setw(5) << j + 1 << std::setw(14) << c.mean << std::setw(14) << c.sd
       << std::setw(14) << c.ess << std::setw(14) << c.q025 << std::setw(14) << c.q50
       << std::setw(14) << c.q975 << std::setw(8) << c.p_value << " " << signif_stars(c.p_value)
       << "\n";
  }
  os << "---\nSignif. codes:  0 '***' 0.001 '**' 0.01 '*' 0.05 '.' 0.1 ' ' 1\n";
  os << "summary of ess:\n";
  os << std::setprecision(4);
  const auto& e = s.ess_summary;
  os << std::setw(10) << "Min." << std::setw(10) << "1st Qu." << std::setw(10) << "Median"
     << std::setw(10) << "Mean" << std::setw(10) << "3rd Qu." << std::setw(10) << "Max." << "\n";
  os << std::setw(10) << e.min << std::setw(10) << e.q1 << std::setw(10) << e.median
     << std::setw(10) << e.mean << std::setw(10) << e.q3 << std::setw(10) << e.max << "\n";
  return os.str();
}

}  // namespace sns
