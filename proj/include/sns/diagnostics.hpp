#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sns/sampler.hpp"

namespace sns {

/// Iteration window for summaries, in one-based iteration numbers: rows
/// nburnin+1, nburnin+1+thin, ... up to end are retained.
struct SummaryWindow {
  std::size_t nburnin = 0;
  std::size_t end = 0;
  std::size_t thin = 1;

  /// nburnin = niter/2, end = niter, thin = 1.
  static SummaryWindow defaults(std::size_t niter);

  /// Throws ContractError if the window is empty or exceeds niter.
  void validate(std::size_t niter) const;

  /// Zero-based row indices of retained samples.
  std::vector<Eigen::Index> rows(std::size_t niter) const;
};

/// Sample quantile with linear interpolation between order statistics
/// (the default "type 7" rule). `p` in [0, 1].
double quantile(std::span<const double> x, double p);

/// Effective sample size from the spectral density at frequency zero of an
/// AIC-selected autoregressive fit. Clamped to (0, n]; a constant series
/// yields n.
double ess(std::span<const double> x);

/// Two-sided empirical tail mass of zero: 2 min(#{x > 0}, #{x < 0}) / n.
double sample_p_value(std::span<const double> x);

/// Significance code for a p-value: "***", "**", "*", "." or " ".
std::string signif_stars(double p);

/// Mean over retained samples of (df - dq) / |dq|, where df is the change in
/// log-density relative to the NR end state and dq its quadratic
/// approximation built there. Samples with |dq| < 1e-12 are skipped.
double reldev_mean(const ChainOutput& chain, const LogDensityTarget& target,
                   const SummaryWindow& window);

struct CoordinateStats {
  double mean = 0.0;
  double sd = 0.0;
  double ess = 0.0;
  double q025 = 0.0;
  double q50 = 0.0;
  double q975 = 0.0;
  double p_value = 0.0;
};

/// Min / quartiles / mean / max of a set of values.
struct FiveNum {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double mean = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

FiveNum five_num(std::span<const double> x);

/// Mean, sd, ess, quantiles and p-value of one series.
CoordinateStats coordinate_stats(std::span<const double> x);

struct ChainSummary {
  Eigen::Index dim = 0;
  std::size_t niter = 0;
  std::size_t nnr = 0;
  std::optional<std::size_t> nsubsets;
  SummaryWindow window;
  std::size_t sampling_iterations = 0;
  std::size_t nominal_sample_size = 0;
  /// Absent when the window holds no MH transitions (all-NR window).
  std::optional<double> acceptance_rate;
  std::optional<double> reldev_mean;
  std::vector<CoordinateStats> coords;
  FiveNum ess_summary;
};

/// reldev_mean is filled when `target` is given, the chain collected MH
/// diagnostics and ran at least one NR iteration.
ChainSummary summarize(const ChainOutput& chain, const SummaryWindow& window,
                       const LogDensityTarget* target = nullptr);

std::string render(const ChainSummary& s);

}  // namespace sns
