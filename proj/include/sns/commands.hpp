#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "sns/diagnostics.hpp"

namespace sns::cli {

/// Exit codes shared by all commands.
inline constexpr int kOk = 0;
inline constexpr int kSamplerFailure = 1;
inline constexpr int kUsageError = 2;

struct RunOptions {
  std::filesystem::path config;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out_dir;
};

/// Writes samples.csv, lp.csv, diag.csv, acf.csv, summary.txt and
/// summary.json into the output directory.
int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err);

struct SimulateOptions {
  std::string kind = "poisson";
  long long n = 1000;
  long long k = 5;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir;
};

/// Writes X.csv, y.csv and beta.csv.
int cmd_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err);

struct PredictOptions {
  std::filesystem::path chain_dir;
  std::string predictor;
  std::filesystem::path data;
  std::optional<std::size_t> nburnin;
  std::optional<std::size_t> end;
  std::size_t thin = 1;
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> out_dir;
};

/// Writes prediction_<predictor>.csv (M x S) and
/// prediction_<predictor>_summary.csv (one row per prediction target).
int cmd_predict(const PredictOptions& opts, std::ostream& out, std::ostream& err);

/// Machine-readable form of a chain summary ("schema": 1).
std::string summary_json(const ChainSummary& s, std::uint64_t seed);

}  // namespace sns::cli
