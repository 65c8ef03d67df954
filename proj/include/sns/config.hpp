#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "sns/diagnostics.hpp"
#include "sns/model.hpp"
#include "sns/sampler.hpp"
#include "sns/simulate.hpp"

namespace sns {

/// Bad or inconsistent run configuration. The message names the field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parsed run configuration. INI layout:
///
///   [target]   kind = mvgaussian | poisson_glm
///              mvgaussian:  dim, mean, precision (row-major) or seed to draw them
///              poisson_glm: x, y (CSV paths, relative to the config file)
///   [sampler]  niter, nnr, seed, mh_diag, partition, init
///   [window]   nburnin, end, thin
///   [output]   dir (relative to the working directory)
///
/// `partition` is either a subset count (contiguous blocks) or explicit
/// one-based subsets, e.g. "1,2;3,4,5".
struct RunConfig {
  std::shared_ptr<const LogDensityTarget> target;
  std::string target_kind;
  Vector x_init;
  SamplerSpec spec;
  SummaryWindow window;
  std::filesystem::path out_dir;
};

RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace sns
