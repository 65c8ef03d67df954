#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sns/gaussian_proposal.hpp"
#include "sns/model.hpp"
#include "sns/random.hpp"

namespace sns {

/// Disjoint, nonempty, zero-based coordinate subsets covering 0..K-1.
struct Partition {
  std::vector<std::vector<Eigen::Index>> subsets;

  std::size_t size() const { return subsets.size(); }
};

struct PartitionViolation {
  enum class Kind { Empty, OutOfRange, Duplicate, Uncovered };
  Kind kind;
  /// Offending coordinate; -1 for Empty.
  Eigen::Index index;
  /// Subset that triggered the violation; -1 for Uncovered.
  std::ptrdiff_t subset;

  /// Human-readable; indices are offset by `base` (1 for one-based display).
  std::string describe(int base = 0) const;
};

/// Contiguous balanced blocks: the first K mod nsubset blocks get one extra.
Partition make_partition(Eigen::Index k, Eigen::Index nsubset);

/// Empty result means the partition is valid for dimension `k`.
std::vector<PartitionViolation> check_partition(const Partition& part, Eigen::Index k);

struct SamplerSpec {
  std::size_t niter = 100;
  std::size_t nnr = 0;
  std::optional<Partition> part;
  std::uint64_t seed = 0;
  bool collect_mh_diag = false;

  /// Throws ContractError naming the offending field.
  void validate(Eigen::Index k) const;
};

/// Components of one MH test. log_q is log q(x_old | x_prop) and
/// log_q_prop is log q(x_prop | x_old).
struct MhDiag {
  double log_p = 0.0;
  double log_p_prop = 0.0;
  double log_q = 0.0;
  double log_q_prop = 0.0;
  bool accepted = false;

  /// log r = (log_p_prop - log_p) + (log_q - log_q_prop)
  double log_ratio() const { return (log_p_prop - log_p) + (log_q - log_q_prop); }
};

/// Current position of a chain with its cached evaluation and (optionally)
/// the full-space proposal fitted there.
struct ChainState {
  Vector x;
  DiffState ds;
  std::optional<GaussianFit> fit;
};

ChainState make_state(const LogDensityTarget& target, const Vector& x);

struct StepResult {
  ChainState state;
  MhDiag diag;
};

/// One SNS Metropolis-Hastings transition. Reuses `current.fit` if present.
/// Normals for the proposal are drawn first; a single uniform is drawn only
/// when r < 1.
StepResult sns_step(const LogDensityTarget& target, const ChainState& current, RandomStream& rng);
StepResult sns_step(const LogDensityTarget& target, const Vector& x_old, RandomStream& rng);

/// Armijo constant and halving budget for the Newton line search.
inline constexpr double kArmijoC = 1e-4;
inline constexpr int kMaxHalvings = 50;

/// One Newton-Raphson step with backtracking line search.
ChainState nr_step(const LogDensityTarget& target, const ChainState& current);
ChainState nr_step(const LogDensityTarget& target, const Vector& x_old);

enum class StepMode { NR, MCMC };

struct PartitionedStep {
  ChainState state;
  /// One entry per subset in MCMC mode, empty in NR mode.
  std::vector<MhDiag> diags;
};

/// One Gibbs cycle over the subsets of `part`, applying an SNS (or NR) step
/// to each restricted target in turn. The returned state carries no
/// full-space fit.
PartitionedStep step_partitioned(const LogDensityTarget& target, const ChainState& current,
                                 const Partition& part, RandomStream& rng, StepMode mode);

struct IterationRecord {
  StepMode mode = StepMode::MCMC;
  /// Acceptance flag per MH transition (one per subset when partitioned).
  std::vector<char> accepted;
  /// Full MH components; filled only when SamplerSpec::collect_mh_diag.
  std::vector<MhDiag> mh;
};

struct ChainOutput {
  SamplerSpec spec;
  /// niter x K, one post-decision state per row.
  Matrix samples;
  Vector lp;
  std::vector<IterationRecord> records;
  /// Full-space fit at the final state (absent for partitioned chains).
  std::optional<GaussianFit> gfit;
  /// State after the last NR iteration (absent when nnr == 0).
  std::optional<Vector> nr_end_state;

  Eigen::Index niter() const { return samples.rows(); }
  Eigen::Index dim() const { return samples.cols(); }
};

/// Iterations 1..nnr in NR mode, the rest in MCMC mode. Deterministic given
/// spec.seed. Errors carry the one-based iteration index.
ChainOutput run(const Vector& x_init, const LogDensityTarget& target, const SamplerSpec& spec);

}  // namespace sns
