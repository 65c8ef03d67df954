#include "sns/sampler.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "sns/errors.hpp"

namespace sns {

// ---------------------------------------------------------------------------
// Partitions

std::string PartitionViolation::describe(int base) const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Empty:
      os << "subset " << subset + base << " is empty";
      break;
    case Kind::OutOfRange:
      os << "index " << index + base << " in subset " << subset + base << " is out of range";
      break;
    case Kind::Duplicate:
      os << "index " << index + base << " duplicated (again in subset " << subset + base << ")";
      break;
    case Kind::Uncovered:
      os << "index " << index + base << " uncovered";
      break;
  }
  return os.str();
}

Partition make_partition(Eigen::Index k, Eigen::Index nsubset) {
  if (k < 1) throw ContractError("make_partition: dimension must be positive");
  if (nsubset < 1 || nsubset > k) {
    std::ostringstream os;
    os << "make_partition: number of subsets must be in [1, " << k << "], got " << nsubset;
    throw ContractError(os.str());
  }
  Partition part;
  const Eigen::Index base = k / nsubset;
  const Eigen::Index extra = k % nsubset;
  Eigen::Index next = 0;
  for (Eigen::Index s = 0; s < nsubset; ++s) {
    const Eigen::Index len = base + (s < extra ? 1 : 0);
    std::vector<Eigen::Index> subset(static_cast<std::size_t>(len));
    for (auto& i : subset) i = next++;
    part.subsets.push_back(std::move(subset));
  }
  return part;
}

std::vector<PartitionViolation> check_partition(const Partition& part, Eigen::Index k) {
  using Kind = PartitionViolation::Kind;
  std::vector<PartitionViolation> out;
  std::vector<char> seen(static_cast<std::size_t>(std::max<Eigen::Index>(k, 0)), 0);
  for (std::size_t s = 0; s < part.subsets.size(); ++s) {
    const auto sid = static_cast<std::ptrdiff_t>(s);
    if (part.subsets[s].empty()) out.push_back({Kind::Empty, -1, sid});
    for (Eigen::Index i : part.subsets[s]) {
      if (i < 0 || i >= k) {
        out.push_back({Kind::OutOfRange, i, sid});
      } else if (seen[static_cast<std::size_t>(i)]) {
        out.push_back({Kind::Duplicate, i, sid});
      } else {
        seen[static_cast<std::size_t>(i)] = 1;
      }
    }
  }
  for (Eigen::Index i = 0; i < k; ++i) {
    if (!seen[static_cast<std::size_t>(i)]) out.push_back({Kind::Uncovered, i, -1});
  }
  return out;
}

void SamplerSpec::validate(Eigen::Index k) const {
  if (niter < 1) throw ContractError("niter must be positive");
  if (nnr > niter) {
    std::ostringstream os;
    os << "nnr (" << nnr << ") must not exceed niter (" << niter << ")";
    throw ContractError(os.str());
  }
  if (part) {
    const auto violations = check_partition(*part, k);
    if (!violations.empty()) {
      std::ostringstream os;
      os << "invalid partition: " << violations.front().describe();
      if (violations.size() > 1) os << " (+" << violations.size() - 1 << " more)";
      throw ContractError(os.str());
    }
  }
}

// ---------------------------------------------------------------------------
// Core transitions, shared by the full-space and restricted-subset paths.
// `eval` maps a point of the (possibly restricted) space to its DiffState.

namespace {

struct MhOutcome {
  MhDiag diag;
  Vector z_prop;
  DiffState ds_prop;
  GaussianFit fit_prop;
};

template <class Eval>
MhOutcome mh_core(const Vector& z_old, double f_old, const GaussianFit& fit_old, Eval&& eval,
                  RandomStream& rng) {
  MhOutcome out;
  out.z_prop = sample(fit_old, rng);
  const double log_q_prop = log_pdf(fit_old, out.z_prop);
  out.ds_prop = eval(out.z_prop);
  out.fit_prop = fit_gaussian(out.z_prop, out.ds_prop);
  const double log_q_old = log_pdf(out.fit_prop, z_old);

  out.diag.log_p = f_old;
  out.diag.log_p_prop = out.ds_prop.f;
  out.diag.log_q = log_q_old;
  out.diag.log_q_prop = log_q_prop;

  const double log_r = out.diag.log_ratio();
  if (log_r >= 0.0) {
    out.diag.accepted = true;
  } else {
    const double s = rng.uniform();
    out.diag.accepted = s < std::exp(log_r);
  }
  return out;
}

struct NrOutcome {
  Vector z_new;
  DiffState ds_new;
  bool moved = false;
};

/// Predicted gains at or below this are indistinguishable from rounding in f.
double noise_floor(double f) {
  return 1e3 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(f));
}

template <class Eval>
NrOutcome nr_core(const Vector& z_old, const DiffState& ds_old, const GaussianFit& fit_old,
                  Eval&& eval) {
  NrOutcome out;
  const Vector delta = fit_old.mean - z_old;
  const double slope = ds_old.g.dot(delta);
  if (ds_old.g.isZero(0.0) || !(slope > 0.0)) {
    out.z_new = z_old;
    out.ds_new = ds_old;
    return out;
  }

  const double f_old = ds_old.f;
  double alpha = 1.0;
  double f_last = -std::numeric_limits<double>::infinity();
  for (int halvings = 0; halvings <= kMaxHalvings; ++halvings, alpha *= 0.5) {
    const Vector trial = z_old + alpha * delta;
    DiffState ds;
    try {
      ds = eval(trial);
    } catch (const OverflowError&) {
      continue;  // step left the representable region; shrink it
    }
    f_last = ds.f;
    if (std::isfinite(ds.f) && ds.f >= f_old + kArmijoC * alpha * slope) {
      out.z_new = trial;
      out.ds_new = std::move(ds);
      out.moved = true;
      return out;
    }
    if (halvings == 0 && slope <= noise_floor(f_old)) {
      // Converged to rounding level: f cannot resolve the step any more.
      if (std::isfinite(ds.f) && ds.f >= f_old) {
        out.z_new = trial;
        out.ds_new = std::move(ds);
        out.moved = true;
      } else {
        out.z_new = z_old;
        out.ds_new = ds_old;
      }
      return out;
    }
  }
  throw LineSearchFailure(f_old, f_last, kMaxHalvings);
}

const GaussianFit& ensure_fit(const ChainState& s, std::optional<GaussianFit>& storage) {
  if (s.fit) return *s.fit;
  storage = fit_gaussian(s.x, s.ds);
  return *storage;
}

DiffState restrict_to(const DiffState& full, const std::vector<Eigen::Index>& idx) {
  const auto n = static_cast<Eigen::Index>(idx.size());
  DiffState out;
  out.f = full.f;
  out.g.resize(n);
  out.h.resize(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    out.g[a] = full.g[idx[a]];
    for (Eigen::Index b = 0; b < n; ++b) out.h(a, b) = full.h(idx[a], idx[b]);
  }
  return out;
}

Vector gather(const Vector& x, const std::vector<Eigen::Index>& idx) {
  Vector out(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t a = 0; a < idx.size(); ++a) out[static_cast<Eigen::Index>(a)] = x[idx[a]];
  return out;
}

void scatter(Vector& x, const std::vector<Eigen::Index>& idx, const Vector& z) {
  for (std::size_t a = 0; a < idx.size(); ++a) x[idx[a]] = z[static_cast<Eigen::Index>(a)];
}

}  // namespace

// ---------------------------------------------------------------------------

ChainState make_state(const LogDensityTarget& target, const Vector& x) {
  if (x.size() != target.dim()) {
    std::ostringstream os;
    os << "initial state has length " << x.size() << ", target dimension is " << target.dim();
    throw ContractError(os.str());
  }
  ChainState s{x, target.evaluate(x), std::nullopt};
  validate(s.ds, target.dim());
  return s;
}

StepResult sns_step(const LogDensityTarget& target, const ChainState& current, RandomStream& rng) {
  std::optional<GaussianFit> storage;
  const GaussianFit& fit_old = ensure_fit(current, storage);
  MhOutcome o = mh_core(
      current.x, current.ds.f, fit_old, [&](const Vector& z) { return target.evaluate(z); }, rng);

  StepResult res;
  res.diag = o.diag;
  if (o.diag.accepted) {
    res.state = ChainState{std::move(o.z_prop), std::move(o.ds_prop), std::move(o.fit_prop)};
  } else {
    res.state = ChainState{current.x, current.ds, fit_old};
  }
  return res;
}

StepResult sns_step(const LogDensityTarget& target, const Vector& x_old, RandomStream& rng) {
  return sns_step(target, make_state(target, x_old), rng);
}

ChainState nr_step(const LogDensityTarget& target, const ChainState& current) {
  std::optional<GaussianFit> storage;
  const GaussianFit& fit_old = ensure_fit(current, storage);
  NrOutcome o = nr_core(current.x, current.ds, fit_old,
                        [&](const Vector& z) { return target.evaluate(z); });
  if (!o.moved) return ChainState{current.x, current.ds, fit_old};
  GaussianFit fit_new = fit_gaussian(o.z_new, o.ds_new);
  return ChainState{std::move(o.z_new), std::move(o.ds_new), std::move(fit_new)};
}

ChainState nr_step(const LogDensityTarget& target, const Vector& x_old) {
  return nr_step(target, make_state(target, x_old));
}

PartitionedStep step_partitioned(const LogDensityTarget& target, const ChainState& current,
                                 const Partition& part, RandomStream& rng, StepMode mode) {
  PartitionedStep out;
  Vector x = current.x;
  DiffState full = current.ds;

  for (std::size_t s = 0; s < part.subsets.size(); ++s) {
    const auto& idx = part.subsets[s];
    DiffState last_full;
    auto eval = [&](const Vector& z) {
      Vector xf = x;
      scatter(xf, idx, z);
      last_full = target.evaluate(xf);
      return restrict_to(last_full, idx);
    };
    try {
      const Vector z_old = gather(x, idx);
      const DiffState ds_old = restrict_to(full, idx);
      const GaussianFit fit_old = fit_gaussian(z_old, ds_old);
      if (mode == StepMode::MCMC) {
        MhOutcome o = mh_core(z_old, full.f, fit_old, eval, rng);
        if (o.diag.accepted) {
          scatter(x, idx, o.z_prop);
          full = std::move(last_full);
        }
        out.diags.push_back(o.diag);
      } else {
        NrOutcome o = nr_core(z_old, ds_old, fit_old, eval);
        if (o.moved) {
          scatter(x, idx, o.z_new);
          full = std::move(last_full);
        }
      }
    } catch (SamplerError& e) {
      e.set_subset(s);
      throw;
    }
  }
  out.state = ChainState{std::move(x), std::move(full), std::nullopt};
  return out;
}

ChainOutput run(const Vector& x_init, const LogDensityTarget& target, const SamplerSpec& spec) {
  spec.validate(target.dim());
  const Eigen::Index k = target.dim();
  const auto niter = static_cast<Eigen::Index>(spec.niter);

  ChainOutput out;
  out.spec = spec;
  out.samples.resize(niter, k);
  out.lp.resize(niter);
  out.records.reserve(spec.niter);

  Rng rng(spec.seed);
  ChainState state = make_state(target, x_init);

  for (std::size_t it = 0; it < spec.niter; ++it) {
    const StepMode mode = it < spec.nnr ? StepMode::NR : StepMode::MCMC;
    IterationRecord rec;
    rec.mode = mode;
    try {
      if (spec.part) {
        PartitionedStep ps = step_partitioned(target, state, *spec.part, rng, mode);
        state = std::move(ps.state);
        for (const MhDiag& d : ps.diags) rec.accepted.push_back(d.accepted ? 1 : 0);
        if (spec.collect_mh_diag) rec.mh = std::move(ps.diags);
      } else if (mode == StepMode::NR) {
        state = nr_step(target, state);
      } else {
        StepResult sr = sns_step(target, state, rng);
        state = std::move(sr.state);
        rec.accepted.push_back(sr.diag.accepted ? 1 : 0);
        if (spec.collect_mh_diag) rec.mh.push_back(sr.diag);
      }
    } catch (SamplerError& e) {
      e.set_iteration(it + 1);
      throw;
    }
    const auto row = static_cast<Eigen::Index>(it);
    out.samples.row(row) = state.x.transpose();
    out.lp[row] = state.ds.f;
    out.records.push_back(std::move(rec));
    if (it + 1 == spec.nnr) out.nr_end_state = state.x;
  }
  out.gfit = state.fit;
  return out;
}

}  // namespace sns
