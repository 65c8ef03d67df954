#include "sns/commands.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>

#include "json.hpp"
#include "sns/config.hpp"
#include "sns/errors.hpp"
#include "sns/io.hpp"
#include "sns/prediction.hpp"

namespace sns::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw io::IoError("cannot create directory " + dir.string());
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw io::IoError("cannot write " + path.string());
  out << text;
}

ordered_json stats_json(const CoordinateStats& c) {
  return {{"mean", c.mean}, {"sd", c.sd},     {"ess", c.ess},        {"q025", c.q025},
          {"q50", c.q50},   {"q975", c.q975}, {"p_value", c.p_value}, {"signif", signif_stars(c.p_value)}};
}

Matrix autocorrelation(const Matrix& retained, Eigen::Index max_lag) {
  const Eigen::Index n = retained.rows();
  Matrix acf(max_lag + 1, retained.cols());
  for (Eigen::Index j = 0; j < retained.cols(); ++j) {
    const Vector x = retained.col(j).array() - retained.col(j).mean();
    const double c0 = x.squaredNorm();
    for (Eigen::Index lag = 0; lag <= max_lag; ++lag) {
      const double c = x.head(n - lag).dot(x.tail(n - lag));
      acf(lag, j) = c0 > 0.0 ? c / c0 : (lag == 0 ? 1.0 : 0.0);
    }
  }
  return acf;
}

void write_run_artifacts(const fs::path& dir, const ChainOutput& chain, const ChainSummary& summary,
                         std::uint64_t seed) {
  ensure_dir(dir);
  const Eigen::Index k = chain.dim();
  io::write_csv(dir / "samples.csv", io::numbered("x", k), chain.samples);

  Matrix lp(chain.niter(), 3);
  for (Eigen::Index i = 0; i < chain.niter(); ++i) {
    lp(i, 0) = static_cast<double>(i + 1);
    lp(i, 1) = chain.records[static_cast<std::size_t>(i)].mode == StepMode::NR ? 0.0 : 1.0;
    lp(i, 2) = chain.lp[i];
  }
  io::write_csv(dir / "lp.csv", {"iteration", "mcmc", "lp"}, lp);

  const bool full = chain.spec.collect_mh_diag;
  std::vector<std::vector<double>> rows;
  for (std::size_t it = 0; it < chain.records.size(); ++it) {
    const auto& rec = chain.records[it];
    for (std::size_t s = 0; s < rec.accepted.size(); ++s) {
      std::vector<double> row{static_cast<double>(it + 1), static_cast<double>(s + 1)};
      if (full) {
        const MhDiag& d = rec.mh[s];
        row.insert(row.end(), {d.log_p, d.log_p_prop, d.log_q, d.log_q_prop});
      }
      row.push_back(rec.accepted[s] ? 1.0 : 0.0);
      rows.push_back(std::move(row));
    }
  }
  std::vector<std::string> diag_header{"iteration", "subset"};
  if (full) diag_header.insert(diag_header.end(), {"log_p", "log_p_prop", "log_q", "log_q_prop"});
  diag_header.push_back("accepted");
  Matrix diag(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(diag_header.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      diag(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  }
  io::write_csv(dir / "diag.csv", diag_header, diag);

  const auto retained_rows = summary.window.rows(static_cast<std::size_t>(chain.niter()));
  Matrix retained(static_cast<Eigen::Index>(retained_rows.size()), k);
  for (std::size_t i = 0; i < retained_rows.size(); ++i) {
    retained.row(static_cast<Eigen::Index>(i)) = chain.samples.row(retained_rows[i]);
  }
  const Eigen::Index max_lag = std::min<Eigen::Index>(50, retained.rows() - 1);
  Matrix acf = autocorrelation(retained, max_lag);
  Matrix acf_out(acf.rows(), k + 1);
  acf_out.col(0) = Vector::LinSpaced(acf.rows(), 0.0, static_cast<double>(max_lag));
  acf_out.rightCols(k) = acf;
  auto acf_header = io::numbered("x", k);
  acf_header.insert(acf_header.begin(), "lag");
  io::write_csv(dir / "acf.csv", acf_header, acf_out);

  write_text(dir / "summary.txt", render(summary));
  write_text(dir / "summary.json", summary_json(summary, seed) + "\n");
}

}  // namespace

std::string summary_json(const ChainSummary& s, std::uint64_t seed) {
  ordered_json j;
  j["schema"] = 1;
  j["dim"] = s.dim;
  j["niter"] = s.niter;
  j["nnr"] = s.nnr;
  j["nsubsets"] = s.nsubsets ? ordered_json(*s.nsubsets) : ordered_json(nullptr);
  j["seed"] = seed;
  j["nburnin"] = s.window.nburnin;
  j["end"] = s.window.end;
  j["thin"] = s.window.thin;
  j["sampling_iterations"] = s.sampling_iterations;
  j["nominal_sample_size"] = s.nominal_sample_size;
  j["acceptance_rate"] = s.acceptance_rate ? ordered_json(*s.acceptance_rate) : ordered_json(nullptr);
  j["reldev_mean"] = s.reldev_mean ? ordered_json(*s.reldev_mean) : ordered_json(nullptr);
  ordered_json coords = ordered_json::array();
  for (const auto& c : s.coords) coords.push_back(stats_json(c));
  j["coordinates"] = coords;
  const auto& e = s.ess_summary;
  j["ess_summary"] = {{"min", e.min}, {"q1", e.q1},   {"median", e.median},
                      {"mean", e.mean}, {"q3", e.q3}, {"max", e.max}};
  return j.dump(2);
}

int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = load_run_config(opts.config);
  } catch (const ConfigError& e) {
    err << "config error in " << opts.config.string() << ": " << e.what() << "\n";
    return kUsageError;
  }
  if (opts.seed) cfg.spec.seed = *opts.seed;
  if (opts.out_dir) cfg.out_dir = *opts.out_dir;

  ChainOutput chain;
  try {
    chain = run(cfg.x_init, *cfg.target, cfg.spec);
  } catch (const SamplerError& e) {
    err << "sampler error: " << e.what() << "\n";
    return kSamplerFailure;
  } catch (const OverflowError& e) {
    err << "sampler error: " << e.what() << "\n";
    return kSamplerFailure;
  } catch (const ContractError& e) {
    err << "config error in " << opts.config.string() << ": " << e.what() << "\n";
    return kUsageError;
  }

  try {
    const ChainSummary summary = summarize(chain, cfg.window, cfg.target.get());
    write_run_artifacts(cfg.out_dir, chain, summary, cfg.spec.seed);
    out << render(summary);
    out << "artifacts written to " << cfg.out_dir.string() << "\n";
  } catch (const io::IoError& e) {
    err << "output error: " << e.what() << "\n";
    return kUsageError;
  } catch (const ContractError& e) {
    err << "summary error: " << e.what() << "\n";
    return kUsageError;
  }
  return kOk;
}

int cmd_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err) {
  if (opts.kind != "poisson") {
    err << "unknown simulation kind '" << opts.kind << "' (valid: poisson)\n";
    return kUsageError;
  }
  if (opts.n < 1 || opts.k < 1) {
    err << "--n and --k must be positive\n";
    return kUsageError;
  }
  try {
    const SimulatedGlm sim = simulate_poisson(opts.n, opts.k, opts.seed);
    ensure_dir(opts.out_dir);
    io::write_csv(opts.out_dir / "X.csv", io::numbered("x", opts.k), sim.data.x);
    io::write_csv(opts.out_dir / "y.csv", {"y"}, sim.data.y);
    io::write_csv(opts.out_dir / "beta.csv", {"beta"}, sim.beta);
  } catch (const io::IoError& e) {
    err << "output error: " << e.what() << "\n";
    return kUsageError;
  }
  out << "wrote X.csv, y.csv, beta.csv (N=" << opts.n << ", K=" << opts.k << ") to "
      << opts.out_dir.string() << "\n";
  return kOk;
}

int cmd_predict(const PredictOptions& opts, std::ostream& out, std::ostream& err) {
  const bool is_mean = opts.predictor == "poisson-mean";
  const bool is_draw = opts.predictor == "poisson-draw";
  if (!is_mean && !is_draw) {
    err << "unknown predictor '" << opts.predictor << "' (valid: poisson-mean, poisson-draw)\n";
    return kUsageError;
  }
  try {
    const io::Table samples = io::read_csv(opts.chain_dir / "samples.csv");
    const io::Table xnew = io::read_csv(opts.data);
    if (xnew.values.cols() != samples.values.cols()) {
      err << "data error: " << opts.data.string() << " has " << xnew.values.cols()
          << " columns, chain dimension is " << samples.values.cols() << "\n";
      return kUsageError;
    }
    const auto niter = static_cast<std::size_t>(samples.values.rows());
    SummaryWindow w = SummaryWindow::defaults(niter);
    if (opts.nburnin) w.nburnin = *opts.nburnin;
    if (opts.end) w.end = *opts.end;
    w.thin = opts.thin;
    const auto rows = w.rows(niter);

    Matrix retained(static_cast<Eigen::Index>(rows.size()), samples.values.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      retained.row(static_cast<Eigen::Index>(i)) = samples.values.row(rows[i]);
    }
    Rng rng(opts.seed);
    const Predictor pred =
        is_mean ? poisson_mean_predictor(xnew.values) : poisson_draw_predictor(xnew.values);
    const PredictionMatrix pm = predict(retained, pred, &rng);
    const auto stats = summarize_prediction(pm);

    const fs::path dir = opts.out_dir.value_or(opts.chain_dir);
    ensure_dir(dir);
    io::write_csv(dir / ("prediction_" + opts.predictor + ".csv"),
                  io::numbered("s", pm.values.cols()), pm.values);
    Matrix sm(static_cast<Eigen::Index>(stats.size()), 8);
    for (std::size_t i = 0; i < stats.size(); ++i) {
      const auto& c = stats[i];
      sm.row(static_cast<Eigen::Index>(i)) << static_cast<double>(i + 1), c.mean, c.sd, c.ess,
          c.q025, c.q50, c.q975, c.p_value;
    }
    io::write_csv(dir / ("prediction_" + opts.predictor + "_summary.csv"),
                  {"row", "mean", "sd", "ess", "q025", "q50", "q975", "p_value"}, sm);
    out << "prediction matrix " << pm.values.rows() << " x " << pm.values.cols() << " written to "
        << dir.string() << "\n";
  } catch (const io::IoError& e) {
    err << "io error: " << e.what() << "\n";
    return kUsageError;
  } catch (const ContractError& e) {
    err << "window error: " << e.what() << "\n";
    return kUsageError;
  }
  return kOk;
}

}  // namespace sns::cli
