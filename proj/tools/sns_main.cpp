#include <iostream>

#include "CLI11.hpp"
#include "sns/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Stochastic Newton Sampler: MCMC with locally fitted Gaussian proposals"};
  app.require_subcommand(1);

  sns::cli::RunOptions run_opts;
  std::uint64_t run_seed = 0;
  std::string run_out;
  auto* run = app.add_subcommand("run", "Run a chain from a config file");
  run->add_option("--config", run_opts.config, "INI config path")->required();
  auto* seed_opt = run->add_option("--seed", run_seed, "Override sampler.seed");
  auto* out_opt = run->add_option("--out", run_out, "Override output.dir");

  sns::cli::SimulateOptions sim_opts;
  auto* sim = app.add_subcommand("simulate", "Simulate a Poisson regression dataset");
  sim->add_option("--kind", sim_opts.kind, "Generative model")->default_val("poisson");
  sim->add_option("--n", sim_opts.n, "Number of observations")->required();
  sim->add_option("--k", sim_opts.k, "Number of covariates")->required();
  sim->add_option("--seed", sim_opts.seed, "Random seed")->default_val(0);
  sim->add_option("--out", sim_opts.out_dir, "Output directory")->required();

  sns::cli::PredictOptions pred_opts;
  std::size_t nburnin = 0;
  std::size_t end = 0;
  std::string pred_out;
  auto* pred = app.add_subcommand("predict", "Sample-based prediction from a run's artifacts");
  pred->add_option("--chain", pred_opts.chain_dir, "Run output directory")->required();
  pred->add_option("--predictor", pred_opts.predictor, "poisson-mean or poisson-draw")->required();
  pred->add_option("--data", pred_opts.data, "CSV design matrix for new observations")->required();
  auto* nburnin_opt = pred->add_option("--nburnin", nburnin, "Burn-in iterations (default niter/2)");
  auto* end_opt = pred->add_option("--end", end, "Last iteration (default niter)");
  pred->add_option("--thin", pred_opts.thin, "Thinning interval")->default_val(1);
  pred->add_option("--seed", pred_opts.seed, "Seed for stochastic predictors")->default_val(0);
  auto* pred_out_opt = pred->add_option("--out", pred_out, "Output directory (default: --chain)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return sns::cli::kUsageError;
  }

  if (*run) {
    if (*seed_opt) run_opts.seed = run_seed;
    if (*out_opt) run_opts.out_dir = run_out;
    return sns::cli::cmd_run(run_opts, std::cout, std::cerr);
  }
  if (*sim) return sns::cli::cmd_simulate(sim_opts, std::cout, std::cerr);
  if (*nburnin_opt) pred_opts.nburnin = nburnin;
  if (*end_opt) pred_opts.end = end;
  if (*pred_out_opt) pred_opts.out_dir = pred_out;
  return sns::cli::cmd_predict(pred_opts, std::cout, std::cerr);
}
