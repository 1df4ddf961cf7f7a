#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "cli.hpp"
#include "hilbert/errors.hpp"

namespace cli = hilbert::cli;

namespace {

void add_common(CLI::App* sub, cli::RunConfig& cfg, std::optional<double>& tol) {
  sub->add_option("--p", cfg.p, "exponent p in (1, inf)")->capture_default_str();
  sub->add_option("--tol", tol, "tolerance (command-specific default)");
  sub->add_option("--seed", cfg.seed, "seed of all random inputs")->capture_default_str();
  sub->add_option("--trials", cfg.trials, "random pairs")->capture_default_str();
  sub->add_option("--max-support", cfg.max_support, "largest support of a random sequence")
      ->capture_default_str();
  sub->add_option("--out", cfg.output_path, "CSV output file (default stdout)");
  sub->add_option("--threads", cfg.threads, "worker threads (0: HF_THREADS or all cores)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted Hilbert-type inequalities: verification sweeps and norm estimates"};
  app.require_subcommand(1);
  cli::RunConfig cfg;
  std::optional<double> tol;
  std::optional<int> x_points;
  std::optional<std::int64_t> n_max;

  auto* verify = app.add_subcommand("verify-inequality", "random pairs against pi/sin(pi/p)");
  auto* proof = app.add_subcommand("proof-check", "numerical checks of the proof chain");
  auto* norms = app.add_subcommand("norm-bounds", "epsilon sweep and ascent ladder");
  auto* kp = app.add_subcommand("kp-apply", "apply H to a Taylor coefficient file");
  auto* beta = app.add_subcommand("beta-table", "beta integral against pi/sin(pi x)");
  for (auto* sub : {verify, proof, norms, kp, beta}) add_common(sub, cfg, tol);

  proof->add_option("--x-points", x_points, "x grid size of the inequality sweep");
  proof->add_flag("--scalar-only", cfg.scalar_only, "only the four scalar constants");
  norms->add_option("--eps", cfg.eps_grid, "epsilon grid")->capture_default_str();
  norms->add_option("--ladder", cfg.ladder, "ascent truncation sizes")->capture_default_str();
  norms->add_option("--trace", cfg.trace_path, "write ascent objective traces here");
  kp->add_option("--in", cfg.input_path, "sequence file (start_index=0)")->required();
  kp->add_option("--n-max", n_max, "last image coefficient");
  beta->add_option("--x-points", x_points, "number of x = k/(n+1) points");

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.command = cli::parse_command(app.get_subcommands().front()->get_name());
    cfg.tol = tol;
    cfg.x_grid_size = x_points;
    cfg.n_max = n_max;
    const auto out = cli::run(cfg);
    if (cfg.output_path.empty()) {
      std::cout << out.csv;
    } else {
      std::ofstream f(cfg.output_path, std::ios::binary);
      f << out.csv;
      if (!f) throw hilbert::Error(hilbert::ErrorKind::Io, "cannot write " + cfg.output_path);
    }
    for (const auto& line : out.diagnostics) std::cerr << line << '\n';
    return out.exit_status;
  } catch (const hilbert::Error& e) {
    std::cerr << "error (" << hilbert::to_string(e.kind()) << "): " << e.what() << '\n';
    return 2;
  }
}
