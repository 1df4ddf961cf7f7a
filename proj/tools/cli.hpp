#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hilbert/norm_estimation.hpp"

namespace hilbert::cli {

enum class Command { VerifyInequality, ProofCheck, NormBounds, KpApply, BetaTable };

std::string_view command_name(Command c) noexcept;
Command parse_command(std::string_view name);

/// Everything a run depends on. Unset optionals take per-command defaults.
struct RunConfig {
  Command command = Command::VerifyInequality;
  double p = 2.0;
  std::vector<double> eps_grid = {0.5, 0.1, 0.05, 0.01};
  std::optional<int> x_grid_size;   // proof-check: 300, beta-table: 19
  int trials = 1000;
  std::int64_t max_support = 2000;
  std::uint64_t seed = 20240601;
  std::optional<double> tol;
  std::string output_path;          // empty: stdout

  // norm-bounds
  std::vector<std::int64_t> ladder = {16, 64, 256, 1024};
  std::string trace_path;
  // proof-check
  bool scalar_only = false;
  // kp-apply
  std::string input_path;
  std::optional<std::int64_t> n_max;

  int threads = 0;  // 0: HF_THREADS, else hardware
};

struct CommandOutput {
  int exit_status = 0;
  std::string csv;
  std::vector<std::string> diagnostics;  // one line per failed row
};

/// Trial `trial` of `seed`: both supports uniform on [1, max_support];
/// entries u^(-1/(2r)) * Bernoulli(0.7) with u uniform on (0,1] and r = p for
/// a, q for b; on half the trials (chosen by the stream) additionally scaled
/// by m^(-1/r); then up to three random entries zeroed. A pair that came out
/// all zero gets its first entry set to 1.
SequencePair random_pair(std::uint64_t seed, std::uint64_t trial, double p, std::int64_t max_support);

CommandOutput cmd_verify_inequality(const RunConfig& cfg);
CommandOutput cmd_proof_check(const RunConfig& cfg);
CommandOutput cmd_norm_bounds(const RunConfig& cfg);
CommandOutput cmd_kp_apply(const RunConfig& cfg);
CommandOutput cmd_beta_table(const RunConfig& cfg);

CommandOutput run(const RunConfig& cfg);

}  // namespace hilbert::cli
