#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "hilbert/errors.hpp"
#include "hilbert/kernels.hpp"

using namespace hilbert;
using namespace hilbert::cli;

namespace {

std::vector<std::vector<std::string>> rows(const std::string& csv) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (char c : line) {
      if (c == '"') {
        quoted = !quoted;
      } else if (c == ',' && !quoted) {
        cells.push_back(cell);
        cell.clear();
      } else {
        cell += c;
      }
    }
    cells.push_back(cell);
    out.push_back(cells);
  }
  return out;
}

}  // namespace

TEST_CASE("command names round trip") {
  for (auto c : {Command::VerifyInequality, Command::ProofCheck, Command::NormBounds, Command::KpApply,
                 Command::BetaTable}) {
    CHECK(parse_command(command_name(c)) == c);
  }
  CHECK_THROWS_AS(parse_command("serve"), Error);
}

TEST_CASE("random pairs are reproducible and well formed") {
  const auto a = random_pair(7, 3, 1.5, 50);
  const auto b = random_pair(7, 3, 1.5, 50);
  CHECK(a.a == b.a);
  CHECK(a.b == b.b);
  CHECK_FALSE(random_pair(7, 4, 1.5, 50).a == a.a);
  for (std::uint64_t t = 0; t < 200; ++t) {
    const auto r = random_pair(1, t, 3.0, 20);
    CHECK(r.a.size() >= 1);
    CHECK(r.a.size() <= 20);
    CHECK(r.a.is_nonnegative());
    CHECK_FALSE(r.a.is_zero());
    CHECK_FALSE(r.b.is_zero());
  }
  CHECK_THROWS_AS(random_pair(1, 0, 2.0, 0), Error);
}

TEST_CASE("a single spike pair has ratio one") {
  for (double p : {1.1, 2.0, 7.0}) {
    CHECK(bilinear_form(KernelSpec::weighted_main(p), Sequence::spike(1, 1), Sequence::spike(1, 1)) == 1.0);
  }
}

TEST_CASE("verify-inequality passes and is deterministic") {
  RunConfig cfg;
  cfg.trials = 40;
  cfg.max_support = 300;
  for (double p : {2.0, 1.1}) {
    cfg.p = p;
    const auto first = run(cfg);
    CHECK(first.exit_status == 0);
    CHECK(first.diagnostics.empty());
    const auto table = rows(first.csv);
    CHECK(table.size() == 1 + 40 * 4);
    for (std::size_t i = 1; i < table.size(); ++i) CHECK(table[i].back() == "true");
    CHECK(run(cfg).csv == first.csv);
  }
  cfg.seed += 1;
  cfg.p = 2.0;
  const auto other = run(cfg);
  cfg.seed -= 1;
  CHECK(other.csv != run(cfg).csv);
  cfg.trials = 0;
  CHECK_THROWS_AS(run(cfg), Error);
}

TEST_CASE("verify-inequality flags violations") {
  RunConfig cfg;
  cfg.trials = 3;
  cfg.max_support = 50;
  cfg.tol = -10.0;  // every ratio now exceeds bound + tol
  const auto out = run(cfg);
  CHECK(out.exit_status != 0);
  REQUIRE_FALSE(out.diagnostics.empty());
  CHECK(out.diagnostics.front().find("seed=") != std::string::npos);
  CHECK(out.diagnostics.front().find("trial=0") != std::string::npos);
}

TEST_CASE("proof-check scalar constants") {
  RunConfig cfg;
  cfg.command = Command::ProofCheck;
  cfg.scalar_only = true;
  const auto out = run(cfg);
  CHECK(out.exit_status == 0);
  CHECK(rows(out.csv).size() == 5);
}

TEST_CASE("norm-bounds columns") {
  RunConfig cfg;
  cfg.command = Command::NormBounds;
  cfg.p = 2.0;
  cfg.ladder = {16, 64, 256};
  cfg.eps_grid = {0.01, 0.5, 0.1, 0.05};
  const auto out = run(cfg);
  CHECK(out.exit_status == 0);
  const auto table = rows(out.csv);
  REQUIRE(table.size() == 1 + 4 + 4 + 3);
  double previous = 0.0;
  for (std::size_t i = 1; i <= 4; ++i) {
    CHECK(table[i][0] == "epsilon-family");
    const double v = std::stod(table[i][5]);
    CHECK(v > previous);
    CHECK(v < std::stod(table[i][6]));
    previous = v;
  }

  cfg.p = 3.0;
  cfg.ladder = {16};
  cfg.eps_grid = {0.1};
  const auto three = rows(run(cfg).csv);
  cfg.p = 1.5;
  const auto three_halves = rows(run(cfg).csv);
  CHECK(three[1][6] == three_halves[1][6]);
  CHECK(std::stod(three[1][6]) == doctest::Approx(2.0 * 3.14159265358979 / std::sqrt(3.0)));
}

TEST_CASE("norm-bounds surfaces truncation errors per row") {
  RunConfig cfg;
  cfg.command = Command::NormBounds;
  cfg.eps_grid = {1.5};
  cfg.ladder = {8};
  const auto out = run(cfg);
  CHECK(out.exit_status != 0);
  const auto table = rows(out.csv);
  CHECK(table[1][9] == "false");
  CHECK(table[1][8].rfind("error:", 0) == 0);
  CHECK(table.back()[9] == "true");
}

TEST_CASE("kp-apply reads a sequence file") {
  const auto path = std::filesystem::temp_directory_path() / "hilbert_kp_apply_test.csv";
  save_sequence(path, Sequence(0, {1.0, 0.5, 0.25}));
  RunConfig cfg;
  cfg.command = Command::KpApply;
  cfg.input_path = path.string();
  cfg.n_max = 4;
  const auto out = run(cfg);
  CHECK(out.exit_status == 0);
  const auto table = rows(out.csv);
  REQUIRE(table.size() == 1 + 5 + 4);
  CHECK(table[1][0] == "coefficient");
  CHECK(std::stod(table[1][2]) == doctest::Approx(1.0 + 0.25 + 0.25 / 3.0).epsilon(1e-15));
  CHECK(table[6][0] == "norm_input");
  CHECK(table[8][0] == "ratio");
  std::filesystem::remove(path);

  cfg.input_path = (std::filesystem::temp_directory_path() / "hilbert_missing_file.csv").string();
  CHECK_THROWS_AS(run(cfg), Error);
}

TEST_CASE("beta-table") {
  RunConfig cfg;
  cfg.command = Command::BetaTable;
  const auto out = run(cfg);
  CHECK(out.exit_status == 0);
  const auto table = rows(out.csv);
  REQUIRE(table.size() == 20);
  CHECK(table[0] == std::vector<std::string>{"x", "beta_integral", "closed_form", "abs_err", "error_estimate", "passed"});
  CHECK(std::stod(table[1][0]) == 0.05);
}
