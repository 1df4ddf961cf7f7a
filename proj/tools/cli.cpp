#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#include "hilbert/errors.hpp"
#include "hilbert/kernels.hpp"
#include "hilbert/kp_space.hpp"
#include "hilbert/parallel.hpp"
#include "hilbert/proof_verifier.hpp"
#include "hilbert/quadrature.hpp"
#include "hilbert/random.hpp"

namespace hilbert::cli {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

const char* verdict(bool ok) { return ok ? "true" : "false"; }

std::string config_comment(const RunConfig& cfg) {
  return "# command=" + std::string(command_name(cfg.command)) + " p=" + num(cfg.p) +
         " seed=" + std::to_string(cfg.seed) + "\n";
}

Sequence random_side(SplitMix64& rng, double r, std::int64_t max_support, bool shaped) {
  const auto len = static_cast<std::size_t>(1 + rng.below(std::uint64_t(max_support)));
  std::vector<double> v(len);
  for (std::size_t i = 0; i < len; ++i) {
    const double u = rng.uniform_open_zero();
    const bool keep = rng.bernoulli(0.7);
    double x = keep ? std::pow(u, -1.0 / (2.0 * r)) : 0.0;
    if (shaped) x *= std::pow(double(i + 1), -1.0 / r);
    v[i] = x;
  }
  const auto zeros = rng.below(4);
  for (std::uint64_t k = 0; k < zeros; ++k) v[rng.below(len)] = 0.0;
  if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) v[0] = 1.0;
  return Sequence(1, std::move(v));
}

void emit_trace(const std::string& path, const std::string& body) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::binary);
  out << body;
  if (!out) throw Error(ErrorKind::Io, "cannot write trace file " + path);
}

}  // namespace

std::string_view command_name(Command c) noexcept {
  switch (c) {
    case Command::VerifyInequality: return "verify-inequality";
    case Command::ProofCheck: return "proof-check";
    case Command::NormBounds: return "norm-bounds";
    case Command::KpApply: return "kp-apply";
    case Command::BetaTable: return "beta-table";
  }
  return "?";
}

Command parse_command(std::string_view name) {
  for (auto c : {Command::VerifyInequality, Command::ProofCheck, Command::NormBounds, Command::KpApply,
                 Command::BetaTable}) {
    if (command_name(c) == name) return c;
  }
  throw Error(ErrorKind::InvalidInput, "unknown command '" + std::string(name) + "'");
}

SequencePair random_pair(std::uint64_t seed, std::uint64_t trial, double p, std::int64_t max_support) {
  if (max_support < 1) throw Error(ErrorKind::Parameter, "max_support must be >= 1");
  const double q = conjugate(p).q;
  auto rng = SplitMix64::stream(seed, trial);
  const bool shaped = rng.bernoulli(0.5);
  Sequence a = random_side(rng, p, max_support, shaped);
  Sequence b = random_side(rng, q, max_support, shaped);
  return {std::move(a), std::move(b)};
}

CommandOutput cmd_verify_inequality(const RunConfig& cfg) {
  if (cfg.trials < 1) throw Error(ErrorKind::Parameter, "trials must be >= 1");
  const double p = cfg.p;
  const double q = conjugate(p).q;
  const double bound = theoretical_norm(p);
  const double tol = cfg.tol.value_or(1e-12);
  const std::vector<KernelSpec> kernels = {KernelSpec::classical(), KernelSpec::weighted_main(p),
                                           KernelSpec::yang_shift(p), KernelSpec::yang_half_shift(p)};

  struct Row {
    std::size_t support_a, support_b;
    double norm_a, norm_b;
    std::vector<double> forms;
  };
  auto rows = parallel_map(std::size_t(cfg.trials), worker_count(cfg.threads), [&](std::size_t t) {
    const auto pair = random_pair(cfg.seed, t, p, cfg.max_support);
    Row r{pair.a.size(), pair.b.size(), lp_norm(pair.a, p), lp_norm(pair.b, q), {}};
    for (const auto& k : kernels) r.forms.push_back(bilinear_form(k, pair.a, pair.b));
    return r;
  });

  CommandOutput out;
  std::ostringstream csv;
  csv << config_comment(cfg);
  csv << "trial,seed,kernel,support_a,support_b,form,norm_a,norm_b,ratio,bound,passed\n";
  for (std::size_t t = 0; t < rows.size(); ++t) {
    const auto& r = rows[t];
    for (std::size_t k = 0; k < kernels.size(); ++k) {
      const double ratio = r.forms[k] / (r.norm_a * r.norm_b);
      const bool ok = ratio <= bound + tol;
      csv << t << ',' << cfg.seed << ',' << quoted(to_string(kernels[k])) << ',' << r.support_a << ','
          << r.support_b << ',' << num(r.forms[k]) << ',' << num(r.norm_a) << ',' << num(r.norm_b) << ','
          << num(ratio) << ',' << num(bound) << ',' << verdict(ok) << '\n';
      if (!ok) {
        out.exit_status = 1;
        out.diagnostics.push_back("violation: seed=" + std::to_string(cfg.seed) + " trial=" +
                                  std::to_string(t) + " kernel=" + to_string(kernels[k]) +
                                  " ratio=" + num(ratio));
      }
    }
  }
  out.csv = csv.str();
  return out;
}

CommandOutput cmd_proof_check(const RunConfig& cfg) {
  std::vector<CheckReport> reports;
  if (cfg.scalar_only) {
    reports = check_scalar_constants();
  } else {
    SweepConfig sweep;
    sweep.x_points = cfg.x_grid_size.value_or(sweep.x_points);
    sweep.tol = cfg.tol.value_or(sweep.tol);
    sweep.threads = cfg.threads;
    reports = run_proof_sweep(sweep);
  }
  CommandOutput out;
  std::string csv = config_comment(cfg) + reports_csv_header();
  for (const auto& r : reports) {
    csv += to_csv_row(r);
    if (!r.passed) {
      out.exit_status = 1;
      out.diagnostics.push_back("failed: " + r.name + " " + r.parameters);
    }
  }
  out.csv = std::move(csv);
  return out;
}

CommandOutput cmd_norm_bounds(const RunConfig& cfg) {
  const double p = cfg.p;
  const double theory = theoretical_norm(p);
  const double tol = cfg.tol.value_or(1e-9);
  std::vector<double> eps = cfg.eps_grid;
  std::sort(eps.begin(), eps.end(), std::greater<>());
  eps.erase(std::unique(eps.begin(), eps.end()), eps.end());
  std::vector<std::int64_t> ladder = cfg.ladder;
  std::sort(ladder.begin(), ladder.end());
  ladder.erase(std::unique(ladder.begin(), ladder.end()), ladder.end());

  struct Job {
    std::string method;
    double eps = 0.0;
    std::int64_t size = 0;
  };
  std::vector<Job> jobs;
  for (double e : eps) jobs.push_back({"epsilon-family", e, kDefaultFamilyTruncation});
  for (double e : eps) jobs.push_back({"kp-epsilon-family", e, kDefaultFamilyTruncation});
  for (auto n : ladder) jobs.push_back({"ascent", 0.0, n});

  const KernelSpec kernel = KernelSpec::weighted_main(p);
  struct Result {
    double value = 0.0;
    int iterations = 0;
    std::string error;
    std::vector<double> trace;
  };
  auto results = parallel_map(jobs.size(), worker_count(cfg.threads), [&](std::size_t i) {
    const auto& j = jobs[i];
    Result r;
    try {
      if (j.method == "ascent") {
        AscentOptions opt;
        const auto est = ascent_lower_bound(kernel, p, j.size, opt);
        r.value = est.lower_bound;
        r.iterations = est.iterations;
        r.trace = est.trace;
      } else if (j.method == "epsilon-family") {
        r.value = epsilon_family_ratio(j.eps, p, j.size).ratio;
      } else {
        r.value = kp_epsilon_family_ratio(j.eps, p, j.size).ratio;
      }
    } catch (const Error& e) {
      r.error = std::string(to_string(e.kind()));
    }
    return r;
  });

  CommandOutput out;
  std::ostringstream csv;
  std::ostringstream trace;
  csv << config_comment(cfg);
  csv << "method,kernel,eps,size,iterations,lower_bound,theoretical,gap,status,passed\n";
  trace << "size,step,objective\n";
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto& j = jobs[i];
    const auto& r = results[i];
    bool ok = r.error.empty() && r.value <= theory + tol;
    std::string status = r.error.empty() ? "ok" : "error:" + r.error;
    // Each series must not decrease along its configured order.
    if (ok && i > 0 && jobs[i - 1].method == j.method && results[i - 1].error.empty() &&
        r.value < results[i - 1].value - tol) {
      ok = false;
      status = "not-monotone";
    }
    csv << j.method << ',' << quoted(to_string(kernel)) << ',' << num(j.eps) << ',' << j.size << ','
        << r.iterations << ',' << num(r.value) << ',' << num(theory) << ',' << num(theory - r.value) << ','
        << status << ',' << verdict(ok) << '\n';
    for (std::size_t s = 0; s < r.trace.size(); ++s) trace << j.size << ',' << s << ',' << num(r.trace[s]) << '\n';
    if (!ok) {
      out.exit_status = 1;
      out.diagnostics.push_back("failed: " + j.method + " eps=" + num(j.eps) + " size=" +
                                std::to_string(j.size) + " " + status);
    }
  }
  emit_trace(cfg.trace_path, trace.str());
  out.csv = csv.str();
  return out;
}

CommandOutput cmd_kp_apply(const RunConfig& cfg) {
  if (cfg.input_path.empty()) throw Error(ErrorKind::InvalidInput, "kp-apply needs an input sequence file");
  const double p = cfg.p;
  const TaylorFunction f(load_sequence(cfg.input_path));
  const std::int64_t n_max =
      cfg.n_max.value_or(std::max<std::int64_t>(64, 4 * static_cast<std::int64_t>(f.coeffs().size())));
  const auto image = hilbert_apply(f, n_max);
  const double norm_f = kp_norm(f, p);
  const double norm_h = kp_norm(image, p);
  const double bound = theoretical_norm(p);
  const double tol = cfg.tol.value_or(1e-9);

  CommandOutput out;
  std::ostringstream csv;
  csv << config_comment(cfg);
  csv << "kind,index,value\n";
  for (std::int64_t n = 0; n <= n_max; ++n) csv << "coefficient," << n << ',' << num(image.coeffs()[n]) << '\n';
  csv << "norm_input,," << num(norm_f) << '\n';
  csv << "norm_image,," << num(norm_h) << '\n';
  if (norm_f > 0.0) {
    const double ratio = norm_h / norm_f;
    csv << "ratio,," << num(ratio) << '\n';
    csv << "bound,," << num(bound) << '\n';
    if (ratio > bound + tol) {
      out.exit_status = 1;
      out.diagnostics.push_back("failed: ratio " + num(ratio) + " exceeds " + num(bound));
    }
  }
  out.csv = csv.str();
  return out;
}

CommandOutput cmd_beta_table(const RunConfig& cfg) {
  const int n = cfg.x_grid_size.value_or(19);
  if (n < 1) throw Error(ErrorKind::Parameter, "beta-table needs at least one x point");
  const double tol = cfg.tol.value_or(1e-10);
  CommandOutput out;
  std::ostringstream csv;
  csv << config_comment(cfg);
  csv << "x,beta_integral,closed_form,abs_err,error_estimate,passed\n";
  for (int k = 1; k <= n; ++k) {
    const double x = double(k) / double(n + 1);
    const auto b = beta_integral(x, 0.1 * tol);
    const double exact = std::numbers::pi / std::sin(std::numbers::pi * x);
    const double err = std::fabs(b.value - exact);
    const bool ok = err <= tol;
    csv << num(x) << ',' << num(b.value) << ',' << num(exact) << ',' << num(err) << ','
        << num(b.error_estimate) << ',' << verdict(ok) << '\n';
    if (!ok) {
      out.exit_status = 1;
      out.diagnostics.push_back("failed: beta_integral(" + num(x) + ") off by " + num(err));
    }
  }
  out.csv = csv.str();
  return out;
}

CommandOutput run(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::VerifyInequality: return cmd_verify_inequality(cfg);
    case Command::ProofCheck: return cmd_proof_check(cfg);
    case Command::NormBounds: return cmd_norm_bounds(cfg);
    case Command::KpApply: return cmd_kp_apply(cfg);
    case Command::BetaTable: return cmd_beta_table(cfg);
  }
  throw Error(ErrorKind::InvalidInput, "unknown command");
}

}  // namespace hilbert::cli
