#include "hilbert/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "hilbert/errors.hpp"
#include "hilbert/quadrature.hpp"
#include "hilbert/summation.hpp"

namespace hilbert {

namespace {

double weight_exponent(double p) {
  const double q = p / (p - 1.0);
  return snap_exponent(1.0 / q - 1.0 / p);
}

// Every kernel in scope factors as row(m) * col(n) * diag(m+n), which turns
// the double sum into one dot product per row against a shifted diag array.
struct Factorization {
  std::vector<double> row;   // row[m-1]
  std::vector<double> col;   // col[n-1]
  std::vector<double> diag;  // diag[k-2] for k = m+n

  std::span<const double> diag_from(std::size_t m) const {
    return std::span<const double>(diag).subspan(m - 1);
  }
};

Factorization factorize(const KernelSpec& spec, std::size_t rows, std::size_t cols) {
  Factorization f;
  f.row.resize(rows);
  f.col.resize(cols);
  f.diag.resize(rows + cols);
  const double e = spec.variant == KernelVariant::Classical ? 0.0 : weight_exponent(spec.p);
  auto fill_weights = [&](double shift, double exponent) {
    for (std::size_t i = 0; i < rows; ++i) f.row[i] = power_weight(double(i + 1) - shift, -exponent);
    for (std::size_t j = 0; j < cols; ++j) f.col[j] = power_weight(double(j + 1) - shift, exponent);
  };
  switch (spec.variant) {
    case KernelVariant::Classical:
    case KernelVariant::WeightedMain:
      fill_weights(0.0, e);
      for (std::size_t i = 0; i < f.diag.size(); ++i) f.diag[i] = 1.0 / double(i + 1);
      break;
    case KernelVariant::YangShift:
      fill_weights(0.0, e);
      for (std::size_t i = 0; i < f.diag.size(); ++i) f.diag[i] = 1.0 / double(i + 2);
      break;
    case KernelVariant::YangHalfShift:
      fill_weights(0.5, e);
      for (std::size_t i = 0; i < f.diag.size(); ++i) f.diag[i] = 1.0 / double(i + 1);
      break;
    case KernelVariant::AlphaRow: {
      const double x = 1.0 / spec.p;
      for (std::size_t i = 0; i < rows; ++i) f.row[i] = std::pow(double(i + 1), x);
      for (std::size_t j = 0; j < cols; ++j) f.col[j] = std::pow(double(j + 1), -x);
      for (std::size_t i = 0; i < f.diag.size(); ++i) {
        const double k = double(i + 2);
        f.diag[i] = std::exp((spec.alpha - 1.0) * std::log(k) - spec.alpha * std::log(k - 1.0));
      }
      break;
    }
  }
  return f;
}

void require_start_one(const Sequence& s, const char* what) {
  if (s.start_index() != 1) {
    throw Error(ErrorKind::InvalidInput, std::string(what) + ": kernel sequences are indexed from 1");
  }
}

// The alpha-row summand at real n = t.
double alpha_row_term(double m, double t, double x, double alpha) {
  return std::exp(x * (std::log(m) - std::log(t)) + (alpha - 1.0) * std::log(m + t) -
                  alpha * std::log(m + t - 1.0));
}

}  // namespace

std::string_view variant_name(KernelVariant v) noexcept {
  switch (v) {
    case KernelVariant::Classical: return "Classical";
    case KernelVariant::WeightedMain: return "WeightedMain";
    case KernelVariant::YangShift: return "YangShift";
    case KernelVariant::YangHalfShift: return "YangHalfShift";
    case KernelVariant::AlphaRow: return "AlphaRow";
  }
  return "?";
}

KernelVariant parse_variant(std::string_view name) {
  for (auto v : {KernelVariant::Classical, KernelVariant::WeightedMain, KernelVariant::YangShift,
                 KernelVariant::YangHalfShift, KernelVariant::AlphaRow}) {
    if (variant_name(v) == name) return v;
  }
  throw Error(ErrorKind::InvalidInput, "unknown kernel variant '" + std::string(name) + "'");
}

void KernelSpec::validate() const {
  if (variant != KernelVariant::Classical && (!std::isfinite(p) || p <= 1.0)) {
    throw Error(ErrorKind::Domain, "kernel exponent p must lie in (1, inf)");
  }
  if (variant == KernelVariant::AlphaRow && !(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorKind::Domain, "AlphaRow needs 0 <= alpha <= 1");
  }
}

std::string to_string(const KernelSpec& spec) {
  char buf[96];
  std::snprintf(buf, sizeof buf, ",%.17g,%.17g", spec.p, spec.alpha);
  return std::string(variant_name(spec.variant)) + buf;
}

KernelSpec parse_kernel_spec(std::string_view text) {
  const auto c1 = text.find(',');
  const auto c2 = c1 == std::string_view::npos ? c1 : text.find(',', c1 + 1);
  if (c2 == std::string_view::npos) {
    throw Error(ErrorKind::InvalidInput, "kernel spec must be 'variant,p,alpha'");
  }
  KernelSpec spec;
  spec.variant = parse_variant(text.substr(0, c1));
  try {
    spec.p = std::stod(std::string(text.substr(c1 + 1, c2 - c1 - 1)));
    spec.alpha = std::stod(std::string(text.substr(c2 + 1)));
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidInput, "kernel spec has unparsable numbers: " + std::string(text));
  }
  spec.validate();
  return spec;
}

double kernel_value(const KernelSpec& spec, std::int64_t m, std::int64_t n) {
  if (m < 1 || n < 1) throw Error(ErrorKind::Index, "kernel indices start at 1");
  spec.validate();
  const double dm = double(m);
  const double dn = double(n);
  switch (spec.variant) {
    case KernelVariant::Classical:
      return 1.0 / (dm + dn - 1.0);
    case KernelVariant::WeightedMain: {
      const double e = weight_exponent(spec.p);
      const double w = e == 0.0 ? 1.0 : std::exp(e * (std::log(dn) - std::log(dm)));
      return w / (dm + dn - 1.0);
    }
    case KernelVariant::YangShift: {
      const double e = weight_exponent(spec.p);
      const double w = e == 0.0 ? 1.0 : std::exp(e * (std::log(dn) - std::log(dm)));
      return w / (dm + dn);
    }
    case KernelVariant::YangHalfShift: {
      const double e = weight_exponent(spec.p);
      const double w = e == 0.0 ? 1.0 : std::exp(e * (std::log(dn - 0.5) - std::log(dm - 0.5)));
      return w / (dm + dn - 1.0);
    }
    case KernelVariant::AlphaRow:
      return alpha_row_term(dm, dn, 1.0 / spec.p, spec.alpha);
  }
  return 0.0;
}

double bilinear_form(const KernelSpec& spec, const Sequence& a, const Sequence& b) {
  spec.validate();
  require_start_one(a, "bilinear_form");
  require_start_one(b, "bilinear_form");
  validate(a, "bilinear_form(a)", true);
  validate(b, "bilinear_form(b)", true);
  if (a.empty() || b.empty()) return 0.0;

  const auto f = factorize(spec, a.size(), b.size());
  std::vector<double> bw(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) bw[j] = b.values()[j] * f.col[j];

  CompensatedSum total;
  const auto av = a.values();
  for (std::size_t i = 0; i < av.size(); ++i) {
    if (av[i] == 0.0) continue;
    total.add(av[i] * f.row[i] * blocked_dot(bw, f.diag_from(i + 1)));
  }
  return total.value();
}

Sequence apply_operator(const KernelSpec& spec, const Sequence& a, std::int64_t n_max) {
  spec.validate();
  if (n_max < 1) throw Error(ErrorKind::Parameter, "apply_operator needs n_max >= 1");
  require_start_one(a, "apply_operator");
  validate(a, "apply_operator", true);
  const auto cols = static_cast<std::size_t>(n_max);
  std::vector<double> out(cols, 0.0);
  if (a.empty()) return Sequence(1, std::move(out));

  const auto f = factorize(spec, a.size(), cols);
  std::vector<double> aw(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) aw[i] = a.values()[i] * f.row[i];
  for (std::size_t j = 0; j < cols; ++j) out[j] = f.col[j] * blocked_dot(aw, f.diag_from(j + 1));
  return Sequence(1, std::move(out));
}

Sequence apply_transpose(const KernelSpec& spec, const Sequence& b, std::int64_t m_max) {
  spec.validate();
  if (m_max < 1) throw Error(ErrorKind::Parameter, "apply_transpose needs m_max >= 1");
  require_start_one(b, "apply_transpose");
  validate(b, "apply_transpose", true);
  const auto rows = static_cast<std::size_t>(m_max);
  std::vector<double> out(rows, 0.0);
  if (b.empty()) return Sequence(1, std::move(out));

  const auto f = factorize(spec, rows, b.size());
  std::vector<double> bw(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) bw[j] = b.values()[j] * f.col[j];
  for (std::size_t i = 0; i < rows; ++i) out[i] = f.row[i] * blocked_dot(bw, f.diag_from(i + 1));
  return Sequence(1, std::move(out));
}

BoundedValue row_sum_alpha(std::int64_t m, double p, double alpha, double tol) {
  if (m < 1) throw Error(ErrorKind::Index, "row index m must be >= 1");
  KernelSpec::alpha_row(p, alpha).validate();
  if (!(tol > 0.0)) throw Error(ErrorKind::Parameter, "row_sum_alpha needs tol > 0");

  const double dm = double(m);
  const double x = 1.0 / p;
  const Integrand f = [&](double t) { return alpha_row_term(dm, t, x, alpha); };
  const double qtol = tol / 8.0;

  // Smallest power-of-two multiple of the start point whose bracket width fits.
  std::int64_t N = std::max<std::int64_t>(2 * m, 64);
  QuadratureResult half{};
  double width = 0.0;
  for (;;) {
    half = adaptive_integrate(f, double(N), double(N) + 0.5, qtol);
    width = f(double(N)) / 2.0 - half.value;
    if (width / 2.0 + half.error_estimate <= tol / 2.0) break;
    if (N > (std::int64_t{1} << 34)) {
      throw Error(ErrorKind::Parameter, "row_sum_alpha: tolerance too small for direct summation");
    }
    N *= 2;
  }

  CompensatedSum head;
  for (std::int64_t n = 1; n <= N; ++n) head.add(f(double(n)));

  // int_N^inf f under t = N/v; f ~ t^(-1-1/p) leaves v^(1/p-1) at v = 0.
  const double dN = double(N);
  const Integrand tail_r = [&](double v) {
    const double t = dN / v;
    return f(t) * dN * std::pow(v, -1.0 - x);
  };
  const auto tail = integrate_algebraic(tail_r, 0.0, 1.0, {1.0 - x, 0.0}, qtol);

  const double lower = tail.value - f(dN) / 2.0;
  const double upper = tail.value - half.value;
  const double s = head.value();
  BoundedValue out;
  out.value = s + 0.5 * (lower + upper);
  out.error_bound = 0.5 * (upper - lower) + tail.error_estimate + half.error_estimate +
                    4.0 * std::numeric_limits<double>::epsilon() * std::fabs(out.value);
  out.terms = N;
  return out;
}

}  // namespace hilbert
