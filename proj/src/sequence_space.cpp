#include "hilbert/sequence_space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "hilbert/errors.hpp"
#include "hilbert/summation.hpp"

namespace hilbert {

namespace {

void check_start(int start_index) {
  if (start_index != 0 && start_index != 1) {
    throw Error(ErrorKind::InvalidInput,
                "sequence start_index must be 0 or 1, got " + std::to_string(start_index));
  }
}

void check_exponent(double p) {
  if (!std::isfinite(p) || p <= 1.0) {
    throw Error(ErrorKind::Domain, "exponent p must lie in (1, inf), got " + std::to_string(p));
  }
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

}  // namespace

Sequence::Sequence(int start_index, std::vector<double> values)
    : start_(start_index), values_(std::move(values)) {
  check_start(start_index);
}

Sequence Sequence::zeros(int start_index, std::size_t length) {
  return Sequence(start_index, std::vector<double>(length, 0.0));
}

Sequence Sequence::spike(int start_index, std::int64_t index) {
  if (index < start_index) {
    throw Error(ErrorKind::Index, "spike index precedes start_index");
  }
  std::vector<double> v(static_cast<std::size_t>(index - start_index) + 1, 0.0);
  v.back() = 1.0;
  return Sequence(start_index, std::move(v));
}

double Sequence::operator[](std::int64_t index) const noexcept {
  const std::int64_t k = index - start_;
  if (k < 0 || k >= static_cast<std::int64_t>(values_.size())) return 0.0;
  return values_[static_cast<std::size_t>(k)];
}

bool Sequence::is_zero() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double x) { return x == 0.0; });
}

bool Sequence::is_nonnegative() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double x) { return x >= 0.0; });
}

ExponentPair conjugate(double p) {
  check_exponent(p);
  return ExponentPair{p, p / (p - 1.0)};
}

double snap_exponent(double e) noexcept { return std::fabs(e) < kExponentSnap ? 0.0 : e; }

double power_weight(double x, double e) noexcept {
  e = snap_exponent(e);
  if (e == 0.0) return 1.0;
  return std::exp(e * std::log(x));
}

void validate(const Sequence& s, const char* what, bool require_nonnegative) {
  const auto v = s.values();
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!std::isfinite(v[k])) {
      throw Error(ErrorKind::InvalidInput, std::string(what) + ": non-finite entry at index " +
                                               std::to_string(s.start_index() + static_cast<long>(k)));
    }
    if (require_nonnegative && v[k] < 0.0) {
      throw Error(ErrorKind::InvalidInput, std::string(what) + ": negative entry at index " +
                                               std::to_string(s.start_index() + static_cast<long>(k)));
    }
  }
}

double lp_norm(const Sequence& s, double p) {
  if (!std::isfinite(p) || p < 1.0) {
    throw Error(ErrorKind::Domain, "lp_norm needs p >= 1, got " + std::to_string(p));
  }
  validate(s, "lp_norm", false);
  const double scale = max_abs(s.values());
  if (scale == 0.0) return 0.0;
  CompensatedSum acc;
  if (p == 2.0) {
    for (double x : s.values()) {
      const double r = x / scale;
      acc.add(r * r);
    }
    return scale * std::sqrt(acc.value());
  }
  for (double x : s.values()) {
    if (x != 0.0) acc.add(std::pow(std::fabs(x) / scale, p));
  }
  return scale * std::pow(acc.value(), 1.0 / p);
}

Sequence dual_align(const Sequence& c, double p) {
  check_exponent(p);
  validate(c, "dual_align", true);
  const double norm = lp_norm(c, p);
  if (norm == 0.0) {
    throw Error(ErrorKind::Degenerate, "dual_align of the zero sequence is undefined");
  }
  std::vector<double> b(c.size());
  const auto v = c.values();
  for (std::size_t k = 0; k < v.size(); ++k) {
    b[k] = v[k] == 0.0 ? 0.0 : std::pow(v[k] / norm, p - 1.0);
  }
  return Sequence(c.start_index(), std::move(b));
}

Sequence kp_to_lp_isometry(const Sequence& a, double p) {
  check_exponent(p);
  if (a.start_index() != 0) {
    throw Error(ErrorKind::InvalidInput, "kp_to_lp_isometry expects Taylor coefficients (start 0)");
  }
  validate(a, "kp_to_lp_isometry", false);
  const double e = (p - 2.0) / p;
  std::vector<double> out(a.size());
  const auto v = a.values();
  for (std::size_t m = 0; m < v.size(); ++m) {
    out[m] = v[m] * power_weight(static_cast<double>(m + 1), e);
  }
  return Sequence(1, std::move(out));
}

Sequence lp_to_kp_isometry(const Sequence& A, double p) {
  check_exponent(p);
  if (A.start_index() != 1) {
    throw Error(ErrorKind::InvalidInput, "lp_to_kp_isometry expects an l^p sequence (start 1)");
  }
  validate(A, "lp_to_kp_isometry", false);
  const double e = -(p - 2.0) / p;
  std::vector<double> out(A.size());
  const auto v = A.values();
  for (std::size_t m = 0; m < v.size(); ++m) {
    out[m] = v[m] * power_weight(static_cast<double>(m + 1), e);
  }
  return Sequence(0, std::move(out));
}

double power_tail_bound(std::int64_t M, double s) {
  if (M < 1) throw Error(ErrorKind::Parameter, "power_tail_bound needs M >= 1");
  if (!(s > 1.0)) {
    throw Error(ErrorKind::DivergentTail, "sum of m^-s diverges for s <= 1");
  }
  return std::exp((1.0 - s) * std::log(static_cast<double>(M))) / (s - 1.0);
}

Sequence read_sequence(std::istream& in) {
  std::string line;
  int start = -1;
  std::vector<std::pair<std::int64_t, double>> entries;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find("start_index=");
      if (pos != std::string::npos) {
        const std::string rest = line.substr(pos + 12);
        if (rest == "0" || rest == "1") {
          start = rest[0] - '0';
        } else {
          throw Error(ErrorKind::InvalidInput, "bad start_index header: " + line);
        }
      }
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw Error(ErrorKind::InvalidInput, "line " + std::to_string(lineno) + ": expected index,value");
    }
    std::int64_t index = 0;
    double value = 0.0;
    try {
      std::size_t used = 0;
      index = std::stoll(line.substr(0, comma), &used);
      const std::string vs = line.substr(comma + 1);
      value = std::stod(vs, &used);
      if (used != vs.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidInput, "line " + std::to_string(lineno) + ": cannot parse '" + line + "'");
    }
    entries.emplace_back(index, value);
  }
  if (start < 0) throw Error(ErrorKind::InvalidInput, "missing '# start_index=<0|1>' header");

  std::int64_t last = start - 1;
  for (const auto& [index, value] : entries) {
    if (index < start) {
      throw Error(ErrorKind::Index, "entry index " + std::to_string(index) + " precedes start_index");
    }
    last = std::max(last, index);
  }
  std::vector<double> values(static_cast<std::size_t>(last - start + 1), 0.0);
  std::vector<bool> seen(values.size(), false);
  for (const auto& [index, value] : entries) {
    const auto k = static_cast<std::size_t>(index - start);
    if (seen[k]) throw Error(ErrorKind::InvalidInput, "duplicate index " + std::to_string(index));
    seen[k] = true;
    values[k] = value;
  }
  Sequence s(start, std::move(values));
  validate(s, "read_sequence", false);
  return s;
}

void write_sequence(std::ostream& out, const Sequence& s) {
  out << "# start_index=" << s.start_index() << '\n';
  char buf[64];
  const auto v = s.values();
  for (std::size_t k = 0; k < v.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%lld,%.17g\n",
                  static_cast<long long>(s.start_index() + static_cast<std::int64_t>(k)), v[k]);
    out << buf;
  }
}

Sequence load_sequence(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  return read_sequence(in);
}

void save_sequence(const std::filesystem::path& path, const Sequence& s) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  write_sequence(out, s);
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

}  // namespace hilbert
