#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace hilbert {

/// Finitely supported real sequence. Entry k of `values()` sits at absolute
/// index `start_index() + k`; everything past the stored values is zero.
/// Sequences in the l^p world start at 1, Taylor coefficients start at 0.
class Sequence {
 public:
  Sequence() = default;
  Sequence(int start_index, std::vector<double> values);

  static Sequence zeros(int start_index, std::size_t length);
  /// The unit vector with a single 1 at absolute `index`.
  static Sequence spike(int start_index, std::int64_t index);

  int start_index() const noexcept { return start_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  /// Value at absolute index; zero outside the stored range.
  double operator[](std::int64_t index) const noexcept;
  /// Absolute index of the last stored entry (start_index - 1 when empty).
  std::int64_t last_index() const noexcept {
    return start_ + static_cast<std::int64_t>(values_.size()) - 1;
  }

  bool is_zero() const noexcept;
  bool is_nonnegative() const noexcept;

  std::vector<double>& mutable_values() noexcept { return values_; }

  friend bool operator==(const Sequence&, const Sequence&) = default;

 private:
  int start_ = 1;
  std::vector<double> values_;
};

/// Hölder-conjugate exponents. Build through `conjugate(p)` so q is always
/// derived from p.
struct ExponentPair {
  double p;
  double q;
};

ExponentPair conjugate(double p);

/// Exponents this close to zero are treated as exactly zero, so that weights
/// such as (n/m)^(1/q-1/p) reduce to 1 bit-for-bit at p = 2.
inline constexpr double kExponentSnap = 1e-15;

double snap_exponent(double e) noexcept;

/// x^e for x > 0 via exp(e*log x); returns exactly 1 for snapped exponents.
double power_weight(double x, double e) noexcept;

/// Throws InvalidInput on non-finite entries, and on negative entries when
/// `require_nonnegative` is set. `what` names the argument in the message.
void validate(const Sequence& s, const char* what, bool require_nonnegative);

double lp_norm(const Sequence& s, double p);

/// The unit l^q vector attaining Hölder equality against nonnegative c:
/// b_n = c_n^(p-1) / ||c||_p^(p-1), so that sum c_n b_n = ||c||_p.
Sequence dual_align(const Sequence& c, double p);

/// A_m = a_m (m+1)^((p-2)/p), mapping start-0 Taylor coefficients onto a
/// start-1 sequence whose l^p norm equals the K^p norm of the input.
Sequence kp_to_lp_isometry(const Sequence& a, double p);
/// Inverse of kp_to_lp_isometry.
Sequence lp_to_kp_isometry(const Sequence& A, double p);

/// Integral-test upper bound M^(1-s)/(s-1) for sum_{m>M} m^-s.
double power_tail_bound(std::int64_t M, double s);

/// Text format: `# start_index=<0|1>` header, then one `index,value` per line.
Sequence read_sequence(std::istream& in);
void write_sequence(std::ostream& out, const Sequence& s);
Sequence load_sequence(const std::filesystem::path& path);
void save_sequence(const std::filesystem::path& path, const Sequence& s);

}  // namespace hilbert
