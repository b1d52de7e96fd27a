#pragma once

#include <cstdint>
#include <string>

namespace lpmoment {

/// Dimension of the ambient space, 1 <= n <= 10^6.
class Dimension {
 public:
  static constexpr std::int64_t kMax = 1'000'000;

  /// Throws std::invalid_argument for n < 1 and std::out_of_range for
  /// n > kMax.
  explicit Dimension(std::int64_t n);

  std::int64_t value() const noexcept { return n_; }
  double as_double() const noexcept { return static_cast<double>(n_); }

  friend bool operator==(Dimension, Dimension) = default;

 private:
  std::int64_t n_;
};

/// An exponent p in [1, inf] together with its Holder conjugate q and
/// t = 1/(pq) = (p - 1)/p^2.
///
/// Infinity is represented exactly. Both reciprocals 1/p and 1/q are kept
/// so that conjugate() is an exact involution and the formulas never form
/// 1 - 1/p near p = 1.
class Exponent {
 public:
  /// p >= 1 or +inf. Values in [1, 1 + 1e-12) snap to exactly 1. Throws
  /// std::domain_error for p < 1 or NaN.
  static Exponent finite(double p);
  static Exponent infinity();

  /// Accepts a decimal literal or "inf". Throws std::invalid_argument on
  /// anything else, std::domain_error for values below 1.
  static Exponent parse(const std::string& token);

  bool is_infinite() const noexcept { return inv_p_ == 0.0; }
  bool is_one() const noexcept { return inv_q_ == 0.0; }
  bool is_endpoint() const noexcept { return is_infinite() || is_one(); }

  /// p as a double (+inf for the infinite exponent).
  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }
  double inv_p() const noexcept { return inv_p_; }
  double inv_q() const noexcept { return inv_q_; }
  double t() const noexcept { return inv_p_ * inv_q_; }

  Exponent conjugate() const noexcept {
    return Exponent(q_, p_, inv_q_, inv_p_);
  }

  /// Decimal rendering with 17 significant digits, or "inf".
  std::string to_string() const;

  friend bool operator==(const Exponent&, const Exponent&) = default;

 private:
  Exponent(double p, double q, double inv_p, double inv_q)
      : p_(p), q_(q), inv_p_(inv_p), inv_q_(inv_q) {}

  double p_;
  double q_;
  double inv_p_;
  double inv_q_;
};

inline Exponent conjugate(const Exponent& p) { return p.conjugate(); }

/// ln |B_p^n|, from [2 Gamma(1 + 1/p)]^n / Gamma(1 + n/p).
double log_volume(Dimension n, const Exponent& p);

/// |B_p^n|. Exact closed forms at p = 1 (2^n / n!) and p = inf (2^n).
/// Underflows to 0 or overflows for large n; use log_volume there.
double volume(Dimension n, const Exponent& p);

/// ln of the integral of x_1^2 over B_p^n.
double log_second_moment_integral(Dimension n, const Exponent& p);

/// Integral of x_1^2 over B_p^n:
///   (2/p) |B_p^{n-1}| Gamma(3/p) Gamma(1 + (n-1)/p) / Gamma(1 + (n+2)/p),
/// with 2^n/3 at p = inf and 2^{n+1}/(n+2)! at p = 1.
double second_moment_integral(Dimension n, const Exponent& p);

/// E[x_1^2] for x uniform on B_p^n; lies in (0, 1/3].
double normalized_second_moment(Dimension n, const Exponent& p);

}  // namespace lpmoment
