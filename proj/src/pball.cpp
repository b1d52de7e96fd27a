#include "lpmoment/pball.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "lpmoment/gamma_core.hpp"

namespace lpmoment {

Dimension::Dimension(std::int64_t n) : n_(n) {
  if (n < 1) throw std::invalid_argument("Dimension: n must be >= 1");
  if (n > kMax) throw std::out_of_range("Dimension: n exceeds 10^6");
}

Exponent Exponent::finite(double p) {
  if (std::isnan(p)) throw std::domain_error("Exponent: p is NaN");
  if (p == std::numeric_limits<double>::infinity()) return infinity();
  if (p < 1.0) throw std::domain_error("Exponent: p must be >= 1");
  if (p < 1.0 + 1e-12) {
    return Exponent(1.0, std::numeric_limits<double>::infinity(), 1.0, 0.0);
  }
  return Exponent(p, p / (p - 1.0), 1.0 / p, (p - 1.0) / p);
}

Exponent Exponent::infinity() {
  return Exponent(std::numeric_limits<double>::infinity(), 1.0, 0.0, 1.0);
}

Exponent Exponent::parse(const std::string& token) {
  if (token == "inf") return infinity();
  double value = 0.0;
  const char* first = token.data();
  const char* last = first + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (token.empty() || ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw std::invalid_argument("Exponent: cannot parse '" + token + "'");
  }
  return finite(value);
}

std::string Exponent::to_string() const {
  if (is_infinite()) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", p_);
  return buf;
}

namespace {

constexpr double kLn2 = std::numbers::ln2;

// ln |B_p^m| for m >= 0; |B_p^0| = 1.
double log_volume_raw(double m, const Exponent& p) {
  if (m == 0.0) return 0.0;
  if (p.is_infinite()) return m * kLn2;
  if (p.is_one()) return m * kLn2 - ln_gamma(m + 1.0);
  return m * (kLn2 + ln_gamma(1.0 + p.inv_p())) - ln_gamma(1.0 + m * p.inv_p());
}

// prod_{k=1}^{m} 2/k, which is exact enough for m! representable.
double two_pow_over_factorial(std::int64_t m) {
  double v = 1.0;
  for (std::int64_t k = 1; k <= m; ++k) v *= 2.0 / static_cast<double>(k);
  return v;
}

}  // namespace

double log_volume(Dimension n, const Exponent& p) {
  return log_volume_raw(n.as_double(), p);
}

double volume(Dimension n, const Exponent& p) {
  const std::int64_t m = n.value();
  if (p.is_infinite() && m <= 1023) return std::ldexp(1.0, static_cast<int>(m));
  if (p.is_one() && m <= 170) return two_pow_over_factorial(m);
  return std::exp(log_volume(n, p));
}

double log_second_moment_integral(Dimension n, const Exponent& p) {
  const double m = n.as_double();
  if (p.is_infinite()) return m * kLn2 - std::log(3.0);
  if (p.is_one()) return (m + 1.0) * kLn2 - ln_gamma(m + 3.0);
  const double a = p.inv_p();
  return std::log(2.0 * a) + log_volume_raw(m - 1.0, p) + ln_gamma(3.0 * a) +
         ln_gamma(1.0 + (m - 1.0) * a) - ln_gamma(1.0 + (m + 2.0) * a);
}

double second_moment_integral(Dimension n, const Exponent& p) {
  const std::int64_t m = n.value();
  if (p.is_infinite() && m <= 1023) {
    return std::ldexp(1.0, static_cast<int>(m)) / 3.0;
  }
  // 2^{n+1}/(n+2)! = (1/2) prod_{k=1}^{n+2} 2/k
  if (p.is_one() && m + 2 <= 170) return 0.5 * two_pow_over_factorial(m + 2);
  return std::exp(log_second_moment_integral(n, p));
}

double normalized_second_moment(Dimension n, const Exponent& p) {
  const double m = n.as_double();
  if (p.is_infinite()) return 1.0 / 3.0;
  if (p.is_one()) return 2.0 / ((m + 1.0) * (m + 2.0));
  // Gamma(3/p) Gamma(1 + n/p) / (Gamma(1/p) Gamma(1 + (n+2)/p)), after the
  // |B_p^{n-1}| / |B_p^n| ratio is cancelled by hand.
  const double a = p.inv_p();
  return std::exp(ln_gamma(3.0 * a) - ln_gamma(a) + ln_gamma(1.0 + m * a) -
                  ln_gamma(1.0 + (m + 2.0) * a));
}

}  // namespace lpmoment
