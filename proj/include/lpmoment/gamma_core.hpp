#pragma once

#include <cstddef>

#include "lpmoment/series.hpp"

namespace lpmoment {

/// ln Gamma(x) for x > 0. Throws std::domain_error otherwise.
///
/// Lanczos sum (N = 13, g ~ 6.0247) away from the zeros of ln Gamma, and the
/// Taylor series of ln Gamma(1 + z) within 0.1 of x = 1 and x = 2, so the
/// result keeps full relative accuracy where ln Gamma changes sign.
double ln_gamma(double x);

/// ln B(a, b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a + b).
double ln_beta(double a, double b);

struct ProductValue {
  double value = 0.0;
  double rel_bound = 0.0;  // relative truncation bound on value
  std::size_t terms = 0;   // factors evaluated directly
};

/// Gamma(1 - a) Gamma(x + a) / Gamma(x) as the product over k >= 1 of
///   k (k + x - 1) / ((k - a)(k + x + a - 1)).
///
/// Requires x > 0, a < 1 and x + a not in {0, -1, -2, ...}; throws
/// std::domain_error otherwise. The result is negative when Gamma(x + a) is.
/// Throws TruncationError if policy.rel_tol is not reached.
ProductValue gamma_ratio_product(double x, double a,
                                 const TruncationPolicy& policy = {});

/// The k-th factor of gamma_ratio_product.
double gamma_ratio_factor(std::size_t k, double x, double a);

}  // namespace lpmoment
