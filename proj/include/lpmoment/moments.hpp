#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lpmoment/gamma_core.hpp"
#include "lpmoment/pball.hpp"

namespace lpmoment {

enum class Route { gamma_closed_form, infinite_product, monte_carlo };

const char* to_string(Route route);

/// A value of f(n, p) = E<x, y>^2 for x uniform on B_p^n, y uniform on B_q^n.
struct MomentResult {
  double value;
  Route route;
  double error_estimate;  // absolute; 0 for exact closed forms
  Dimension n;
  Exponent exponent;
};

/// n / (n + 2)^2, the value at p = 2 and the upper bound over all p.
double moment_bound(Dimension n);

/// k^2 + m k + m^2 t. Throws std::invalid_argument unless k >= 1, m >= 0,
/// t >= 0.
double g_term(std::int64_t k, double m, double t);

/// Closed form through the gamma function. Endpoints use f_endpoint.
MomentResult f_gamma(Dimension n, const Exponent& p);

/// 2n / (3 (n + 1)(n + 2)), the value at p = 1 and p = inf.
double f_endpoint(Dimension n);

/// The k-th factor g_k(1) g_k(n+2) / (g_k(3) g_k(n)) of the product.
double product_factor(std::int64_t k, Dimension n, double t);

/// P(t) = prod_k g_k(1,t) g_k(n+2,t) / (g_k(3,t) g_k(n,t)) for t in [0, 1/4].
///
/// t = 0 and t = 1/4 return the telescoped values 6/((n+1)(n+2)) and
/// 9/(n+2)^2 with a zero bound. Throws TruncationError when policy.rel_tol
/// is out of reach and std::domain_error for t outside [0, 1/4].
ProductValue moment_product(Dimension n, double t,
                            const TruncationPolicy& policy = {});

/// Same product without the telescoped shortcuts at t = 0 and t = 1/4.
ProductValue moment_product_expanded(Dimension n, double t,
                                     const TruncationPolicy& policy = {});

/// f(n, p) = (n/9) P(t(p)).
MomentResult f_product(Dimension n, const Exponent& p,
                       const TruncationPolicy& policy = {});

enum class Sign { negative, zero, positive };

const char* to_string(Sign sign);

struct SignReport {
  double series_value;
  Sign sign;
  std::size_t terms_used;
  bool all_terms_positive;
  double abs_term_sum;
};

/// The k-th term of d/dt ln P(t):
///   1/g_k(1) + (n+2)^2/g_k(n+2) - 9/g_k(3) - n^2/g_k(n).
double derivative_sign_term(std::int64_t k, Dimension n, double t);

/// Sum over k of derivative_sign_term, i.e. d/dt ln f(n, p(t)), with its
/// sign. |value| <= 1e-12 (1 + sum |terms|) classifies as zero.
/// Requires 0 < t <= 1/4 (std::domain_error otherwise).
SignReport derivative_sign_series(Dimension n, double t,
                                  const TruncationPolicy& policy = {});

/// The inequality
///   n^2 g_k(3) g_k(n+2) [g_k(n) - g_k(1)]
///     + g_k(n) [(n+2)^2 g_k(1) g_k(3) - 9 g_k(n+2)] > 0
/// evaluated literally. Requires k >= 1, n >= 2, t > 0.
bool per_term_positivity(std::int64_t k, Dimension n, double t);

struct ScanPoint {
  Exponent p;
  double value;
};

enum class ScanRegime { lower, upper };  // [1, 2] increasing, [2, inf] decreasing

struct MonotonicityScan {
  std::vector<ScanPoint> points;
  ScanRegime regime;
  bool monotone;  // nondecreasing (lower) / nonincreasing (upper) within 1e-12
  bool strict;    // strict by more than 1e-12 away from p = 2
  bool verdict;   // monotone, plus strict when n >= 2
};

/// f_gamma along an increasing grid lying inside [1, 2] (expected to
/// increase) or inside [2, inf] (expected to decrease). Throws
/// std::invalid_argument for an empty, unordered or straddling grid.
MonotonicityScan monotonicity_scan(Dimension n, std::span<const Exponent> grid);

struct KuperbergCheck {
  bool holds;     // f <= n/(n+2)^2 + 1e-12
  double margin;  // n/(n+2)^2 - f
  double value;
};

KuperbergCheck kuperberg_check(Dimension n, const Exponent& p);

enum class ComparatorRegime { increasing, reversed };

struct ComparatorResult {
  double R;
  double S;
  ProductValue at_r;
  ProductValue at_s;
  ComparatorRegime regime;
  bool verdict;  // P(R) < P(S) when increasing, P(R) > P(S) when reversed
};

/// Compares P((r-1)/r^2) with P((s-1)/s^2) for 1 <= r < s <= 2 (expects an
/// increase) or 2 <= r < s <= inf (expects a decrease). Requires n >= 2;
/// throws std::invalid_argument otherwise or when (r, s) straddles 2.
ComparatorResult bound_comparator(Dimension n, const Exponent& r,
                                  const Exponent& s,
                                  const TruncationPolicy& policy = {});

/// Gamma(3/q) Gamma(n/q) / (Gamma(1/q) Gamma((n+2)/q)); tends to (n+2)/(3n).
/// Requires q_large >= 1e3 (std::domain_error otherwise).
double remark_limit_check(Dimension n, double q_large);

}  // namespace lpmoment
