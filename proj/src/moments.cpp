#include "lpmoment/moments.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lpmoment {

const char* to_string(Route route) {
  switch (route) {
    case Route::gamma_closed_form: return "gamma_closed_form";
    case Route::infinite_product: return "infinite_product";
    case Route::monte_carlo: return "monte_carlo";
  }
  return "unknown";
}

const char* to_string(Sign sign) {
  switch (sign) {
    case Sign::negative: return "negative";
    case Sign::zero: return "zero";
    case Sign::positive: return "positive";
  }
  return "unknown";
}

double moment_bound(Dimension n) {
  const double m = n.as_double();
  return m / ((m + 2.0) * (m + 2.0));
}

double g_term(std::int64_t k, double m, double t) {
  if (k < 1) throw std::invalid_argument("g_term: k must be >= 1");
  if (!(m >= 0.0)) throw std::invalid_argument("g_term: m must be >= 0");
  if (!(t >= 0.0)) throw std::invalid_argument("g_term: t must be >= 0");
  const double kk = static_cast<double>(k);
  return kk * kk + m * kk + m * m * t;
}

double f_endpoint(Dimension n) {
  const double m = n.as_double();
  return 2.0 * m / (3.0 * (m + 1.0) * (m + 2.0));
}

namespace {

// ln [Gamma(3a) Gamma(1 + n a) / (Gamma(a) Gamma(1 + (n+2) a))], a = 1/p.
double log_gamma_side(double m, double a) {
  return ln_gamma(3.0 * a) - ln_gamma(a) + ln_gamma(1.0 + m * a) -
         ln_gamma(1.0 + (m + 2.0) * a);
}

void check_t(double t) {
  if (!(t >= 0.0 && t <= 0.25)) {
    throw std::domain_error("product parameter t must lie in [0, 1/4]");
  }
}

// The product's g_k(m) multiplicities: +1 for m in {1, n+2}, -1 for
// m in {3, n}. Equal m with opposite sign cancel (everything cancels for
// n = 1).
std::vector<std::pair<double, double>> product_multiplicities(Dimension n) {
  const double m = n.as_double();
  std::vector<double> up{1.0, m + 2.0};
  std::vector<double> down{3.0, m};
  for (auto& u : up) {
    for (auto& d : down) {
      if (u == d && u > 0.0) u = d = -1.0;
    }
  }
  std::vector<std::pair<double, double>> out;
  for (double u : up) if (u > 0.0) out.emplace_back(u, 1.0);
  for (double d : down) if (d > 0.0) out.emplace_back(d, -1.0);
  return out;
}

}  // namespace

MomentResult f_gamma(Dimension n, const Exponent& p) {
  if (p.is_endpoint()) {
    return {f_endpoint(n), Route::gamma_closed_form, 0.0, n, p};
  }
  const double m = n.as_double();
  const double log_f = std::log(m) + (log_gamma_side(m, p.inv_p()) +
                                      log_gamma_side(m, p.inv_q()));
  return {std::exp(log_f), Route::gamma_closed_form, 0.0, n, p};
}

double product_factor(std::int64_t k, Dimension n, double t) {
  const double m = n.as_double();
  return g_term(k, 1.0, t) * g_term(k, m + 2.0, t) /
         (g_term(k, 3.0, t) * g_term(k, m, t));
}

ProductValue moment_product_expanded(Dimension n, double t,
                                     const TruncationPolicy& policy) {
  check_t(t);
  policy.validate();
  const auto mult = product_multiplicities(n);
  if (mult.empty()) return {1.0, 0.0, 0};

  // ln g_k(m) - 2 ln k = log1p(m/k + m^2 t / k^2)
  auto term = [&mult, t](std::size_t k) {
    const double kk = static_cast<double>(k);
    SeriesTerm s;
    for (const auto& [m, w] : mult) {
      const double piece = std::log1p(m / kk * (1.0 + m * t / kk));
      s.value += w * piece;
      s.magnitude += std::fabs(piece);
    }
    return s;
  };

  // g(x, m) = (x - m rho_plus)(x - m rho_minus)
  const double root_disc = std::sqrt(1.0 - 4.0 * t);
  const double rho_plus = -2.0 * t / (1.0 + root_disc);
  const double rho_minus = -0.5 * (1.0 + root_disc);
  std::vector<LinearRoot> roots;
  for (const auto& [m, w] : mult) {
    roots.push_back({m * rho_plus, w});
    roots.push_back({m * rho_minus, w});
  }
  auto tail = [&roots](double K) { return log_linear_tail(roots, K); };

  try {
    const SeriesSum s =
        accelerated_sum(term, tail, policy, 128, ToleranceBasis::absolute);
    return {std::exp(s.value), std::expm1(s.bound), s.terms};
  } catch (const TruncationError& e) {
    throw TruncationError(e.what(), std::exp(e.best_value()),
                          std::expm1(e.achieved_bound()), e.terms());
  }
}

ProductValue moment_product(Dimension n, double t,
                            const TruncationPolicy& policy) {
  check_t(t);
  policy.validate();
  const double m = n.as_double();
  if (t == 0.0) return {6.0 / ((m + 1.0) * (m + 2.0)), 0.0, 0};
  if (t == 0.25) return {9.0 / ((m + 2.0) * (m + 2.0)), 0.0, 0};
  return moment_product_expanded(n, t, policy);
}

MomentResult f_product(Dimension n, const Exponent& p,
                       const TruncationPolicy& policy) {
  const ProductValue prod = moment_product(n, p.t(), policy);
  const double value = n.as_double() / 9.0 * prod.value;
  return {value, Route::infinite_product, value * prod.rel_bound, n, p};
}

double derivative_sign_term(std::int64_t k, Dimension n, double t) {
  const double m = n.as_double();
  // Grouped so that the two pairs cancel exactly when n = 1.
  return (1.0 / g_term(k, 1.0, t) - m * m / g_term(k, m, t)) +
         ((m + 2.0) * (m + 2.0) / g_term(k, m + 2.0, t) - 9.0 / g_term(k, 3.0, t));
}

namespace {

// atan(sqrt(z))/sqrt(z) for z > 0, atanh(sqrt(-z))/sqrt(-z) for z < 0.
double arctan_ratio(double z) {
  if (std::fabs(z) < 1e-8) return 1.0 - z / 3.0 + z * z / 5.0;
  if (z > 0.0) {
    const double r = std::sqrt(z);
    return std::atan(r) / r;
  }
  const double r = std::sqrt(-z);
  return std::atanh(r) / r;
}

// Remainder sum_{k > K} sum w m^2 / g(k, m) by midpoint Euler-Maclaurin.
// With u = x + m/2, g = u^2 + D, D = m^2 (t - 1/4).
TailEstimate reciprocal_quadratic_tail(
    const std::vector<std::pair<double, double>>& mult, double t, double K) {
  const double X = K + 0.5;
  TailEstimate out;
  const double root_disc = std::sqrt(std::max(0.0, 1.0 - 4.0 * t));
  const double rho_plus = -2.0 * t / (1.0 + root_disc);
  double integral = 0.0, d1 = 0.0, d3 = 0.0, d5_bound = 0.0;
  for (const auto& [m, w] : mult) {
    const double U = X + 0.5 * m;
    const double D = m * m * (t - 0.25);
    const double piece = m * m / U * arctan_ratio(D / (U * U));
    integral += w * piece;
    out.magnitude += std::fabs(piece);
    const double h = 1.0 / (U * U + D);
    d1 += w * m * m * (-2.0 * U * h * h);
    d3 += w * m * m * (24.0 * U * h * h * h - 48.0 * U * U * U * h * h * h * h);
    const double gap = X - m * rho_plus;
    d5_bound += std::fabs(w) * m * m * 720.0 / std::pow(gap, 7);
  }
  out.value = integral + d1 / 24.0 - 7.0 * d3 / 5760.0;
  out.next_correction = 31.0 * d5_bound / 967680.0;
  out.valid = true;
  return out;
}

}  // namespace

SignReport derivative_sign_series(Dimension n, double t,
                                  const TruncationPolicy& policy) {
  if (!(t > 0.0 && t <= 0.25)) {
    throw std::domain_error("derivative_sign_series: t must lie in (0, 1/4]");
  }
  const auto mult = product_multiplicities(n);
  bool all_positive = true;
  auto term = [&](std::size_t k) {
    const double value =
        derivative_sign_term(static_cast<std::int64_t>(k), n, t);
    if (!(value > 0.0)) all_positive = false;
    double magnitude = 0.0;
    for (const auto& [m, w] : mult) {
      magnitude += m * m / g_term(static_cast<std::int64_t>(k), m, t);
    }
    return SeriesTerm{value, magnitude};
  };
  auto tail = [&](double K) {
    return reciprocal_quadratic_tail(mult, t, K);
  };
  const SeriesSum s = accelerated_sum(term, tail, policy, 128,
                                      ToleranceBasis::relative_to_mass);

  SignReport report{s.value, Sign::zero, s.terms, all_positive, s.abs_term_sum};
  const double zero_band = 1e-12 * (1.0 + s.abs_term_sum);
  if (s.value > zero_band) {
    report.sign = Sign::positive;
  } else if (s.value < -zero_band) {
    report.sign = Sign::negative;
  }
  return report;
}

bool per_term_positivity(std::int64_t k, Dimension n, double t) {
  if (k < 1) throw std::invalid_argument("per_term_positivity: k must be >= 1");
  if (n.value() < 2) {
    throw std::invalid_argument("per_term_positivity: n must be >= 2");
  }
  if (!(t > 0.0)) throw std::invalid_argument("per_term_positivity: t must be > 0");
  using real = long double;
  const real kk = static_cast<real>(k);
  const real m = static_cast<real>(n.value());
  const real tt = t;
  auto g = [&](real mm) { return kk * kk + mm * kk + mm * mm * tt; };
  const real lhs = m * m * g(3) * g(m + 2) * (g(m) - g(1)) +
                   g(m) * ((m + 2) * (m + 2) * g(1) * g(3) - 9 * g(m + 2));
  return lhs > 0;
}

MonotonicityScan monotonicity_scan(Dimension n, std::span<const Exponent> grid) {
  if (grid.empty()) {
    throw std::invalid_argument("monotonicity_scan: empty grid");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i - 1].p() < grid[i].p())) {
      throw std::invalid_argument(
          "monotonicity_scan: grid must be strictly increasing");
    }
  }
  ScanRegime regime;
  if (grid.back().p() <= 2.0) {
    regime = ScanRegime::lower;
  } else if (grid.front().p() >= 2.0) {
    regime = ScanRegime::upper;
  } else {
    throw std::invalid_argument(
        "monotonicity_scan: grid must lie within [1, 2] or within [2, inf]");
  }

  constexpr double kTol = 1e-12;
  MonotonicityScan scan{{}, regime, true, true, true};
  for (const auto& p : grid) scan.points.push_back({p, f_gamma(n, p).value});
  for (std::size_t i = 1; i < scan.points.size(); ++i) {
    const auto& a = scan.points[i - 1];
    const auto& b = scan.points[i];
    if (regime == ScanRegime::lower) {
      if (b.value < a.value - kTol) scan.monotone = false;
      if (b.p.p() < 2.0 && !(b.value - a.value > kTol)) scan.strict = false;
    } else {
      if (b.value > a.value + kTol) scan.monotone = false;
      if (a.p.p() > 2.0 && !(a.value - b.value > kTol)) scan.strict = false;
    }
  }
  scan.verdict = scan.monotone && (n.value() == 1 || scan.strict);
  return scan;
}

KuperbergCheck kuperberg_check(Dimension n, const Exponent& p) {
  const double f = f_gamma(n, p).value;
  const double bound = moment_bound(n);
  return {f <= bound + 1e-12, bound - f, f};
}

ComparatorResult bound_comparator(Dimension n, const Exponent& r,
                                  const Exponent& s,
                                  const TruncationPolicy& policy) {
  if (n.value() < 2) {
    throw std::invalid_argument("bound_comparator: n must be >= 2");
  }
  if (!(r.p() < s.p())) {
    throw std::invalid_argument("bound_comparator: requires r < s");
  }
  ComparatorRegime regime;
  if (s.p() <= 2.0) {
    regime = ComparatorRegime::increasing;
  } else if (r.p() >= 2.0) {
    regime = ComparatorRegime::reversed;
  } else {
    throw std::invalid_argument("bound_comparator: (r, s) straddles 2");
  }
  ComparatorResult out{r.t(), s.t(), {}, {}, regime, false};
  out.at_r = moment_product(n, out.R, policy);
  out.at_s = moment_product(n, out.S, policy);
  out.verdict = regime == ComparatorRegime::increasing
                    ? out.at_r.value < out.at_s.value
                    : out.at_r.value > out.at_s.value;
  return out;
}

double remark_limit_check(Dimension n, double q_large) {
  if (!(q_large >= 1e3) || std::isinf(q_large)) {
    throw std::domain_error("remark_limit_check: q must be at least 1e3");
  }
  const double a = 1.0 / q_large;
  const double m = n.as_double();
  return std::exp(ln_gamma(3.0 * a) + ln_gamma(m * a) - ln_gamma(a) -
                  ln_gamma((m + 2.0) * a));
}

}  // namespace lpmoment
