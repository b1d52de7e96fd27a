#include "lpmoment/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "lpmoment/gamma_core.hpp"
#include "lpmoment/moments.hpp"
#include "lpmoment/pball.hpp"
#include "lpmoment/report.hpp"

namespace lpmoment {

namespace {

double rel_diff(double a, double b) {
  return std::fabs(a - b) / std::max(std::fabs(a), std::fabs(b));
}

std::string fmt(const char* format, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, format, a, b);
  return buf;
}

// 40 exponents spanning [1, inf]: 20 equispaced on [1, 2], 19 geometric on
// (2, 1000], and inf.
std::vector<Exponent> bound_grid() {
  std::vector<Exponent> grid;
  for (int i = 0; i < 20; ++i) grid.push_back(Exponent::finite(1.0 + i / 19.0));
  for (int i = 1; i <= 19; ++i) {
    grid.push_back(Exponent::finite(2.0 * std::pow(500.0, i / 19.0)));
  }
  grid.push_back(Exponent::infinity());
  return grid;
}

// ln |Gamma(z)| for non-integer z < 0 by reflection.
double ln_abs_gamma(double z) {
  if (z > 0.0) return ln_gamma(z);
  return std::log(M_PI / std::fabs(std::sin(M_PI * z))) - ln_gamma(1.0 - z);
}

// p in [1, 2] with t(p) = t.
double exponent_for_t(double t) { return 2.0 / (1.0 + std::sqrt(1.0 - 4.0 * t)); }

double f_of_t(Dimension n, double t) {
  return f_gamma(n, Exponent::finite(exponent_for_t(t))).value;
}

std::vector<CheckOutcome> endpoints_suite() {
  std::vector<CheckOutcome> out;
  double worst = 0.0;
  for (int n = 1; n <= 100; ++n) {
    const Dimension d{n};
    worst = std::max(worst, rel_diff(f_gamma(d, Exponent::finite(2.0)).value,
                                     moment_bound(d)));
  }
  out.push_back({"endpoints", "self-dual value f(n,2) = n/(n+2)^2, n=1..100",
                 worst <= 1e-12, fmt("max rel err %.3g", worst)});

  worst = 0.0;
  for (int n = 1; n <= 100; ++n) {
    const Dimension d{n};
    const double m = n;
    const double expected = 2.0 * m / (3.0 * (m + 1.0) * (m + 2.0));
    worst = std::max(worst, rel_diff(f_gamma(d, Exponent::finite(1.0)).value, expected));
    worst = std::max(worst, rel_diff(f_gamma(d, Exponent::infinity()).value, expected));
  }
  out.push_back({"endpoints", "endpoint value f(n,1) = f(n,inf), n=1..100",
                 worst <= 1e-12, fmt("max rel err %.3g", worst)});

  worst = 0.0;
  for (int n = 1; n <= 100; ++n) {
    const Dimension d{n};
    worst = std::max(worst, rel_diff(f_gamma(d, Exponent::finite(1.0 + 1e-6)).value,
                                     f_endpoint(d)));
  }
  out.push_back({"endpoints", "closed form at p = 1 + 1e-6 approaches endpoint",
                 worst <= 1e-4, fmt("max rel gap %.3g", worst)});
  return out;
}

std::vector<CheckOutcome> routes_suite(const TruncationPolicy& policy) {
  std::vector<CheckOutcome> out;
  const double ps[] = {1.0, 1.1, 1.25, 1.5, 1.75, 2.0};
  bool ok = true;
  double worst = 0.0;
  for (int n = 1; n <= 50; ++n) {
    for (double p : ps) {
      const Dimension d{n};
      const Exponent e = Exponent::finite(p);
      const double closed = f_gamma(d, e).value;
      const MomentResult prod = f_product(d, e, policy);
      const double diff = std::fabs(closed - prod.value);
      ok = ok && diff <= prod.error_estimate + 1e-10 * prod.value;
      worst = std::max(worst, diff / prod.value);
    }
  }
  out.push_back({"routes", "gamma closed form vs infinite product, n=1..50", ok,
                 fmt("max rel diff %.3g", worst)});

  worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Dimension d{1 + (7 * i) % 50};
    const double p = 1.0 + (i + 1) / 21.0;
    const double q = p / (p - 1.0);
    worst = std::max(worst, rel_diff(f_gamma(d, Exponent::finite(p)).value,
                                     f_gamma(d, Exponent::finite(q)).value));
  }
  out.push_back({"routes", "conjugate symmetry f(n,p) = f(n,q), 20 pairs",
                 worst <= 1e-12, fmt("max rel diff %.3g", worst)});

  ok = true;
  worst = 0.0;
  const double xs[] = {0.1, 0.5, 1.0, 2.0, 10.0, 100.0};
  const double as[] = {-0.9, -0.5, 0.0, 0.25, 0.5, 0.9};
  double cells = 0;
  for (double x : xs) {
    for (double a : as) {
      // (0.5, -0.5) puts x + a on the pole at 0
      if (x + a <= 0.0 && x + a == std::floor(x + a)) continue;
      ++cells;
      const ProductValue prod = gamma_ratio_product(x, a, policy);
      const double direct = ln_gamma(1.0 - a) + ln_abs_gamma(x + a) - ln_gamma(x);
      // Gamma(x + a) < 0 on (-1, 0), the only negative range on this grid
      const double sign = (x + a < 0.0) ? -1.0 : 1.0;
      const double dev = std::fabs(prod.value - sign * std::exp(direct)) /
                         std::exp(direct);
      ok = ok && dev <= std::max(policy.rel_tol, prod.rel_bound);
      worst = std::max(worst, dev);
    }
  }
  out.push_back({"routes", "gamma-ratio product vs log-gamma, 6x6 grid", ok,
                 fmt("%.0f valid cells, max rel dev %.3g", cells, worst)});
  return out;
}

std::vector<CheckOutcome> monotonicity_suite(const TruncationPolicy& policy) {
  std::vector<CheckOutcome> out;
  const auto grid = bound_grid();
  bool ok = true;
  double min_margin = 1.0;
  for (int n = 1; n <= 100; ++n) {
    for (const auto& p : grid) {
      const KuperbergCheck c = kuperberg_check(Dimension{n}, p);
      ok = ok && c.holds;
      min_margin = std::min(min_margin, c.margin);
    }
  }
  out.push_back({"monotonicity", "bound f <= n/(n+2)^2, n=1..100 x 40 exponents",
                 ok, fmt("min margin %.3g", min_margin)});

  std::vector<Exponent> lower, upper;
  for (int i = 0; i <= 20; ++i) lower.push_back(Exponent::finite(1.0 + i / 20.0));
  for (int i = 0; i < 20; ++i) upper.push_back(Exponent::finite(2.0 + i * 98.0 / 19.0));
  upper.push_back(Exponent::infinity());
  ok = true;
  for (int n = 2; n <= 20; ++n) {
    ok = ok && monotonicity_scan(Dimension{n}, lower).verdict &&
         monotonicity_scan(Dimension{n}, upper).verdict;
  }
  double spread = 0.0;
  for (const auto& grid1 : {lower, upper}) {
    for (const auto& pt : monotonicity_scan(Dimension{1}, grid1).points) {
      spread = std::max(spread, std::fabs(pt.value - 1.0 / 9.0));
    }
  }
  out.push_back({"monotonicity", "strictly increasing on [1,2], decreasing on [2,inf], n=2..20",
                 ok, ""});
  out.push_back({"monotonicity", "constant 1/9 for n = 1", spread <= 1e-12,
                 fmt("max |f - 1/9| %.3g", spread)});

  ok = true;
  const double ts[] = {0.01, 0.05, 0.1, 0.2, 0.25};
  constexpr double h = 1e-5;
  for (int n = 2; n <= 20; ++n) {
    const Dimension d{n};
    for (double t : ts) {
      const double center = t + h <= 0.25 ? t : t - h;
      const double fd = (f_of_t(d, center + h) - f_of_t(d, center - h)) / (2.0 * h);
      const SignReport r = derivative_sign_series(d, t, policy);
      const Sign fd_sign = fd > 0.0 ? Sign::positive
                                    : (fd < 0.0 ? Sign::negative : Sign::zero);
      ok = ok && r.sign == fd_sign;
    }
  }
  double n1 = 0.0;
  for (double t : ts) {
    n1 = std::max(n1, std::fabs(derivative_sign_series(Dimension{1}, t, policy).series_value));
  }
  out.push_back({"monotonicity", "derivative series sign matches finite difference",
                 ok && n1 < 1e-12, fmt("n=1 max |series| %.3g", n1)});
  return out;
}

std::vector<CheckOutcome> ineq3_suite() {
  const double ts[] = {0.01, 0.25, 1.0, 10.0};
  long failures = 0;
  std::string first;
  for (int n = 2; n <= 50; ++n) {
    for (double t : ts) {
      for (std::int64_t k = 1; k <= 10000; ++k) {
        if (!per_term_positivity(k, Dimension{n}, t)) {
          if (failures++ == 0) {
            first = "first failure k=" + std::to_string(k) + " n=" +
                    std::to_string(n) + " t=" + format_double(t);
          }
        }
      }
    }
  }
  return {{"ineq3", "printed per-term inequality, k<=1e4, n=2..50, 4 t values",
           failures == 0,
           failures == 0 ? std::string("no failures")
                         : std::to_string(failures) + " failures; " + first}};
}

std::vector<CheckOutcome> remark_limit_suite() {
  double worst = 0.0, worst_scaled = 0.0;
  for (int n = 1; n <= 20; ++n) {
    const double ratio = remark_limit_check(Dimension{n}, 1e6);
    worst = std::max(worst, std::fabs(ratio - (n + 2.0) / 3.0));
    worst_scaled = std::max(worst_scaled, std::fabs(ratio - (n + 2.0) / (3.0 * n)));
  }
  return {{"remark-limit", "gamma ratio at q=1e6 within 1e-4 of (n+2)/3, n=1..20",
           worst <= 1e-4, fmt("max abs dev %.3g", worst)},
          {"remark-limit", "gamma ratio at q=1e6 within 1e-4 of (n+2)/(3n), n=1..20",
           worst_scaled <= 1e-4, fmt("max abs dev %.3g", worst_scaled)}};
}

std::vector<CheckOutcome> corollaries_suite(const TruncationPolicy& policy) {
  std::vector<std::pair<Exponent, Exponent>> lower_pairs, upper_pairs;
  for (int i = 0; i < 10; ++i) {
    lower_pairs.emplace_back(Exponent::finite(1.0 + i * 0.09),
                             Exponent::finite(1.1 + i * 0.09));
    const Exponent r = Exponent::finite(2.0 + i * 1.5);
    const Exponent s = i == 9 ? Exponent::infinity() : Exponent::finite(3.0 + i * 2.0);
    upper_pairs.emplace_back(r, s);
  }
  TruncationPolicy doubled = policy;
  doubled.max_terms *= 2;

  std::vector<CheckOutcome> out;
  for (const auto* pairs : {&lower_pairs, &upper_pairs}) {
    bool ok = true, stable = true;
    for (int n : {2, 5, 20}) {
      for (const auto& [r, s] : *pairs) {
        const auto a = bound_comparator(Dimension{n}, r, s, policy);
        const auto b = bound_comparator(Dimension{n}, r, s, doubled);
        ok = ok && a.verdict;
        stable = stable && a.verdict == b.verdict;
      }
    }
    const bool lower = pairs == &lower_pairs;
    out.push_back({"corollaries",
                   lower ? "P(R) < P(S) for 1 <= r < s <= 2"
                         : "P(R) > P(S) for 2 <= r < s <= inf",
                   ok && stable, stable ? "stable under doubled max_terms"
                                        : "verdict changed under doubled max_terms"});
  }
  return out;
}

std::vector<CheckOutcome> mc_suite(const MCConfig& config) {
  std::vector<CheckOutcome> out;
  const Exponent ps[] = {Exponent::finite(1.0), Exponent::finite(1.4),
                         Exponent::finite(2.0), Exponent::finite(3.0),
                         Exponent::infinity()};
  bool ok = true;
  double worst = 0.0;
  for (int n = 1; n <= 5; ++n) {
    for (const auto& p : ps) {
      const MCEstimate est = estimate_f(Dimension{n}, p, config);
      const double z = std::fabs(est.mean - f_gamma(Dimension{n}, p).value) / est.std_error;
      ok = ok && z <= 3.0;
      worst = std::max(worst, z);
    }
  }
  out.push_back({"mc", "Monte Carlo f within 3 standard errors, n=1..5 x 5 exponents",
                 ok, fmt("max |z| %.3g", worst)});

  const Exponent sampler_ps[] = {Exponent::finite(1.0), Exponent::finite(1.5),
                                 Exponent::finite(2.0), Exponent::finite(3.0),
                                 Exponent::infinity()};
  ok = true;
  worst = 0.0;
  for (int n : {1, 2, 3, 5}) {
    for (const auto& p : sampler_ps) {
      const Dimension d{n};
      const MCEstimate second = estimate_coordinate_moment(d, p, config, 1, 2);
      const MCEstimate first = estimate_coordinate_moment(d, p, config, 1, 1);
      const double z2 =
          std::fabs(second.mean - normalized_second_moment(d, p)) / second.std_error;
      const double z1 = std::fabs(first.mean) / first.std_error;
      ok = ok && z2 <= 4.0 && z1 <= 4.0;
      worst = std::max({worst, z1, z2});
    }
  }
  out.push_back({"mc", "sampler moments E[x1^2], E[x1] within 4 standard errors", ok,
                 fmt("max |z| %.3g", worst)});
  return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "routes", "endpoints", "monotonicity", "ineq3",
      "remark-limit", "corollaries", "mc", "all"};
  return names;
}

std::vector<CheckOutcome> run_suite(const std::string& suite,
                                    const VerifyOptions& options) {
  options.policy.validate();
  if (suite == "routes") return routes_suite(options.policy);
  if (suite == "endpoints") return endpoints_suite();
  if (suite == "monotonicity") return monotonicity_suite(options.policy);
  if (suite == "ineq3") return ineq3_suite();
  if (suite == "remark-limit") return remark_limit_suite();
  if (suite == "corollaries") return corollaries_suite(options.policy);
  if (suite == "mc") {
    options.mc.validate();
    return mc_suite(options.mc);
  }
  if (suite == "all") {
    std::vector<CheckOutcome> all;
    for (const auto& name : suite_names()) {
      if (name == "all") continue;
      auto part = run_suite(name, options);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  throw std::invalid_argument("unknown suite '" + suite + "'");
}

}  // namespace lpmoment
