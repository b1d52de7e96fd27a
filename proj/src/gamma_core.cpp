#include "lpmoment/gamma_core.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lpmoment {

namespace {

constexpr double kEulerGamma = 0.577215664901532860607;

// zeta(2) .. zeta(22)
constexpr std::array<double, 21> kZeta{
    1.64493406684822643647, 1.2020569031595942854,  1.08232323371113819152,
    1.03692775514336992633, 1.01734306198444913971, 1.00834927738192282684,
    1.00407735619794433938, 1.00200839282608221442, 1.00099457512781808534,
    1.00049418860411946456, 1.0002460865533080483,  1.00012271334757848915,
    1.00006124813505870483, 1.00003058823630702049, 1.00001528225940865187,
    1.00000763719763789976, 1.00000381729326499984, 1.00000190821271655394,
    1.0000009539620338728,  1.00000047693298678781, 1.00000023845050272773};

// ln Gamma(1 + z) = -gamma z + sum_{k>=2} (-1)^k zeta(k) z^k / k, |z| <= 0.1.
double ln_gamma_1p_series(double z) {
  double acc = 0.0;
  for (std::size_t i = kZeta.size(); i-- > 0;) {
    const int k = static_cast<int>(i) + 2;
    const double c = ((k % 2 == 0) ? 1.0 : -1.0) * kZeta[i] / k;
    acc = c + z * acc;
  }
  return z * (-kEulerGamma + z * acc);
}

// Lanczos approximation, N = 13, g = 6.024680040776729583740234375, in the
// exp(g)-scaled form: Gamma(x) = sum(x) ((x + g - 1/2) / e)^(x - 1/2).
constexpr double kLanczosG = 6.024680040776729583740234375;
constexpr std::array<double, 13> kLanczosNum{
    56906521.91347156388090791033559122686859,
    103794043.1163445451906271053616070238554,
    86363131.28813859145546927288977868422342,
    43338889.32467613834773723740590533316085,
    14605578.08768506808414169982791359218571,
    3481712.15498064590882071018964774556468,
    601859.6171681098786670226533699352302507,
    75999.29304014542649875303443598909137092,
    6955.999602515376140356310115515198987526,
    449.9445569063168119446858607650988409623,
    19.51992788247617482847860966235652136208,
    0.5098416655656676188125178644804694509993,
    0.006061842346248906525783753964555936883222};
// Coefficients of x (x + 1) ... (x + 11).
constexpr std::array<double, 13> kLanczosDen{
    0.0,        39916800.0, 120543840.0, 150917976.0, 105258076.0,
    45995730.0, 13339535.0, 2637558.0,   357423.0,    32670.0,
    1925.0,     66.0,       1.0};

double lanczos_sum_scaled(double x) {
  double num = 0.0, den = 0.0;
  if (x <= 1.0) {
    for (std::size_t i = kLanczosNum.size(); i-- > 0;) {
      num = num * x + kLanczosNum[i];
      den = den * x + kLanczosDen[i];
    }
  } else {
    const double y = 1.0 / x;
    for (std::size_t i = 0; i < kLanczosNum.size(); ++i) {
      num = num * y + kLanczosNum[i];
      den = den * y + kLanczosDen[i];
    }
  }
  return num / den;
}

double ln_gamma_lanczos(double x) {
  const double shifted = x + kLanczosG - 0.5;
  return (x - 0.5) * (std::log(shifted) - 1.0) + std::log(lanczos_sum_scaled(x));
}

double ln_gamma_positive(double x) {
  if (std::fabs(x - 1.0) <= 0.1) return ln_gamma_1p_series(x - 1.0);
  if (std::fabs(x - 2.0) <= 0.1) {
    const double z = x - 2.0;
    return ln_gamma_1p_series(z) + std::log1p(z);
  }
  if (x < 0.9) return ln_gamma_positive(x + 1.0) - std::log(x);
  return ln_gamma_lanczos(x);
}

// log |1 + c|, falling back to the plain log when 1 + c <= 0.
double log_abs_1p(double c) {
  return c > -1.0 ? std::log1p(c) : std::log(std::fabs(1.0 + c));
}

}  // namespace

double ln_gamma(double x) {
  if (!(x > 0.0) || std::isinf(x)) {
    throw std::domain_error("ln_gamma: argument must be positive and finite");
  }
  return ln_gamma_positive(x);
}

double ln_beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::domain_error("ln_beta: arguments must be positive");
  }
  return ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b);
}

namespace {

void check_ratio_domain(double x, double a) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error("gamma_ratio_product: x must be positive");
  }
  if (!(a < 1.0) || !std::isfinite(a)) {
    throw std::domain_error("gamma_ratio_product: a must be below 1");
  }
  const double s = x + a;
  if (s <= 0.0 && s == std::floor(s)) {
    throw std::domain_error(
        "gamma_ratio_product: x + a must not be a nonpositive integer");
  }
}

}  // namespace

double gamma_ratio_factor(std::size_t k, double x, double a) {
  const double kk = static_cast<double>(k);
  return kk * (kk + x - 1.0) / ((kk - a) * (kk + x + a - 1.0));
}

ProductValue gamma_ratio_product(double x, double a,
                                 const TruncationPolicy& policy) {
  check_ratio_domain(x, a);
  policy.validate();
  if (a == 0.0) return {1.0, 0.0, 0};

  // Factors with k + x + a - 1 < 0 are negative; all others are positive.
  const double c = 1.0 - x - a;
  const double negative_factors = c > 1.0 ? std::ceil(c) - 1.0 : 0.0;
  const double sign = std::fmod(negative_factors, 2.0) == 1.0 ? -1.0 : 1.0;

  auto term = [x, a](std::size_t k) {
    const double kk = static_cast<double>(k);
    const double p1 = log_abs_1p((x - 1.0) / kk);
    const double p2 = std::log1p(-a / kk);
    const double p3 = log_abs_1p((x + a - 1.0) / kk);
    return SeriesTerm{p1 - p2 - p3,
                      std::fabs(p1) + std::fabs(p2) + std::fabs(p3)};
  };
  const std::array<LinearRoot, 4> roots{{
      {0.0, 1.0}, {1.0 - x, 1.0}, {a, -1.0}, {1.0 - x - a, -1.0}}};
  auto tail = [&roots](double K) { return log_linear_tail(roots, K); };

  double top_root = 0.0;
  for (const auto& r : roots) top_root = std::max(top_root, r.root);
  const auto start = static_cast<std::size_t>(
      std::max(128.0, std::ceil(8.0 * top_root)));

  try {
    const SeriesSum s =
        accelerated_sum(term, tail, policy, start, ToleranceBasis::absolute);
    return {sign * std::exp(s.value), std::expm1(s.bound), s.terms};
  } catch (const TruncationError& e) {
    throw TruncationError(e.what(), sign * std::exp(e.best_value()),
                          std::expm1(e.achieved_bound()), e.terms());
  }
}

}  // namespace lpmoment
