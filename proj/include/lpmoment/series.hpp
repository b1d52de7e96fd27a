#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>

namespace lpmoment {

/// How far an infinite product or series is expanded before it is accepted.
///
/// The evaluation sums the first K terms directly and adds an Euler-Maclaurin
/// estimate of the remainder. K starts small and doubles until the achieved
/// bound drops below rel_tol or the next step would exceed max_terms. With
/// confirm_by_doubling the bound is the disagreement between the estimates at
/// K and 2K; without it, the size of the first omitted correction.
struct TruncationPolicy {
  std::size_t max_terms = 1'000'000;
  double rel_tol = 1e-10;
  bool confirm_by_doubling = true;

  /// Throws std::invalid_argument unless max_terms >= 1 and 0 < rel_tol < 1.
  void validate() const;
};

/// Thrown when rel_tol cannot be reached within max_terms.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, double best_value,
                  double achieved_bound, std::size_t terms)
      : std::runtime_error(what),
        best_value_(best_value),
        achieved_bound_(achieved_bound),
        terms_(terms) {}

  double best_value() const noexcept { return best_value_; }
  double achieved_bound() const noexcept { return achieved_bound_; }
  std::size_t terms() const noexcept { return terms_; }

 private:
  double best_value_;
  double achieved_bound_;
  std::size_t terms_;
};

struct SeriesTerm {
  double value = 0.0;
  // Size of the quantities that cancelled to form value; drives the
  // rounding floor.
  double magnitude = 0.0;
};

struct TailEstimate {
  double value = 0.0;
  double next_correction = 0.0;  // first omitted asymptotic term, as a bound
  double magnitude = 0.0;
  bool valid = false;
};

struct SeriesSum {
  double value = 0.0;
  double bound = 0.0;  // absolute
  std::size_t terms = 0;
  double abs_term_sum = 0.0;  // sum of |terms| plus |tail|
};

enum class ToleranceBasis {
  absolute,          // bound <= rel_tol (log sums: relative error of the product)
  relative_to_mass,  // bound <= rel_tol * (|value| + summed magnitude)
};

/// One weighted linear factor (x - root)^weight of a product over x = k.
struct LinearRoot {
  double root;
  double weight;
};

/// Remainder sum_{k > K} sum_i w_i log(k - r_i) by the midpoint
/// Euler-Maclaurin formula around X = K + 1/2. The weights must satisfy
/// sum w_i = 0 and sum w_i r_i = 0 so that the remainder converges.
TailEstimate log_linear_tail(std::span<const LinearRoot> roots, double K);

namespace detail {

// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace detail

/// Sums term(1) + term(2) + ... using tail(K) for the remainder after K terms.
///
/// start_terms is the first K tried. Throws TruncationError (carrying the
/// best available sum) when the policy tolerance is out of reach.
template <class Term, class Tail>
SeriesSum accelerated_sum(Term&& term, Tail&& tail,
                          const TruncationPolicy& policy,
                          std::size_t start_terms, ToleranceBasis basis) {
  policy.validate();
  constexpr double kEps = std::numeric_limits<double>::epsilon();

  detail::CompensatedSum partial;
  double magnitude = 0.0;
  double abs_terms = 0.0;
  std::size_t done = 0;
  auto advance_to = [&](std::size_t K) {
    for (std::size_t k = done + 1; k <= K; ++k) {
      const SeriesTerm s = term(k);
      partial.add(s.value);
      magnitude += s.magnitude;
      abs_terms += std::fabs(s.value);
    }
    if (K > done) done = K;
  };
  double tail_abs = 0.0;
  auto estimate = [&](std::size_t K, double& floor, double& next) {
    advance_to(K);
    const TailEstimate t = tail(static_cast<double>(K));
    tail_abs = t.valid ? std::fabs(t.value) : 0.0;
    floor = 4.0 * kEps * (magnitude + t.magnitude + std::fabs(partial.value()));
    next = t.valid ? std::fabs(t.next_correction)
                   : std::numeric_limits<double>::infinity();
    return partial.value() + (t.valid ? t.value : 0.0);
  };

  const bool confirm = policy.confirm_by_doubling && policy.max_terms >= 2;
  std::size_t K = std::max<std::size_t>(1, start_terms);
  K = std::min(K, confirm ? policy.max_terms / 2 : policy.max_terms);

  SeriesSum best{std::numeric_limits<double>::quiet_NaN(),
                 std::numeric_limits<double>::infinity(), 0, 0.0};
  for (;;) {
    double floor_k = 0.0, next_k = 0.0;
    const double at_k = estimate(K, floor_k, next_k);
    SeriesSum current;
    if (confirm) {
      double floor_2k = 0.0, next_2k = 0.0;
      const double at_2k = estimate(2 * K, floor_2k, next_2k);
      const double spread = std::isfinite(next_k) && std::isfinite(next_2k)
                                ? std::fabs(at_2k - at_k)
                                : std::numeric_limits<double>::infinity();
      current = {at_2k, spread + next_2k + floor_2k, 2 * K, abs_terms + tail_abs};
    } else {
      current = {at_k, next_k + floor_k, K, abs_terms + tail_abs};
    }
    if (best.terms == 0 || current.bound < best.bound) best = current;

    const double scale = basis == ToleranceBasis::absolute
                             ? 1.0
                             : std::fabs(current.value) + magnitude;
    if (current.bound <= policy.rel_tol * scale) return current;

    const std::size_t needed = confirm ? 4 * K : 2 * K;
    if (needed > policy.max_terms) break;
    K *= 2;
  }
  throw TruncationError("series tolerance not reached within max_terms",
                        best.value, best.bound, best.terms);
}

}  // namespace lpmoment
