#include "lpmoment/series.hpp"

#include <cmath>

namespace lpmoment {

void TruncationPolicy::validate() const {
  if (max_terms < 1) {
    throw std::invalid_argument("TruncationPolicy: max_terms must be >= 1");
  }
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
    throw std::invalid_argument("TruncationPolicy: rel_tol must lie in (0, 1)");
  }
}

TailEstimate log_linear_tail(std::span<const LinearRoot> roots, double K) {
  const double X = K + 0.5;
  TailEstimate out;
  for (const auto& r : roots) {
    if (!(X - r.root >= 2.0)) return out;
  }

  // Antiderivative of sum w log(x - r), with the x log x and x terms removed;
  // they cancel because sum w = sum w r = 0.
  double integral = 0.0;
  double d1 = 0.0, d3 = 0.0, d5 = 0.0;
  for (const auto& r : roots) {
    const double gap = X - r.root;
    const double piece = gap * std::log1p(-r.root / X) + r.root;
    integral -= r.weight * piece;
    out.magnitude += std::fabs(r.weight) *
                     (std::fabs(gap * std::log1p(-r.root / X)) + std::fabs(r.root));
    const double inv = 1.0 / gap;
    const double inv3 = inv * inv * inv;
    d1 += r.weight * inv;
    d3 += 2.0 * r.weight * inv3;
    d5 += 24.0 * r.weight * inv3 * inv * inv;
  }
  out.value = integral + d1 / 24.0 - 7.0 * d3 / 5760.0;
  out.next_correction = 31.0 * d5 / 967680.0;
  out.valid = true;
  return out;
}

}  // namespace lpmoment
