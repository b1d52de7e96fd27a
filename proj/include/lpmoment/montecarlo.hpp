#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "lpmoment/pball.hpp"

namespace lpmoment {

struct MCConfig {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 42;
  std::uint32_t streams = 8;

  /// Throws std::invalid_argument unless samples >= 1, streams >= 1 and
  /// streams divides samples.
  void validate() const;
};

struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // unbiased sample sd / sqrt(samples)
  std::uint64_t samples = 0;
};

/// One reproducible substream. Variates are generated here rather than
/// through <random> distributions, whose output is implementation defined.
class RandomSource {
 public:
  RandomSource(std::uint64_t seed, std::uint64_t stream);

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();
  double standard_normal();
  double standard_exponential();
  /// Gamma(shape, 1), Marsaglia-Tsang; shape < 1 via Gamma(shape + 1) U^(1/shape).
  double gamma(double shape);
  /// +1 or -1 with equal probability.
  double sign();

 private:
  std::mt19937_64 engine_;
};

/// Writes a point uniform on B_p^n into out (out.size() == n).
///
/// x_i = s_i (G_i / (G_1 + ... + G_n + W))^(1/p) with G_i ~ Gamma(1/p),
/// W ~ Exp(1) and independent signs; p = inf draws the cube directly.
void sample_ball(Dimension n, const Exponent& p, RandomSource& rng,
                 std::span<double> out);

std::vector<double> sample_ball(Dimension n, const Exponent& p,
                                RandomSource& rng);

/// Mean of <x, y>^2 over independent pairs x ~ U(B_p^n), y ~ U(B_q^n).
MCEstimate estimate_f(Dimension n, const Exponent& p, const MCConfig& config);

/// n E[x_1^2] E[y_1^2], each factor estimated from config.samples points
/// (per point, the average of the squared coordinates).
MCEstimate estimate_f_factored(Dimension n, const Exponent& p,
                               const MCConfig& config);

/// Mean of x_coord^power for x uniform on B_p^n.
MCEstimate estimate_coordinate_moment(Dimension n, const Exponent& p,
                                      const MCConfig& config,
                                      std::int64_t coord, int power);

/// Streaming mean and variance, mergeable in a fixed order.
class MomentAccumulator {
 public:
  void add(double x);
  void merge(const MomentAccumulator& other);
  std::uint64_t count() const { return count_; }
  double mean() const { return mean_; }
  double variance() const;  // unbiased
  MCEstimate estimate() const;

 private:
  std::uint64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace lpmoment
