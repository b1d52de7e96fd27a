#include "lpmoment/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace lpmoment {

void MCConfig::validate() const {
  if (samples < 1) throw std::invalid_argument("MCConfig: samples must be >= 1");
  if (streams < 1) throw std::invalid_argument("MCConfig: streams must be >= 1");
  if (samples % streams != 0) {
    throw std::invalid_argument("MCConfig: streams must divide samples");
  }
}

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

double RandomSource::uniform() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomSource::standard_normal() {
  // Marsaglia polar method; the second variate is discarded.
  for (;;) {
    const double u = 2.0 * uniform() - 1.0;
    const double v = 2.0 * uniform() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

double RandomSource::standard_exponential() { return -std::log(uniform()); }

double RandomSource::gamma(double shape) {
  if (!(shape > 0.0)) throw std::domain_error("gamma variate: shape must be > 0");
  if (shape < 1.0) {
    return gamma(shape + 1.0) * std::pow(uniform(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = standard_normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double RandomSource::sign() { return (engine_() >> 63) ? 1.0 : -1.0; }

void sample_ball(Dimension n, const Exponent& p, RandomSource& rng,
                 std::span<double> out) {
  if (out.size() != static_cast<std::size_t>(n.value())) {
    throw std::invalid_argument("sample_ball: output size must equal n");
  }
  if (p.is_infinite()) {
    for (double& x : out) x = 2.0 * rng.uniform() - 1.0;
    return;
  }
  const double a = p.inv_p();
  double total = 0.0;
  for (double& x : out) {
    x = rng.gamma(a);
    total += x;
  }
  total += rng.standard_exponential();
  for (double& x : out) x = rng.sign() * std::pow(x / total, a);
}

std::vector<double> sample_ball(Dimension n, const Exponent& p,
                                RandomSource& rng) {
  std::vector<double> out(static_cast<std::size_t>(n.value()));
  sample_ball(n, p, rng, out);
  return out;
}

void MomentAccumulator::add(double x) {
  ++count_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(count_);
  m2_ += delta * (x - mean_);
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(count_);
  const double nb = static_cast<double>(other.count_);
  const double total = na + nb;
  const double delta = other.mean_ - mean_;
  mean_ += delta * nb / total;
  m2_ += other.m2_ + delta * delta * na * nb / total;
  count_ += other.count_;
}

double MomentAccumulator::variance() const {
  return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0;
}

MCEstimate MomentAccumulator::estimate() const {
  return {mean_, std::sqrt(variance() / static_cast<double>(count_)), count_};
}

namespace {

// Runs body(rng, draws, acc) once per stream, spreading streams over the
// available cores, and merges the accumulators in stream order.
template <class Body>
MomentAccumulator run_streams(const MCConfig& config, std::uint64_t stream_offset,
                              Body body) {
  config.validate();
  const std::uint64_t per_stream = config.samples / config.streams;
  std::vector<MomentAccumulator> accs(config.streams);
  const unsigned workers = std::max(
      1u, std::min<unsigned>(config.streams, std::thread::hardware_concurrency()));

  auto work = [&](unsigned w) {
    for (std::uint32_t s = w; s < config.streams; s += workers) {
      RandomSource rng(config.seed, stream_offset + s);
      body(rng, per_stream, accs[s]);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  MomentAccumulator total;
  for (const auto& acc : accs) total.merge(acc);
  return total;
}

}  // namespace

MCEstimate estimate_f(Dimension n, const Exponent& p, const MCConfig& config) {
  const Exponent q = p.conjugate();
  const auto acc = run_streams(config, 0, [&](RandomSource& rng,
                                              std::uint64_t draws,
                                              MomentAccumulator& out) {
    std::vector<double> x(static_cast<std::size_t>(n.value()));
    std::vector<double> y(x.size());
    for (std::uint64_t i = 0; i < draws; ++i) {
      sample_ball(n, p, rng, x);
      sample_ball(n, q, rng, y);
      double dot = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) dot += x[j] * y[j];
      out.add(dot * dot);
    }
  });
  return acc.estimate();
}

namespace {

MCEstimate mean_square_coordinate(Dimension n, const Exponent& p,
                                  const MCConfig& config,
                                  std::uint64_t stream_offset) {
  const auto acc = run_streams(config, stream_offset, [&](RandomSource& rng,
                                                          std::uint64_t draws,
                                                          MomentAccumulator& out) {
    std::vector<double> x(static_cast<std::size_t>(n.value()));
    for (std::uint64_t i = 0; i < draws; ++i) {
      sample_ball(n, p, rng, x);
      double sq = 0.0;
      for (double v : x) sq += v * v;
      out.add(sq / n.as_double());
    }
  });
  return acc.estimate();
}

}  // namespace

MCEstimate estimate_f_factored(Dimension n, const Exponent& p,
                               const MCConfig& config) {
  const MCEstimate mp = mean_square_coordinate(n, p, config, 0);
  const MCEstimate mq =
      mean_square_coordinate(n, p.conjugate(), config, config.streams);
  const double m = n.as_double();
  const double var = mq.mean * mq.mean * mp.std_error * mp.std_error +
                     mp.mean * mp.mean * mq.std_error * mq.std_error +
                     mp.std_error * mp.std_error * mq.std_error * mq.std_error;
  return {m * mp.mean * mq.mean, m * std::sqrt(var), config.samples};
}

MCEstimate estimate_coordinate_moment(Dimension n, const Exponent& p,
                                      const MCConfig& config,
                                      std::int64_t coord, int power) {
  if (coord < 1 || coord > n.value()) {
    throw std::invalid_argument("estimate_coordinate_moment: coord out of range");
  }
  if (power < 1) {
    throw std::invalid_argument("estimate_coordinate_moment: power must be >= 1");
  }
  const auto acc = run_streams(config, 0, [&](RandomSource& rng,
                                              std::uint64_t draws,
                                              MomentAccumulator& out) {
    std::vector<double> x(static_cast<std::size_t>(n.value()));
    for (std::uint64_t i = 0; i < draws; ++i) {
      sample_ball(n, p, rng, x);
      out.add(std::pow(x[static_cast<std::size_t>(coord - 1)], power));
    }
  });
  return acc.estimate();
}

}  // namespace lpmoment
