#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "lpmoment/moments.hpp"
#include "lpmoment/montecarlo.hpp"

using namespace lpmoment;

namespace {

double z_score(const MCEstimate& e, double want) {
  return std::fabs(e.mean - want) / e.std_error;
}

double combined_z(const MCEstimate& a, const MCEstimate& b) {
  return std::fabs(a.mean - b.mean) / std::hypot(a.std_error, b.std_error);
}

const MCConfig kMillion{1'000'000, 42, 8};

}  // namespace

TEST_CASE("MCConfig validation") {
  CHECK_NOTHROW(MCConfig{}.validate());
  CHECK_THROWS_AS((MCConfig{0, 1, 1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((MCConfig{10, 1, 0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((MCConfig{10, 1, 3}.validate()), std::invalid_argument);
  CHECK_THROWS_AS(estimate_f(Dimension{2}, Exponent::finite(2.0), MCConfig{10, 1, 3}),
                  std::invalid_argument);
}

TEST_CASE("RandomSource variates") {
  RandomSource rng(7, 0);
  MomentAccumulator u, g, e;
  for (int i = 0; i < 200000; ++i) {
    const double x = rng.uniform();
    REQUIRE(x > 0.0);
    REQUIRE(x < 1.0);
    u.add(x);
    g.add(rng.gamma(0.4));
    e.add(rng.standard_exponential());
    const double s = rng.sign();
    REQUIRE((s == 1.0 || s == -1.0));
  }
  CHECK(z_score(u.estimate(), 0.5) < 4.0);
  CHECK(z_score(g.estimate(), 0.4) < 4.0);
  CHECK(z_score(e.estimate(), 1.0) < 4.0);
}

TEST_CASE("samples lie in the closed unit ball") {
  RandomSource rng(11, 3);
  for (int n : {1, 2, 5, 40}) {
    for (double p : {1.0, 1.2, 1.5, 2.0, 3.0, 8.0, 50.0}) {
      const Dimension d{n};
      const Exponent e = Exponent::finite(p);
      double worst = 0.0;
      for (int i = 0; i < 5000; ++i) {
        double norm = 0.0;
        for (double x : sample_ball(d, e, rng)) norm += std::pow(std::fabs(x), p);
        worst = std::max(worst, norm);
      }
      CAPTURE(n);
      CAPTURE(p);
      CHECK(worst <= 1.0 + 1e-12);
    }
    double worst = 0.0;
    for (int i = 0; i < 5000; ++i) {
      for (double x : sample_ball(Dimension{n}, Exponent::infinity(), rng)) {
        worst = std::max(worst, std::fabs(x));
      }
    }
    CHECK(worst <= 1.0);
  }
}

TEST_CASE("sample_ball span form checks its size") {
  RandomSource rng(1, 0);
  std::vector<double> out(3);
  CHECK_THROWS_AS(sample_ball(Dimension{4}, Exponent::finite(2.0), rng, out),
                  std::invalid_argument);
}

TEST_CASE("sampler moment examples") {
  const auto line = estimate_coordinate_moment(Dimension{1}, Exponent::finite(2.0), kMillion, 1, 2);
  CHECK(z_score(line, 1.0 / 3.0) < 3.0);

  const auto four = estimate_coordinate_moment(Dimension{4}, Exponent::finite(1.5), kMillion, 1, 2);
  CHECK(z_score(four, normalized_second_moment(Dimension{4}, Exponent::finite(1.5))) < 3.0);

  const auto five = estimate_coordinate_moment(Dimension{5}, Exponent::finite(1.7), kMillion, 1, 2);
  CHECK(z_score(five, normalized_second_moment(Dimension{5}, Exponent::finite(1.7))) < 3.0);
}

TEST_CASE("uniformity through coordinate moments") {
  const Exponent ps[] = {Exponent::finite(1.0), Exponent::finite(1.5), Exponent::finite(2.0),
                         Exponent::finite(3.0), Exponent::infinity()};
  for (int n : {1, 2, 3, 5}) {
    for (const auto& p : ps) {
      const Dimension d{n};
      CAPTURE(n);
      CAPTURE(p.to_string());
      const auto second = estimate_coordinate_moment(d, p, kMillion, 1, 2);
      CHECK(z_score(second, normalized_second_moment(d, p)) < 4.0);
      const auto first = estimate_coordinate_moment(d, p, kMillion, 1, 1);
      CHECK(z_score(first, 0.0) < 4.0);
    }
  }
}

TEST_CASE("coordinates are exchangeable") {
  for (double p : {1.0, 1.5, 3.0}) {
    const Dimension d{3};
    const Exponent e = Exponent::finite(p);
    const auto x1 = estimate_coordinate_moment(d, e, MCConfig{1'000'000, 1, 8}, 1, 2);
    const auto x2 = estimate_coordinate_moment(d, e, MCConfig{1'000'000, 2, 8}, 2, 2);
    CAPTURE(p);
    CHECK(combined_z(x1, x2) < 4.0);
  }
  CHECK_THROWS_AS(estimate_coordinate_moment(Dimension{3}, Exponent::finite(2.0), kMillion, 4, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(estimate_coordinate_moment(Dimension{3}, Exponent::finite(2.0), kMillion, 0, 2),
                  std::invalid_argument);
}

TEST_CASE("estimates are reproducible") {
  const MCConfig cfg{100'000, 123, 4};
  const MCEstimate a = estimate_f(Dimension{3}, Exponent::finite(1.7), cfg);
  const MCEstimate b = estimate_f(Dimension{3}, Exponent::finite(1.7), cfg);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
  CHECK(a.samples == 100'000);

  const MCEstimate c = estimate_f(Dimension{3}, Exponent::finite(1.7), MCConfig{100'000, 123, 5});
  const double want = f_gamma(Dimension{3}, Exponent::finite(1.7)).value;
  CHECK(z_score(c, want) < 4.0);
  CHECK(z_score(a, want) < 4.0);
}

TEST_CASE("estimate_f examples") {
  CHECK(z_score(estimate_f(Dimension{2}, Exponent::finite(2.0), kMillion), 0.125) < 3.0);
  CHECK(z_score(estimate_f(Dimension{3}, Exponent::finite(1.0), kMillion), 0.1) < 3.0);
  CHECK(z_score(estimate_f(Dimension{5}, Exponent::finite(1.4), kMillion),
                f_gamma(Dimension{5}, Exponent::finite(1.4)).value) < 3.0);
}

TEST_CASE("f(3, 1.5) from ten million pairs") {
  const MCEstimate e = estimate_f(Dimension{3}, Exponent::finite(1.5), MCConfig{10'000'000, 42, 8});
  const double closed = f_gamma(Dimension{3}, Exponent::finite(1.5)).value;
  const MomentResult prod = f_product(Dimension{3}, Exponent::finite(1.5));
  CHECK(z_score(e, closed) < 3.0);
  CHECK(z_score(e, prod.value) < 3.0);
  CHECK(e.std_error < 1e-4);
}

TEST_CASE("factored estimator") {
  for (double p : {1.0, 1.5, 4.0}) {
    const auto e = estimate_f_factored(Dimension{1}, Exponent::finite(p), kMillion);
    CAPTURE(p);
    CHECK(z_score(e, 1.0 / 9.0) < 3.0);
  }
  const auto self_dual = estimate_f_factored(Dimension{2}, Exponent::finite(2.0), kMillion);
  CHECK(z_score(self_dual, 0.125) < 3.0);

  const auto four = estimate_f_factored(Dimension{4}, Exponent::finite(1.25), kMillion);
  CHECK(z_score(four, f_gamma(Dimension{4}, Exponent::finite(1.25)).value) < 3.0);
}

TEST_CASE("pairwise and factored estimators agree") {
  for (int n : {2, 3, 5}) {
    for (double p : {1.0, 1.4, 3.0}) {
      const Dimension d{n};
      const Exponent e = Exponent::finite(p);
      CAPTURE(n);
      CAPTURE(p);
      CHECK(combined_z(estimate_f(d, e, kMillion),
                       estimate_f_factored(d, e, MCConfig{1'000'000, 99, 8})) < 3.0);
    }
  }
}

TEST_CASE("MomentAccumulator merge matches a single pass") {
  MomentAccumulator all, left, right;
  RandomSource rng(5, 0);
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.standard_normal() * 3.0 + 1.0;
    all.add(x);
    (i < 300 ? left : right).add(x);
  }
  left.merge(right);
  CHECK(left.count() == all.count());
  CHECK(left.mean() == doctest::Approx(all.mean()).epsilon(1e-13));
  CHECK(left.variance() == doctest::Approx(all.variance()).epsilon(1e-12));

  MomentAccumulator empty;
  empty.merge(all);
  CHECK(empty.mean() == all.mean());
  const MCEstimate e = all.estimate();
  CHECK(e.std_error == doctest::Approx(std::sqrt(all.variance() / 1000.0)));
}
