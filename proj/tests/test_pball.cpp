#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "lpmoment/pball.hpp"

using namespace lpmoment;

namespace {

double rel_err(double got, double want) {
  return std::fabs(got - want) / std::fabs(want);
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

const double kGridP[] = {1.0, 1.05, 1.3, 1.5, 1.7, 2.0, 2.5, 3.0, 4.0, 7.0, 20.0, 1e3};

}  // namespace

TEST_CASE("Dimension range") {
  CHECK(Dimension{1}.value() == 1);
  CHECK(Dimension{1'000'000}.as_double() == 1e6);
  CHECK_THROWS_AS(Dimension{0}, std::invalid_argument);
  CHECK_THROWS_AS(Dimension{-3}, std::invalid_argument);
  CHECK_THROWS_AS(Dimension{1'000'001}, std::out_of_range);
}

TEST_CASE("conjugate examples") {
  const Exponent two = Exponent::finite(2.0);
  CHECK(two.conjugate().p() == 2.0);

  const Exponent one = Exponent::finite(1.0);
  CHECK(one.conjugate().is_infinite());
  CHECK(Exponent::infinity().conjugate().is_one());

  const Exponent four = Exponent::finite(4.0);
  CHECK(rel_err(four.conjugate().p(), 4.0 / 3.0) < 1e-15);
}

TEST_CASE("Exponent invariants") {
  for (double p : kGridP) {
    const Exponent e = Exponent::finite(p);
    const Exponent q = e.conjugate();
    CAPTURE(p);
    CHECK(std::fabs(e.inv_p() + e.inv_q() - 1.0) < 1e-15);
    CHECK(q.conjugate() == e);
    CHECK(q.t() == e.t());
    CHECK(std::fabs(e.t() - (p - 1.0) / (p * p)) < 1e-15);
    CHECK(e.t() >= 0.0);
    CHECK(e.t() <= 0.25);
  }
  CHECK(Exponent::finite(1.0).t() == 0.0);
  CHECK(Exponent::infinity().t() == 0.0);
  CHECK(Exponent::finite(2.0).t() == 0.25);
  CHECK(Exponent::finite(1.5).t() > 0.0);
}

TEST_CASE("Exponent snapping and rejection") {
  CHECK(Exponent::finite(1.0 + 5e-13).is_one());
  CHECK(Exponent::finite(1.0 + 5e-13).p() == 1.0);
  CHECK_FALSE(Exponent::finite(1.0 + 1e-11).is_one());
  CHECK_THROWS_AS(Exponent::finite(0.999), std::domain_error);
  CHECK_THROWS_AS(Exponent::finite(NAN), std::domain_error);
  CHECK(Exponent::finite(INFINITY).is_infinite());
}

TEST_CASE("Exponent parse") {
  CHECK(Exponent::parse("inf").is_infinite());
  CHECK(Exponent::parse("1.5").p() == 1.5);
  CHECK(Exponent::parse("2").p() == 2.0);
  CHECK_THROWS_AS(Exponent::parse("1/3"), std::invalid_argument);
  CHECK_THROWS_AS(Exponent::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Exponent::parse("2x"), std::invalid_argument);
  CHECK_THROWS_AS(Exponent::parse("abc"), std::invalid_argument);
  CHECK_THROWS_AS(Exponent::parse("0.5"), std::domain_error);
  CHECK(Exponent::parse("inf").to_string() == "inf");
  CHECK(Exponent::parse(Exponent::finite(4.0 / 3.0).to_string()) ==
        Exponent::finite(4.0 / 3.0));
}

TEST_CASE("volume examples") {
  CHECK(rel_err(volume(Dimension{2}, Exponent::finite(2.0)), M_PI) < 1e-14);
  CHECK(volume(Dimension{3}, Exponent::infinity()) == 8.0);
  CHECK(rel_err(volume(Dimension{4}, Exponent::finite(1.0)), 2.0 / 3.0) < 1e-15);
}

TEST_CASE("exact endpoint volumes") {
  for (int n = 1; n <= 20; ++n) {
    const Dimension d{n};
    CAPTURE(n);
    CHECK(volume(d, Exponent::infinity()) == std::ldexp(1.0, n));
    CHECK(rel_err(volume(d, Exponent::finite(1.0)) * factorial(n), std::ldexp(1.0, n)) <
          1e-15);
  }
}

TEST_CASE("second_moment_integral examples") {
  CHECK(rel_err(second_moment_integral(Dimension{3}, Exponent::infinity()), 8.0 / 3.0) <
        1e-15);
  CHECK(rel_err(second_moment_integral(Dimension{2}, Exponent::finite(1.0)), 1.0 / 3.0) <
        1e-15);
  CHECK(rel_err(second_moment_integral(Dimension{1}, Exponent::finite(2.0)), 2.0 / 3.0) <
        1e-14);
}

TEST_CASE("continuity towards p = inf") {
  const Exponent big = Exponent::finite(1e6);
  for (int n = 1; n <= 20; ++n) {
    const Dimension d{n};
    CAPTURE(n);
    CHECK(rel_err(volume(d, big), std::ldexp(1.0, n)) < 1e-3);
    CHECK(rel_err(second_moment_integral(d, big), std::ldexp(1.0, n) / 3.0) < 1e-3);
  }
}

TEST_CASE("normalized_second_moment") {
  CHECK(rel_err(normalized_second_moment(Dimension{1}, Exponent::finite(2.0)), 1.0 / 3.0) <
        1e-14);
  CHECK(normalized_second_moment(Dimension{3}, Exponent::infinity()) == 1.0 / 3.0);
  // mpmath
  CHECK(rel_err(normalized_second_moment(Dimension{5}, Exponent::finite(1.7)),
                0.1181628632663638469) < 1e-13);
  CHECK(rel_err(normalized_second_moment(Dimension{3}, Exponent::finite(3.0)),
                0.24809800293980642228) < 1e-13);

  for (int n : {1, 2, 3, 5, 10, 50, 100, 1000}) {
    for (double p : kGridP) {
      const double m = normalized_second_moment(Dimension{n}, Exponent::finite(p));
      CAPTURE(n);
      CAPTURE(p);
      CHECK(m > 0.0);
      CHECK(m <= 1.0 / 3.0 + 1e-15);
      if (n <= 100) {
        CHECK(rel_err(m, second_moment_integral(Dimension{n}, Exponent::finite(p)) /
                             volume(Dimension{n}, Exponent::finite(p))) < 1e-12);
      }
    }
    CHECK(normalized_second_moment(Dimension{n}, Exponent::infinity()) == 1.0 / 3.0);
  }
}

TEST_CASE("second moment agrees with the expanded lower-dimensional volume") {
  for (int n = 2; n <= 30; ++n) {
    for (double p : kGridP) {
      const Dimension d{n};
      const Exponent e = Exponent::finite(p);
      // (2/p) |B^{n-1}| G(3/p) G(1+(n-1)/p) / G(1+(n+2)/p) with
      // |B^{n-1}| = [2 G(1+1/p)]^{n-1} / G(1+(n-1)/p)
      const double ln_expanded = std::log(2.0 / p) +
                                 (n - 1) * (std::log(2.0) + std::lgamma(1.0 + 1.0 / p)) +
                                 std::lgamma(3.0 / p) - std::lgamma(1.0 + (n + 2.0) / p);
      CAPTURE(n);
      CAPTURE(p);
      CHECK(rel_err(second_moment_integral(d, e), std::exp(ln_expanded)) < 1e-12);
    }
  }
}

TEST_CASE("log space survives large n") {
  const Dimension d{1000};
  const Exponent p = Exponent::finite(1.5);
  CHECK(std::isfinite(log_volume(d, p)));
  CHECK(std::isfinite(log_second_moment_integral(d, p)));
  CHECK(log_volume(d, p) < -1000.0);
}
