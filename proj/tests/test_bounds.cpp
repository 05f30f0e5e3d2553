#include <cmath>

#include "doctest.h"

#include "bcast/bounds.hpp"
#include "bcast/types.hpp"

using namespace bcast;

TEST_CASE("time bound per-node factor at key growth values") {
  // f(x) = (x^2 + 3x) / (x - 1), evaluated by hand
  CHECK(time_bound(3.0, 1) == 9.0);
  CHECK(time_bound(2.0, 1) == 10.0);
  CHECK(time_bound(4.0, 1) == doctest::Approx(28.0 / 3.0));
  CHECK(time_bound(3.0, 10) == 90.0);
  CHECK(time_bound(1.5, 4) == doctest::Approx((2.25 + 4.5) / 0.5 * 4));
}

TEST_CASE("the factor is minimal at x = 3") {
  CHECK(optimal_x() == 3.0);
  const double at3 = time_bound(3.0, 1);
  for (double x = 1.1; x < 8.0; x += 0.01) {
    CHECK(time_bound(x, 1) >= at3 - 1e-12);
  }
  CHECK(time_bound(3.0, 1) < time_bound(2.0, 1));
  CHECK(time_bound(3.0, 1) < time_bound(4.0, 1));
}

TEST_CASE("message bound frozen values") {
  // ((lg n - lg(1+x)) / lg((x+1)/x) + 1) * n, lg base 2
  CHECK(std::log2(4.0 / 3.0) == doctest::Approx(0.4150374992788437).epsilon(1e-15));
  CHECK(message_bound(3.0, 8) == doctest::Approx(27.275366717225672).epsilon(1e-13));
  CHECK(message_bound(3.0, 64) == doctest::Approx(680.8117349512216).epsilon(1e-13));
}

TEST_CASE("message bound never drops below n") {
  // the raw formula goes negative when n < 1 + x; the bound clamps to n
  CHECK(message_bound(3.0, 1) == 1.0);
  CHECK(message_bound(3.0, 2) == 2.0);
  CHECK(message_bound(3.0, 3) == 3.0);
  CHECK(message_bound(3.0, 4) == 4.0);
}

TEST_CASE("bounds grow with n") {
  CHECK(time_bound(3.0, 64) == 9.0 * 64);
  CHECK(message_bound(3.0, 64) > message_bound(3.0, 8));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(time_bound(1.0, 4), Error);
  CHECK_THROWS_AS(time_bound(0.5, 4), Error);
  CHECK_THROWS_AS(time_bound(3.0, 0), Error);
  CHECK_THROWS_AS(message_bound(1.0, 4), Error);
  CHECK_THROWS_AS(message_bound(3.0, 0), Error);
}
