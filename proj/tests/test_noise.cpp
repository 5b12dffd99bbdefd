#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "entpure/noise.hpp"

using namespace entpure;

namespace {

double table_sum(const NoiseParams& n) {
  double s = 0.0;
  for (const auto& row : n.p)
    for (double x : row) s += x;
  return s;
}

}  // namespace

TEST_CASE("uniform noise splits p_g over the 15 error pairs") {
  const NoiseParams n = uniform_noise(0.15, 0.05);
  CHECK(n.p[0][0] == doctest::Approx(0.85));
  CHECK(n.p[1][0] == doctest::Approx(0.01));
  CHECK(n.p[3][3] == doctest::Approx(0.01));
  CHECK(n.p_m == doctest::Approx(0.05));
  CHECK(n.p_g() == doctest::Approx(0.15));
  CHECK(table_sum(n) == doctest::Approx(1.0));
  CHECK_NOTHROW(n.validate());
  CHECK_NOTHROW(uniform_noise(0.0, 0.0).validate());
}

TEST_CASE("kay noise product form") {
  const double q1 = 0.02, q2 = 0.01, q3 = 0.03;
  const NoiseParams n = kay_noise(q1, q2, q3, 0.01);
  CHECK(n.p[1][0] == doctest::Approx(q1));
  CHECK(n.p[0][2] == doctest::Approx(q2));
  CHECK(n.p[3][0] == doctest::Approx(q3));
  CHECK(n.p[1][3] == doctest::Approx(q1 * q3));
  CHECK(n.p[2][2] == doctest::Approx(q2 * q2));
  CHECK(table_sum(n) == doctest::Approx(1.0));
  CHECK(n.p_g() == doctest::Approx(1.0 - n.p[0][0]));

  const NoiseParams even = kay_noise(0.06, 0.0);
  const NoiseParams ref = kay_noise(0.02, 0.02, 0.02, 0.0);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(even.p[i][j] == doctest::Approx(ref.p[i][j]));
}

TEST_CASE("custom noise derives or checks the no-error weight") {
  NoiseTable t{};
  t[1][0] = 0.03;
  t[0][3] = 0.02;
  const NoiseParams n = custom_noise(t, 0.0);
  CHECK(n.p[0][0] == doctest::Approx(0.95));
  CHECK(n.p_g() == doctest::Approx(0.05));

  t[0][0] = 0.95;
  CHECK_NOTHROW(custom_noise(t, 0.0));
  t[0][0] = 0.90;  // inconsistent with the rest
  CHECK_THROWS_AS(custom_noise(t, 0.0), std::invalid_argument);
}

TEST_CASE("validation rejects bad parameters") {
  NoiseTable t{};
  t[1][0] = -0.01;
  CHECK_THROWS_AS(custom_noise(t, 0.0), std::invalid_argument);

  NoiseTable big{};
  big[1][0] = 0.7;
  big[0][1] = 0.7;
  CHECK_THROWS_AS(custom_noise(big, 0.0), std::invalid_argument);

  NoiseTable ok{};
  ok[1][0] = 0.1;
  CHECK_THROWS_AS(custom_noise(ok, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(custom_noise(ok, 1.1), std::invalid_argument);
}

TEST_CASE("make_noise dispatch") {
  const NoiseParams u = make_noise(NoiseKind::Uniform, 0.09, 0.02);
  const NoiseParams uref = uniform_noise(0.09, 0.02);
  const NoiseParams k = make_noise(NoiseKind::Kay, 0.09, 0.02);
  const NoiseParams kref = kay_noise(0.09, 0.02);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      CHECK(u.p[i][j] == doctest::Approx(uref.p[i][j]));
      CHECK(k.p[i][j] == doctest::Approx(kref.p[i][j]));
    }
  CHECK(u.p_m == doctest::Approx(0.02));
  CHECK(k.p_m == doctest::Approx(0.02));
}
