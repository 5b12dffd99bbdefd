#include "entpure/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace entpure {

namespace {

constexpr double kTableTol = 1e-12;

double off_identity_sum(const NoiseTable& p) {
  double s = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != 0 || j != 0) s += p[i][j];
  return s;
}

void check_p_m(double p_m) {
  if (!(p_m >= 0.0) || !(p_m <= 0.5))
    throw std::invalid_argument("p_m must lie in [0, 1/2]");
}

}  // namespace

double NoiseParams::p_g() const { return off_identity_sum(p); }

void NoiseParams::validate() const {
  check_p_m(p_m);
  double s = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (p[i][j] < 0.0)
        throw std::invalid_argument("noise table entries must be nonnegative");
      s += p[i][j];
    }
  if (std::abs(s - 1.0) > kTableTol)
    throw std::invalid_argument("noise table must sum to 1");
}

NoiseParams uniform_noise(double p_g, double p_m) {
  check_p_m(p_m);
  if (!(p_g >= 0.0) || !(p_g <= 1.0))
    throw std::invalid_argument("p_g must lie in [0, 1]");
  NoiseParams n;
  n.p_m = p_m;
  const double w = p_g / 15.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) n.p[i][j] = w;
  n.p[0][0] = 1.0 - p_g;
  return n;
}

NoiseParams kay_noise(double q1, double q2, double q3, double p_m) {
  check_p_m(p_m);
  const double q[4] = {0.0, q1, q2, q3};
  for (int i = 1; i < 4; ++i)
    if (q[i] < 0.0) throw std::invalid_argument("q_i must be nonnegative");
  NoiseParams n;
  n.p_m = p_m;
  for (int i = 1; i < 4; ++i) {
    n.p[i][0] = q[i];
    n.p[0][i] = q[i];
    for (int j = 1; j < 4; ++j) n.p[i][j] = q[i] * q[j];
  }
  const double rest = off_identity_sum(n.p);
  if (rest > 1.0 + kTableTol)
    throw std::invalid_argument("q_i too large, table exceeds unit weight");
  n.p[0][0] = 1.0 - rest;
  if (n.p[0][0] < 0.0) n.p[0][0] = 0.0;
  return n;
}

NoiseParams kay_noise(double p_g, double p_m) {
  const double q = p_g / 3.0;
  return kay_noise(q, q, q, p_m);
}

NoiseParams custom_noise(const NoiseTable& table, double p_m) {
  check_p_m(p_m);
  NoiseParams n;
  n.p_m = p_m;
  n.p = table;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (n.p[i][j] < 0.0)
        throw std::invalid_argument("noise table entries must be nonnegative");
  const double rest = off_identity_sum(n.p);
  if (rest > 1.0 + kTableTol)
    throw std::invalid_argument("noise table error weight exceeds 1");
  const double derived = rest < 1.0 ? 1.0 - rest : 0.0;
  if (n.p[0][0] != 0.0 && std::abs(n.p[0][0] - derived) > kTableTol)
    throw std::invalid_argument("identity weight inconsistent with the rest of the table");
  n.p[0][0] = derived;
  return n;
}

NoiseParams make_noise(NoiseKind kind, double strength, double p_m) {
  switch (kind) {
    case NoiseKind::Uniform:
      return uniform_noise(strength, p_m);
    case NoiseKind::Kay:
      return kay_noise(strength, p_m);
  }
  throw std::invalid_argument("unknown noise kind");
}

}  // namespace entpure
