#include "entpure/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "entpure/oracle.hpp"

namespace entpure {

namespace {

constexpr double kMixedBand = 1e-3;  // fidelities this close to 1/4 count as collapsed

double sup_distance(const BellVector& a, const BellVector& b) {
  double d = 0.0;
  for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

PurificationMap PurificationMap::from_noise(Scheme scheme,
                                            const NoiseParams& noise,
                                            bool exact) {
  PurificationMap m;
  m.scheme = scheme;
  if (scheme == Scheme::Single)
    m.single = exact ? oracle::simulate_single_round_exact(noise)
                     : build_single_tensor(noise);
  else
    m.dbl = exact ? oracle::simulate_double_round_exact(noise)
                  : build_double_tensor(noise);
  return m;
}

StepResult apply_map(const PurificationMap& map, const BellVector& f) {
  validate_bell(f);
  BellVector q{0.0, 0.0, 0.0, 0.0};
  if (map.scheme == Scheme::Single) {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) q[i] += map.single.s[i][j][k] * f[j] * f[k];
  } else {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
          const double fjk = f[j] * f[k];
          if (fjk == 0.0) continue;
          for (int l = 0; l < 4; ++l) q[i] += map.dbl.d[i][j][k][l] * fjk * f[l];
        }
  }
  const double p = bell_sum(q);
  if (p <= 0.0)
    throw std::runtime_error("protocol never succeeds on this input");
  StepResult out;
  out.success = p;
  out.f = normalize(q);
  return out;
}

Trajectory iterate(const PurificationMap& map, const BellVector& f0,
                   int max_rounds) {
  if (max_rounds < 1) throw std::invalid_argument("max_rounds must be >= 1");
  Trajectory t;
  t.states.push_back(f0);
  for (int n = 0; n < max_rounds; ++n) {
    StepResult step = apply_map(map, t.states.back());
    const double d = sup_distance(step.f, t.states.back());
    t.states.push_back(step.f);
    t.success.push_back(step.success);
    if (d < 1e-12) {
      t.converged = true;
      break;
    }
  }
  return t;
}

namespace {

bool purified(double f) { return f > 0.25 + kMixedBand; }

// One round on a channel-shaped input: the purification curve F -> F'.
// F_min is read off this curve (its unstable diagonal crossing), while
// F_max comes from iterating the full 4-component map: the two reductions
// genuinely differ, since the curve reshapes the state isotropically every
// round while the map's stationary state is anisotropic.
std::optional<double> curve(const PurificationMap& map, double f) {
  try {
    return apply_map(map, channel_initial_vector(f)).f[0];
  } catch (const std::runtime_error&) {
    return std::nullopt;
  }
}

// Iterate the curve from f0 until the fidelity settles; returns the limit.
double curve_limit(const PurificationMap& map, double f0, int max_rounds) {
  double f = f0;
  for (int n = 0; n < max_rounds; ++n) {
    const std::optional<double> next = curve(map, f);
    if (!next) return 0.25;
    const double d = std::abs(*next - f);
    f = *next;
    if (d < 1e-12) break;
  }
  return f;
}

}  // namespace

std::optional<BellVector> attracting_fixed_point(const PurificationMap& map,
                                                 int max_rounds) {
  Trajectory t;
  try {
    t = iterate(map, BellVector{1.0, 0.0, 0.0, 0.0}, max_rounds);
  } catch (const std::runtime_error&) {
    return std::nullopt;
  }
  const BellVector& end = t.states.back();
  if (!purified(end[0])) return std::nullopt;
  return end;
}

FixedPointReport fixed_points(const PurificationMap& map) {
  FixedPointReport report;
  Trajectory t;
  try {
    t = iterate(map, BellVector{1.0, 0.0, 0.0, 0.0});
  } catch (const std::runtime_error&) {
    return report;
  }
  report.converged = t.converged;
  report.iterations = static_cast<int>(t.success.size());
  if (!purified(t.states.back()[0])) return report;
  report.f_max = t.states.back();

  auto purifies_from = [&](double f_ch) {
    return purified(curve_limit(map, f_ch, 10000));
  };
  if (!purifies_from(1.0)) return report;  // curve dies even from the top

  // unstable crossing of the curve: boundary between curve iterations that
  // climb to f_max and those that decay to 1/4
  double lo = 0.25 + 1e-9, hi = 1.0;
  if (purifies_from(lo)) {
    report.f_min = lo;
    return report;
  }
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    (purifies_from(mid) ? hi : lo) = mid;
  }
  report.f_min = 0.5 * (lo + hi);
  return report;
}

bool inside_working_range(const PurificationMap& map) {
  return attracting_fixed_point(map).has_value();
}

std::optional<double> gate_noise_threshold(Scheme scheme, NoiseKind kind,
                                           double p_m, double strength_hi,
                                           double tol) {
  auto inside = [&](double strength) {
    return inside_working_range(
        PurificationMap::from_noise(scheme, make_noise(kind, strength, p_m)));
  };
  if (!inside(0.0)) return std::nullopt;
  if (inside(strength_hi)) return strength_hi;
  double lo = 0.0, hi = strength_hi;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (inside(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

YieldReport yield(const PurificationMap& map, double target_f, double f_ch) {
  if (target_f <= 0.0 || target_f > 1.0)
    throw std::invalid_argument("target fidelity must lie in (0,1]");
  YieldReport report;
  report.target_f = target_f;
  report.f_ch = f_ch;
  BellVector f = channel_initial_vector({f_ch});
  const int n_a = copies_per_round(map.scheme);
  for (int n = 0; f[0] < target_f; ++n) {
    if (n >= 10000) throw std::runtime_error("target fidelity unreachable");
    StepResult step;
    try {
      step = apply_map(map, f);
    } catch (const std::runtime_error&) {
      throw std::runtime_error("target fidelity unreachable");
    }
    if (sup_distance(step.f, f) < 1e-12 && step.f[0] < target_f)
      throw std::runtime_error("target fidelity unreachable");
    f = step.f;
    report.per_round_success.push_back(step.success);
    report.yield *= step.success / n_a;
    ++report.n_rounds;
  }
  return report;
}

double upper_bound_first_order(const NoiseParams& noise, BoundVariant variant) {
  noise.validate();
  double leak = noise.p[variant == BoundVariant::A ? 3 : 1][0];
  for (int i = 1; i < 4; ++i) leak += noise.p[i][0];
  return 1.0 - 2.0 * leak;
}

double single_double_gap(double p_g) { return (8.0 / 15.0) * p_g; }

}  // namespace entpure
