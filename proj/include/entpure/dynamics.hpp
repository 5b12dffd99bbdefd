#pragma once

#include <optional>
#include <vector>

#include "entpure/bell.hpp"
#include "entpure/noise.hpp"
#include "entpure/tensors.hpp"

namespace entpure {

enum class Scheme { Single, Double };

constexpr int copies_per_round(Scheme s) { return s == Scheme::Single ? 2 : 3; }

struct PurificationMap {
  Scheme scheme = Scheme::Single;
  SingleTensor single{};
  DoubleTensor dbl{};

  // exact = true derives the tensor from the density-matrix simulator instead
  // of the label algebra; the two must agree to 1e-10.
  static PurificationMap from_noise(Scheme scheme, const NoiseParams& noise,
                                    bool exact = false);
};

struct StepResult {
  BellVector f;
  double success = 0.0;
};

// One purification round: contract the tensor with 2 (single) or 3 (double)
// identical copies of f, renormalize.  Throws when the round can never
// succeed on this input.
StepResult apply_map(const PurificationMap& map, const BellVector& f);

struct Trajectory {
  std::vector<BellVector> states;   // states[0] = f0
  std::vector<double> success;      // success[n] = round n+1 probability
  bool converged = false;
};

// Repeated rounds until the state moves less than 1e-12 in the sup norm.
Trajectory iterate(const PurificationMap& map, const BellVector& f0,
                   int max_rounds = 10000);

// Stationary state of the full map, found by iterating from the perfect
// state; absent when the iteration decays to the completely mixed level
// (within 1e-3 of 1/4) or a round dies.
std::optional<BellVector> attracting_fixed_point(const PurificationMap& map,
                                                 int max_rounds = 10000);

struct FixedPointReport {
  std::optional<BellVector> f_max;
  std::optional<double> f_min;  // channel-fidelity basin boundary
  BellVector f_mix{0.25, 0.25, 0.25, 0.25};
  bool converged = false;
  int iterations = 0;
};

// f_max is the stationary state reached by the full map from the perfect
// state.  f_min is the unstable diagonal crossing of the purification curve
// (one round on a channel-shaped input), bisected to 1e-9 between channel
// fidelities whose curve iterations climb and those that decay to 1/4;
// absent when even the curve from fidelity 1 decays, which can happen while
// the full map still purifies (the curve reshapes the state isotropically
// every round, the map's stationary state is anisotropic).
FixedPointReport fixed_points(const PurificationMap& map);

bool inside_working_range(const PurificationMap& map);

// Largest gate-noise strength (bisected to tol) at which the attracting
// fixed point survives, for the given measurement error; absent when even
// strength 0 is outside the range.
std::optional<double> gate_noise_threshold(Scheme scheme, NoiseKind kind,
                                           double p_m, double strength_hi = 0.2,
                                           double tol = 1e-4);

struct YieldReport {
  double target_f = 0.0;
  double f_ch = 0.0;
  int n_rounds = 0;
  double yield = 1.0;
  std::vector<double> per_round_success;
};

// Rounds until the fidelity of the channel-shaped start reaches target_f,
// and the inverse pair consumption [prod_n N_A / p_A(n)]^{-1}.
YieldReport yield(const PurificationMap& map, double target_f, double f_ch);

enum class BoundVariant { A, B };

// First-order fidelity ceiling from the undetectable errors of the last
// round: 1 - 2(p_30 + sum_i p_i0) for variant A, with p_10 instead of p_30
// for the gate-order variant B.
double upper_bound_first_order(const NoiseParams& noise, BoundVariant variant);

// Predicted first-order gap between the double and single selection ceilings
// under uniform noise.
double single_double_gap(double p_g);

}  // namespace entpure
