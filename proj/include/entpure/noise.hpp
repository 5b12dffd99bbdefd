#pragma once

#include <array>

namespace entpure {

using NoiseTable = std::array<std::array<double, 4>, 4>;

// Error model of one noisy C-Not plus local measurements: after the ideal
// gate, sigma_i (control) otimes sigma_j (target) is applied with probability
// p[i][j]; p[0][0] carries the no-error weight so the table sums to 1.
// p_m is the probability that a single-qubit measurement reports the flipped
// outcome.
struct NoiseParams {
  NoiseTable p{{{1.0, 0.0, 0.0, 0.0},
                {0.0, 0.0, 0.0, 0.0},
                {0.0, 0.0, 0.0, 0.0},
                {0.0, 0.0, 0.0, 0.0}}};
  double p_m = 0.0;

  // total gate error weight, i.e. everything but p[0][0]
  double p_g() const;

  void validate() const;
};

NoiseParams uniform_noise(double p_g, double p_m);

// p_i0 = p_0i = q_i, p_ij = q_i q_j for i, j != 0.
NoiseParams kay_noise(double q1, double q2, double q3, double p_m);
// equal-weight variant, q_i = p_g / 3
NoiseParams kay_noise(double p_g, double p_m);

// Arbitrary table; the (0,0) entry may be left 0 and is derived from the
// rest, otherwise it must be consistent with it.
NoiseParams custom_noise(const NoiseTable& table, double p_m);

enum class NoiseKind { Uniform, Kay };

// Dispatch on the model family with a single strength knob (the uniform p_g,
// or the Kay sum q_1 + q_2 + q_3 split evenly).
NoiseParams make_noise(NoiseKind kind, double strength, double p_m);

}  // namespace entpure
