#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace entpure {

// Weights of a Bell-diagonal two-qubit state over the projectors
// phi_0..phi_3, where phi_j is phi_0 = (|00> + |11>)/sqrt(2) with sigma_j
// applied to the first qubit.  Valid vectors are entrywise in [0,1] and sum
// to 1 within kStateTol.
using BellVector = std::array<double, 4>;

// Relabeling of Bell indices induced by a one-sided Pauli.
using PauliPerm = std::array<int, 4>;

inline constexpr double kStateTol = 1e-12;

// pauli_action(i)[a] is the index of (sigma_i otimes 1) phi_a (sigma_i otimes 1).
// The four permutations form the Klein group; each is its own inverse.
inline const PauliPerm& pauli_action(int i) {
  static constexpr std::array<PauliPerm, 4> perms{{
      {0, 1, 2, 3},
      {1, 0, 3, 2},
      {2, 3, 0, 1},
      {3, 2, 1, 0},
  }};
  if (i < 0 || i > 3) throw std::invalid_argument("pauli index out of range");
  return perms[static_cast<std::size_t>(i)];
}

// The unique i with pauli_action(i)[a] == c.
inline int pauli_between(int a, int c) {
  for (int i = 0; i < 4; ++i)
    if (pauli_action(i)[a] == c) return i;
  throw std::logic_error("pauli_between: unreachable");
}

// Graph-label bit pair of a Bell index: phi_0 -> (0,0), phi_1 -> (1,0),
// phi_2 -> (1,1), phi_3 -> (0,1).  The first bit distinguishes the
// Z-coincidence classes {0,3} / {1,2}, the second the X classes {0,1} / {2,3}.
inline int mu_first(int label) { return label == 1 || label == 2; }
inline int mu_second(int label) { return label == 2 || label == 3; }
inline int label_from_mu(int first, int second) {
  static constexpr int table[2][2] = {{0, 3}, {1, 2}};
  return table[first][second];
}

// Label relabeling of the bilateral Hadamard (exchanges phi_1 and phi_3).
inline int frame_swap(int label) {
  static constexpr int table[4] = {0, 3, 2, 1};
  return table[label];
}

inline double bell_sum(const BellVector& f) {
  return f[0] + f[1] + f[2] + f[3];
}

inline void validate_bell(const BellVector& f) {
  for (double x : f)
    if (x < -kStateTol || x > 1.0 + kStateTol)
      throw std::invalid_argument("bell vector entry outside [0, 1]");
  if (std::abs(bell_sum(f) - 1.0) > kStateTol)
    throw std::invalid_argument("bell vector must sum to 1");
}

inline BellVector normalize(const BellVector& f) {
  for (double x : f)
    if (x < 0.0) throw std::invalid_argument("bell vector entry negative");
  const double s = bell_sum(f);
  if (s <= 0.0) throw std::invalid_argument("degenerate state");
  return {f[0] / s, f[1] / s, f[2] / s, f[3] / s};
}

struct ChannelParams {
  double f_ch = 1.0;

  void validate() const {
    if (!(f_ch > 0.25) || !(f_ch <= 1.0))
      throw std::invalid_argument("channel fidelity must lie in (1/4, 1]");
  }
};

// Bell-diagonal state produced by the one-sided depolarizing channel:
// weight f_ch on phi_0 and (1 - f_ch)/3 on each other projector.
inline BellVector channel_initial_vector(const ChannelParams& c) {
  c.validate();
  const double r = (1.0 - c.f_ch) / 3.0;
  return {c.f_ch, r, r, r};
}

inline BellVector channel_initial_vector(double f_ch) {
  return channel_initial_vector(ChannelParams{f_ch});
}

}  // namespace entpure
