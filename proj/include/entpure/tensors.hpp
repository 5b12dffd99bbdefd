#pragma once

#include <array>

#include "entpure/noise.hpp"

namespace entpure {

// Bell-diagonal transfer tensor of one single-selection round:
// s[i][j][k] is the unnormalized weight of output phi_i given source phi_j
// and ancilla phi_k (selection on coincident Z outcomes and the frame
// exchange relabeling already folded in).
struct SingleTensor {
  std::array<std::array<std::array<double, 4>, 4>, 4> s{};
};

// Same for one double-selection round: d[i][j][k][l] with source phi_j,
// first ancilla phi_k, second ancilla phi_l.
struct DoubleTensor {
  std::array<std::array<std::array<std::array<double, 4>, 4>, 4>, 4> d{};
};

// Building blocks on Bell labels.
struct ElementaryTensors {
  // u[i][j][a][b]: ideal bilateral C-Not takes phi_i otimes phi_j to
  // phi_a otimes phi_b (a 0/1 permutation tensor).
  std::array<std::array<std::array<std::array<double, 4>, 4>, 4>, 4> u{};
  // nn[a][b][c][d]: the two-qubit Pauli channel applied on both sides,
  // (a,b) -> (c,d).
  std::array<std::array<std::array<std::array<double, 4>, 4>, 4>, 4> nn{};
  // mz[b][l]: bilateral Z measurement with outcome flips, ancilla label b
  // classified as l (coincident classes l in {0,3}).
  std::array<std::array<double, 4>, 4> mz{};
  // mx[d][n]: bilateral X measurement (coincident classes n in {0,1}).
  std::array<std::array<double, 4>, 4> mx{};
  // hh[a]: frame exchange relabeling (1 <-> 3).
  std::array<int, 4> hh{};
};

// Ideal bilateral C-Not on a pair of Bell labels (source, ancilla).
std::array<int, 2> ideal_cnot_labels(int source, int ancilla);

std::array<std::array<std::array<std::array<double, 4>, 4>, 4>, 4> ideal_cnot_tensor();

// One-sided and bilateral gate noise as label transition tensors.
std::array<std::array<std::array<std::array<double, 4>, 4>, 4>, 4> gate_noise_tensor(
    const NoiseParams& noise);

// {mz, mx} for the given flip probability.
std::array<std::array<std::array<double, 4>, 4>, 2> measurement_tensors(double p_m);

std::array<int, 4> frame_exchange_permutation();

ElementaryTensors build_elementary_tensors(const NoiseParams& noise);

// Pre-selection transfer with the measurement classification kept explicit:
// single[j][k][i][l] (inputs j,k; source out i, ancilla class l) and
// dbl[j][k][l][i][m][n] (anc1 class m, anc2 class n).  Each slice over the
// output indices sums to 1.
std::array<std::array<std::array<std::array<double, 4>, 4>, 4>, 4>
single_preselection_tensor(const NoiseParams& noise);

std::array<double, 4096> double_preselection_tensor(const NoiseParams& noise);

inline std::size_t preselect_index(int j, int k, int l, int i, int m, int n) {
  return static_cast<std::size_t>(
      (((((j * 4) + k) * 4 + l) * 4 + i) * 4 + m) * 4 + n);
}

SingleTensor build_single_tensor(const NoiseParams& noise);
DoubleTensor build_double_tensor(const NoiseParams& noise);

}  // namespace entpure
