#include "entpure/tensors.hpp"

#include "entpure/bell.hpp"

namespace entpure {

namespace {

using Rank4 = std::array<std::array<std::array<std::array<double, 4>, 4>, 4>, 4>;

// One-sided gate noise: label pair (a,b) -> (c,d) with the probability of the
// unique Pauli pair mapping it there.
Rank4 one_sided_noise(const NoiseParams& noise) {
  Rank4 n{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d)
          n[a][b][c][d] = noise.p[pauli_between(a, c)][pauli_between(b, d)];
  return n;
}

}  // namespace

std::array<int, 2> ideal_cnot_labels(int source, int ancilla) {
  const int sa = mu_first(source), sb = mu_second(source);
  const int aa = mu_first(ancilla), ab = mu_second(ancilla);
  return {label_from_mu(sa, sb ^ ab), label_from_mu(sa ^ aa, ab)};
}

Rank4 ideal_cnot_tensor() {
  Rank4 u{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const auto out = ideal_cnot_labels(i, j);
      u[i][j][out[0]][out[1]] = 1.0;
    }
  return u;
}

Rank4 gate_noise_tensor(const NoiseParams& noise) {
  const Rank4 n1 = one_sided_noise(noise);
  Rank4 nn{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int k = 0; k < 4; ++k)
        for (int m = 0; m < 4; ++m) {
          double s = 0.0;
          for (int c = 0; c < 4; ++c)
            for (int d = 0; d < 4; ++d) s += n1[a][b][c][d] * n1[c][d][k][m];
          nn[a][b][k][m] = s;
        }
  return nn;
}

std::array<std::array<std::array<double, 4>, 4>, 2> measurement_tensors(double p_m) {
  const double same = (1.0 - p_m) * (1.0 - p_m) + p_m * p_m;
  const double cross = 2.0 * p_m * (1.0 - p_m);
  const auto& flip = pauli_action(1);  // outcome flips act as the sigma_1 relabeling
  std::array<std::array<double, 4>, 4> mz{};
  for (int b = 0; b < 4; ++b) {
    mz[b][b] += same;
    mz[b][flip[b]] += cross;
  }
  std::array<std::array<double, 4>, 4> mx{};
  for (int d = 0; d < 4; ++d)
    for (int n = 0; n < 4; ++n) mx[d][n] = mz[frame_swap(d)][frame_swap(n)];
  return {mz, mx};
}

std::array<int, 4> frame_exchange_permutation() {
  return {frame_swap(0), frame_swap(1), frame_swap(2), frame_swap(3)};
}

ElementaryTensors build_elementary_tensors(const NoiseParams& noise) {
  noise.validate();
  ElementaryTensors e;
  e.u = ideal_cnot_tensor();
  e.nn = gate_noise_tensor(noise);
  const auto m = measurement_tensors(noise.p_m);
  e.mz = m[0];
  e.mx = m[1];
  e.hh = frame_exchange_permutation();
  return e;
}

Rank4 single_preselection_tensor(const NoiseParams& noise) {
  const ElementaryTensors e = build_elementary_tensors(noise);
  Rank4 pre{};
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) {
      const auto ideal = ideal_cnot_labels(j, k);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          const double w = e.nn[ideal[0]][ideal[1]][a][b];
          if (w == 0.0) continue;
          const int i = e.hh[a];
          for (int l = 0; l < 4; ++l) pre[j][k][i][l] += w * e.mz[b][l];
        }
    }
  return pre;
}

std::array<double, 4096> double_preselection_tensor(const NoiseParams& noise) {
  const ElementaryTensors e = build_elementary_tensors(noise);
  std::array<double, 4096> pre{};
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) {
      const auto g1 = ideal_cnot_labels(j, k);
      for (int l = 0; l < 4; ++l)
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b) {
            const double w1 = e.nn[g1[0]][g1[1]][a][b];
            if (w1 == 0.0) continue;
            const auto g2 = ideal_cnot_labels(l, b);
            const int i = e.hh[a];
            for (int d = 0; d < 4; ++d)
              for (int c = 0; c < 4; ++c) {
                const double w = w1 * e.nn[g2[0]][g2[1]][d][c];
                if (w == 0.0) continue;
                for (int m = 0; m < 4; ++m)
                  for (int n = 0; n < 4; ++n)
                    pre[preselect_index(j, k, l, i, m, n)] +=
                        w * e.mz[c][m] * e.mx[d][n];
              }
          }
    }
  return pre;
}

SingleTensor build_single_tensor(const NoiseParams& noise) {
  const ElementaryTensors e = build_elementary_tensors(noise);
  SingleTensor t;
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) {
      const auto ideal = ideal_cnot_labels(j, k);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          const double w = e.nn[ideal[0]][ideal[1]][a][b];
          if (w == 0.0) continue;
          t.s[e.hh[a]][j][k] += w * (e.mz[b][0] + e.mz[b][3]);
        }
    }
  return t;
}

DoubleTensor build_double_tensor(const NoiseParams& noise) {
  const ElementaryTensors e = build_elementary_tensors(noise);
  std::array<double, 4> keep_z{}, keep_x{};
  for (int c = 0; c < 4; ++c) keep_z[c] = e.mz[c][0] + e.mz[c][3];
  for (int d = 0; d < 4; ++d) keep_x[d] = e.mx[d][0] + e.mx[d][1];
  DoubleTensor t;
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) {
      const auto g1 = ideal_cnot_labels(j, k);
      for (int l = 0; l < 4; ++l)
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b) {
            const double w1 = e.nn[g1[0]][g1[1]][a][b];
            if (w1 == 0.0) continue;
            const auto g2 = ideal_cnot_labels(l, b);
            const int i = e.hh[a];
            double acc = 0.0;
            for (int d = 0; d < 4; ++d)
              for (int c = 0; c < 4; ++c)
                acc += e.nn[g2[0]][g2[1]][d][c] * keep_z[c] * keep_x[d];
            t.d[i][j][k][l] += w1 * acc;
          }
    }
  return t;
}

}  // namespace entpure
