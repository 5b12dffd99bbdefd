#include "entpure/oracle.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "entpure/bell.hpp"

namespace entpure {
namespace oracle {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

int bit_of(int state, int qubit, int qubits) {
  return (state >> (qubits - 1 - qubit)) & 1;
}

// amplitude of |b0 b1> in |phi_label>, sigma on the first qubit
cd bell_amp(int label, int b0, int b1) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (label) {
    case 0: return b0 == b1 ? cd{r, 0} : cd{0, 0};
    case 1: return b0 != b1 ? cd{r, 0} : cd{0, 0};
    case 2:
      if (b0 == b1) return {0, 0};
      return b0 == 1 ? kI * r : -kI * r;  // Y|0> = i|1>, Y|1> = -i|0>
    case 3: return b0 == b1 ? cd{b0 ? -r : r, 0} : cd{0, 0};
    default: throw std::invalid_argument("bell label out of range");
  }
}

// sigma_e on one qubit in the computational basis: |b> -> phase * |b ^ flip>
void pauli_factor(int e, int b, int& flip, cd& phase) {
  switch (e) {
    case 0: break;
    case 1: flip ^= 1; break;
    case 2:
      flip ^= 1;
      phase *= b ? -kI : kI;
      break;
    case 3:
      if (b) phase = -phase;
      break;
  }
}

Eigen::Matrix2cd z_povm(int outcome, double p_m) {
  Eigen::Matrix2cd e = Eigen::Matrix2cd::Zero();
  e(0, 0) = outcome == 0 ? 1.0 - p_m : p_m;
  e(1, 1) = outcome == 0 ? p_m : 1.0 - p_m;
  return e;
}

Eigen::Matrix2cd x_povm(int outcome, double p_m) {
  Eigen::Matrix2cd h;
  h << 1.0, 1.0, 1.0, -1.0;
  h /= std::sqrt(2.0);
  return h * z_povm(outcome, p_m) * h;
}

// sigma(r,c) = sum_{a,a'} prod_q W_q(a_q, a'_q) rho((r,a'), (c,a)) with the
// measured qubits traced out.
Eigen::MatrixXcd reduce_with_weights(
    const Eigen::MatrixXcd& rho, int qubits,
    const std::vector<std::pair<int, Eigen::Matrix2cd>>& weights) {
  const int mm = static_cast<int>(weights.size());
  const int rem = qubits - mm;
  std::vector<bool> measured(qubits, false);
  for (const auto& w : weights) measured[static_cast<std::size_t>(w.first)] = true;

  // abit position of each measured qubit, in ascending qubit order
  std::vector<int> slot(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    int pos = 0;
    for (int q = 0; q < weights[i].first; ++q)
      if (measured[static_cast<std::size_t>(q)]) ++pos;
    slot[i] = pos;
  }

  // scatter (remaining bits, measured bits) into a basis index
  auto compose = [&](int rbits, int abits) {
    int s = 0, ri = 0, ai = 0;
    for (int q = 0; q < qubits; ++q) {
      int b;
      if (measured[static_cast<std::size_t>(q)])
        b = (abits >> (mm - 1 - ai++)) & 1;
      else
        b = (rbits >> (rem - 1 - ri++)) & 1;
      s = (s << 1) | b;
    }
    return s;
  };

  const int rdim = 1 << rem, adim = 1 << mm;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rdim, rdim);
  for (int a = 0; a < adim; ++a)
    for (int ap = 0; ap < adim; ++ap) {
      cd w{1.0, 0.0};
      for (std::size_t i = 0; i < weights.size(); ++i)
        w *= weights[i].second((a >> (mm - 1 - slot[i])) & 1,
                               (ap >> (mm - 1 - slot[i])) & 1);
      if (w == cd{0.0, 0.0}) continue;
      for (int r = 0; r < rdim; ++r)
        for (int c = 0; c < rdim; ++c)
          out(r, c) += w * rho(compose(r, ap), compose(c, a));
    }
  return out;
}

}  // namespace

int DensityMatrix::qubits() const {
  int k = 0;
  while ((1 << k) < m.rows()) ++k;
  return k;
}

void DensityMatrix::validate() const {
  if (m.rows() != m.cols() || m.rows() == 0 || (m.rows() & (m.rows() - 1)))
    throw std::invalid_argument("density matrix dimension must be a power of 2");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("density matrix not hermitian");
  if (std::abs(m.trace() - cd{1.0, 0.0}) > 1e-12)
    throw std::invalid_argument("density matrix trace must be 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (m + m.adjoint()),
                                                     Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw std::invalid_argument("density matrix has a negative eigenvalue");
}

std::array<Eigen::Matrix4cd, 4> bell_projectors() {
  std::array<Eigen::Matrix4cd, 4> proj;
  for (int label = 0; label < 4; ++label) {
    Eigen::Vector4cd ket;
    for (int s = 0; s < 4; ++s) ket(s) = bell_amp(label, (s >> 1) & 1, s & 1);
    proj[static_cast<std::size_t>(label)] = ket * ket.adjoint();
  }
  return proj;
}

DensityMatrix bell_pair_product(int qubits,
                                const std::vector<std::array<int, 3>>& pairs) {
  const int dim = 1 << qubits;
  Eigen::VectorXcd ket(dim);
  for (int s = 0; s < dim; ++s) {
    cd amp{1.0, 0.0};
    for (const auto& p : pairs)
      amp *= bell_amp(p[2], bit_of(s, p[0], qubits), bit_of(s, p[1], qubits));
    ket(s) = amp;
  }
  DensityMatrix rho;
  rho.m = ket * ket.adjoint();
  return rho;
}

void apply_noisy_cnot(DensityMatrix& rho, int control, int target,
                      const NoiseParams& noise) {
  const int qubits = rho.qubits();
  const int dim = 1 << qubits;
  const int cpos = qubits - 1 - control, tpos = qubits - 1 - target;

  auto cnot = [&](int s) {
    return ((s >> cpos) & 1) ? (s ^ (1 << tpos)) : s;
  };
  Eigen::MatrixXcd step(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) step(cnot(r), cnot(c)) = rho.m(r, c);

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double p = noise.p[i][j];
      if (p == 0.0) continue;
      // precompute the Pauli action per basis state
      std::vector<int> image(static_cast<std::size_t>(dim));
      std::vector<cd> phase(static_cast<std::size_t>(dim));
      for (int s = 0; s < dim; ++s) {
        int flip = 0;
        cd ph{1.0, 0.0};
        int fc = 0, ft = 0;
        pauli_factor(i, (s >> cpos) & 1, fc, ph);
        pauli_factor(j, (s >> tpos) & 1, ft, ph);
        flip = (fc << cpos) | (ft << tpos);
        image[static_cast<std::size_t>(s)] = s ^ flip;
        phase[static_cast<std::size_t>(s)] = ph;
      }
      for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
          out(image[static_cast<std::size_t>(r)], image[static_cast<std::size_t>(c)]) +=
              p * phase[static_cast<std::size_t>(r)] *
              std::conj(phase[static_cast<std::size_t>(c)]) * step(r, c);
    }
  rho.m = out;
}

SingleTensor simulate_single_round_exact(const NoiseParams& noise) {
  noise.validate();
  // qubits: 0 = source A, 1 = ancilla A, 2 = source B, 3 = ancilla B
  const auto proj = bell_projectors();
  SingleTensor t;
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) {
      DensityMatrix rho = bell_pair_product(4, {{0, 2, j}, {1, 3, k}});
      apply_noisy_cnot(rho, 0, 1, noise);
      apply_noisy_cnot(rho, 2, 3, noise);
      Eigen::MatrixXcd kept = Eigen::MatrixXcd::Zero(4, 4);
      for (int alpha = 0; alpha < 2; ++alpha)
        kept += reduce_with_weights(rho.m, 4,
                                    {{1, z_povm(alpha, noise.p_m)},
                                     {3, z_povm(alpha, noise.p_m)}});
      for (int a = 0; a < 4; ++a)
        t.s[frame_swap(a)][j][k] =
            (proj[static_cast<std::size_t>(a)] * kept).trace().real();
    }
  return t;
}

DoubleTensor simulate_double_round_exact(const NoiseParams& noise) {
  noise.validate();
  // qubits: 0,1,2 = source/anc1/anc2 at A, 3,4,5 = the same at B
  const auto proj = bell_projectors();
  DoubleTensor t;
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k)
      for (int l = 0; l < 4; ++l) {
        DensityMatrix rho =
            bell_pair_product(6, {{0, 3, j}, {1, 4, k}, {2, 5, l}});
        apply_noisy_cnot(rho, 0, 1, noise);
        apply_noisy_cnot(rho, 3, 4, noise);
        apply_noisy_cnot(rho, 2, 1, noise);
        apply_noisy_cnot(rho, 5, 4, noise);
        Eigen::MatrixXcd kept = Eigen::MatrixXcd::Zero(4, 4);
        for (int alpha = 0; alpha < 2; ++alpha)
          for (int gamma = 0; gamma < 2; ++gamma)
            kept += reduce_with_weights(rho.m, 6,
                                        {{1, z_povm(alpha, noise.p_m)},
                                         {4, z_povm(alpha, noise.p_m)},
                                         {2, x_povm(gamma, noise.p_m)},
                                         {5, x_povm(gamma, noise.p_m)}});
        for (int a = 0; a < 4; ++a)
          t.d[frame_swap(a)][j][k][l] =
              (proj[static_cast<std::size_t>(a)] * kept).trace().real();
      }
  return t;
}

}  // namespace oracle
}  // namespace entpure
