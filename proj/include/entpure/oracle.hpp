#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "entpure/noise.hpp"
#include "entpure/tensors.hpp"

namespace entpure {
namespace oracle {

// Dense density matrix on k qubits (dimension 2^k), qubit 0 most significant.
struct DensityMatrix {
  Eigen::MatrixXcd m;

  int qubits() const;
  // Hermiticity and unit trace within 1e-12, eigenvalues above -1e-10.
  void validate() const;
};

// Projectors onto phi_0..phi_3 on two qubits (first qubit = the sigma_j side).
std::array<Eigen::Matrix4cd, 4> bell_projectors();

// Product of Bell pairs: pairs[k] = {qubit_a, qubit_b, label}.
DensityMatrix bell_pair_product(int qubits,
                                const std::vector<std::array<int, 3>>& pairs);

// Ideal C-Not on (control, target) followed by the two-qubit Pauli channel of
// `noise` (sigma_i on the control, sigma_j on the target).  Trace preserving.
void apply_noisy_cnot(DensityMatrix& rho, int control, int target,
                      const NoiseParams& noise);

// Exact 4-qubit (single selection) and 6-qubit (double selection) round
// simulations, reduced to the Bell-diagonal transfer tensors.  The noisy
// C-Nots act bilaterally (once on each lab's qubits) and the ancilla
// measurements use the outcome-flip POVM with flip probability p_m; only
// coincident announced outcomes are kept, and the frame exchange relabeling
// is folded in.
SingleTensor simulate_single_round_exact(const NoiseParams& noise);
DoubleTensor simulate_double_round_exact(const NoiseParams& noise);

}  // namespace oracle
}  // namespace entpure
