#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "entpure/dynamics.hpp"
#include "entpure/graph.hpp"
#include "entpure/noise.hpp"
#include "entpure/rng.hpp"

namespace entpure {

// Stabilizer eigenvalue bits of one state copy; bit v set = vertex v flipped.
struct LabelState {
  std::uint64_t mu = 0;
};

// Cumulative sampler over the 16 two-qubit Pauli pairs of a noise table.
class NoiseSampler {
 public:
  explicit NoiseSampler(const NoiseParams& noise);

  // i*4+j for sigma_i on the first gate qubit, sigma_j on the second.
  int sample_pair(Rng& rng) const;
  double p_m() const { return p_m_; }

 private:
  double p00_ = 1.0;
  double p_m_ = 0.0;
  std::array<double, 16> cum_{};
};

// Per-qubit depolarizing of fidelity f_ch applied to the perfect state.
LabelState sample_channel(const TwoColorableGraph& g, double f_ch, Rng& rng);

struct RoundOutcome {
  bool accepted = false;
  bool cond1 = false;  // copy-1 parity checks, on the prim partition
  bool cond2 = false;  // copy-2 checks, other partition; true for single
  LabelState out;
};

// One noisy purification round on 2 (single) or 3 (double) copies; copy 0 is
// the kept one.  `prim` names the partition whose checks copy 1 verifies this
// round; it alternates between rounds in place of a physical basis exchange.
RoundOutcome mc_round(Scheme scheme, const std::vector<LabelState>& copies,
                      const TwoColorableGraph& g, const NoiseSampler& noise,
                      Color prim, Rng& rng);

struct MCConfig {
  TwoColorableGraph graph;
  Scheme scheme = Scheme::Double;
  NoiseParams noise;
  double f_ch = 1.0;
  int rounds = 0;
  long long samples = 1;
  std::uint64_t seed = 0;

  void validate() const;
};

struct RoundStats {
  int round = 0;
  long long samples_in = 0;
  long long accepted = 0;
  double acceptance_rate = 1.0;
  double fidelity = 0.0;
  double se = 0.0;  // binomial standard error of the fidelity
};

struct MCResult {
  std::vector<RoundStats> rounds;
  double yield = 1.0;
};

// Pool recurrence: round-0 pool sampled from the channel, later pools built
// by resampling copies from the previous pool through mc_round.  Per-sample
// counter substreams keep the result a pure function of the config.
MCResult mc_purification(const MCConfig& cfg);

// Exact i.i.d. sampler of the state distribution after `round` rounds,
// by full rejection over recursively sampled inputs.  Exponential in round;
// meant for cross-validation at small depth.
LabelState sample_purified(const TwoColorableGraph& g, Scheme scheme,
                           const NoiseSampler& noise, double f_ch, int round,
                           Rng& rng);

// First-order fidelity ceiling for an n-vertex state under uniform noise.
double multi_upper_bound(int n, double p_g);

}  // namespace entpure
