#include "entpure/graphmc.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace entpure {

namespace {

// H conjugation on Pauli indices: X and Z trade places, Y stays.
constexpr int kHConj[4] = {0, 3, 2, 1};

// y's prim labels absorb x's, x's other-side labels absorb y's; this is the
// transversal C-Not block with copy y controlling the prim vertices.
void ideal_gate(LabelState& x, LabelState& y, std::uint64_t prim_mask,
                std::uint64_t other_mask) {
  y.mu ^= x.mu & prim_mask;
  x.mu ^= y.mu & other_mask;
}

// Table errors are sampled in the round's protocol frame: index i sits on
// copy x, j on copy y, and on prim vertices the frame differs from the label
// basis by a Hadamard, so the Paulis are conjugated there.
void gate_noise(LabelState& x, LabelState& y, const TwoColorableGraph& g,
                const NoiseSampler& noise, std::uint64_t prim_mask, Rng& rng) {
  for (int v = 0; v < g.n; ++v) {
    const int pair = noise.sample_pair(rng);
    if (pair == 0) continue;
    int i = pair >> 2, j = pair & 3;
    if ((prim_mask >> v) & 1) {
      i = kHConj[i];
      j = kHConj[j];
    }
    x.mu ^= pauli_label_flips(g, v, static_cast<Pauli>(i));
    y.mu ^= pauli_label_flips(g, v, static_cast<Pauli>(j));
  }
}

// Parity checks on the measured copy: one per vertex of `part` (X-measured
// there, Z on its neighbors).  Each physical outcome bit flips independently
// with probability p_m and is shared by every check it enters.
bool coincidence_checks(const LabelState& s, const TwoColorableGraph& g,
                        std::uint64_t part_mask, double p_m, Rng& rng) {
  std::uint64_t eps = 0;
  if (p_m > 0.0)
    for (int v = 0; v < g.n; ++v)
      if (rng.bernoulli(p_m)) eps |= 1ull << v;
  for (int v = 0; v < g.n; ++v) {
    if (!((part_mask >> v) & 1)) continue;
    const std::uint64_t support = (1ull << v) | g.nbr[static_cast<std::size_t>(v)];
    const int parity = static_cast<int>((s.mu >> v) & 1) ^
                       (std::popcount(eps & support) & 1);
    if (parity) return false;
  }
  return true;
}

}  // namespace

NoiseSampler::NoiseSampler(const NoiseParams& noise) {
  noise.validate();
  p00_ = noise.p[0][0];
  p_m_ = noise.p_m;
  double acc = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      acc += noise.p[i][j];
      cum_[static_cast<std::size_t>(i * 4 + j)] = acc;
    }
}

int NoiseSampler::sample_pair(Rng& rng) const {
  const double u = rng.next_double();
  if (u < p00_) return 0;
  for (int k = 1; k < 16; ++k)
    if (u < cum_[static_cast<std::size_t>(k)]) return k;
  return 15;
}

LabelState sample_channel(const TwoColorableGraph& g, double f_ch, Rng& rng) {
  ChannelParams{f_ch}.validate();
  LabelState s;
  const double third = (1.0 - f_ch) / 3.0;
  for (int v = 0; v < g.n; ++v) {
    const double u = rng.next_double();
    if (u < f_ch) continue;
    int which = 1 + static_cast<int>((u - f_ch) / third);
    if (which > 3) which = 3;
    s.mu ^= pauli_label_flips(g, v, static_cast<Pauli>(which));
  }
  return s;
}

RoundOutcome mc_round(Scheme scheme, const std::vector<LabelState>& copies,
                      const TwoColorableGraph& g, const NoiseSampler& noise,
                      Color prim, Rng& rng) {
  const auto m = static_cast<std::size_t>(copies_per_round(scheme));
  if (copies.size() != m)
    throw std::invalid_argument("expected " + std::to_string(m) +
                                " copies, got " + std::to_string(copies.size()));
  const std::uint64_t prim_mask = g.color_mask(prim);
  const std::uint64_t other_mask = g.full_mask() ^ prim_mask;

  LabelState c0 = copies[0], c1 = copies[1];
  ideal_gate(c0, c1, prim_mask, other_mask);
  gate_noise(c0, c1, g, noise, prim_mask, rng);

  RoundOutcome out;
  if (scheme == Scheme::Double) {
    LabelState c2 = copies[2];
    ideal_gate(c2, c1, prim_mask, other_mask);
    gate_noise(c2, c1, g, noise, prim_mask, rng);
    out.cond1 = coincidence_checks(c1, g, prim_mask, noise.p_m(), rng);
    out.cond2 = coincidence_checks(c2, g, other_mask, noise.p_m(), rng);
  } else {
    out.cond1 = coincidence_checks(c1, g, prim_mask, noise.p_m(), rng);
    out.cond2 = true;
  }
  out.accepted = out.cond1 && out.cond2;
  out.out = c0;
  return out;
}

void MCConfig::validate() const {
  graph.validate();
  noise.validate();
  ChannelParams{f_ch}.validate();
  if (rounds < 0) throw std::invalid_argument("rounds must be >= 0");
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
}

MCResult mc_purification(const MCConfig& cfg) {
  cfg.validate();
  const NoiseSampler sampler(cfg.noise);
  const int n_a = copies_per_round(cfg.scheme);

  std::vector<std::uint64_t> pool;
  pool.reserve(static_cast<std::size_t>(cfg.samples));
  long long zero = 0;
  for (long long t = 0; t < cfg.samples; ++t) {
    Rng rng = substream(cfg.seed, 0, static_cast<std::uint64_t>(t));
    const LabelState s = sample_channel(cfg.graph, cfg.f_ch, rng);
    pool.push_back(s.mu);
    if (s.mu == 0) ++zero;
  }

  MCResult result;
  auto push_stats = [&result](int round, long long attempts, long long accepted,
                              long long zeros) {
    RoundStats st;
    st.round = round;
    st.samples_in = attempts;
    st.accepted = accepted;
    st.acceptance_rate =
        static_cast<double>(accepted) / static_cast<double>(attempts);
    st.fidelity = static_cast<double>(zeros) / static_cast<double>(accepted);
    st.se = std::sqrt(st.fidelity * (1.0 - st.fidelity) /
                      static_cast<double>(accepted));
    result.rounds.push_back(st);
  };
  push_stats(0, cfg.samples, cfg.samples, zero);

  std::vector<std::uint64_t> next;
  std::vector<LabelState> copies(static_cast<std::size_t>(n_a));
  for (int r = 1; r <= cfg.rounds; ++r) {
    const Color prim = (r % 2 == 1) ? Color::A : Color::B;
    next.clear();
    next.reserve(static_cast<std::size_t>(cfg.samples));
    zero = 0;
    for (long long t = 0; t < cfg.samples; ++t) {
      Rng rng = substream(cfg.seed, static_cast<std::uint64_t>(r),
                          static_cast<std::uint64_t>(t));
      for (int c = 0; c < n_a; ++c)
        copies[static_cast<std::size_t>(c)].mu =
            pool[static_cast<std::size_t>(rng.next_u64() % pool.size())];
      const RoundOutcome o =
          mc_round(cfg.scheme, copies, cfg.graph, sampler, prim, rng);
      if (o.accepted) {
        next.push_back(o.out.mu);
        if (o.out.mu == 0) ++zero;
      }
    }
    if (next.empty())
      throw std::runtime_error("statistics exhausted at round " +
                               std::to_string(r));
    push_stats(r, cfg.samples, static_cast<long long>(next.size()), zero);
    result.yield *= result.rounds.back().acceptance_rate / n_a;
    pool.swap(next);
  }
  return result;
}

LabelState sample_purified(const TwoColorableGraph& g, Scheme scheme,
                           const NoiseSampler& noise, double f_ch, int round,
                           Rng& rng) {
  if (round <= 0) return sample_channel(g, f_ch, rng);
  const auto m = static_cast<std::size_t>(copies_per_round(scheme));
  const Color prim = (round % 2 == 1) ? Color::A : Color::B;
  std::vector<LabelState> copies(m);
  for (long long attempt = 0; attempt < 100000000; ++attempt) {
    for (std::size_t c = 0; c < m; ++c)
      copies[c] = sample_purified(g, scheme, noise, f_ch, round - 1, rng);
    const RoundOutcome o = mc_round(scheme, copies, g, noise, prim, rng);
    if (o.accepted) return o.out;
  }
  throw std::runtime_error("statistics exhausted at round " +
                           std::to_string(round));
}

double multi_upper_bound(int n, double p_g) {
  return 1.0 - n * (4.0 / 15.0) * p_g;
}

}  // namespace entpure
