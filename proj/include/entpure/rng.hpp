#pragma once

#include <cstdint>

namespace entpure {

// splitmix64 step.  Used both as the per-stream generator and to derive
// decorrelated stream keys, so results do not depend on how samples are
// scheduled across threads.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

struct Rng {
  std::uint64_t state = 0;

  explicit Rng(std::uint64_t seed = 0) : state(seed) {}

  std::uint64_t next_u64() { return splitmix64(state); }

  // uniform in [0, 1)
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return next_double() < p; }
};

// Independent substream for sample `index` of stream `stream` under a master
// seed; pure function of its arguments.
inline Rng substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::uint64_t s = seed;
  std::uint64_t a = splitmix64(s) ^ (stream * 0xd1342543de82ef95ull);
  std::uint64_t b = splitmix64(a) ^ (index * 0xaf251af3b0f025b5ull);
  return Rng(splitmix64(b));
}

}  // namespace entpure
