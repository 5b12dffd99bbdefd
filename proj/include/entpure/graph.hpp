#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace entpure {

enum class Color { A, B };
enum class Pauli { I, X, Y, Z };

// Bipartite-colored graph on up to 64 vertices; the state basis is labeled by
// one stabilizer eigenvalue bit per vertex.
struct TwoColorableGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<Color> color;
  std::vector<std::uint64_t> nbr;  // nbr[v] = bitmask of neighbors

  std::uint64_t full_mask() const;
  std::uint64_t color_mask(Color c) const;

  // Monochromatic edges, bad indices, duplicates are errors; a disconnected
  // graph is one too unless explicitly allowed.
  void validate(bool allow_disconnected = false) const;

  static TwoColorableGraph from_json_text(const std::string& text);
  static TwoColorableGraph from_json_file(const std::string& path);
};

// Indices of the label bits flipped by a Pauli on qubit q: Z flips q itself,
// X flips the neighbors, Y flips both.
std::uint64_t pauli_label_flips(const TwoColorableGraph& g, int q, Pauli p);

}  // namespace entpure
