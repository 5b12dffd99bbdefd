#include "entpure/graph.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace entpure {

std::uint64_t TwoColorableGraph::full_mask() const {
  return n == 64 ? ~0ull : (1ull << n) - 1;
}

std::uint64_t TwoColorableGraph::color_mask(Color c) const {
  std::uint64_t m = 0;
  for (int v = 0; v < n; ++v)
    if (color[static_cast<std::size_t>(v)] == c) m |= 1ull << v;
  return m;
}

void TwoColorableGraph::validate(bool allow_disconnected) const {
  if (n < 2 || n > 64)
    throw std::invalid_argument("vertex count must be between 2 and 64");
  if (static_cast<int>(color.size()) != n)
    throw std::invalid_argument("colors array must have one entry per vertex");
  if (static_cast<int>(nbr.size()) != n)
    throw std::invalid_argument("adjacency not built");
  std::set<std::pair<int, int>> seen;
  for (const auto& [a, b] : edges) {
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw std::invalid_argument("edge endpoint out of range");
    if (a == b) throw std::invalid_argument("self-loop at vertex " +
                                            std::to_string(a));
    const auto key = std::minmax(a, b);
    if (!seen.insert(key).second)
      throw std::invalid_argument("duplicate edge " + std::to_string(key.first) +
                                  "-" + std::to_string(key.second));
    if (color[static_cast<std::size_t>(a)] == color[static_cast<std::size_t>(b)]) {
      std::ostringstream msg;
      msg << "edge " << a << "-" << b << " joins two "
          << (color[static_cast<std::size_t>(a)] == Color::A ? "A" : "B")
          << " vertices";
      throw std::invalid_argument(msg.str());
    }
  }
  std::uint64_t reached = 1ull;
  for (;;) {
    std::uint64_t next = reached;
    for (int v = 0; v < n; ++v)
      if (reached & (1ull << v)) next |= nbr[static_cast<std::size_t>(v)];
    if (next == reached) break;
    reached = next;
  }
  if (reached != full_mask() && !allow_disconnected)
    throw std::invalid_argument("graph is disconnected");
}

static TwoColorableGraph parse(const nlohmann::json& j) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "n" && key != "edges" && key != "colors")
      throw std::invalid_argument("unknown graph key \"" + key + "\"");
  }
  TwoColorableGraph g;
  g.n = j.at("n").get<int>();
  if (g.n < 2 || g.n > 64)
    throw std::invalid_argument("vertex count must be between 2 and 64");
  for (const auto& c : j.at("colors")) {
    const std::string s = c.get<std::string>();
    if (s == "A")
      g.color.push_back(Color::A);
    else if (s == "B")
      g.color.push_back(Color::B);
    else
      throw std::invalid_argument("color must be \"A\" or \"B\", got \"" + s +
                                  "\"");
  }
  g.nbr.assign(static_cast<std::size_t>(g.n), 0);
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("each edge must be a pair of vertices");
    const int a = e[0].get<int>(), b = e[1].get<int>();
    g.edges.emplace_back(a, b);
    if (a >= 0 && a < g.n && b >= 0 && b < g.n) {
      g.nbr[static_cast<std::size_t>(a)] |= 1ull << b;
      g.nbr[static_cast<std::size_t>(b)] |= 1ull << a;
    }
  }
  return g;
}

TwoColorableGraph TwoColorableGraph::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed graph JSON: ") + e.what());
  }
  TwoColorableGraph g = parse(j);
  g.validate();
  return g;
}

TwoColorableGraph TwoColorableGraph::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open graph file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

std::uint64_t pauli_label_flips(const TwoColorableGraph& g, int q, Pauli p) {
  if (q < 0 || q >= g.n) throw std::invalid_argument("qubit out of range");
  switch (p) {
    case Pauli::I: return 0;
    case Pauli::Z: return 1ull << q;
    case Pauli::X: return g.nbr[static_cast<std::size_t>(q)];
    case Pauli::Y: return (1ull << q) | g.nbr[static_cast<std::size_t>(q)];
  }
  return 0;
}

}  // namespace entpure
