#include <string>

#include "dcbam/canonical_json.hpp"
#include "dcbam/lattice.hpp"

namespace dcbam {

namespace {
std::string node_name(int t, int j) {
  return "n" + std::to_string(t) + "_" + std::to_string(j);
}
}  // namespace

std::string lattice_to_dot(const Lattice& grid, const std::string& name) {
  std::string out = "digraph " + Json(name).dump() + " {\n";
  out += "  rankdir=LR;\n";
  out += "  node [shape=box];\n";
  for (int t = 0; t <= grid.horizons(); ++t) {
    for (int j = t; j >= 0; --j) {
      const auto& node = grid.at(t, j);
      out += "  " + node_name(t, j) + " [label=\"S=" + format_number(node.s_value) +
             "\\nf=" + format_number(node.payoff) + "\"];\n";
    }
  }
  for (int t = 0; t < grid.horizons(); ++t) {
    for (int j = t; j >= 0; --j) {
      out += "  " + node_name(t, j) + " -> " + node_name(t + 1, j + 1) + " [label=\"u\"];\n";
      out += "  " + node_name(t, j) + " -> " + node_name(t + 1, j) + " [label=\"d\"];\n";
    }
  }
  out += "}\n";
  return out;
}

Json lattice_to_json(const Lattice& grid) {
  Json levels = Json::array();
  for (int t = 0; t <= grid.horizons(); ++t) {
    Json level = Json::array();
    for (int j = 0; j <= t; ++j) {
      const auto& node = grid.at(t, j);
      level.push_back({{"j", j}, {"s", node.s_value}, {"f", node.payoff}});
    }
    levels.push_back(std::move(level));
  }
  return {{"horizon", grid.horizons()}, {"levels", std::move(levels)}};
}

}  // namespace dcbam
