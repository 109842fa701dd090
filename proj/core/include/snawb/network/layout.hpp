#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "snawb/network/raw_graph.hpp"

namespace snawb::net {

struct Point {
  double x = 0.5;
  double y = 0.5;

  friend bool operator==(const Point&, const Point&) = default;
};

// Node positions shared by every network derived from one raw graph, so
// that switching between derivations moves no node.
struct Layout {
  std::vector<std::string> population;
  std::map<std::string, Point> coordinates;
  std::uint64_t seed = 0;

  friend bool operator==(const Layout&, const Layout&) = default;
};

inline constexpr int kLayoutIterations = 300;

// Seeded force-directed placement on the raw graph (arcs taken undirected,
// attraction proportional to weight), normalized into the unit square. A
// pure function of the graph's canonical form and the seed.
Layout compute_layout(const RawRosterGraph& raw, std::uint64_t seed);

}  // namespace snawb::net
