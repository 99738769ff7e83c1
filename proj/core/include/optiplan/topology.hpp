#pragma once

#include <cstddef>
#include <map>
#include <vector>

namespace optiplan {

/// Rectangular processor array with a fixed node pitch.
struct NodeGrid {
  int rows = 0;
  int cols = 0;
  double pitch_cm = 0.0;

  int node_count() const { return rows * cols; }
  void validate() const;  // rows, cols >= 1 and pitch > 0
};

struct NodeId {
  int row = 0;
  int col = 0;

  friend bool operator==(NodeId a, NodeId b) { return a.row == b.row && a.col == b.col; }
};

/// Ordered (directional) source->destination link.
struct Link {
  NodeId src;
  NodeId dst;
  double length_cm = 0.0;
};

struct LengthHistogram {
  std::map<double, std::size_t> bins;  // length_cm -> link count
  std::size_t total = 0;               // == sum of bin counts == N*(N-1)
};

/// Point-to-point all-to-all wiring: tx lane k of node i lands on rx lane i of
/// node k. The index mapping is an involution and a bijection on the n*n lanes.
struct ShuffleMap {
  int nodes = 0;
  int lanes = 0;  // == nodes for the square shuffle

  struct Endpoint {
    int node = 0;
    int lane = 0;
  };
  Endpoint route(int src_node, int tx_lane) const;
};

/// (|drow| + |dcol|) * pitch.
double manhattan_length(NodeId a, NodeId b, double pitch_cm);

/// One link per ordered pair of distinct nodes: exactly N*(N-1) links.
std::vector<Link> all_to_all_links(const NodeGrid& grid);

LengthHistogram length_histogram(const NodeGrid& grid);

ShuffleMap perfect_shuffle(int n);

}  // namespace optiplan
