#include "optiplan/topology.hpp"

#include <cmath>
#include <cstdlib>

#include "optiplan/errors.hpp"

namespace optiplan {

void NodeGrid::validate() const {
  if (rows < 1 || cols < 1) {
    throw ValidationError("grid must have at least one row and one column");
  }
  if (!(pitch_cm > 0.0)) {
    throw ValidationError("grid pitch must be > 0 cm");
  }
}

double manhattan_length(NodeId a, NodeId b, double pitch_cm) {
  return (std::abs(a.row - b.row) + std::abs(a.col - b.col)) * pitch_cm;
}

std::vector<Link> all_to_all_links(const NodeGrid& grid) {
  grid.validate();
  const std::size_t n = static_cast<std::size_t>(grid.node_count());
  std::vector<Link> links;
  links.reserve(n * (n - 1));
  for (int r1 = 0; r1 < grid.rows; ++r1) {
    for (int c1 = 0; c1 < grid.cols; ++c1) {
      for (int r2 = 0; r2 < grid.rows; ++r2) {
        for (int c2 = 0; c2 < grid.cols; ++c2) {
          if (r1 == r2 && c1 == c2) continue;
          const NodeId src{r1, c1};
          const NodeId dst{r2, c2};
          links.push_back(Link{src, dst, manhattan_length(src, dst, grid.pitch_cm)});
        }
      }
    }
  }
  return links;
}

LengthHistogram length_histogram(const NodeGrid& grid) {
  grid.validate();
  LengthHistogram hist;
  // Bin by integer Manhattan step count so equal lengths hash to one key.
  for (int r1 = 0; r1 < grid.rows; ++r1) {
    for (int c1 = 0; c1 < grid.cols; ++c1) {
      for (int r2 = 0; r2 < grid.rows; ++r2) {
        for (int c2 = 0; c2 < grid.cols; ++c2) {
          if (r1 == r2 && c1 == c2) continue;
          const int steps = std::abs(r1 - r2) + std::abs(c1 - c2);
          ++hist.bins[steps * grid.pitch_cm];
          ++hist.total;
        }
      }
    }
  }
  return hist;
}

ShuffleMap::Endpoint ShuffleMap::route(int src_node, int tx_lane) const {
  if (src_node < 0 || src_node >= nodes || tx_lane < 0 || tx_lane >= lanes) {
    throw ValidationError("shuffle endpoint out of range");
  }
  return Endpoint{tx_lane, src_node};
}

ShuffleMap perfect_shuffle(int n) {
  if (n < 1) {
    throw ValidationError("shuffle needs at least one node");
  }
  return ShuffleMap{n, n};
}

}  // namespace optiplan
