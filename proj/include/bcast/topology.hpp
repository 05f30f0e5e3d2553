#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bcast/types.hpp"

namespace bcast {

using Edge = std::pair<NodeId, NodeId>;  // stored with first < second

enum class TopologyFault {
  empty,
  bad_node_id,     // id outside 1..n
  self_loop,
  duplicate_edge,
  disconnected,
};

std::string to_string(TopologyFault f);

// Undirected connected multihop network.  Nodes are labeled 1..n; adjacency
// lists are kept sorted so every traversal order is reproducible.
class Topology {
 public:
  Topology() = default;
  Topology(std::uint32_t n, std::vector<Edge> edges, BaseShape base_shape,
           double connectivity, std::uint64_t seed);

  std::uint32_t n() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<NodeId>& neighbors(NodeId u) const;
  std::uint32_t degree(NodeId u) const;
  bool has_node(NodeId u) const { return u >= 1 && u <= n_; }

  BaseShape base_shape() const { return base_shape_; }
  double connectivity() const { return connectivity_; }
  std::uint64_t seed() const { return seed_; }

  std::vector<TopologyFault> validate() const;
  void validate_or_throw() const;

 private:
  std::uint32_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<NodeId>> adj_;
  BaseShape base_shape_ = BaseShape::string;
  double connectivity_ = 0.0;
  std::uint64_t seed_ = 0;
};

// Base shape over n slots, before any extra edges.  Slots are 0-based
// positions; labels are assigned by a seeded permutation afterwards.
std::uint64_t base_edge_count(BaseShape shape, std::uint32_t n);

// Random connected topology: the base shape guarantees connectivity, then
// round(connectivity * remaining-pair-count) distinct extra edges are drawn
// without replacement.  Identical inputs always produce the identical edge
// set, independent of platform.
Topology generate_topology(std::uint32_t n, BaseShape shape, double connectivity,
                           std::uint64_t seed);

// BFS distances from `source`; unreachable nodes get UINT32_MAX.  Used as an
// independent reference for propagation-tree depths.
std::vector<std::uint32_t> bfs_distances(const Topology& t, NodeId source);

}  // namespace bcast
