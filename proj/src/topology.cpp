#include "bcast/topology.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <random>
#include <set>

namespace bcast {
namespace {

// Unbiased draw in [0, bound) by rejection.  std::uniform_int_distribution is
// implementation-defined, which would break seed reproducibility across
// standard libraries.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

template <typename T>
void fisher_yates(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[uniform_below(rng, i)]);
  }
}

std::vector<Edge> base_edges(BaseShape shape, std::uint32_t n) {
  std::vector<Edge> e;
  switch (shape) {
    case BaseShape::string:
      for (std::uint32_t i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
      break;
    case BaseShape::ring:
      for (std::uint32_t i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
      if (n >= 3) e.push_back({0, n - 1});
      break;
    case BaseShape::binary_tree:
      // heap layout: slot i has children 2i+1 and 2i+2
      for (std::uint32_t i = 1; i < n; ++i) e.push_back({(i - 1) / 2, i});
      break;
    case BaseShape::complete:
      for (std::uint32_t u = 0; u < n; ++u)
        for (std::uint32_t v = u + 1; v < n; ++v) e.push_back({u, v});
      break;
  }
  return e;
}

}  // namespace

std::string to_string(BaseShape s) {
  switch (s) {
    case BaseShape::string: return "string";
    case BaseShape::ring: return "ring";
    case BaseShape::binary_tree: return "binary_tree";
    case BaseShape::complete: return "complete";
  }
  throw Error("unknown base shape");
}

BaseShape base_shape_from_string(const std::string& name) {
  if (name == "string") return BaseShape::string;
  if (name == "ring") return BaseShape::ring;
  if (name == "binary_tree") return BaseShape::binary_tree;
  if (name == "complete") return BaseShape::complete;
  throw Error("unknown base shape: " + name);
}

std::string to_string(TopologyFault f) {
  switch (f) {
    case TopologyFault::empty: return "empty";
    case TopologyFault::bad_node_id: return "bad_node_id";
    case TopologyFault::self_loop: return "self_loop";
    case TopologyFault::duplicate_edge: return "duplicate_edge";
    case TopologyFault::disconnected: return "disconnected";
  }
  return "unknown";
}

Topology::Topology(std::uint32_t n, std::vector<Edge> edges, BaseShape base_shape,
                   double connectivity, std::uint64_t seed)
    : n_(n),
      edges_(std::move(edges)),
      base_shape_(base_shape),
      connectivity_(connectivity),
      seed_(seed) {
  for (auto& [u, v] : edges_) {
    if (u > v) std::swap(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  adj_.assign(n_ + 1, {});
  for (const auto& [u, v] : edges_) {
    if (u >= 1 && v <= n_ && u != v) {
      adj_[u].push_back(v);
      adj_[v].push_back(u);
    }
  }
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

const std::vector<NodeId>& Topology::neighbors(NodeId u) const {
  if (!has_node(u)) throw Error("no such node: " + std::to_string(u));
  return adj_[u];
}

std::uint32_t Topology::degree(NodeId u) const {
  return static_cast<std::uint32_t>(neighbors(u).size());
}

std::vector<TopologyFault> Topology::validate() const {
  std::vector<TopologyFault> faults;
  if (n_ == 0) {
    faults.push_back(TopologyFault::empty);
    return faults;
  }
  bool ids_ok = true;
  for (const auto& [u, v] : edges_) {
    if (u < 1 || v < 1 || u > n_ || v > n_) {
      ids_ok = false;
      break;
    }
  }
  if (!ids_ok) faults.push_back(TopologyFault::bad_node_id);
  if (std::any_of(edges_.begin(), edges_.end(),
                  [](const Edge& e) { return e.first == e.second; }))
    faults.push_back(TopologyFault::self_loop);
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    faults.push_back(TopologyFault::duplicate_edge);
  if (ids_ok) {
    auto dist = bfs_distances(*this, 1);
    for (NodeId u = 1; u <= n_; ++u) {
      if (dist[u] == UINT32_MAX) {
        faults.push_back(TopologyFault::disconnected);
        break;
      }
    }
  }
  return faults;
}

void Topology::validate_or_throw() const {
  auto faults = validate();
  if (faults.empty()) return;
  std::string msg = "invalid topology:";
  for (auto f : faults) msg += " " + to_string(f);
  throw Error(msg);
}

std::uint64_t base_edge_count(BaseShape shape, std::uint32_t n) {
  if (n <= 1) return 0;
  switch (shape) {
    case BaseShape::string: return n - 1;
    case BaseShape::ring: return n >= 3 ? n : n - 1;
    case BaseShape::binary_tree: return n - 1;
    case BaseShape::complete: return std::uint64_t(n) * (n - 1) / 2;
  }
  throw Error("unknown base shape");
}

Topology generate_topology(std::uint32_t n, BaseShape shape, double connectivity,
                           std::uint64_t seed) {
  if (n < 1) throw Error("topology needs at least one node");
  if (!(connectivity >= 0.0 && connectivity <= 1.0))
    throw Error("connectivity must lie in [0,1]");

  std::mt19937_64 rng(seed);

  // labels 1..n onto slots 0..n-1
  std::vector<NodeId> label(n);
  for (std::uint32_t i = 0; i < n; ++i) label[i] = i + 1;
  fisher_yates(label, rng);

  std::vector<Edge> edges;
  std::set<Edge> present;
  for (auto [a, b] : base_edges(shape, n)) {
    NodeId u = label[a], v = label[b];
    if (u > v) std::swap(u, v);
    edges.push_back({u, v});
    present.insert({u, v});
  }

  const std::uint64_t all_pairs = std::uint64_t(n) * (n - 1) / 2;
  const std::uint64_t missing = all_pairs - present.size();
  const std::uint64_t quota =
      static_cast<std::uint64_t>(std::floor(connectivity * double(missing) + 0.5));

  if (quota > 0) {
    std::vector<Edge> pool;
    pool.reserve(missing);
    for (NodeId u = 1; u <= n; ++u)
      for (NodeId v = u + 1; v <= n; ++v)
        if (!present.count({u, v})) pool.push_back({u, v});
    // partial Fisher-Yates: the first `quota` entries are the sample
    for (std::uint64_t i = 0; i < quota; ++i) {
      std::uint64_t j = i + uniform_below(rng, pool.size() - i);
      std::swap(pool[i], pool[j]);
      edges.push_back(pool[i]);
    }
  }

  Topology t(n, std::move(edges), shape, connectivity, seed);
  t.validate_or_throw();
  return t;
}

std::vector<std::uint32_t> bfs_distances(const Topology& t, NodeId source) {
  std::vector<std::uint32_t> dist(t.n() + 1, UINT32_MAX);
  if (!t.has_node(source)) throw Error("bfs: no such node");
  dist[source] = 0;
  std::queue<NodeId> q;
  q.push(source);
  while (!q.empty()) {
    NodeId u = q.front();
    q.pop();
    for (NodeId v : t.neighbors(u)) {
      if (dist[v] == UINT32_MAX) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
    }
  }
  return dist;
}

}  // namespace bcast
