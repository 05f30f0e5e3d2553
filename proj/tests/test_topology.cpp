#include <algorithm>
#include <cstdio>
#include <set>

#include "doctest.h"

#include "bcast/topology.hpp"
#include "bcast/topology_io.hpp"

using namespace bcast;

TEST_CASE("base edge counts") {
  CHECK(base_edge_count(BaseShape::string, 1) == 0);
  CHECK(base_edge_count(BaseShape::string, 5) == 4);
  CHECK(base_edge_count(BaseShape::ring, 3) == 3);
  CHECK(base_edge_count(BaseShape::ring, 8) == 8);
  CHECK(base_edge_count(BaseShape::ring, 2) == 1);  // a 2-ring degenerates to one edge
  CHECK(base_edge_count(BaseShape::binary_tree, 7) == 6);
  CHECK(base_edge_count(BaseShape::complete, 5) == 10);
  CHECK(base_edge_count(BaseShape::complete, 1) == 0);
}

TEST_CASE("single node") {
  Topology t = generate_topology(1, BaseShape::string, 0.0, 3);
  CHECK(t.n() == 1);
  CHECK(t.edges().empty());
  CHECK(t.degree(1) == 0);
  CHECK(t.validate().empty());
}

TEST_CASE("connectivity 1 fills in the complete graph") {
  Topology t = generate_topology(4, BaseShape::string, 1.0, 11);
  CHECK(t.edges().size() == 6);
  for (NodeId u = 1; u <= 4; ++u) CHECK(t.degree(u) == 3);
}

TEST_CASE("extra edge quota is round-half-up of the missing pairs") {
  // 5-node string: 4 base edges, 10-4=6 candidates, half of them rounds to 3
  Topology t = generate_topology(5, BaseShape::string, 0.5, 7);
  CHECK(t.edges().size() == 7);
  CHECK(t.validate().empty());
}

TEST_CASE("connectivity 0 keeps the base shape exactly") {
  for (auto shape : {BaseShape::string, BaseShape::ring, BaseShape::binary_tree,
                     BaseShape::complete}) {
    for (std::uint32_t n : {2u, 3u, 6u, 9u}) {
      Topology t = generate_topology(n, shape, 0.0, 5);
      CHECK(t.edges().size() == base_edge_count(shape, n));
      CHECK(t.validate().empty());
    }
  }
}

TEST_CASE("degree multisets match the base shape under relabeling") {
  Topology s = generate_topology(6, BaseShape::string, 0.0, 9);
  std::multiset<std::uint32_t> sd;
  for (NodeId u = 1; u <= 6; ++u) sd.insert(s.degree(u));
  CHECK(sd == std::multiset<std::uint32_t>{1, 1, 2, 2, 2, 2});

  Topology r = generate_topology(6, BaseShape::ring, 0.0, 9);
  for (NodeId u = 1; u <= 6; ++u) CHECK(r.degree(u) == 2);

  Topology b = generate_topology(7, BaseShape::binary_tree, 0.0, 9);
  std::multiset<std::uint32_t> bd;
  for (NodeId u = 1; u <= 7; ++u) bd.insert(b.degree(u));
  CHECK(bd == std::multiset<std::uint32_t>{1, 1, 1, 1, 3, 3, 2});
}

TEST_CASE("generation is a pure function of its inputs") {
  Topology a = generate_topology(12, BaseShape::ring, 0.4, 123);
  Topology b = generate_topology(12, BaseShape::ring, 0.4, 123);
  CHECK(a.edges() == b.edges());
  Topology c = generate_topology(12, BaseShape::ring, 0.4, 124);
  CHECK(a.edges() != c.edges());
}

TEST_CASE("golden bytes for one generated topology") {
  // frozen output; any change to the permutation or sampling scheme breaks it
  Topology t = generate_topology(5, BaseShape::string, 0.0, 42);
  CHECK(topology_to_json(t) ==
        "{\n"
        "  \"n\": 5,\n"
        "  \"edges\": [\n"
        "    [\n      1,\n      2\n    ],\n"
        "    [\n      1,\n      5\n    ],\n"
        "    [\n      3,\n      4\n    ],\n"
        "    [\n      4,\n      5\n    ]\n"
        "  ],\n"
        "  \"base_shape\": \"string\",\n"
        "  \"connectivity\": 0.0,\n"
        "  \"seed\": 42\n"
        "}\n");
}

TEST_CASE("json round trip") {
  Topology t = generate_topology(9, BaseShape::binary_tree, 0.3, 77);
  Topology back = topology_from_json(topology_to_json(t));
  CHECK(back.n() == t.n());
  CHECK(back.edges() == t.edges());
  CHECK(back.base_shape() == t.base_shape());
  CHECK(back.seed() == t.seed());
}

TEST_CASE("file round trip") {
  Topology t = generate_topology(6, BaseShape::ring, 0.2, 5);
  const std::string path = "topology_roundtrip_tmp.json";
  save_topology(t, path);
  Topology back = load_topology(path);
  std::remove(path.c_str());
  CHECK(back.edges() == t.edges());
}

TEST_CASE("validation reports each fault") {
  auto faults = [](std::uint32_t n, std::vector<Edge> edges) {
    return Topology(n, std::move(edges), BaseShape::string, 0, 0).validate();
  };
  CHECK(faults(0, {}) == std::vector{TopologyFault::empty});
  // connectivity is not judged while ids are out of range
  CHECK(faults(3, {{1, 2}, {2, 4}}) == std::vector{TopologyFault::bad_node_id});
  CHECK(faults(2, {{1, 1}, {1, 2}}) == std::vector{TopologyFault::self_loop});
  CHECK(faults(2, {{1, 2}, {1, 2}}) == std::vector{TopologyFault::duplicate_edge});
  CHECK(faults(3, {{1, 2}}) == std::vector{TopologyFault::disconnected});
  CHECK(faults(3, {{1, 2}, {2, 3}}).empty());
}

TEST_CASE("generator output always validates") {
  std::uint64_t seed = 1000;
  for (std::uint32_t n : {1u, 2u, 5u, 17u, 33u}) {
    for (auto shape : {BaseShape::string, BaseShape::ring,
                       BaseShape::binary_tree, BaseShape::complete}) {
      for (double c : {0.0, 0.25, 0.7, 1.0}) {
        Topology t = generate_topology(n, shape, c, ++seed);
        CHECK(t.validate().empty());
        const std::uint64_t base = base_edge_count(shape, n);
        const std::uint64_t all = std::uint64_t(n) * (n - 1) / 2;
        const std::uint64_t want =
            base + std::uint64_t(c * double(all - base) + 0.5);
        CHECK(t.edges().size() == want);
      }
    }
  }
}

TEST_CASE("generator rejects n = 0 and out-of-range connectivity") {
  CHECK_THROWS_AS(generate_topology(0, BaseShape::string, 0, 1), Error);
  CHECK_THROWS_AS(generate_topology(4, BaseShape::string, -0.1, 1), Error);
  CHECK_THROWS_AS(generate_topology(4, BaseShape::string, 1.1, 1), Error);
}

TEST_CASE("bfs distances on a known graph") {
  // 1-2-3-4 path plus a 1-4 chord: distances from 1 are 0,1,2,1
  Topology t(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}}, BaseShape::string, 0, 0);
  auto d = bfs_distances(t, 1);
  CHECK(d[1] == 0);
  CHECK(d[2] == 1);
  CHECK(d[3] == 2);
  CHECK(d[4] == 1);
}

TEST_CASE("shape names round trip") {
  for (auto shape : {BaseShape::string, BaseShape::ring, BaseShape::binary_tree,
                     BaseShape::complete}) {
    CHECK(base_shape_from_string(to_string(shape)) == shape);
  }
  CHECK_THROWS_AS(base_shape_from_string("torus"), Error);
}
