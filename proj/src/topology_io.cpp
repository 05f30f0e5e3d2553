#include "bcast/topology_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace bcast {

std::string topology_to_json(const Topology& t) {
  nlohmann::ordered_json j;
  j["n"] = t.n();
  auto edges = nlohmann::ordered_json::array();
  for (const auto& [u, v] : t.edges()) edges.push_back({u, v});
  j["edges"] = std::move(edges);
  j["base_shape"] = to_string(t.base_shape());
  j["connectivity"] = t.connectivity();
  j["seed"] = t.seed();
  return j.dump(2) + "\n";
}

void save_topology(const Topology& t, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path);
  out << topology_to_json(t);
}

Topology topology_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("topology parse: ") + e.what());
  }
  if (!j.contains("n") || !j.contains("edges"))
    throw Error("topology json needs \"n\" and \"edges\"");
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2)
      throw Error("each edge must be a two-element array");
    edges.push_back({e[0].get<NodeId>(), e[1].get<NodeId>()});
  }
  Topology t(j.at("n").get<std::uint32_t>(), std::move(edges),
             j.contains("base_shape")
                 ? base_shape_from_string(j.at("base_shape").get<std::string>())
                 : BaseShape::string,
             j.value("connectivity", 0.0), j.value("seed", std::uint64_t{0}));
  t.validate_or_throw();
  return t;
}

Topology load_topology(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return topology_from_json(buf.str());
}

}  // namespace bcast
