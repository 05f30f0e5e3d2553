#pragma once

#include <iosfwd>
#include <string>

#include "bcast/topology.hpp"

namespace bcast {

std::string topology_to_json(const Topology& t);
void save_topology(const Topology& t, const std::string& path);

Topology topology_from_json(const std::string& text);
Topology load_topology(const std::string& path);

}  // namespace bcast
