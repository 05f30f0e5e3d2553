#include "bcast/pif.hpp"

#include <algorithm>

namespace bcast {

PifProtocol::PifProtocol(const Topology& topology, std::vector<NodeId> sources)
    : topology_(topology), sources_(std::move(sources)) {
  std::sort(sources_.begin(), sources_.end());
  sources_.erase(std::unique(sources_.begin(), sources_.end()), sources_.end());
  for (NodeId s : sources_) {
    if (!topology_.has_node(s)) throw Error("pif source not in topology");
  }
}

void PifProtocol::on_init(NodeId node, Engine& engine) {
  if (!std::binary_search(sources_.begin(), sources_.end(), node)) return;
  WaveNode& st = at(node, node);
  if (st.informed) return;
  st.informed = true;
  st.parent = kNoNode;
  engine.broadcast(node, PifMessage{kNoNode, node, kNoNode, node});
  if (topology_.degree(node) == 0) completed_[node] = engine.now();
}

void PifProtocol::account(NodeId source, NodeId node, NodeId sender, SimTime now,
                          Engine& engine) {
  WaveNode& st = at(source, node);
  st.heard.insert(sender);
  if (!st.informed) {
    st.informed = true;
    st.parent = sender;
    engine.broadcast(node, PifMessage{kNoNode, node, st.parent, source});
  }
  if (st.heard.size() == topology_.degree(node)) {
    if (node == source) {
      if (!completed_.count(source)) completed_[source] = now;
    } else if (!st.fed_back) {
      st.fed_back = true;
      engine.broadcast(node, PifMessage{st.parent, node, st.parent, source});
    }
  }
}

void PifProtocol::on_receive(NodeId node, NodeId sender, const Message& msg,
                             SimTime now, Engine& engine) {
  const auto* pif = std::get_if<PifMessage>(&msg);
  if (!pif) throw Error("pif protocol got a foreign message kind");
  if (pif->target != kNoNode && pif->target != node) return;
  if (pif->parent == node && pif->target != node) return;  // child's flood
  account(pif->source, node, sender, now, engine);
}

bool PifProtocol::complete(NodeId source) const {
  if (!std::binary_search(sources_.begin(), sources_.end(), source))
    throw Error("no wave was started at node " + std::to_string(source));
  return completed_.count(source) > 0;
}

SimTime PifProtocol::completion_time(NodeId source) const {
  auto it = completed_.find(source);
  if (it == completed_.end()) throw Error("wave has not completed");
  return it->second;
}

std::vector<std::pair<NodeId, NodeId>> PifProtocol::tree(NodeId source) const {
  if (!complete(source)) throw Error("tree requested before wave completion");
  std::vector<std::pair<NodeId, NodeId>> out;
  auto wave = waves_.find(source);
  if (wave == waves_.end()) return out;
  for (const auto& [node, st] : wave->second) {
    if (node != source && st.informed) out.push_back({node, st.parent});
  }
  return out;
}

PifResult pif_run(const Topology& topology, NodeId source, DelayModel delay,
                  bool log_events) {
  Engine engine(topology, std::move(delay));
  if (log_events) engine.enable_event_log();
  PifProtocol protocol(topology, {source});
  PifResult r;
  r.stats = engine.run(protocol);
  r.time = protocol.completion_time(source);
  r.transmissions = r.stats.transmissions;
  r.tree = protocol.tree(source);
  return r;
}

}  // namespace bcast
