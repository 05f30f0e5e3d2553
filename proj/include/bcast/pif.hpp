#pragma once

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "bcast/engine.hpp"

namespace bcast {

// Propagation of information with feedback.  Each wave floods from its source
// and converges acknowledgments back up the induced parent tree; several
// waves may run at once, kept apart by the source id in the message header.
//
// Accounting per wave: a neighbor is checked off either when its flood
// rebroadcast names someone else as parent, or when its feedback targets this
// node.  A flood naming this node as parent is the start of a child subtree;
// the child is checked off only by its later feedback.
class PifProtocol : public Protocol {
 public:
  PifProtocol(const Topology& topology, std::vector<NodeId> sources);

  void on_init(NodeId node, Engine& engine) override;
  void on_receive(NodeId node, NodeId sender, const Message& msg, SimTime now,
                  Engine& engine) override;

  bool complete(NodeId source) const;
  SimTime completion_time(NodeId source) const;

  // (node, parent) pairs, sorted by node; empty for a 1-node wave.
  std::vector<std::pair<NodeId, NodeId>> tree(NodeId source) const;

 private:
  struct WaveNode {
    bool informed = false;
    bool fed_back = false;
    NodeId parent = kNoNode;
    std::set<NodeId> heard;
  };

  WaveNode& at(NodeId source, NodeId node) { return waves_[source][node]; }
  void account(NodeId source, NodeId node, NodeId sender, SimTime now,
               Engine& engine);

  const Topology& topology_;
  std::vector<NodeId> sources_;
  std::map<NodeId, std::map<NodeId, WaveNode>> waves_;
  std::map<NodeId, SimTime> completed_;
};

struct PifResult {
  SimTime time = 0;
  std::uint64_t transmissions = 0;
  std::vector<std::pair<NodeId, NodeId>> tree;
  RunStats stats;
};

PifResult pif_run(const Topology& topology, NodeId source, DelayModel delay,
                  bool log_events = false);

}  // namespace bcast
