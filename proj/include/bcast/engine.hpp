#pragma once

#include <cstdint>
#include <optional>
#include <queue>
#include <unordered_map>
#include <vector>

#include "bcast/delay.hpp"
#include "bcast/message.hpp"
#include "bcast/topology.hpp"
#include "bcast/types.hpp"

namespace bcast {

class Engine;

// A protocol is a passive reactor: the engine calls on_init once per node at
// time zero, then on_receive for every delivery.  finished() lets a protocol
// stop the run before the queue drains.
class Protocol {
 public:
  virtual ~Protocol() = default;
  virtual void on_init(NodeId node, Engine& engine) = 0;
  virtual void on_receive(NodeId node, NodeId sender, const Message& msg,
                          SimTime now, Engine& engine) = 0;
  virtual bool finished() const { return false; }
};

struct LoggedDelivery {
  SimTime arrival = 0;
  std::uint64_t seq = 0;
  NodeId sender = kNoNode;
  NodeId receiver = kNoNode;
  std::string kind;
  std::string what;
};

struct RunStats {
  SimTime final_time = 0;
  std::uint64_t transmissions = 0;
  std::uint64_t deliveries = 0;
  std::vector<std::uint64_t> per_node_transmissions;  // index by node id
  std::vector<LoggedDelivery> event_log;
};

// Discrete-event simulator over a fixed topology.  One broadcast schedules an
// independent delivery per neighbor; deliveries on the same directed link
// never overtake each other (the channel is a FIFO queue), which the engine
// enforces by bumping an arrival to just after the link's previous one.
class Engine {
 public:
  Engine(const Topology& topology, DelayModel delay);

  void enable_event_log() { log_events_ = true; }
  void set_max_events(std::uint64_t m) { max_events_ = m; }

  // Called by protocols while handling on_init/on_receive.  Counts one
  // transmission even when the sender has no neighbors to hear it.
  void broadcast(NodeId sender, const Message& payload);

  RunStats run(Protocol& protocol);

  const Topology& topology() const { return topology_; }
  SimTime now() const { return now_; }

 private:
  struct Pending {
    SimTime arrival;
    std::uint64_t seq;  // breaks arrival ties in schedule order
    NodeId sender;
    NodeId receiver;
    Message payload;
  };
  struct Later {
    bool operator()(const Pending& a, const Pending& b) const {
      if (a.arrival != b.arrival) return a.arrival > b.arrival;
      return a.seq > b.seq;
    }
  };

  const Topology& topology_;
  DelayModel delay_;
  std::priority_queue<Pending, std::vector<Pending>, Later> queue_;
  std::unordered_map<std::uint64_t, SimTime> channel_last_;  // (sender<<32)|receiver
  SimTime now_ = 0;
  std::uint64_t seq_ = 0;
  std::uint64_t max_events_ = 50'000'000;
  bool log_events_ = false;
  RunStats stats_;
};

}  // namespace bcast
