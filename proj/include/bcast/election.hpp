#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "bcast/engine.hpp"

namespace bcast {

// A message that contradicts the protocol's reachable-state envelope (a join
// order at a node with no stored path, a feedback from a non-child, a
// fragment id moving backwards on a channel).  Surfaced, never swallowed.
struct ProtocolViolation : Error {
  using Error::Error;
};

struct MergeRecord {
  FragmentId joiner;  // freshly counted size + ceasing candidate's identity
  FragmentId joined;  // target fragment id at the moment of the decision
  friend auto operator<=>(const MergeRecord&, const MergeRecord&) = default;
};

// Distributed leader election by fragment merging.
//
// Every node starts as the candidate of a singleton fragment and broadcasts
// its id.  A candidate whose whole fragment has settled (every member heard
// an id >= the fragment's own from every neighbor, and every adopted child
// reported back) counts its members and compares against the largest foreign
// id anyone saw: no foreign id means leader; counted > X * best.size means
// the fragment keeps its candidate and re-floods a grown id; otherwise the
// candidate cedes and routes a join order to the member adjacent to the best
// foreign fragment, which adopts that fragment's id verbatim.
//
// The per-neighbor settledness test replaces per-cycle heard bits: a neighbor
// is settled once its latest broadcast id is >= the local fragment id and it
// owes no feedback.  Hearing the own fragment's current id satisfies this by
// equality; foreign ids satisfy it only when strictly larger, which is
// exactly the incoming-edge condition for working.
class ElectionProtocol : public Protocol {
 public:
  ElectionProtocol(const Topology& topology, double x);

  void on_init(NodeId node, Engine& engine) override;
  void on_receive(NodeId node, NodeId sender, const Message& msg, SimTime now,
                  Engine& engine) override;

  NodeId leader() const { return leader_; }
  bool everyone_knows_leader() const;
  SimTime decide_time() const;
  SimTime init_time() const { return init_time_; }
  SimTime node_init_delay(NodeId u) const { return init_last_.at(u); }

  const std::vector<WorkEvent>& work_events() const { return work_events_; }
  std::vector<MergeRecord> merges() const;  // sorted

  // Per-node history of broadcast kinds: 'I' info, 'F' feedback, 'A' action.
  const std::vector<char>& send_kinds(NodeId u) const { return sends_.at(u); }

 private:
  struct NeighborInfo {
    std::optional<FragmentId> last_id;
    std::uint64_t heard_at = 0;      // local stamp of the last value change
    bool awaiting_feedback = false;  // it adopted through us; its count is due
  };

  struct NodeState {
    FragmentId fragment;
    NodeId parent = kNoNode;  // kNoNode while candidate or before adoption
    bool candidate = false;
    NodeId known_leader = kNoNode;
    std::map<NodeId, NeighborInfo> nbr;
    std::uint64_t stamp = 0;

    // one count cycle; reset on adoption, join, and stay
    std::uint32_t subtree_count = 0;
    std::optional<FragmentId> child_best;
    NodeId child_best_from = kNoNode;
    bool fed_back = false;
    bool decided = false;
    NodeId return_child = kNoNode;
    NodeId gateway = kNoNode;
  };

  struct BestExternal {
    FragmentId id;
    bool via_child = false;
    NodeId hop = kNoNode;  // child to return to, or foreign neighbor to join
  };

  NodeState& state(NodeId u) { return states_[u]; }
  bool settled(const NodeState& st, NodeId x) const;
  bool all_settled(NodeId u) const;
  void cycle_reset(NodeState& st);
  std::optional<BestExternal> best_external(NodeId u) const;

  void handle_info(NodeId u, NodeId s, const InfoMessage& m, SimTime now,
                   Engine& engine);
  void handle_feedback(NodeId u, NodeId s, const FeedbackMessage& m,
                       SimTime now, Engine& engine);
  void handle_action(NodeId u, const ActionMessage& m, Engine& engine);
  void progress(NodeId u, SimTime now, Engine& engine);
  void maybe_feedback(NodeId u, Engine& engine);
  void maybe_decide(NodeId u, SimTime now, Engine& engine);
  void do_join(NodeId u, NodeId through, Engine& engine);
  void send(NodeId u, char kind, const Message& m, Engine& engine);

  const Topology& topology_;
  double x_;
  std::vector<NodeState> states_;
  std::vector<std::vector<char>> sends_;
  std::vector<SimTime> init_last_;
  std::vector<WorkEvent> work_events_;
  NodeId leader_ = kNoNode;
  SimTime decide_time_ = 0;
  SimTime init_time_ = 0;
  bool decided_leader_ = false;
};

struct ElectionResult {
  NodeId leader = kNoNode;
  SimTime init_time = 0;
  SimTime decide_time = 0;
  SimTime time_excl_init = 0;
  std::uint64_t transmissions = 0;
  std::vector<WorkEvent> work_events;
  std::vector<MergeRecord> merges;
  std::vector<SimTime> node_init_delay;  // indexed by node id
  RunStats stats;
};

ElectionResult elect_run(const Topology& topology, double x, DelayModel delay,
                         bool log_events = false);

}  // namespace bcast
