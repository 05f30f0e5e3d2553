#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "bcast/election.hpp"
#include "bcast/topology.hpp"

namespace bcast {

// Fragment-level reference model: the same merging rules as the distributed
// protocol, driven synchronously.  Every round, each fragment whose adjacent
// fragment ids are all strictly larger decides at once; decisions within a
// round are applied in ascending fragment-id order.  Because the distributed
// outcome is delay-independent, this single schedule predicts the leader and
// the merge multiset of every distributed run.
class FragmentOracle {
 public:
  FragmentOracle(const Topology& topology, double x);

  // One synchronous round; returns the number of fragments that decided.
  std::size_t step();
  void run();

  bool done() const { return fragments_.size() == 1 && leader_ != kNoNode; }
  NodeId leader() const;
  std::size_t fragment_count() const { return fragments_.size(); }
  std::size_t rounds() const { return rounds_; }

  const std::vector<WorkEvent>& work_events() const { return work_events_; }
  std::vector<MergeRecord> merges() const;  // sorted

 private:
  struct Fragment {
    FragmentId id;
    std::vector<NodeId> members;
  };

  // fragments keyed by founding identity; a key disappears when absorbed
  std::map<NodeId, Fragment> fragments_;
  std::map<NodeId, NodeId> owner_;  // node -> fragment key
  const Topology& topology_;
  double x_;
  NodeId leader_ = kNoNode;
  std::size_t rounds_ = 0;
  std::vector<WorkEvent> work_events_;
};

struct OracleResult {
  NodeId leader = kNoNode;
  std::vector<WorkEvent> work_events;
  std::vector<MergeRecord> merges;
  std::size_t rounds = 0;
};

OracleResult oracle_run(const Topology& topology, double x);

}  // namespace bcast
