#include "bcast/oracle.hpp"

#include <algorithm>
#include <set>

namespace bcast {

FragmentOracle::FragmentOracle(const Topology& topology, double x)
    : topology_(topology), x_(x) {
  if (!(x >= 1.0)) throw Error("growth factor must be >= 1");
  topology_.validate_or_throw();
  for (NodeId u = 1; u <= topology_.n(); ++u) {
    fragments_[u] = Fragment{FragmentId{1, u}, {u}};
    owner_[u] = u;
  }
}

std::size_t FragmentOracle::step() {
  const auto t = static_cast<SimTime>(rounds_);
  if (fragments_.size() == 1) {
    if (leader_ != kNoNode) return 0;
    const Fragment& f = fragments_.begin()->second;
    work_events_.push_back(WorkEvent{
        WorkOutcome::leader, t, f.id.identity, f.id.size,
        static_cast<std::uint32_t>(f.members.size()), FragmentId{}});
    leader_ = f.id.identity;
    ++rounds_;
    return 1;
  }

  auto adjacent_keys = [&](const Fragment& f) {
    std::set<NodeId> keys;
    for (NodeId u : f.members)
      for (NodeId v : topology_.neighbors(u)) {
        NodeId k = owner_.at(v);
        if (k != f.id.identity) keys.insert(k);
      }
    return keys;
  };

  // a fragment decides when every adjacent id is strictly larger
  std::vector<std::pair<FragmentId, NodeId>> eligible;
  for (const auto& [key, f] : fragments_) {
    bool minimal = true;
    for (NodeId k : adjacent_keys(f)) {
      if (fragments_.at(k).id < f.id) {
        minimal = false;
        break;
      }
    }
    if (minimal) eligible.push_back({f.id, key});
  }
  std::sort(eligible.begin(), eligible.end());

  std::size_t processed = 0;
  for (const auto& [id_at_pick, key] : eligible) {
    auto it = fragments_.find(key);
    if (it == fragments_.end())
      throw Error("eligible fragment absorbed within the same round");
    Fragment& f = it->second;
    const auto counted = static_cast<std::uint32_t>(f.members.size());
    const std::uint32_t entry = f.id.size;

    std::optional<FragmentId> best;
    for (NodeId k : adjacent_keys(f)) {
      const FragmentId& nid = fragments_.at(k).id;
      if (!best || *best < nid) best = nid;
    }
    if (!best) throw Error("multiple fragments but no adjacency; graph split");

    if (double(counted) > x_ * double(best->size)) {
      work_events_.push_back(
          WorkEvent{WorkOutcome::stay, t, f.id.identity, entry, counted,
                    FragmentId{}});
      f.id.size = counted;
    } else {
      work_events_.push_back(WorkEvent{WorkOutcome::merge, t, f.id.identity,
                                       entry, counted, *best});
      Fragment& absorber = fragments_.at(best->identity);
      for (NodeId u : f.members) {
        owner_[u] = best->identity;
        absorber.members.push_back(u);
      }
      fragments_.erase(it);
    }
    ++processed;
  }
  ++rounds_;
  return processed;
}

void FragmentOracle::run() {
  const std::size_t limit = 10 * std::size_t(topology_.n()) + 64;
  while (!done()) {
    if (rounds_ > limit) throw Error("oracle exceeded its round budget");
    if (step() == 0 && !done())
      throw Error("oracle round made no progress");
  }
}

NodeId FragmentOracle::leader() const {
  if (leader_ == kNoNode) throw Error("oracle has not finished");
  return leader_;
}

std::vector<MergeRecord> FragmentOracle::merges() const {
  std::vector<MergeRecord> out;
  for (const WorkEvent& e : work_events_) {
    if (e.outcome == WorkOutcome::merge)
      out.push_back(MergeRecord{FragmentId{e.counted_size, e.candidate}, e.joined});
  }
  std::sort(out.begin(), out.end());
  return out;
}

OracleResult oracle_run(const Topology& topology, double x) {
  FragmentOracle oracle(topology, x);
  oracle.run();
  return OracleResult{oracle.leader(), oracle.work_events(), oracle.merges(),
                      oracle.rounds()};
}

}  // namespace bcast
