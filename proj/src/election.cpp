#include "bcast/election.hpp"

#include <algorithm>

namespace bcast {

ElectionProtocol::ElectionProtocol(const Topology& topology, double x)
    : topology_(topology), x_(x) {
  if (!(x >= 1.0)) throw Error("growth factor must be >= 1");
  states_.resize(topology_.n() + 1);
  sends_.resize(topology_.n() + 1);
  init_last_.assign(topology_.n() + 1, 0);
}

void ElectionProtocol::send(NodeId u, char kind, const Message& m,
                            Engine& engine) {
  sends_[u].push_back(kind);
  engine.broadcast(u, m);
}

bool ElectionProtocol::settled(const NodeState& st, NodeId x) const {
  const auto it = st.nbr.find(x);
  if (it == st.nbr.end() || !it->second.last_id) return false;
  if (it->second.awaiting_feedback) return false;
  return !(*it->second.last_id < st.fragment);
}

bool ElectionProtocol::all_settled(NodeId u) const {
  const NodeState& st = states_[u];
  for (NodeId x : topology_.neighbors(u)) {
    if (!settled(st, x)) return false;
  }
  return true;
}

void ElectionProtocol::cycle_reset(NodeState& st) {
  for (const auto& [x, ni] : st.nbr) {
    if (ni.awaiting_feedback)
      throw ProtocolViolation("count cycle closed while a child report is due");
  }
  st.subtree_count = 0;
  st.child_best.reset();
  st.child_best_from = kNoNode;
  st.fed_back = false;
  st.decided = false;
  st.return_child = kNoNode;
  st.gateway = kNoNode;
}

// Largest foreign fragment visible to u: the fold of children's reports with
// u's own neighbor knowledge.  Ties between equal direct ids go to the
// neighbor heard first; a child wins only when strictly larger than every
// direct sighting.
std::optional<ElectionProtocol::BestExternal> ElectionProtocol::best_external(
    NodeId u) const {
  const NodeState& st = states_[u];
  std::optional<FragmentId> direct;
  std::uint64_t direct_stamp = 0;
  NodeId direct_from = kNoNode;
  for (NodeId x : topology_.neighbors(u)) {
    const auto it = st.nbr.find(x);
    if (it == st.nbr.end() || !it->second.last_id) continue;
    const FragmentId& id = *it->second.last_id;
    if (id.identity == st.fragment.identity) continue;
    if (!direct || *direct < id ||
        (*direct == id && it->second.heard_at < direct_stamp)) {
      direct = id;
      direct_stamp = it->second.heard_at;
      direct_from = x;
    }
  }
  if (st.child_best && (!direct || *direct < *st.child_best))
    return BestExternal{*st.child_best, true, st.child_best_from};
  if (direct) return BestExternal{*direct, false, direct_from};
  return std::nullopt;
}

void ElectionProtocol::on_init(NodeId u, Engine& engine) {
  NodeState& st = states_[u];
  st.fragment = FragmentId{1, u};
  st.candidate = true;
  st.parent = kNoNode;
  send(u, 'I', InfoMessage{kNoNode, kNoNode, st.fragment, u, false}, engine);
  maybe_decide(u, engine.now(), engine);
}

void ElectionProtocol::on_receive(NodeId u, NodeId s, const Message& msg,
                                  SimTime now, Engine& engine) {
  if (const auto* info = std::get_if<InfoMessage>(&msg)) {
    handle_info(u, s, *info, now, engine);
  } else if (const auto* fb = std::get_if<FeedbackMessage>(&msg)) {
    if (fb->target != u) return;
    handle_feedback(u, s, *fb, now, engine);
  } else if (const auto* act = std::get_if<ActionMessage>(&msg)) {
    if (act->target != u) return;
    handle_action(u, *act, engine);
  } else {
    throw Error("election protocol got a foreign message kind");
  }
}

void ElectionProtocol::handle_info(NodeId u, NodeId s, const InfoMessage& m,
                                   SimTime now, Engine& engine) {
  NodeState& st = states_[u];

  if (m.new_id.size == 1 && m.new_id.identity == s && !m.announce &&
      m.parent == kNoNode) {
    init_last_[u] = std::max(init_last_[u], now);
    init_time_ = std::max(init_time_, now);
  }

  if (m.announce) {
    if (st.known_leader == kNoNode) {
      st.known_leader = m.new_id.identity;
      st.fragment = m.new_id;
      send(u, 'I', InfoMessage{kNoNode, kNoNode, m.new_id, m.former_identity, true},
           engine);
    }
    return;
  }
  if (st.known_leader != kNoNode) return;

  NeighborInfo& ni = st.nbr[s];
  if (!ni.last_id || *ni.last_id != m.new_id) {
    if (ni.last_id && m.new_id < *ni.last_id)
      throw ProtocolViolation("fragment id moved backwards on a channel");
    ni.last_id = m.new_id;
    ni.heard_at = ++st.stamp;
  }
  if (m.parent == u) ni.awaiting_feedback = true;

  if (m.former_identity == st.fragment.identity && st.fragment < m.new_id) {
    // our fragment moved on; follow it and spread the word
    cycle_reset(st);
    st.fragment = m.new_id;
    st.parent = s;
    st.candidate = false;
    send(u, 'I', InfoMessage{kNoNode, s, m.new_id, m.former_identity, false},
         engine);
  }

  progress(u, now, engine);
}

void ElectionProtocol::handle_feedback(NodeId u, NodeId s,
                                       const FeedbackMessage& m, SimTime now,
                                       Engine& engine) {
  NodeState& st = states_[u];
  if (st.known_leader != kNoNode) return;
  NeighborInfo& ni = st.nbr[s];
  if (!ni.awaiting_feedback)
    throw ProtocolViolation("feedback from a node that is not a current child");
  ni.awaiting_feedback = false;
  st.subtree_count += m.accumulated;
  if (m.encountered) {
    if (!st.child_best || *st.child_best < m.max_neighbor) {
      st.child_best = m.max_neighbor;
      st.child_best_from = s;
    }
  }
  progress(u, now, engine);
}

void ElectionProtocol::handle_action(NodeId u, const ActionMessage& m,
                                     Engine& engine) {
  NodeState& st = states_[u];
  if (st.return_child != kNoNode) {
    send(u, 'A', ActionMessage{st.return_child, m.old_identity}, engine);
    return;
  }
  if (st.gateway != kNoNode) {
    if (m.old_identity != st.fragment.identity)
      throw ProtocolViolation("join order names a fragment this node is not in");
    do_join(u, st.gateway, engine);
    return;
  }
  throw ProtocolViolation("join order arrived at a node with no stored path");
}

void ElectionProtocol::progress(NodeId u, SimTime now, Engine& engine) {
  NodeState& st = states_[u];
  if (st.known_leader != kNoNode) return;
  if (st.candidate)
    maybe_decide(u, now, engine);
  else
    maybe_feedback(u, engine);
}

void ElectionProtocol::maybe_feedback(NodeId u, Engine& engine) {
  NodeState& st = states_[u];
  if (st.fed_back || st.parent == kNoNode) return;
  if (!all_settled(u)) return;
  st.fed_back = true;
  auto best = best_external(u);
  FeedbackMessage fb{st.parent, 1 + st.subtree_count, false, FragmentId{}};
  if (best) {
    fb.encountered = true;
    fb.max_neighbor = best->id;
    if (best->via_child)
      st.return_child = best->hop;
    else
      st.gateway = best->hop;
  }
  send(u, 'F', fb, engine);
}

void ElectionProtocol::maybe_decide(NodeId u, SimTime now, Engine& engine) {
  NodeState& st = states_[u];
  if (st.decided || !all_settled(u)) return;
  st.decided = true;
  const std::uint32_t counted = 1 + st.subtree_count;
  const std::uint32_t entry = st.fragment.size;
  auto best = best_external(u);

  if (!best) {
    work_events_.push_back(
        WorkEvent{WorkOutcome::leader, now, u, entry, counted, FragmentId{}});
    leader_ = u;
    decide_time_ = now;
    decided_leader_ = true;
    st.known_leader = u;
    st.fragment = FragmentId{counted, u};
    send(u, 'I', InfoMessage{kNoNode, kNoNode, st.fragment, u, true}, engine);
    return;
  }

  if (double(counted) > x_ * double(best->id.size)) {
    work_events_.push_back(
        WorkEvent{WorkOutcome::stay, now, u, entry, counted, FragmentId{}});
    st.fragment = FragmentId{counted, u};
    cycle_reset(st);
    send(u, 'I', InfoMessage{kNoNode, kNoNode, st.fragment, u, false}, engine);
    return;
  }

  work_events_.push_back(
      WorkEvent{WorkOutcome::merge, now, u, entry, counted, best->id});
  st.candidate = false;
  if (best->via_child) {
    send(u, 'A', ActionMessage{best->hop, st.fragment.identity}, engine);
  } else {
    do_join(u, best->hop, engine);
  }
}

void ElectionProtocol::do_join(NodeId u, NodeId through, Engine& engine) {
  NodeState& st = states_[u];
  const auto it = st.nbr.find(through);
  if (it == st.nbr.end() || !it->second.last_id)
    throw ProtocolViolation("join through a neighbor never heard from");
  const FragmentId target = *it->second.last_id;
  const NodeId old = st.fragment.identity;
  if (target.identity == old || !(st.fragment < target))
    throw ProtocolViolation("join target is not a larger foreign fragment");
  cycle_reset(st);
  st.fragment = target;
  st.parent = through;
  st.candidate = false;
  send(u, 'I', InfoMessage{kNoNode, through, target, old, false}, engine);
  maybe_feedback(u, engine);
}

bool ElectionProtocol::everyone_knows_leader() const {
  if (leader_ == kNoNode) return false;
  for (NodeId u = 1; u <= topology_.n(); ++u) {
    if (states_[u].known_leader != leader_) return false;
  }
  return true;
}

SimTime ElectionProtocol::decide_time() const {
  if (!decided_leader_) throw Error("no leader decision yet");
  return decide_time_;
}

std::vector<MergeRecord> ElectionProtocol::merges() const {
  std::vector<MergeRecord> out;
  for (const WorkEvent& e : work_events_) {
    if (e.outcome == WorkOutcome::merge)
      out.push_back(MergeRecord{FragmentId{e.counted_size, e.candidate}, e.joined});
  }
  std::sort(out.begin(), out.end());
  return out;
}

ElectionResult elect_run(const Topology& topology, double x, DelayModel delay,
                         bool log_events) {
  Engine engine(topology, std::move(delay));
  if (log_events) engine.enable_event_log();
  ElectionProtocol protocol(topology, x);
  ElectionResult r;
  r.stats = engine.run(protocol);
  if (protocol.leader() == kNoNode)
    throw Error("election quiesced without electing a leader");
  if (!protocol.everyone_knows_leader())
    throw Error("election ended with nodes unaware of the leader");
  r.leader = protocol.leader();
  r.init_time = protocol.init_time();
  r.decide_time = protocol.decide_time();
  r.time_excl_init = r.decide_time - r.init_time;
  r.transmissions = r.stats.transmissions;
  r.work_events = protocol.work_events();
  r.merges = protocol.merges();
  r.node_init_delay.assign(topology.n() + 1, 0);
  for (NodeId u = 1; u <= topology.n(); ++u)
    r.node_init_delay[u] = protocol.node_init_delay(u);
  return r;
}

}  // namespace bcast
