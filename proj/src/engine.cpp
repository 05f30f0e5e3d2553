#include "bcast/engine.hpp"

#include <cmath>
#include <sstream>

namespace bcast {

std::string kind_name(const Message& m) {
  struct V {
    std::string operator()(const PifMessage&) const { return "MSG"; }
    std::string operator()(const InfoMessage&) const { return "INFO"; }
    std::string operator()(const FeedbackMessage&) const { return "FEEDBACK"; }
    std::string operator()(const ActionMessage&) const { return "ACTION"; }
  };
  return std::visit(V{}, m);
}

std::string summary(const Message& m) {
  std::ostringstream os;
  struct V {
    std::ostringstream& os;
    void operator()(const PifMessage& p) const {
      os << "target=" << p.target << " l=" << p.l << " parent=" << p.parent
         << " source=" << p.source;
    }
    void operator()(const InfoMessage& i) const {
      os << "new_id=" << to_string(i.new_id) << " former=" << i.former_identity
         << " parent=" << i.parent;
      if (i.announce) os << " announce";
    }
    void operator()(const FeedbackMessage& f) const {
      os << "target=" << f.target << " accumulated=" << f.accumulated;
      if (f.encountered) os << " max_neighbor=" << to_string(f.max_neighbor);
      else os << " max_neighbor=none";
    }
    void operator()(const ActionMessage& a) const {
      os << "target=" << a.target << " old_identity=" << a.old_identity;
    }
  };
  std::visit(V{os}, m);
  return os.str();
}

DelayModel DelayModel::uniform_random(double bound, std::uint64_t seed) {
  if (!(bound > 0.0)) throw Error("delay bound must be positive");
  DelayModel d;
  d.kind_ = Kind::uniform;
  d.bound_ = bound;
  d.rng_.seed(seed);
  return d;
}

DelayModel DelayModel::custom(std::function<SimTime(NodeId, NodeId)> fn) {
  DelayModel d;
  d.kind_ = Kind::custom;
  d.fn_ = std::move(fn);
  return d;
}

SimTime DelayModel::draw(NodeId sender, NodeId receiver) {
  switch (kind_) {
    case Kind::unit:
      return 1.0;
    case Kind::uniform: {
      // 53 uniform bits mapped to (0, bound]: u in [0,1) becomes bound*(1-u)
      const double u = double(rng_() >> 11) * 0x1p-53;
      return bound_ * (1.0 - u);
    }
    case Kind::custom: {
      SimTime d = fn_(sender, receiver);
      if (!(d > 0.0)) throw Error("custom delay must be positive");
      return d;
    }
  }
  throw Error("bad delay model");
}

Engine::Engine(const Topology& topology, DelayModel delay)
    : topology_(topology), delay_(std::move(delay)) {
  topology_.validate_or_throw();
  stats_.per_node_transmissions.assign(topology_.n() + 1, 0);
}

void Engine::broadcast(NodeId sender, const Message& payload) {
  if (!topology_.has_node(sender)) throw Error("broadcast from unknown node");
  ++stats_.transmissions;
  ++stats_.per_node_transmissions[sender];
  for (NodeId r : topology_.neighbors(sender)) {
    SimTime arrival = now_ + delay_.draw(sender, r);
    const std::uint64_t key = (std::uint64_t(sender) << 32) | r;
    auto it = channel_last_.find(key);
    if (it != channel_last_.end() && arrival <= it->second) {
      // strictly increasing per channel, even when two sends coincide
      arrival = std::nextafter(it->second, std::numeric_limits<double>::infinity());
    }
    channel_last_[key] = arrival;
    queue_.push(Pending{arrival, seq_++, sender, r, payload});
  }
}

RunStats Engine::run(Protocol& protocol) {
  stats_ = RunStats{};
  stats_.per_node_transmissions.assign(topology_.n() + 1, 0);
  now_ = 0;
  for (NodeId u = 1; u <= topology_.n(); ++u) protocol.on_init(u, *this);
  std::uint64_t processed = 0;
  while (!queue_.empty() && !protocol.finished()) {
    if (++processed > max_events_)
      throw Error("event limit exceeded (" + std::to_string(max_events_) +
                  "); the protocol is probably not quiescing");
    Pending p = queue_.top();
    queue_.pop();
    now_ = p.arrival;
    ++stats_.deliveries;
    if (log_events_) {
      stats_.event_log.push_back(LoggedDelivery{p.arrival, p.seq, p.sender,
                                                p.receiver, kind_name(p.payload),
                                                summary(p.payload)});
    }
    protocol.on_receive(p.receiver, p.sender, p.payload, now_, *this);
  }
  stats_.final_time = now_;
  return stats_;
}

}  // namespace bcast
