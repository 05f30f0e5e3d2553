#pragma once

#include <string>
#include <variant>

#include "bcast/types.hpp"

namespace bcast {

// Every message is physically broadcast.  `target` narrows who acts on it:
// kNoNode means everyone, otherwise only the named neighbor.

// Flood/feedback unit of a single-source propagation wave.  `l` names the
// wave the sender is reporting on, `source` the node whose wave it is.
struct PifMessage {
  NodeId target = kNoNode;
  NodeId l = kNoNode;
  NodeId parent = kNoNode;
  NodeId source = kNoNode;
};

// Fragment-id announcement.  `former_identity` tells members of the absorbed
// fragment that this is their own update; everyone else just records it.
struct InfoMessage {
  NodeId target = kNoNode;
  NodeId parent = kNoNode;
  FragmentId new_id{};
  NodeId former_identity = kNoNode;
  bool announce = false;
};

// Upward count report.  `accumulated` members answered at or below the
// sender; `max_neighbor` is the best foreign fragment seen there, valid only
// when `encountered` is set.
struct FeedbackMessage {
  NodeId target = kNoNode;
  std::uint32_t accumulated = 0;
  bool encountered = false;
  FragmentId max_neighbor{};
};

// Downward merge order, forwarded along the stored return path until the
// gateway node executes the join.  `old_identity` rides along so the join
// announcement can name the absorbed fragment.
struct ActionMessage {
  NodeId target = kNoNode;
  NodeId old_identity = kNoNode;
};

using Message = std::variant<PifMessage, InfoMessage, FeedbackMessage, ActionMessage>;

std::string kind_name(const Message& m);
std::string summary(const Message& m);

}  // namespace bcast
