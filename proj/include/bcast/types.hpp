#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace bcast {

// Node identities are positive; 0 is reserved as the "none" value in
// message headers (broadcast target, absent parent).
using NodeId = std::uint32_t;
using SimTime = double;

inline constexpr NodeId kNoNode = 0;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fragment identities order by size first, then by founding candidate.
// The defaulted comparison is exactly that lexicographic order.
struct FragmentId {
  std::uint32_t size = 0;
  NodeId identity = kNoNode;
  friend auto operator<=>(const FragmentId&, const FragmentId&) = default;
};

inline std::string to_string(const FragmentId& f) {
  return "(" + std::to_string(f.size) + "," + std::to_string(f.identity) + ")";
}

enum class BaseShape { string, ring, binary_tree, complete };

std::string to_string(BaseShape s);
BaseShape base_shape_from_string(const std::string& name);

// One entry of a candidate's decision history.  `entry_size` is the size the
// fragment id carried when the count began, `counted_size` the freshly
// gathered member total, `joined` the target id for merges.
enum class WorkOutcome { stay, merge, leader };
std::string to_string(WorkOutcome o);

struct WorkEvent {
  WorkOutcome outcome = WorkOutcome::stay;
  SimTime t = 0;
  NodeId candidate = kNoNode;
  std::uint32_t entry_size = 0;
  std::uint32_t counted_size = 0;
  FragmentId joined{};
};

}  // namespace bcast
