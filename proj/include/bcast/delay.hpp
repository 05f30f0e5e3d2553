#pragma once

#include <cstdint>
#include <functional>
#include <random>

#include "bcast/types.hpp"

namespace bcast {

// Transmission delay per delivery.  Unit consumes no randomness, so unit-delay
// runs are identical regardless of seed.  UniformRandom draws from (0, bound],
// excluding zero to keep delays positive and including the bound itself.
class DelayModel {
 public:
  static DelayModel unit() { return DelayModel(); }
  static DelayModel uniform_random(double bound, std::uint64_t seed);
  static DelayModel custom(std::function<SimTime(NodeId sender, NodeId receiver)> fn);

  SimTime draw(NodeId sender, NodeId receiver);

 private:
  DelayModel() = default;
  enum class Kind { unit, uniform, custom } kind_ = Kind::unit;
  double bound_ = 1.0;
  std::mt19937_64 rng_{};
  std::function<SimTime(NodeId, NodeId)> fn_;
};

}  // namespace bcast
