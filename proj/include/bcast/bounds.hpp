#pragma once

#include <cstdint>

namespace bcast {

// Closed-form complexity bounds for the election, in time units and
// transmissions.  Both require a growth factor strictly above 1.
double time_bound(double x, std::uint32_t n);
double message_bound(double x, std::uint32_t n);

// The growth factor minimizing time_bound's coefficient (x^2+3x)/(x-1).
double optimal_x();

}  // namespace bcast
