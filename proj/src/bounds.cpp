#include "bcast/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "bcast/types.hpp"

namespace bcast {
namespace {

void require_domain(double x, std::uint32_t n) {
  if (!(x > 1.0)) throw Error("growth factor must exceed 1 for the bounds");
  if (n < 1) throw Error("bounds need at least one node");
}

}  // namespace

double time_bound(double x, std::uint32_t n) {
  require_domain(x, n);
  return (x * x + 3.0 * x) / (x - 1.0) * double(n);
}

double message_bound(double x, std::uint32_t n) {
  require_domain(x, n);
  const double levels =
      (std::log2(double(n)) - std::log2(1.0 + x)) / std::log2((x + 1.0) / x) + 1.0;
  return std::max(levels * double(n), double(n));
}

double optimal_x() {
  // d/dx (x^2+3x)/(x-1) = 0 at (x-3)(x+1) = 0; the root above 1 is 3
  return 3.0;
}

}  // namespace bcast
