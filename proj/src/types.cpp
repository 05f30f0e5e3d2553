#include "bcast/types.hpp"

namespace bcast {

std::string to_string(WorkOutcome o) {
  switch (o) {
    case WorkOutcome::stay: return "stay";
    case WorkOutcome::merge: return "merge";
    case WorkOutcome::leader: return "leader";
  }
  throw Error("unknown work outcome");
}

}  // namespace bcast
