#include <algorithm>
#include <set>
#include <tuple>
#include <vector>

#include "doctest.h"

#include "bcast/election.hpp"
#include "bcast/oracle.hpp"
#include "bcast/topology.hpp"

using namespace bcast;

namespace {

using PhaseKey = std::tuple<NodeId, std::uint32_t, std::uint32_t, int,
                            std::uint32_t, NodeId>;

std::vector<PhaseKey> phases(const std::vector<WorkEvent>& evs) {
  std::vector<PhaseKey> out;
  for (const WorkEvent& e : evs)
    out.emplace_back(e.candidate, e.entry_size, e.counted_size, int(e.outcome),
                     e.joined.size, e.joined.identity);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("two singletons resolve in two rounds") {
  Topology t(2, {{1, 2}}, BaseShape::string, 0, 0);
  OracleResult r = oracle_run(t, 3.0);
  CHECK(r.leader == 2);
  CHECK(r.rounds == 2);
  CHECK(r.merges == std::vector<MergeRecord>{{{1, 1}, {1, 2}}});
}

TEST_CASE("triangle: both small ids fold into the big one") {
  Topology t(3, {{1, 2}, {1, 3}, {2, 3}}, BaseShape::string, 0, 0);
  FragmentOracle oracle(t, 3.0);
  CHECK(oracle.fragment_count() == 3);
  CHECK(oracle.step() == 1);  // only the minimum works in the first round
  CHECK(oracle.fragment_count() == 2);
  CHECK(oracle.step() == 1);
  CHECK(oracle.fragment_count() == 1);
  CHECK_FALSE(oracle.done());
  CHECK(oracle.step() == 1);  // the survivor notices it has no rivals
  CHECK(oracle.done());
  CHECK(oracle.leader() == 3);
  CHECK(oracle.merges() ==
        std::vector<MergeRecord>{{{1, 1}, {1, 3}}, {{1, 2}, {1, 3}}});
}

TEST_CASE("complete graph joins in strictly increasing id order") {
  Topology t = generate_topology(6, BaseShape::complete, 0, 9);
  OracleResult r = oracle_run(t, 3.0);
  CHECK(r.leader == 6);
  REQUIRE(r.merges.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(r.merges[i].joiner == FragmentId{1, NodeId(i + 1)});
    CHECK(r.merges[i].joined == FragmentId{1, 6});  // the absorber id never moves
  }
  // one joiner per round, then the leader round
  CHECK(r.rounds == 6);
}

TEST_CASE("a stay bumps the size component and keeps the identity") {
  // 1-3-2-4-5: candidate 4 counts four members against the singleton 5
  Topology t(5, {{1, 3}, {2, 3}, {2, 4}, {4, 5}}, BaseShape::string, 0, 0);
  OracleResult r = oracle_run(t, 3.0);
  CHECK(r.leader == 4);
  bool saw_stay = false;
  for (const WorkEvent& e : r.work_events) {
    if (e.outcome != WorkOutcome::stay) continue;
    saw_stay = true;
    CHECK(e.candidate == 4);
    CHECK(e.entry_size == 1);
    CHECK(e.counted_size == 4);
  }
  CHECK(saw_stay);
  // node 5 joins the grown id, not the founding one
  auto m = r.merges;
  CHECK(std::count(m.begin(), m.end(), MergeRecord{{1, 5}, {4, 4}}) == 1);
}

TEST_CASE("leader before the run finishes is refused") {
  Topology t(2, {{1, 2}}, BaseShape::string, 0, 0);
  FragmentOracle oracle(t, 3.0);
  CHECK_THROWS_AS(oracle.leader(), Error);
}

TEST_CASE("rounds preserve the member partition and pick non-adjacent workers") {
  Topology t = generate_topology(18, BaseShape::ring, 0.25, 15);
  FragmentOracle oracle(t, 3.0);
  while (!oracle.done()) {
    const std::size_t before = oracle.fragment_count();
    const std::size_t decided = oracle.step();
    CHECK(decided >= 1);  // the globally minimal fragment can always act
    CHECK(oracle.fragment_count() <= before);
    CHECK(oracle.rounds() <= 200);
  }
  CHECK(oracle.leader() >= 1);
}

TEST_CASE("oracle and simulator agree on every outcome") {
  std::uint64_t seed = 6000;
  for (std::uint32_t n : {2u, 4u, 7u, 12u, 19u, 26u}) {
    for (auto shape : {BaseShape::string, BaseShape::ring,
                       BaseShape::binary_tree, BaseShape::complete}) {
      for (double x : {1.5, 3.0}) {
        Topology t = generate_topology(n, shape, 0.2, ++seed);
        OracleResult o = oracle_run(t, x);
        ElectionResult e = elect_run(t, x, DelayModel::uniform_random(1.0, seed));
        CHECK(o.leader == e.leader);
        CHECK(o.merges == e.merges);
        CHECK(phases(o.work_events) == phases(e.work_events));
      }
    }
  }
}

TEST_CASE("the x domain matches the protocol's") {
  Topology t(2, {{1, 2}}, BaseShape::string, 0, 0);
  CHECK_THROWS_AS(FragmentOracle(t, 0.5), Error);
}
