// Command-line front end: generate topologies, run single protocol
// executions, diff against the fragment oracle, drive experiment sweeps.
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bcast/election.hpp"
#include "bcast/experiment.hpp"
#include "bcast/oracle.hpp"
#include "bcast/pif.hpp"
#include "bcast/topology.hpp"
#include "bcast/topology_io.hpp"

namespace {

using nlohmann::ordered_json;

std::string full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bcast::DelayModel make_delay(const std::string& kind, double bound,
                             std::uint64_t seed) {
  if (kind == "unit") return bcast::DelayModel::unit();
  if (kind == "random") return bcast::DelayModel::uniform_random(bound, seed);
  throw bcast::Error("delay must be unit or random");
}

// Identical orderings on both sides make elect/oracle output diffable even
// though one carries times and the other carries round indices.
std::vector<bcast::WorkEvent> canonical(std::vector<bcast::WorkEvent> evs) {
  std::sort(evs.begin(), evs.end(), [](const auto& a, const auto& b) {
    if (a.candidate != b.candidate) return a.candidate < b.candidate;
    if (a.entry_size != b.entry_size) return a.entry_size < b.entry_size;
    if (a.counted_size != b.counted_size) return a.counted_size < b.counted_size;
    if (a.outcome != b.outcome) return int(a.outcome) < int(b.outcome);
    return a.joined < b.joined;
  });
  return evs;
}

ordered_json work_phases_json(const std::vector<bcast::WorkEvent>& events) {
  ordered_json arr = ordered_json::array();
  for (const bcast::WorkEvent& ev : canonical(events)) {
    ordered_json e;
    e["candidate"] = ev.candidate;
    e["outcome"] = bcast::to_string(ev.outcome);
    e["entry_size"] = ev.entry_size;
    e["counted_size"] = ev.counted_size;
    if (ev.outcome == bcast::WorkOutcome::merge)
      e["joined"] = {ev.joined.size, ev.joined.identity};
    else
      e["joined"] = nullptr;
    arr.push_back(std::move(e));
  }
  return arr;
}

void write_trace(const std::string& path,
                 const std::vector<bcast::WorkEvent>& events) {
  std::ofstream f(path);
  if (!f) throw bcast::Error("cannot write trace: " + path);
  for (const bcast::WorkEvent& ev : events) {
    if (ev.outcome != bcast::WorkOutcome::merge) continue;
    f << full(ev.t) << ", "
      << bcast::to_string(bcast::FragmentId{ev.counted_size, ev.candidate})
      << ", " << bcast::to_string(ev.joined) << '\n';
  }
}

void write_event_log(const std::string& path,
                     const std::vector<bcast::LoggedDelivery>& log) {
  std::ofstream f(path);
  if (!f) throw bcast::Error("cannot write log: " + path);
  for (const bcast::LoggedDelivery& d : log) {
    f << full(d.arrival) << '\t' << d.sender << '\t' << d.receiver << '\t'
      << d.kind << '\t' << d.what << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multihop broadcast network simulator"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a random topology");
  std::uint32_t gen_n = 8;
  std::string gen_base = "string";
  double gen_c = 0.0;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  gen->add_option("--n", gen_n, "node count")->required();
  gen->add_option("--base", gen_base, "string|ring|binary_tree|complete");
  gen->add_option("--connectivity", gen_c, "extra-edge fraction in [0,1]");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--out", gen_out, "output file (default stdout)");

  // pif
  auto* pif = app.add_subcommand("pif", "run one information wave");
  std::string pif_topology;
  bcast::NodeId pif_source = 1;
  std::string pif_delay = "unit";
  std::uint64_t pif_seed = 1;
  double pif_bound = 1.0;
  std::string pif_log;
  pif->add_option("--topology", pif_topology, "topology JSON file")->required();
  pif->add_option("--source", pif_source, "wave source node");
  pif->add_option("--delay", pif_delay, "unit|random");
  pif->add_option("--seed", pif_seed, "delay seed (random only)");
  pif->add_option("--bound", pif_bound, "random delay upper bound");
  pif->add_option("--log", pif_log, "write per-delivery event log (TSV)");

  // elect
  auto* elect = app.add_subcommand("elect", "run a leader election");
  std::string elect_topology;
  double elect_x = 3.0;
  std::string elect_delay = "unit";
  std::uint64_t elect_seed = 1;
  double elect_bound = 1.0;
  std::string elect_trace;
  std::string elect_log;
  elect->add_option("--topology", elect_topology, "topology JSON file")
      ->required();
  elect->add_option("--x", elect_x, "growth factor (> 1)");
  elect->add_option("--delay", elect_delay, "unit|random");
  elect->add_option("--seed", elect_seed, "delay seed (random only)");
  elect->add_option("--bound", elect_bound, "random delay upper bound");
  elect->add_option("--trace", elect_trace, "write merge trace file");
  elect->add_option("--log", elect_log, "write per-delivery event log (TSV)");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "synchronous fragment oracle");
  std::string oracle_topology;
  double oracle_x = 3.0;
  std::string oracle_trace;
  oracle->add_option("--topology", oracle_topology, "topology JSON file")
      ->required();
  oracle->add_option("--x", oracle_x, "growth factor (> 1)");
  oracle->add_option("--trace", oracle_trace, "write merge trace file");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "run a config sweep");
  std::string exp_config;
  std::string exp_out;
  experiment->add_option("--config", exp_config, "config JSON file")
      ->required();
  experiment->add_option("--out", exp_out, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      bcast::Topology t = bcast::generate_topology(
          gen_n, bcast::base_shape_from_string(gen_base), gen_c, gen_seed);
      if (gen_out.empty())
        std::cout << bcast::topology_to_json(t);
      else
        bcast::save_topology(t, gen_out);
    } else if (pif->parsed()) {
      bcast::Topology t = bcast::load_topology(pif_topology);
      bcast::PifResult r =
          bcast::pif_run(t, pif_source, make_delay(pif_delay, pif_bound, pif_seed),
                         !pif_log.empty());
      if (!pif_log.empty()) write_event_log(pif_log, r.stats.event_log);
      ordered_json out;
      out["time"] = r.time;
      out["transmissions"] = r.transmissions;
      ordered_json tree = ordered_json::array();
      for (auto [child, parent] : r.tree) tree.push_back({child, parent});
      out["tree"] = std::move(tree);
      std::cout << out.dump(2) << '\n';
    } else if (elect->parsed()) {
      bcast::Topology t = bcast::load_topology(elect_topology);
      bcast::ElectionResult r = bcast::elect_run(
          t, elect_x, make_delay(elect_delay, elect_bound, elect_seed),
          !elect_log.empty());
      if (!elect_log.empty()) write_event_log(elect_log, r.stats.event_log);
      if (!elect_trace.empty()) write_trace(elect_trace, r.work_events);
      ordered_json out;
      out["leader"] = r.leader;
      out["time_excl_init"] = r.time_excl_init;
      out["init_time"] = r.init_time;
      out["transmissions"] = r.transmissions;
      out["work_phases"] = work_phases_json(r.work_events);
      std::cout << out.dump(2) << '\n';
    } else if (oracle->parsed()) {
      bcast::Topology t = bcast::load_topology(oracle_topology);
      bcast::OracleResult r = bcast::oracle_run(t, oracle_x);
      if (!oracle_trace.empty()) write_trace(oracle_trace, r.work_events);
      ordered_json out;
      out["leader"] = r.leader;
      out["work_phases"] = work_phases_json(r.work_events);
      std::cout << out.dump(2) << '\n';
    } else if (experiment->parsed()) {
      bcast::ExperimentConfig cfg = bcast::load_experiment_config(exp_config);
      bcast::ExperimentOutput out = bcast::run_experiment(cfg);
      bcast::write_experiment_outputs(out, exp_out);
      std::cout << "wrote " << out.results.size() << " runs to " << exp_out
                << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
