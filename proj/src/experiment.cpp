#include "bcast/experiment.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "bcast/bounds.hpp"

namespace bcast {
namespace {

std::uint64_t splitmix64(std::uint64_t& s) {
  s += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

ExperimentConfig experiment_config_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("experiment config parse: ") + e.what());
  }
  ExperimentConfig cfg;
  if (!j.contains("n")) throw Error("experiment config needs \"n\"");
  cfg.n = j.at("n").get<std::uint32_t>();
  if (j.contains("base_shape"))
    cfg.base_shape = base_shape_from_string(j.at("base_shape").get<std::string>());
  if (j.contains("connectivities"))
    cfg.connectivities = j.at("connectivities").get<std::vector<double>>();
  cfg.x = j.value("x", 3.0);
  cfg.replications = j.value("replications", 100u);
  cfg.seed = j.value("seed", std::uint64_t{1});
  if (j.contains("delay")) {
    const auto d = j.at("delay").get<std::string>();
    if (d == "unit") cfg.unit_delay = true;
    else if (d == "random") cfg.unit_delay = false;
    else throw Error("delay must be \"unit\" or \"random\"");
  }
  cfg.delay_bound = j.value("delay_bound", 1.0);
  if (cfg.replications < 1) throw Error("replications must be >= 1");
  if (cfg.connectivities.empty()) throw Error("need at least one connectivity");
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return experiment_config_from_json(buf.str());
}

BoundsReport check_bounds(const ElectionResult& metrics, double x,
                          std::uint32_t n) {
  BoundsReport r;
  r.x = x;
  r.n = n;
  r.time_excl_init = metrics.time_excl_init;
  r.time_bound = time_bound(x, n);
  r.time_margin = r.time_bound - r.time_excl_init;
  r.post_init_transmissions = metrics.transmissions - n;
  r.message_allowance = message_bound(x, n) + double(n);
  r.message_margin = r.message_allowance - double(r.post_init_transmissions);
  r.pass = r.time_margin >= 0 && r.message_margin >= 0;
  return r;
}

ExperimentOutput run_experiment(const ExperimentConfig& cfg) {
  if (cfg.replications < 1) throw Error("replications must be >= 1");
  ExperimentOutput out;
  out.config = cfg;
  std::uint64_t stream = cfg.seed;
  for (double c : cfg.connectivities) {
    SimTime worst_time = 0;
    std::uint64_t worst_tx = 0;
    std::uint32_t max_id_wins = 0;
    for (std::uint32_t rep = 0; rep < cfg.replications; ++rep) {
      const std::uint64_t topo_seed = splitmix64(stream);
      const std::uint64_t delay_seed = splitmix64(stream);
      Topology t = generate_topology(cfg.n, cfg.base_shape, c, topo_seed);
      DelayModel delay = cfg.unit_delay
                             ? DelayModel::unit()
                             : DelayModel::uniform_random(cfg.delay_bound,
                                                          delay_seed);
      ElectionResult res = elect_run(t, cfg.x, std::move(delay));
      for (NodeId u = 1; u <= cfg.n; ++u) {
        if (res.node_init_delay[u] > 2.0)
          throw Error("a node saw its last init broadcast after 2 time units");
      }
      RunRecord rec;
      rec.base_shape = cfg.base_shape;
      rec.n = cfg.n;
      rec.connectivity = c;
      rec.replication = rep;
      rec.seed = topo_seed;
      rec.leader = res.leader;
      rec.leader_is_max_id = res.leader == cfg.n;
      rec.init_time = res.init_time;
      rec.time_excl_init = res.time_excl_init;
      rec.transmissions = res.transmissions;
      out.results.push_back(rec);
      if (cfg.unit_delay)
        out.bounds.push_back(BoundsRow{rec, check_bounds(res, cfg.x, cfg.n)});
      worst_time = std::max(worst_time, rec.time_excl_init);
      worst_tx = std::max(worst_tx, rec.transmissions);
      if (rec.leader_is_max_id) ++max_id_wins;
    }
    out.summary.push_back(SummaryRow{
        cfg.base_shape, cfg.n, c, worst_time, worst_tx,
        double(max_id_wins) / double(cfg.replications)});
  }
  return out;
}

namespace {

const char* kPlotScript = R"PY(#!/usr/bin/env python3
"""Plot the experiment CSVs sitting next to this script."""
import csv
import os
import sys

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    sys.exit("matplotlib is required to draw the plots")

here = os.path.dirname(os.path.abspath(__file__))

def read(name):
    with open(os.path.join(here, name), newline="") as f:
        return list(csv.DictReader(f))

summary = read("summary.csv")
xs = [float(r["connectivity"]) for r in summary]

def line(field, ylabel, outfile):
    ys = [float(r[field]) for r in summary]
    plt.figure()
    plt.plot(xs, ys, marker="o")
    plt.xlabel("connectivity")
    plt.ylabel(ylabel)
    plt.grid(True)
    plt.savefig(os.path.join(here, outfile), dpi=150, bbox_inches="tight")
    plt.close()

line("max_time_excl_init", "max time (excl. init)", "times.png")
line("max_transmissions", "max transmissions", "transmissions.png")
line("leader_is_max_id_fraction", "max-identity leader fraction", "leader_fraction.png")
print("wrote times.png, transmissions.png, leader_fraction.png")
)PY";

}  // namespace

void write_experiment_outputs(const ExperimentOutput& out,
                              const std::string& dir) {
  std::filesystem::create_directories(dir);
  const auto path = [&dir](const char* name) {
    return (std::filesystem::path(dir) / name).string();
  };

  {
    std::ofstream f(path("results.csv"));
    if (!f) throw Error("cannot write results.csv");
    f << "base_shape,n,connectivity,replication,seed,leader,leader_is_max_id,"
         "init_time,time_excl_init,transmissions\n";
    for (const RunRecord& r : out.results) {
      f << to_string(r.base_shape) << ',' << r.n << ',' << fmt_short(r.connectivity)
        << ',' << r.replication << ',' << r.seed << ',' << r.leader << ','
        << (r.leader_is_max_id ? 1 : 0) << ',' << fmt_double(r.init_time) << ','
        << fmt_double(r.time_excl_init) << ',' << r.transmissions << '\n';
    }
  }
  {
    std::ofstream f(path("summary.csv"));
    if (!f) throw Error("cannot write summary.csv");
    f << "base_shape,n,connectivity,max_time_excl_init,max_transmissions,"
         "leader_is_max_id_fraction\n";
    for (const SummaryRow& s : out.summary) {
      f << to_string(s.base_shape) << ',' << s.n << ',' << fmt_short(s.connectivity)
        << ',' << fmt_double(s.max_time_excl_init) << ',' << s.max_transmissions
        << ',' << fmt_double(s.leader_is_max_id_fraction) << '\n';
    }
  }
  {
    std::ofstream f(path("bounds.csv"));
    if (!f) throw Error("cannot write bounds.csv");
    f << "base_shape,n,connectivity,replication,seed,x,time_excl_init,"
         "time_bound,time_margin,post_init_transmissions,message_allowance,"
         "message_margin,pass\n";
    for (const BoundsRow& b : out.bounds) {
      f << to_string(b.run.base_shape) << ',' << b.run.n << ','
        << fmt_short(b.run.connectivity) << ',' << b.run.replication << ','
        << b.run.seed << ',' << fmt_short(b.report.x) << ','
        << fmt_double(b.report.time_excl_init) << ','
        << fmt_double(b.report.time_bound) << ','
        << fmt_double(b.report.time_margin) << ','
        << b.report.post_init_transmissions << ','
        << fmt_double(b.report.message_allowance) << ','
        << fmt_double(b.report.message_margin) << ','
        << (b.report.pass ? 1 : 0) << '\n';
    }
  }
  {
    std::ofstream f(path("plot.py"));
    if (!f) throw Error("cannot write plot.py");
    f << kPlotScript;
  }
}

}  // namespace bcast
