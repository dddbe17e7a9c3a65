// geocast: run routing experiments over topology files and summarize them.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "geocast/error.hpp"
#include "geocast/harness.hpp"
#include "geocast/path_routing.hpp"

namespace {

using namespace geocast;

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(fmt::format("cannot write '{}'", path));
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(fmt::format("cannot read '{}'", path));
  return in;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geocast routing simulator"};
  app.require_subcommand(1);

  harness::RunConfig run_cfg;
  std::string algorithms = "flood,dv1,dv2,dv3,dv4,path";
  std::string mode = "geo";
  std::string runs_out = "runs.csv";
  bool no_steiner = false;
  auto* run = app.add_subcommand("run", "simulate every destination set on every topology");
  run->add_option("--topology", run_cfg.topologies, "topology file or directory")->required();
  run->add_option("--algorithms", algorithms, "comma-separated: flood,dv1,dv2,dv3,dv4,path")->capture_default_str();
  run->add_option("--mode", mode, "geo or random")->capture_default_str();
  run->add_option("--cap", run_cfg.cap, "random mode: sets per (source, size)")->capture_default_str();
  run->add_option("--seed", run_cfg.seed, "seed for sampling and dv1-dv3 tie-breaks")->capture_default_str();
  run->add_option("--max-nodes", run_cfg.max_nodes, "skip larger graphs (0: no limit)")->capture_default_str();
  run->add_flag("--no-steiner", no_steiner, "leave the steiner_links column empty");
  run->add_option("--out", runs_out, "runs CSV")->capture_default_str();

  std::string agg_in = "runs.csv";
  std::string agg_out = "bins.csv";
  std::string graphs_out;
  std::size_t min_nodes = 10;
  auto* agg = app.add_subcommand("aggregate", "bin normalized usage per 10% of destinations");
  agg->add_option("--in", agg_in, "runs CSV")->capture_default_str();
  agg->add_option("--min-nodes", min_nodes, "only graphs with more routers")->capture_default_str();
  agg->add_option("--out", agg_out, "bins CSV")->capture_default_str();
  agg->add_option("--graphs", graphs_out, "optional per-graph CSV with average degree");

  std::string cmp_in = "runs.csv";
  std::string cmp_out = "summary.csv";
  std::string numerator = "dv4";
  std::string denominator = "path";
  auto* cmp = app.add_subcommand("compare", "paired per-set usage ratio, averaged per graph");
  cmp->add_option("--in", cmp_in, "runs CSV")->capture_default_str();
  cmp->add_option("--out", cmp_out, "summary CSV")->capture_default_str();
  cmp->add_option("--numerator", numerator)->capture_default_str();
  cmp->add_option("--denominator", denominator)->capture_default_str();

  std::string tables_topology;
  auto* tables = app.add_subcommand("tables", "print converged path-vector tables");
  tables->add_option("--topology", tables_topology, "topology file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      run_cfg.algorithms = sim::parse_algorithms(algorithms);
      run_cfg.mode = sim::parse_mode(mode);
      run_cfg.with_steiner = !no_steiner;
      auto out = open_out(runs_out);
      harness::write_run_header(out);
      const auto graphs = harness::run_experiment(
          run_cfg, [&](const harness::RunRow& r) { harness::write_run_row(out, r); },
          [](const std::string& w) { std::cerr << "warning: " << w << '\n'; });
      std::cerr << fmt::format("{} graphs\n", graphs);
    } else if (*agg) {
      auto in = open_in(agg_in);
      harness::Aggregator a;
      harness::read_runs(in, [&](const harness::RunRow& r) { a.add(r); });
      const auto bins = a.bins(min_nodes);
      if (bins.empty()) std::cerr << fmt::format("warning: no graph has more than {} routers\n", min_nodes);
      auto out = open_out(agg_out);
      harness::write_bins(out, bins);
      if (!graphs_out.empty()) {
        auto g = open_out(graphs_out);
        harness::write_graphs(g, a.graphs());
      }
    } else if (*cmp) {
      auto in = open_in(cmp_in);
      harness::Comparer c(numerator, denominator);
      harness::read_runs(in, [&](const harness::RunRow& r) { c.add(r); });
      auto out = open_out(cmp_out);
      harness::write_summary(out, c.summary());
    } else if (*tables) {
      const auto t = load_topology_file(tables_topology);
      path::PathTables::distribute(t).dump(std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
