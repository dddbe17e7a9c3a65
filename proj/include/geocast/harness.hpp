#pragma once

// Experiment orchestration and the CSV files it reads and writes.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "geocast/simengine.hpp"

namespace geocast::harness {

struct RunRow {
  std::string graph;
  std::string algorithm;
  std::string source;  // router label
  std::string set_id;  // 16 hex digits
  std::string mode;
  std::size_t n_dests = 0;
  std::size_t n_nodes = 0;
  std::size_t n_edges = 0;
  std::size_t links_used = 0;
  std::size_t spt_links = 0;
  std::optional<std::size_t> steiner_links;  // KMB; empty when not computed

  bool operator==(const RunRow&) const = default;
};

struct BinRow {
  std::string algorithm;
  int bin = 0;  // 1..10
  double mean_norm_usage = 0;
  double ci95_half_width = 0;
  std::size_t n_networks = 0;
};

/// Per-graph means, one row per algorithm, for degree plots.
struct GraphRow {
  std::string graph;
  std::string algorithm;
  std::size_t n_nodes = 0;
  std::size_t n_edges = 0;
  double avg_degree = 0;
  double mean_norm_usage = 0;
};

struct RunConfig {
  std::vector<std::string> topologies;  // files or directories
  std::vector<sim::Algorithm> algorithms{std::begin(sim::kAllAlgorithms), std::end(sim::kAllAlgorithms)};
  sim::Mode mode = sim::Mode::kGeo;
  std::size_t cap = 200;
  std::uint64_t seed = 1;
  bool with_steiner = true;
  std::size_t max_nodes = 0;  // 0: no limit
};

using RowSink = std::function<void(const RunRow&)>;
using WarningSink = std::function<void(const std::string&)>;

/// Expands directories into their topology files, sorted by path.
std::vector<std::string> list_topology_files(const std::vector<std::string>& paths);

/// One row per (graph, spec, algorithm), algorithms in config order for each
/// spec. Unreadable or unsuitable graphs are reported and skipped; no usable
/// graph at all is a DomainError. Returns the number of graphs used.
std::size_t run_experiment(const RunConfig& config, const RowSink& sink, const WarningSink& warn);

/// Rows for one already loaded graph.
void run_graph(const Topology& t, const RunConfig& config, const RowSink& sink);

/// Ten 10% bins over n_dests / (n_nodes − 1).
int bin_of(std::size_t n_dests, std::size_t n_nodes);

/// Streaming form of aggregate(). Besides the simulated algorithms it emits
/// "spt" and, when present, "kmb" from the oracle columns.
class Aggregator {
 public:
  void add(const RunRow& row);
  std::vector<BinRow> bins(std::size_t min_nodes) const;
  std::vector<GraphRow> graphs() const;

 private:
  struct Sum {
    double total = 0;
    std::size_t count = 0;
  };
  void add_value(const RunRow& row, const std::string& algorithm, double norm);

  // (graph, algorithm, n_dests) -> sum of normalized usage
  std::map<std::tuple<std::string, std::string, std::size_t>, Sum> cells_;
  std::map<std::string, std::pair<std::size_t, std::size_t>> sizes_;  // graph -> (nodes, edges)
};

/// Normalized usage averaged per graph and bin, then across graphs with more
/// than `min_nodes` routers; CI over the graph means.
std::vector<BinRow> aggregate(const std::vector<RunRow>& rows, std::size_t min_nodes);

struct CompareSummary {
  std::string numerator;
  std::string denominator;
  std::size_t n_graphs = 0;
  std::size_t n_pairs = 0;
  double mean = 0;  // statistics over per-graph mean ratios
  double sd = 0;
  double min = 0;
  double max = 0;
  double max_single = 0;  // largest per-spec ratio
};

/// Streaming form of compare_algorithms().
class Comparer {
 public:
  Comparer(std::string numerator = "dv4", std::string denominator = "path");
  void add(const RunRow& row);
  /// DomainError if any row is still unpaired or nothing was paired.
  CompareSummary summary() const;

 private:
  std::string num_;
  std::string den_;
  std::map<std::tuple<std::string, std::string, std::string, std::string>, std::pair<bool, std::size_t>> pending_;
  std::map<std::string, std::pair<double, std::size_t>> per_graph_;
  std::size_t pairs_ = 0;
  double max_single_ = 0;
};

CompareSummary compare_algorithms(const std::vector<RunRow>& rows, const std::string& numerator = "dv4",
                                  const std::string& denominator = "path");

void write_run_header(std::ostream& out);
void write_run_row(std::ostream& out, const RunRow& row);
/// ParseError on a malformed file.
std::vector<RunRow> read_runs(std::istream& in);
void read_runs(std::istream& in, const RowSink& sink);

void write_bins(std::ostream& out, const std::vector<BinRow>& bins);
void write_graphs(std::ostream& out, const std::vector<GraphRow>& graphs);
void write_summary(std::ostream& out, const CompareSummary& s);

}  // namespace geocast::harness
