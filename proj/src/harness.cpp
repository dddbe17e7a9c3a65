#include "geocast/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <istream>
#include <ostream>
#include <set>

#include <boost/math/distributions/students_t.hpp>
#include <fmt/format.h>

#include "geocast/error.hpp"
#include "geocast/oracles.hpp"

namespace geocast::harness {

namespace {

namespace fs = std::filesystem;

constexpr const char* kRunHeader =
    "graph,algorithm,source,set_id,mode,n_dests,n_nodes,n_edges,links_used,spt_links,steiner_links";

bool is_topology_file(const fs::path& p) {
  const auto ext = p.extension().string();
  return ext == ".graphml" || ext == ".xml" || ext == ".edges" || ext == ".txt";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::vector<std::string> split_csv(const std::string& line, std::size_t line_no) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else if (c != '\r') {
      out.back() += c;
    }
  }
  if (quoted) throw ParseError(fmt::format("line {}: unterminated quote", line_no));
  return out;
}

std::size_t to_count(const std::string& s, std::size_t line_no, const char* column) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || s.front() == '-')
    throw ParseError(fmt::format("line {}: {} is not a count: '{}'", line_no, column, s));
  return static_cast<std::size_t>(v);
}

int algorithm_rank(const std::string& name) {
  static const std::vector<std::string> order{"flood", "dv1", "dv2", "dv3", "dv4", "path", "spt", "kmb"};
  const auto it = std::find(order.begin(), order.end(), name);
  return static_cast<int>(it - order.begin());
}

bool algorithm_less(const std::string& a, const std::string& b) {
  const auto ra = algorithm_rank(a);
  const auto rb = algorithm_rank(b);
  return ra != rb ? ra < rb : a < b;
}

double mean_of(const std::vector<double>& v) {
  double s = 0;
  for (const auto x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sd_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0;
  const double m = mean_of(v);
  double s = 0;
  for (const auto x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

double ci95(const std::vector<double>& v) {
  if (v.size() < 2) return 0;
  const boost::math::students_t dist(static_cast<double>(v.size() - 1));
  const double t = boost::math::quantile(boost::math::complement(dist, 0.025));
  return t * sd_of(v) / std::sqrt(static_cast<double>(v.size()));
}

}  // namespace

std::vector<std::string> list_topology_files(const std::vector<std::string>& paths) {
  std::vector<std::string> out;
  for (const auto& p : paths) {
    std::error_code ec;
    if (fs::is_directory(p, ec)) {
      std::vector<std::string> found;
      for (const auto& e : fs::directory_iterator(p)) {
        if (e.is_regular_file() && is_topology_file(e.path())) found.push_back(e.path().string());
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else {
      out.push_back(p);
    }
  }
  return out;
}

int bin_of(std::size_t n_dests, std::size_t n_nodes) {
  if (n_nodes < 2 || n_dests == 0) throw DomainError("bin needs at least one destination and two routers");
  const auto addressable = n_nodes - 1;
  const auto b = (10 * n_dests + addressable - 1) / addressable;
  return static_cast<int>(std::clamp<std::size_t>(b, 1, 10));
}

void run_graph(const Topology& t, const RunConfig& config, const RowSink& sink) {
  const sim::RoutingState state(t, config.algorithms, config.seed);
  const PathDb db(t);
  sim::Simulator simulator(state);
  std::vector<RouterId> terminals;
  RunRow row;
  row.graph = t.name();
  row.mode = std::string(sim::name(config.mode));
  row.n_nodes = t.node_count();
  row.n_edges = t.edge_count();

  const auto on_spec = [&](const sim::DestSpec& spec) {
    row.source = t.label(spec.source);
    row.set_id = fmt::format("{:016x}", spec.set_id);
    row.n_dests = spec.dests.size();
    row.spt_links = oracle::spt_cost(db, spec.source, spec.dests).links;
    if (config.with_steiner) {
      terminals.assign(spec.dests.begin(), spec.dests.end());
      terminals.push_back(spec.source);
      row.steiner_links = oracle::steiner_kmb(t, db, terminals).links;
    }
    for (const auto algo : config.algorithms) {
      const auto& rec = simulator.run(algo, spec);
      if (!rec.complete())
        throw InternalError(fmt::format("{} missed destinations on '{}' from {}", sim::name(algo), t.name(),
                                        t.label(spec.source)));
      row.algorithm = std::string(sim::name(algo));
      row.links_used = rec.link_usage();
      sink(row);
    }
  };
  if (config.mode == sim::Mode::kGeo) {
    sim::for_each_geo_spec(t, on_spec);
  } else {
    sim::for_each_random_spec(t, config.cap, config.seed, on_spec);
  }
}

std::size_t run_experiment(const RunConfig& config, const RowSink& sink, const WarningSink& warn) {
  std::size_t used = 0;
  for (const auto& file : list_topology_files(config.topologies)) {
    std::optional<Topology> t;
    try {
      t = load_topology_file(file);
    } catch (const std::exception& e) {
      warn(fmt::format("skipping {}: {}", file, e.what()));
      continue;
    }
    if (config.max_nodes != 0 && t->node_count() > config.max_nodes) continue;
    if (config.mode == sim::Mode::kGeo && !t->has_all_coordinates()) {
      warn(fmt::format("skipping {}: routers without coordinates", file));
      continue;
    }
    run_graph(*t, config, sink);
    ++used;
  }
  if (used == 0) throw DomainError("no usable topology");
  return used;
}

void Aggregator::add_value(const RunRow& row, const std::string& algorithm, double norm) {
  auto& cell = cells_[{row.graph, algorithm, row.n_dests}];
  cell.total += norm;
  ++cell.count;
}

void Aggregator::add(const RunRow& row) {
  if (row.n_edges == 0) throw DomainError(fmt::format("row for '{}' has no links", row.graph));
  bin_of(row.n_dests, row.n_nodes);
  const auto edges = static_cast<double>(row.n_edges);
  sizes_[row.graph] = {row.n_nodes, row.n_edges};
  add_value(row, row.algorithm, static_cast<double>(row.links_used) / edges);
  add_value(row, "spt", static_cast<double>(row.spt_links) / edges);
  if (row.steiner_links) add_value(row, "kmb", static_cast<double>(*row.steiner_links) / edges);
}

std::vector<BinRow> Aggregator::bins(std::size_t min_nodes) const {
  // graph -> algorithm -> bin -> per-size means
  std::map<std::string, std::map<std::string, std::map<int, std::vector<double>>>> per_graph;
  for (const auto& [key, sum] : cells_) {
    const auto& [graph, algorithm, k] = key;
    const auto nodes = sizes_.at(graph).first;
    if (nodes <= min_nodes) continue;
    per_graph[graph][algorithm][bin_of(k, nodes)].push_back(sum.total / static_cast<double>(sum.count));
  }
  std::map<std::pair<std::string, int>, std::vector<double>> graph_means;
  for (const auto& [graph, algos] : per_graph) {
    for (const auto& [algorithm, bins] : algos) {
      for (const auto& [bin, values] : bins) graph_means[{algorithm, bin}].push_back(mean_of(values));
    }
  }
  std::vector<BinRow> out;
  for (const auto& [key, means] : graph_means) {
    out.push_back({key.first, key.second, mean_of(means), ci95(means), means.size()});
  }
  std::stable_sort(out.begin(), out.end(), [](const BinRow& a, const BinRow& b) {
    if (a.algorithm != b.algorithm) return algorithm_less(a.algorithm, b.algorithm);
    return a.bin < b.bin;
  });
  return out;
}

std::vector<GraphRow> Aggregator::graphs() const {
  std::map<std::pair<std::string, std::string>, std::vector<double>> per;
  for (const auto& [key, sum] : cells_) {
    const auto& [graph, algorithm, k] = key;
    per[{graph, algorithm}].push_back(sum.total / static_cast<double>(sum.count));
  }
  std::vector<GraphRow> out;
  for (const auto& [key, values] : per) {
    const auto [nodes, edges] = sizes_.at(key.first);
    out.push_back({key.first, key.second, nodes, edges, 2.0 * static_cast<double>(edges) / static_cast<double>(nodes),
                   mean_of(values)});
  }
  std::stable_sort(out.begin(), out.end(), [](const GraphRow& a, const GraphRow& b) {
    if (a.graph != b.graph) return a.graph < b.graph;
    return algorithm_less(a.algorithm, b.algorithm);
  });
  return out;
}

std::vector<BinRow> aggregate(const std::vector<RunRow>& rows, std::size_t min_nodes) {
  Aggregator agg;
  for (const auto& r : rows) agg.add(r);
  return agg.bins(min_nodes);
}

Comparer::Comparer(std::string numerator, std::string denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (num_ == den_) throw DomainError("cannot compare an algorithm with itself");
}

void Comparer::add(const RunRow& row) {
  const bool is_num = row.algorithm == num_;
  if (!is_num && row.algorithm != den_) return;
  const auto key = std::make_tuple(row.graph, row.mode, row.source, row.set_id);
  const auto it = pending_.find(key);
  if (it == pending_.end()) {
    pending_.emplace(key, std::make_pair(is_num, row.links_used));
    return;
  }
  if (it->second.first == is_num)
    throw DomainError(fmt::format("duplicate {} row for '{}' source {} set {}", row.algorithm, row.graph, row.source,
                                  row.set_id));
  const auto num = static_cast<double>(is_num ? row.links_used : it->second.second);
  const auto den = static_cast<double>(is_num ? it->second.second : row.links_used);
  pending_.erase(it);
  if (den == 0) throw DomainError("zero link usage in comparison");
  const double ratio = num / den;
  auto& g = per_graph_[row.graph];
  g.first += ratio;
  ++g.second;
  ++pairs_;
  max_single_ = std::max(max_single_, ratio);
}

CompareSummary Comparer::summary() const {
  if (!pending_.empty()) {
    const auto& [graph, mode, source, set] = pending_.begin()->first;
    throw DomainError(fmt::format("{} unpaired rows, e.g. '{}' source {} set {}", pending_.size(), graph, source, set));
  }
  if (pairs_ == 0) throw DomainError(fmt::format("no {}/{} pairs", num_, den_));
  std::vector<double> means;
  for (const auto& [graph, sum] : per_graph_) means.push_back(sum.first / static_cast<double>(sum.second));
  CompareSummary s;
  s.numerator = num_;
  s.denominator = den_;
  s.n_graphs = means.size();
  s.n_pairs = pairs_;
  s.mean = mean_of(means);
  s.sd = sd_of(means);
  s.min = *std::min_element(means.begin(), means.end());
  s.max = *std::max_element(means.begin(), means.end());
  s.max_single = max_single_;
  return s;
}

CompareSummary compare_algorithms(const std::vector<RunRow>& rows, const std::string& numerator,
                                  const std::string& denominator) {
  Comparer c(numerator, denominator);
  for (const auto& r : rows) c.add(r);
  return c.summary();
}

void write_run_header(std::ostream& out) { out << kRunHeader << '\n'; }

void write_run_row(std::ostream& out, const RunRow& r) {
  out << fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", csv_field(r.graph), csv_field(r.algorithm),
                     csv_field(r.source), r.set_id, r.mode, r.n_dests, r.n_nodes, r.n_edges, r.links_used,
                     r.spt_links, r.steiner_links ? fmt::format("{}", *r.steiner_links) : std::string());
}

void read_runs(std::istream& in, const RowSink& sink) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty runs file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kRunHeader) throw ParseError(fmt::format("unexpected runs header '{}'", line));
  std::size_t line_no = 1;
  RunRow r;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv(line, line_no);
    if (f.size() != 11) throw ParseError(fmt::format("line {}: expected 11 fields, got {}", line_no, f.size()));
    r.graph = f[0];
    r.algorithm = f[1];
    r.source = f[2];
    r.set_id = f[3];
    r.mode = f[4];
    r.n_dests = to_count(f[5], line_no, "n_dests");
    r.n_nodes = to_count(f[6], line_no, "n_nodes");
    r.n_edges = to_count(f[7], line_no, "n_edges");
    r.links_used = to_count(f[8], line_no, "links_used");
    r.spt_links = to_count(f[9], line_no, "spt_links");
    r.steiner_links = f[10].empty() ? std::nullopt : std::optional(to_count(f[10], line_no, "steiner_links"));
    sink(r);
  }
}

std::vector<RunRow> read_runs(std::istream& in) {
  std::vector<RunRow> rows;
  read_runs(in, [&](const RunRow& r) { rows.push_back(r); });
  return rows;
}

void write_bins(std::ostream& out, const std::vector<BinRow>& bins) {
  out << "algorithm,bin,mean_norm_usage,ci95_half_width,n_networks\n";
  for (const auto& b : bins) {
    out << fmt::format("{},{},{:.6f},{:.6f},{}\n", csv_field(b.algorithm), b.bin, b.mean_norm_usage,
                       b.ci95_half_width, b.n_networks);
  }
}

void write_graphs(std::ostream& out, const std::vector<GraphRow>& graphs) {
  out << "graph,algorithm,n_nodes,n_edges,avg_degree,mean_norm_usage\n";
  for (const auto& g : graphs) {
    out << fmt::format("{},{},{},{},{:.6f},{:.6f}\n", csv_field(g.graph), csv_field(g.algorithm), g.n_nodes,
                       g.n_edges, g.avg_degree, g.mean_norm_usage);
  }
}

void write_summary(std::ostream& out, const CompareSummary& s) {
  out << "metric,value\n";
  out << fmt::format("numerator,{}\ndenominator,{}\n", s.numerator, s.denominator);
  out << fmt::format("n_graphs,{}\nn_pairs,{}\n", s.n_graphs, s.n_pairs);
  out << fmt::format("mean,{:.6f}\nsd,{:.6f}\nmin,{:.6f}\nmax,{:.6f}\nmax_single,{:.6f}\n", s.mean, s.sd, s.min, s.max,
                     s.max_single);
}

}  // namespace geocast::harness
