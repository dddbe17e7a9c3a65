#pragma once

// Round-based packet forwarding simulator and destination-set generators.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "geocast/dv_routing.hpp"
#include "geocast/path_routing.hpp"
#include "geocast/router_id.hpp"
#include "geocast/topology.hpp"

namespace geocast::sim {

enum class Algorithm { kFlood, kDv1, kDv2, kDv3, kDv4, kPath };

inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::kFlood, Algorithm::kDv1, Algorithm::kDv2,
                                               Algorithm::kDv3,  Algorithm::kDv4, Algorithm::kPath};

std::string_view name(Algorithm a);
/// "flood", "dv1".."dv4", "path"; DomainError otherwise.
Algorithm parse_algorithm(std::string_view s);
/// Comma-separated list of names.
std::vector<Algorithm> parse_algorithms(std::string_view csv);

enum class Mode { kGeo, kRandom };
std::string_view name(Mode m);
Mode parse_mode(std::string_view s);

struct DestSpec {
  Mode mode = Mode::kRandom;
  RouterId source;
  std::vector<RouterId> dests;  // sorted, unique, never contains source
  std::uint64_t set_id = 0;
};

/// FNV-1a over the sorted destination IDs.
std::uint64_t set_id(std::span<const RouterId> dests);

/// Checks the DestSpec invariants and fills set_id.
DestSpec make_spec(const Topology& t, Mode mode, RouterId source, std::vector<RouterId> dests);

struct ForwardingRecord {
  Algorithm algorithm = Algorithm::kFlood;
  RouterId src;
  std::vector<RouterId> dests;
  std::vector<DirectedLink> transmissions;  // in emission order
  std::vector<RouterId> delivered;          // ascending
  std::size_t rounds = 0;

  std::size_t link_usage() const { return transmissions.size(); }
  bool complete() const;
};

/// Converged routing state for one topology. Only the tables needed by the
/// requested algorithms are built.
class RoutingState {
 public:
  /// `tie_seed` drives the arbitrary equal-cost choices of dv1..dv3.
  RoutingState(const Topology& t, std::span<const Algorithm> algorithms, std::uint64_t tie_seed = 0);

  const Topology& topology() const { return *topo_; }
  const dv::DvTables& arbitrary_tables() const;
  const dv::DvTables& lowest_id_tables() const;
  const path::PathTables& path_tables() const;
  path::DecisionCache& decision_cache() const;

 private:
  const Topology* topo_;
  std::optional<dv::DvTables> arbitrary_;
  std::optional<dv::DvTables> lowest_;
  std::optional<path::PathTables> path_;
  mutable std::optional<path::DecisionCache> cache_;
};

/// Reuses buffers across runs. One instance per thread.
class Simulator {
 public:
  explicit Simulator(const RoutingState& state);

  /// Inserts the packet at the source and forwards until no router holds an
  /// unprocessed copy. InternalError after 4·|V| rounds.
  const ForwardingRecord& run(Algorithm algo, const DestSpec& spec);

 private:
  std::vector<RouterId> forward(Algorithm algo, const DestSpec& spec, RouterId at, std::span<const RouterId> senders);

  const RoutingState* state_;
  ForwardingRecord record_;
  std::vector<std::vector<RouterId>> inbox_;
  std::vector<std::uint8_t> processed_;
  std::vector<std::uint8_t> is_dest_;
  std::vector<std::uint8_t> delivered_;
  std::vector<std::uint8_t> sent_;  // [from * n + to]
  std::vector<std::vector<RouterId>> dv1_hops_;
  std::vector<RouterId> batch_;
  std::vector<RouterId> active_;
};

ForwardingRecord simulate(const RoutingState& state, Algorithm algo, const DestSpec& spec);

using SpecSink = std::function<void(const DestSpec&)>;

/// Every source, every set size, every seed router: the seed and its size−1
/// geographically nearest routers (distance ties by lowest ID), the source
/// never being a candidate. Repeated sets per source are dropped.
/// DomainError when a router lacks coordinates.
void for_each_geo_spec(const Topology& t, const SpecSink& sink);
std::vector<DestSpec> gen_geo_scoped(const Topology& t);

/// Every (source, size) stratum is enumerated when it has at most `cap`
/// sets, otherwise `cap` distinct sets are drawn uniformly with a generator
/// seeded from (seed, source, size).
void for_each_random_spec(const Topology& t, std::size_t cap, std::uint64_t seed, const SpecSink& sink);
std::vector<DestSpec> gen_random(const Topology& t, std::size_t cap, std::uint64_t seed);

}  // namespace geocast::sim
