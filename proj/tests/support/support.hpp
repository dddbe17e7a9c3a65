#pragma once

// Test-only helpers: fixtures, random graphs and independent reference
// implementations to check the library against.

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "geocast/router_id.hpp"
#include "geocast/topology.hpp"

namespace geocast::testing {

/// data/fixtures/<name>.edges
Topology fixture(const std::string& name);
std::string data_path(const std::string& relative);

Topology from_edges(const std::vector<std::pair<int, int>>& edges, const std::string& name = "g");

/// Router by its integer label.
RouterId id(const Topology& t, int label);
std::vector<RouterId> ids(const Topology& t, const std::vector<int>& labels);

/// Connected graph: random spanning tree plus `extra` random links, random
/// coordinates inside a 10° square.
Topology random_graph(std::size_t n, std::size_t extra, std::uint64_t seed);

/// Hop distances from src.
std::vector<std::uint32_t> bfs(const Topology& t, RouterId src);

/// All-pairs hop distances.
std::vector<std::vector<std::uint32_t>> all_pairs(const Topology& t);

using NextHop = std::function<RouterId(RouterId at, RouterId dst)>;

/// Link usage of flooding (variant 0) or distance-vector variant 1..4,
/// written straight from the forwarding formulas over BFS distances.
std::size_t reference_usage(const Topology& t, int variant, RouterId src, const std::vector<RouterId>& dests,
                            const NextHop& next_hop);

/// Smallest number of links connecting the terminals, by trying every
/// router subset. Only for small graphs.
std::size_t brute_steiner(const Topology& t, const std::vector<RouterId>& terminals);

/// Every k-subset of `from`.
std::vector<std::vector<RouterId>> subsets(const std::vector<RouterId>& from, std::size_t k);

}  // namespace geocast::testing
