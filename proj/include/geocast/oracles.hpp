#pragma once

// Reference trees: shortest-path tree, KMB Steiner heuristic, exact Steiner.

#include <cstddef>
#include <span>
#include <vector>

#include "geocast/router_id.hpp"
#include "geocast/topology.hpp"

namespace geocast::oracle {

struct TreeCost {
  std::size_t links = 0;
  std::vector<Link> edges;  // sorted
};

/// Union of the lowest-ID shortest paths from src to every destination.
TreeCost spt_cost(const PathDb& db, RouterId src, std::span<const RouterId> dests);
TreeCost spt_cost(const Topology& t, RouterId src, std::span<const RouterId> dests);

/// Kou–Markowsky–Berman: metric-closure MST, expanded, re-spanned, pruned.
/// DomainError for fewer than two distinct terminals.
TreeCost steiner_kmb(const Topology& t, const PathDb& db, std::span<const RouterId> terminals);
TreeCost steiner_kmb(const Topology& t, std::span<const RouterId> terminals);

/// Dreyfus–Wagner. Only for |V| <= 16 or at most 6 terminals, DomainError
/// otherwise.
TreeCost steiner_exact(const Topology& t, std::span<const RouterId> terminals);

}  // namespace geocast::oracle
