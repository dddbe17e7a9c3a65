#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "geocast/router_id.hpp"

namespace geocast {

struct Coordinates {
  double lat = 0;  // degrees
  double lon = 0;  // degrees
  bool operator==(const Coordinates&) const = default;
};

/// Undirected link with `a < b`.
struct Link {
  RouterId a;
  RouterId b;
  auto operator<=>(const Link&) const = default;
};

/// A graph as read from disk, before normalization. Node references in
/// `edges` index into `ids`.
struct RawGraph {
  std::string name;
  std::vector<std::string> ids;
  std::vector<std::optional<Coordinates>> coords;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// Connected, simple, undirected, unit-cost network.
///
/// Routers are renumbered densely. When every source ID is an integer the
/// numeric order is kept, otherwise document order is kept; either way the
/// original IDs stay available as labels, and RouterId order is the order the
/// lowest-ID tie-breaks see.
class Topology {
 public:
  /// Keeps the largest connected component (ties: the one holding the
  /// earliest router), drops self-loops and parallel edges.
  /// Throws DomainError when nothing remains.
  static Topology normalize(RawGraph raw);

  const std::string& name() const { return name_; }
  std::size_t node_count() const { return labels_.size(); }
  std::size_t edge_count() const { return links_.size(); }

  /// Neighbors in ascending RouterId order.
  std::span<const RouterId> neighbors(RouterId r) const { return adjacency_.at(r.index()); }
  std::size_t degree(RouterId r) const { return neighbors(r).size(); }
  bool adjacent(RouterId a, RouterId b) const;
  std::span<const Link> links() const { return links_; }

  const std::string& label(RouterId r) const { return labels_.at(r.index()); }
  /// Throws DomainError for unknown labels.
  RouterId by_label(std::string_view label) const;

  const std::optional<Coordinates>& coordinates(RouterId r) const { return coords_.at(r.index()); }
  bool has_all_coordinates() const;

  double average_degree() const;

  /// All routers in ascending order.
  std::vector<RouterId> routers() const;

 private:
  Topology() = default;

  std::string name_;
  std::vector<std::string> labels_;
  std::vector<std::optional<Coordinates>> coords_;
  std::vector<std::vector<RouterId>> adjacency_;
  std::vector<Link> links_;
};

/// Parses GraphML (Topology Zoo attribute names "Latitude"/"Longitude").
/// Throws ParseError on malformed XML, DomainError for an empty graph.
Topology load_graphml(std::string_view bytes, std::string name = {});

/// Edge-list fixture format: one "u v" pair per line; "# coord u lat lon"
/// attaches coordinates; other '#' lines are comments.
Topology load_edge_list(std::string_view text, std::string name = {});

/// Dispatches on extension (.graphml / .xml versus anything else).
Topology load_topology_file(const std::string& path);

/// All-pairs hop distances and lowest-ID-preferring shortest paths.
class PathDb {
 public:
  explicit PathDb(const Topology& t);

  std::uint32_t dist(RouterId from, RouterId to) const { return dist_[from.index() * n_ + to.index()]; }

  /// Lowest-ID neighbor of `from` on a shortest path to `to` (from != to).
  RouterId next_hop(RouterId from, RouterId to) const { return next_[from.index() * n_ + to.index()]; }

  /// Node sequence from `from` to `to`; every step takes the lowest-ID
  /// neighbor that stays on a shortest path.
  std::vector<RouterId> path(RouterId from, RouterId to) const;

  std::uint32_t diameter() const;
  std::uint32_t eccentricity(RouterId r) const;

  std::size_t size() const { return n_; }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint32_t> dist_;
  std::vector<RouterId> next_;
};

/// Great-circle distance in kilometers on a sphere of mean Earth radius.
double geo_distance(const Coordinates& a, const Coordinates& b);

/// geo_distance between two routers; DomainError if either lacks coordinates.
double geo_distance(const Topology& t, RouterId a, RouterId b);

}  // namespace geocast
