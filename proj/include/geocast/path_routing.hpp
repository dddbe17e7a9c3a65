#pragma once

// Path-vector route distribution with per-link alternates, and the
// path-based geocast forwarding decision built on it.

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <unordered_map>
#include <vector>

#include "geocast/packet.hpp"
#include "geocast/router_id.hpp"
#include "geocast/topology.hpp"

namespace geocast::path {

using Path = std::vector<RouterId>;

/// A route as received over one link. `path` runs from the advertiser to the
/// neighbor that sent it; `cost` is its hop count seen from the receiver.
struct Advertisement {
  RouterId advertiser;
  std::uint32_t cost = 0;
  Path path;

  bool operator==(const Advertisement&) const = default;
};

class PathTable {
 public:
  PathTable(const Topology& t, RouterId owner);

  RouterId owner() const { return owner_; }
  std::span<const RouterId> links() const { return links_; }

  /// What arrived about `advertiser` over the link to `neighbor`, if anything.
  const Advertisement* entry(RouterId advertiser, RouterId neighbor) const;

  /// Cheapest stored route not containing the owner. Among equal costs the
  /// route read from the advertiser with the lowest IDs wins, which is the
  /// route the advertiser's own lowest-ID forwarding would take. Null when
  /// there is none (always for the owner itself).
  const Advertisement* best(RouterId advertiser) const;
  /// Same selection over the links other than best's.
  const Advertisement* alternate(RouterId advertiser) const;

  /// Lowest-ID neighbor with a cheapest route; kEntry when there is none.
  RouterId next_hop(RouterId advertiser) const;

  /// Advertisements the owner sends to `neighbor` in one round.
  std::vector<Advertisement> advertise_on_link(RouterId neighbor) const;

  /// Replaces the entry for (ad.advertiser, neighbor). Returns whether it changed.
  bool receive(RouterId neighbor, Advertisement ad);

  /// Caches next hops until the next receive().
  void settle();

 private:
  std::size_t link_index(RouterId neighbor) const;
  const Advertisement* best_excluding(RouterId advertiser, RouterId skip_link, RouterId avoid) const;

  RouterId owner_;
  std::vector<RouterId> links_;
  // [advertiser][link index]
  std::vector<std::vector<std::optional<Advertisement>>> entries_;
  std::vector<RouterId> next_hops_;  // [advertiser], filled by settle()
};

/// Converged tables for a whole topology.
class PathTables {
 public:
  /// Synchronous rounds until nothing changes. Throws InternalError after
  /// 4·|V| rounds.
  static PathTables distribute(const Topology& t);

  const PathTable& operator[](RouterId r) const { return tables_.at(r.index()); }
  std::size_t size() const { return tables_.size(); }
  /// Rounds in which at least one table changed.
  std::size_t rounds() const { return rounds_; }
  const Topology& topology() const { return *topo_; }

  /// One line per stored entry: "owner link advertiser cost path", labels
  /// throughout, path hops joined by '-'.
  void dump(std::ostream& out) const;

 private:
  const Topology* topo_ = nullptr;
  std::vector<PathTable> tables_;
  std::size_t rounds_ = 0;
};

inline PathTables distribute_routes(const Topology& t) { return PathTables::distribute(t); }

/// p △ q: the walk p then q with loops erased in travel order, so shared
/// routers other than the connector disappear. DomainError when p and q
/// share no router.
Path concat_paths(std::span<const RouterId> p, std::span<const RouterId> q);
/// p △ n △ q.
Path concat_paths(std::span<const RouterId> p, RouterId n, std::span<const RouterId> q);

/// Whether the owner of `table` should forward toward `dst` through
/// `next_hop` a copy from `src` that arrived from `prev_hop`.
/// DomainError when a required route is missing.
bool find_dif(const PathTable& table, RouterId next_hop, RouterId prev_hop, RouterId dst, RouterId src);

/// Memoizes find_dif per (src, owner, prev hop, dst) for one set of tables.
/// Not thread-safe.
class DecisionCache {
 public:
  explicit DecisionCache(const PathTables& tables);
  bool find_dif(RouterId owner, RouterId prev_hop, RouterId dst, RouterId src);

 private:
  const PathTables* tables_;
  std::size_t n_;
  std::vector<std::size_t> link_base_;  // offset of each owner's first link
  std::vector<std::int8_t> memo_;                 // dense, small graphs
  std::unordered_map<std::uint64_t, bool> sparse_;  // large graphs
};

/// Neighbors the owner forwards the packet to, ascending.
std::vector<RouterId> next_hop_lookup(const PathTable& table, const PacketCtx& ctx);
std::vector<RouterId> next_hop_lookup(const PathTables& tables, const PacketCtx& ctx, DecisionCache& cache);

}  // namespace geocast::path
