#pragma once

// Distance-vector geocast forwarding.
//
// Routers only know, for every other router, their own hop cost, the costs
// reported by their neighbors, and one next hop. Four forwarding functions of
// increasing strictness are built on top of that state, plus plain flooding.

#include <cstdint>
#include <string_view>
#include <vector>

#include "geocast/packet.hpp"
#include "geocast/router_id.hpp"
#include "geocast/topology.hpp"

namespace geocast::dv {

/// How a router picks among equal-cost next hops.
enum class TieBreak {
  kLowestId,   // smallest neighbor ID
  kArbitrary,  // fixed pseudo-random pick per (router, destination)
};

class DvTable {
 public:
  DvTable(RouterId owner, std::size_t routers);

  RouterId owner() const { return owner_; }
  std::uint32_t cost(RouterId dst) const { return cost_.at(dst.index()); }
  /// Undefined for dst == owner (returns kEntry).
  RouterId next_hop(RouterId dst) const { return next_hop_.at(dst.index()); }

 private:
  friend class DvTables;
  RouterId owner_;
  std::vector<std::uint32_t> cost_;
  std::vector<RouterId> next_hop_;
};

/// Converged distance-vector state for a whole topology.
class DvTables {
 public:
  /// Synchronous Bellman-Ford rounds until no table changes.
  static DvTables build(const Topology& t, TieBreak tie = TieBreak::kLowestId, std::uint64_t seed = 0);

  const DvTable& operator[](RouterId r) const { return tables_.at(r.index()); }
  std::size_t size() const { return tables_.size(); }
  TieBreak tie_break() const { return tie_; }
  /// Exchange rounds until the fixed point, including the round that
  /// confirmed it.
  std::size_t rounds() const { return rounds_; }
  const Topology& topology() const { return *topo_; }

 private:
  const Topology* topo_ = nullptr;
  std::vector<DvTable> tables_;
  TieBreak tie_ = TieBreak::kLowestId;
  std::size_t rounds_ = 0;
};

inline DvTables build_dv_tables(const Topology& t, TieBreak tie = TieBreak::kLowestId, std::uint64_t seed = 0) {
  return DvTables::build(t, tie, seed);
}

enum class Variant : int {
  kNextHop = 1,        // next hop toward any destination
  kReversePath = 2,    // + reverse-path check and destination cost check
  kSourceCost = 3,     // + candidate must be farther from the source
  kLowestIdTables = 4  // variant 3 over lowest-ID next-hop tables
};

/// Throws DomainError for anything outside 1..4.
Variant variant_from_int(int v);

/// All neighbors except the previous hop on first sight; nothing afterwards.
std::vector<RouterId> flood_forward(const Topology& t, const PacketCtx& ctx, bool seen_before);

/// Next hops chosen by one distance-vector forwarding function, ascending.
/// Variant 4 requires tables built with TieBreak::kLowestId.
std::vector<RouterId> dv_forward(Variant variant, const PacketCtx& ctx, const DvTables& tables);
std::vector<RouterId> dv_forward(int variant, const PacketCtx& ctx, const DvTables& tables);

}  // namespace geocast::dv
