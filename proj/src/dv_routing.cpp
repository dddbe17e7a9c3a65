#include "geocast/dv_routing.hpp"

#include <algorithm>
#include <limits>

#include <fmt/format.h>

#include "geocast/error.hpp"

namespace geocast::dv {

namespace {

constexpr std::uint32_t kInfinity = std::numeric_limits<std::uint32_t>::max();

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t tie_rank(std::uint64_t seed, RouterId owner, RouterId dst, RouterId candidate) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ owner.value);
  h = splitmix64(h ^ (std::uint64_t{dst.value} << 32));
  return splitmix64(h ^ candidate.value);
}

void sort_unique(std::vector<RouterId>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::vector<RouterId> entry_next_hops(const PacketCtx& ctx, const DvTables& tables) {
  std::vector<RouterId> out;
  const auto& own = tables[ctx.current];
  for (auto dst : ctx.dests) {
    if (dst != ctx.current) out.push_back(own.next_hop(dst));
  }
  sort_unique(out);
  return out;
}

}  // namespace

DvTable::DvTable(RouterId owner, std::size_t routers)
    : owner_(owner), cost_(routers, kInfinity), next_hop_(routers, kEntry) {
  cost_.at(owner.index()) = 0;
}

DvTables DvTables::build(const Topology& t, TieBreak tie, std::uint64_t seed) {
  const std::size_t n = t.node_count();
  DvTables out;
  out.topo_ = &t;
  out.tie_ = tie;
  out.tables_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.tables_.emplace_back(RouterId{i}, n);

  // Each round every router recomputes its vector from the neighbor vectors
  // of the previous round.
  std::vector<DvTable> next = out.tables_;
  bool changed = true;
  while (changed) {
    changed = false;
    ++out.rounds_;
    if (out.rounds_ > n + 2) throw InternalError("distance-vector exchange did not converge");
    for (std::size_t i = 0; i < n; ++i) {
      const RouterId self{i};
      auto& row = next[i];
      for (std::size_t d = 0; d < n; ++d) {
        if (d == i) continue;
        const RouterId dst{d};
        std::uint32_t best = kInfinity;
        RouterId hop = kEntry;
        std::uint64_t hop_rank = 0;
        for (auto nb : t.neighbors(self)) {
          const auto reported = out.tables_[nb.index()].cost_[d];
          if (reported == kInfinity) continue;
          const auto c = reported + 1;
          if (c < best) {
            best = c;
            hop = nb;
            hop_rank = tie == TieBreak::kArbitrary ? tie_rank(seed, self, dst, nb) : 0;
          } else if (c == best && tie == TieBreak::kArbitrary) {
            const auto r = tie_rank(seed, self, dst, nb);
            if (r < hop_rank) {
              hop = nb;
              hop_rank = r;
            }
          }
        }
        if (row.cost_[d] != best || row.next_hop_[d] != hop) {
          row.cost_[d] = best;
          row.next_hop_[d] = hop;
          changed = true;
        }
      }
    }
    out.tables_ = next;
  }
  return out;
}

Variant variant_from_int(int v) {
  if (v < 1 || v > 4) throw DomainError(fmt::format("unknown distance-vector variant {}", v));
  return static_cast<Variant>(v);
}

std::vector<RouterId> flood_forward(const Topology& t, const PacketCtx& ctx, bool seen_before) {
  if (seen_before) return {};
  std::vector<RouterId> out;
  for (auto nb : t.neighbors(ctx.current)) {
    if (nb != ctx.prev_hop) out.push_back(nb);
  }
  return out;
}

std::vector<RouterId> dv_forward(int variant, const PacketCtx& ctx, const DvTables& tables) {
  return dv_forward(variant_from_int(variant), ctx, tables);
}

std::vector<RouterId> dv_forward(Variant variant, const PacketCtx& ctx, const DvTables& tables) {
  const int v = static_cast<int>(variant);
  if (v < 1 || v > 4) throw DomainError(fmt::format("unknown distance-vector variant {}", v));
  if (variant == Variant::kLowestIdTables && tables.tie_break() != TieBreak::kLowestId)
    throw DomainError("variant 4 needs lowest-ID next-hop tables");

  if (ctx.at_entry()) return entry_next_hops(ctx, tables);

  const auto& own = tables[ctx.current];
  std::vector<RouterId> out;

  if (variant == Variant::kNextHop) {
    for (auto dst : ctx.dests) {
      if (dst == ctx.current) continue;
      const auto hop = own.next_hop(dst);
      if (hop != ctx.prev_hop) out.push_back(hop);
    }
    sort_unique(out);
    return out;
  }

  // Reverse-path check: the copy must arrive over a link that lies on a
  // shortest path back to the source.
  const auto& prev = tables[ctx.prev_hop];
  if (prev.cost(ctx.src) + 1 != own.cost(ctx.src)) return {};

  for (auto dst : ctx.dests) {
    if (dst == ctx.current) continue;
    if (own.cost(dst) >= prev.cost(dst)) continue;
    const auto hop = own.next_hop(dst);
    if (v >= 3 && tables[hop].cost(ctx.src) <= own.cost(ctx.src)) continue;
    out.push_back(hop);
  }
  sort_unique(out);
  return out;
}

}  // namespace geocast::dv
