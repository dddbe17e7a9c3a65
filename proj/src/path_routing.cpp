#include "geocast/path_routing.hpp"

#include <algorithm>
#include <tuple>

#include <fmt/format.h>

#include "geocast/error.hpp"

namespace geocast::path {

namespace {

bool contains(std::span<const RouterId> p, RouterId r) { return std::find(p.begin(), p.end(), r) != p.end(); }

void erase_loops_into(Path& out, RouterId r) {
  if (auto it = std::find(out.begin(), out.end(), r); it != out.end()) {
    out.erase(it + 1, out.end());
  } else {
    out.push_back(r);
  }
}

Path reversed(const Path& p) { return {p.rbegin(), p.rend()}; }

const Path& route(const PathTable& table, RouterId advertiser, RouterId link) {
  const auto* e = table.entry(advertiser, link);
  if (e == nullptr)
    throw DomainError(fmt::format("router {} has no route to {} over link {}", table.owner().value, advertiser.value,
                                  link.value));
  return e->path;
}

// Lowest-ID tie-break at the first position where the two branches leave
// the common trunk from the source.
bool wins_divergence(std::span<const RouterId> candidate, std::span<const RouterId> ours) {
  const auto n = std::min(candidate.size(), ours.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (candidate[i] != ours[i]) return candidate[i] > ours[i];
  }
  return false;
}

}  // namespace

PathTable::PathTable(const Topology& t, RouterId owner)
    : owner_(owner),
      links_(t.neighbors(owner).begin(), t.neighbors(owner).end()),
      entries_(t.node_count(), std::vector<std::optional<Advertisement>>(links_.size())) {}

std::size_t PathTable::link_index(RouterId neighbor) const {
  const auto it = std::lower_bound(links_.begin(), links_.end(), neighbor);
  if (it == links_.end() || *it != neighbor)
    throw DomainError(fmt::format("{} is not a neighbor of {}", neighbor.value, owner_.value));
  return static_cast<std::size_t>(it - links_.begin());
}

const Advertisement* PathTable::entry(RouterId advertiser, RouterId neighbor) const {
  const auto& slot = entries_.at(advertiser.index())[link_index(neighbor)];
  return slot ? &*slot : nullptr;
}

const Advertisement* PathTable::best_excluding(RouterId advertiser, RouterId skip_link, RouterId avoid) const {
  const Advertisement* pick = nullptr;
  const auto& row = entries_.at(advertiser.index());
  for (std::size_t i = 0; i < links_.size(); ++i) {
    if (!row[i] || links_[i] == skip_link) continue;
    const auto& ad = *row[i];
    if (contains(ad.path, owner_)) continue;
    if (avoid != kEntry && contains(ad.path, avoid)) continue;
    if (pick == nullptr || ad.cost < pick->cost || (ad.cost == pick->cost && ad.path < pick->path)) pick = &ad;
  }
  return pick;
}

const Advertisement* PathTable::best(RouterId advertiser) const { return best_excluding(advertiser, kEntry, kEntry); }

const Advertisement* PathTable::alternate(RouterId advertiser) const {
  const auto* b = best(advertiser);
  if (b == nullptr) return nullptr;
  return best_excluding(advertiser, b->path.back(), kEntry);
}

RouterId PathTable::next_hop(RouterId advertiser) const {
  if (!next_hops_.empty()) return next_hops_.at(advertiser.index());
  const auto* b = best(advertiser);
  if (b == nullptr) return kEntry;
  const auto& row = entries_.at(advertiser.index());
  for (std::size_t i = 0; i < links_.size(); ++i) {
    if (row[i] && row[i]->cost == b->cost && !contains(row[i]->path, owner_)) return links_[i];
  }
  return b->path.back();
}

void PathTable::settle() {
  std::vector<RouterId> hops;
  hops.reserve(entries_.size());
  for (std::size_t a = 0; a < entries_.size(); ++a) hops.push_back(next_hop(RouterId{a}));
  next_hops_ = std::move(hops);
}

std::vector<Advertisement> PathTable::advertise_on_link(RouterId neighbor) const {
  std::vector<Advertisement> out;
  for (std::size_t a = 0; a < entries_.size(); ++a) {
    const RouterId advertiser{a};
    if (advertiser == owner_) {
      out.push_back({owner_, 1, {owner_}});
      continue;
    }
    const auto* chosen = best(advertiser);
    if (chosen == nullptr) continue;
    if (contains(chosen->path, neighbor)) {
      if (const auto* alt = best_excluding(advertiser, kEntry, neighbor)) chosen = alt;
    }
    Path p = chosen->path;
    p.push_back(owner_);
    const auto cost = static_cast<std::uint32_t>(p.size());
    out.push_back({advertiser, cost, std::move(p)});
  }
  return out;
}

bool PathTable::receive(RouterId neighbor, Advertisement ad) {
  auto& slot = entries_.at(ad.advertiser.index())[link_index(neighbor)];
  if (slot && *slot == ad) return false;
  slot = std::move(ad);
  next_hops_.clear();
  return true;
}

PathTables PathTables::distribute(const Topology& t) {
  PathTables out;
  out.topo_ = &t;
  const auto n = t.node_count();
  out.tables_.reserve(n);
  for (const auto r : t.routers()) out.tables_.emplace_back(t, r);

  const std::size_t limit = 4 * n;
  std::vector<std::tuple<RouterId, RouterId, std::vector<Advertisement>>> outbox;
  for (;;) {
    outbox.clear();
    for (const auto r : t.routers()) {
      for (const auto m : t.neighbors(r)) outbox.emplace_back(r, m, out.tables_[r.index()].advertise_on_link(m));
    }
    bool changed = false;
    for (auto& [from, to, ads] : outbox) {
      for (auto& ad : ads) changed = out.tables_[to.index()].receive(from, std::move(ad)) || changed;
    }
    if (!changed) break;
    if (++out.rounds_ > limit)
      throw InternalError(fmt::format("route distribution on '{}' did not settle in {} rounds", t.name(), limit));
  }
  for (auto& table : out.tables_) table.settle();
  return out;
}

void PathTables::dump(std::ostream& out) const {
  const auto& t = *topo_;
  for (const auto& table : tables_) {
    for (const auto link : table.links()) {
      for (const auto adv : t.routers()) {
        const auto* e = table.entry(adv, link);
        if (e == nullptr) continue;
        std::string hops;
        for (const auto h : e->path) {
          if (!hops.empty()) hops += '-';
          hops += t.label(h);
        }
        out << fmt::format("{} {} {} {} {}\n", t.label(table.owner()), t.label(link), t.label(adv), e->cost, hops);
      }
    }
  }
}

Path concat_paths(std::span<const RouterId> p, std::span<const RouterId> q) {
  if (std::none_of(p.begin(), p.end(), [&](RouterId r) { return contains(q, r); }))
    throw DomainError("paths share no router");
  Path out;
  for (const auto r : p) erase_loops_into(out, r);
  for (const auto r : q) erase_loops_into(out, r);
  return out;
}

Path concat_paths(std::span<const RouterId> p, RouterId n, std::span<const RouterId> q) {
  Path out;
  for (const auto r : p) erase_loops_into(out, r);
  erase_loops_into(out, n);
  for (const auto r : q) erase_loops_into(out, r);
  return out;
}

bool find_dif(const PathTable& table, RouterId next_hop, RouterId prev_hop, RouterId dst, RouterId src) {
  const auto owner = table.owner();
  const auto& nh_src = route(table, src, next_hop);
  const auto nh_dst = reversed(route(table, dst, next_hop));
  const auto& ph_src = route(table, src, prev_hop);
  const auto ph_dst = reversed(route(table, dst, prev_hop));

  const auto via_nh = concat_paths(nh_src, nh_dst);
  const auto via_ph = concat_paths(ph_src, ph_dst);
  const auto via_owner = concat_paths(ph_src, owner, nh_dst);

  if (via_ph.size() < via_owner.size()) return false;
  if (contains(nh_src, owner)) return true;
  if (via_nh.size() > via_owner.size()) return true;
  if (via_nh.size() < via_owner.size()) return false;

  Path ours = ph_src;
  ours.push_back(owner);
  return wins_divergence(nh_src, ours);
}

DecisionCache::DecisionCache(const PathTables& tables) : tables_(&tables), n_(tables.size()) {
  link_base_.reserve(n_ + 1);
  std::size_t total = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    link_base_.push_back(total);
    total += tables[RouterId{i}].links().size();
  }
  link_base_.push_back(total);
  constexpr std::size_t kDenseLimit = std::size_t{1} << 26;
  if (total * n_ * n_ <= kDenseLimit) memo_.assign(total * n_ * n_, -1);
}

bool DecisionCache::find_dif(RouterId owner, RouterId prev_hop, RouterId dst, RouterId src) {
  const auto& table = (*tables_)[owner];
  const auto links = table.links();
  const auto li = static_cast<std::size_t>(std::lower_bound(links.begin(), links.end(), prev_hop) - links.begin());
  const auto key = ((link_base_[owner.index()] + li) * n_ + dst.index()) * n_ + src.index();
  const auto decide = [&] { return path::find_dif(table, table.next_hop(dst), prev_hop, dst, src); };
  if (memo_.empty()) {
    const auto [it, fresh] = sparse_.try_emplace(key, false);
    if (fresh) it->second = decide();
    return it->second;
  }
  auto& slot = memo_[key];
  if (slot < 0) slot = decide() ? 1 : 0;
  return slot == 1;
}

namespace {

template <class Decide>
std::vector<RouterId> lookup(const PathTable& table, const PacketCtx& ctx, Decide&& decide) {
  std::vector<RouterId> out;
  const auto owner = table.owner();
  for (const auto dst : ctx.dests) {
    if (dst == owner) continue;
    const auto nh = table.next_hop(dst);
    if (nh == kEntry) throw DomainError(fmt::format("router {} has no route to {}", owner.value, dst.value));
    if (ctx.at_entry()) {
      if (!contains(out, nh)) out.push_back(nh);
      continue;
    }
    if (nh == ctx.prev_hop || contains(out, nh)) continue;
    if (decide(nh, dst)) out.push_back(nh);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<RouterId> next_hop_lookup(const PathTable& table, const PacketCtx& ctx) {
  return lookup(table, ctx, [&](RouterId nh, RouterId dst) { return find_dif(table, nh, ctx.prev_hop, dst, ctx.src); });
}

std::vector<RouterId> next_hop_lookup(const PathTables& tables, const PacketCtx& ctx, DecisionCache& cache) {
  return lookup(tables[ctx.current], ctx,
                [&](RouterId, RouterId dst) { return cache.find_dif(ctx.current, ctx.prev_hop, dst, ctx.src); });
}

}  // namespace geocast::path
