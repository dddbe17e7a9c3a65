#include "geocast/oracles.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "geocast/error.hpp"

namespace geocast::oracle {

namespace {

Link make_link(RouterId u, RouterId v) { return u < v ? Link{u, v} : Link{v, u}; }

void add_path(const PathDb& db, RouterId from, RouterId to, std::vector<Link>& edges) {
  while (from != to) {
    const auto next = db.next_hop(from, to);
    edges.push_back(make_link(from, next));
    from = next;
  }
}

TreeCost finish(std::vector<Link> edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return {edges.size(), std::move(edges)};
}

std::vector<RouterId> distinct(std::span<const RouterId> in) {
  std::vector<RouterId> out(in.begin(), in.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

TreeCost spt_cost(const PathDb& db, RouterId src, std::span<const RouterId> dests) {
  std::vector<Link> edges;
  for (const auto d : dests) add_path(db, src, d, edges);
  return finish(std::move(edges));
}

TreeCost spt_cost(const Topology& t, RouterId src, std::span<const RouterId> dests) {
  return spt_cost(PathDb(t), src, dests);
}

TreeCost steiner_kmb(const Topology& t, const PathDb& db, std::span<const RouterId> terminals) {
  const auto term = distinct(terminals);
  if (term.size() < 2) throw DomainError("KMB needs at least two distinct terminals");
  const auto k = term.size();

  // Prim over the metric closure.
  constexpr auto kInf = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> key(k, kInf);
  std::vector<std::size_t> parent(k, 0);
  std::vector<bool> in_tree(k, false);
  key[0] = 0;
  std::vector<Link> expanded;
  for (std::size_t step = 0; step < k; ++step) {
    std::size_t u = k;
    for (std::size_t i = 0; i < k; ++i) {
      if (!in_tree[i] && (u == k || key[i] < key[u])) u = i;
    }
    in_tree[u] = true;
    if (step > 0) add_path(db, term[parent[u]], term[u], expanded);
    for (std::size_t v = 0; v < k; ++v) {
      const auto d = db.dist(term[u], term[v]);
      if (!in_tree[v] && d < key[v]) {
        key[v] = d;
        parent[v] = u;
      }
    }
  }

  // Spanning tree of the subgraph induced by the expanded routers.
  std::vector<bool> used(t.node_count(), false);
  for (const auto& l : expanded) used[l.a.index()] = used[l.b.index()] = true;
  DisjointSets sets(t.node_count());
  std::vector<Link> tree;
  for (const auto& l : t.links()) {
    if (used[l.a.index()] && used[l.b.index()] && sets.unite(l.a.index(), l.b.index())) tree.push_back(l);
  }

  // Drop non-terminal leaves until none remain.
  std::vector<bool> is_term(t.node_count(), false);
  for (const auto r : term) is_term[r.index()] = true;
  for (bool pruned = true; pruned;) {
    pruned = false;
    std::vector<std::size_t> degree(t.node_count(), 0);
    for (const auto& l : tree) {
      ++degree[l.a.index()];
      ++degree[l.b.index()];
    }
    const auto leaf = [&](RouterId r) { return degree[r.index()] == 1 && !is_term[r.index()]; };
    const auto before = tree.size();
    std::erase_if(tree, [&](const Link& l) { return leaf(l.a) || leaf(l.b); });
    pruned = tree.size() != before;
  }
  return finish(std::move(tree));
}

TreeCost steiner_kmb(const Topology& t, std::span<const RouterId> terminals) {
  return steiner_kmb(t, PathDb(t), terminals);
}

TreeCost steiner_exact(const Topology& t, std::span<const RouterId> terminals) {
  const auto term = distinct(terminals);
  const auto n = t.node_count();
  if (n > 16 && term.size() > 6)
    throw DomainError(fmt::format("exact Steiner limited to 16 routers or 6 terminals, got {} and {}", n, term.size()));
  if (term.size() < 2) return {};

  const PathDb db(t);
  const auto k = term.size() - 1;  // term.back() is the root
  const std::size_t full = (std::size_t{1} << k) - 1;
  constexpr auto kInf = std::numeric_limits<std::uint32_t>::max() / 4;

  // best[S][v]: cheapest tree spanning terminals S plus v.
  // via[S][v]: the router where that tree branches; split[S][u]: one side.
  std::vector<std::uint32_t> best((full + 1) * n, kInf);
  std::vector<std::uint32_t> merged(n);
  std::vector<RouterId> via((full + 1) * n);
  std::vector<std::size_t> split((full + 1) * n, 0);
  const auto at = [n](std::size_t s, std::size_t v) { return s * n + v; };

  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t v = 0; v < n; ++v) best[at(std::size_t{1} << i, v)] = db.dist(term[i], RouterId{v});
  }
  for (std::size_t s = 1; s <= full; ++s) {
    if ((s & (s - 1)) == 0) continue;
    for (std::size_t u = 0; u < n; ++u) {
      merged[u] = kInf;
      for (std::size_t sub = (s - 1) & s; sub > 0; sub = (sub - 1) & s) {
        if (sub < (s ^ sub)) continue;
        const auto c = best[at(sub, u)] + best[at(s ^ sub, u)];
        if (c < merged[u]) {
          merged[u] = c;
          split[at(s, u)] = sub;
        }
      }
    }
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t u = 0; u < n; ++u) {
        const auto c = merged[u] + db.dist(RouterId{u}, RouterId{v});
        if (c < best[at(s, v)]) {
          best[at(s, v)] = c;
          via[at(s, v)] = RouterId{u};
        }
      }
    }
  }

  std::vector<Link> edges;
  std::vector<std::pair<std::size_t, RouterId>> todo{{full, term.back()}};
  while (!todo.empty()) {
    const auto [s, v] = todo.back();
    todo.pop_back();
    if ((s & (s - 1)) == 0) {
      add_path(db, term[static_cast<std::size_t>(__builtin_ctzll(s))], v, edges);
      continue;
    }
    const auto u = via[at(s, v.index())];
    add_path(db, u, v, edges);
    const auto sub = split[at(s, u.index())];
    todo.emplace_back(sub, u);
    todo.emplace_back(s ^ sub, u);
  }
  auto tree = finish(std::move(edges));
  if (tree.links != best[at(full, term.back().index())])
    throw InternalError("Steiner reconstruction does not match its cost");
  return tree;
}

}  // namespace geocast::oracle
