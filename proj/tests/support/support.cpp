#include "support.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace geocast::testing {

namespace {

constexpr auto kFar = std::numeric_limits<std::uint32_t>::max();

bool has(const std::vector<RouterId>& v, RouterId r) { return std::find(v.begin(), v.end(), r) != v.end(); }

}  // namespace

std::string data_path(const std::string& relative) { return std::string(GEOCAST_DATA_DIR) + "/" + relative; }

Topology fixture(const std::string& name) { return load_topology_file(data_path("fixtures/" + name + ".edges")); }

Topology from_edges(const std::vector<std::pair<int, int>>& edges, const std::string& name) {
  std::ostringstream text;
  for (auto [u, v] : edges) text << u << ' ' << v << '\n';
  return load_edge_list(text.str(), name);
}

RouterId id(const Topology& t, int label) { return t.by_label(std::to_string(label)); }

std::vector<RouterId> ids(const Topology& t, const std::vector<int>& labels) {
  std::vector<RouterId> out;
  for (auto l : labels) out.push_back(id(t, l));
  std::sort(out.begin(), out.end());
  return out;
}

Topology random_graph(std::size_t n, std::size_t extra, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  RawGraph raw;
  raw.name = "random" + std::to_string(seed);
  std::uniform_real_distribution<double> coord(0.0, 10.0);
  for (std::size_t i = 0; i < n; ++i) {
    raw.ids.push_back(std::to_string(i));
    raw.coords.push_back(Coordinates{40.0 + coord(rng), coord(rng)});
  }
  for (std::size_t i = 1; i < n; ++i) {
    raw.edges.emplace_back(i, std::uniform_int_distribution<std::size_t>(0, i - 1)(rng));
  }
  std::uniform_int_distribution<std::size_t> any(0, n - 1);
  for (std::size_t e = 0; e < extra; ++e) raw.edges.emplace_back(any(rng), any(rng));
  return Topology::normalize(std::move(raw));
}

std::vector<std::uint32_t> bfs(const Topology& t, RouterId src) {
  std::vector<std::uint32_t> d(t.node_count(), kFar);
  std::deque<RouterId> q{src};
  d[src.index()] = 0;
  while (!q.empty()) {
    auto u = q.front();
    q.pop_front();
    for (auto v : t.neighbors(u)) {
      if (d[v.index()] == kFar) {
        d[v.index()] = d[u.index()] + 1;
        q.push_back(v);
      }
    }
  }
  return d;
}

std::vector<std::vector<std::uint32_t>> all_pairs(const Topology& t) {
  std::vector<std::vector<std::uint32_t>> out;
  for (auto r : t.routers()) out.push_back(bfs(t, r));
  return out;
}

std::size_t reference_usage(const Topology& t, int variant, RouterId src, const std::vector<RouterId>& dests,
                            const NextHop& next_hop) {
  const auto d = all_pairs(t);
  auto dist = [&](RouterId a, RouterId b) { return d[a.index()][b.index()]; };
  std::set<RouterId> done;

  auto fn = [&](RouterId n, const std::vector<RouterId>& senders) {
    std::set<RouterId> out;
    const bool entry = has(senders, kEntry);
    if (variant == 0) {
      if (!done.insert(n).second) return out;
      for (auto m : t.neighbors(n)) out.insert(m);
      for (auto s : senders) out.erase(s);
      return out;
    }
    for (auto ph : senders) {
      for (auto x : dests) {
        if (x == n) continue;
        if (entry) {
          out.insert(next_hop(n, x));
          continue;
        }
        if (variant == 1) {
          if (next_hop(n, x) != ph) out.insert(next_hop(n, x));
          continue;
        }
        if (dist(ph, src) + 1 != dist(n, src)) continue;
        if (!(dist(n, x) < dist(ph, x))) continue;
        const auto m = next_hop(n, x);
        if (variant >= 3 && !(dist(m, src) > dist(n, src))) continue;
        out.insert(m);
      }
    }
    return out;
  };

  std::map<RouterId, std::vector<RouterId>> waiting{{src, {kEntry}}};
  std::set<std::pair<RouterId, RouterId>> sent;
  std::size_t used = 0;
  for (std::size_t round = 0; !waiting.empty(); ++round) {
    if (round > 4 * t.node_count()) return kFar;
    std::vector<RouterId> turn;
    for (auto& [r, s] : waiting) turn.push_back(r);
    for (auto r : turn) {
      auto senders = std::move(waiting[r]);
      waiting.erase(r);
      std::sort(senders.begin(), senders.end());
      senders.erase(std::unique(senders.begin(), senders.end()), senders.end());
      for (auto m : fn(r, senders)) {
        if (!sent.insert({r, m}).second) continue;
        ++used;
        waiting[m].push_back(r);
      }
    }
  }
  return used;
}

std::size_t brute_steiner(const Topology& t, const std::vector<RouterId>& terminals) {
  const auto n = t.node_count();
  std::uint64_t need = 0;
  for (auto r : terminals) need |= std::uint64_t{1} << r.index();
  std::size_t best = n;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if ((mask & need) != need) continue;
    const auto size = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (size - 1 >= best) continue;
    const auto start = static_cast<std::size_t>(__builtin_ctzll(mask));
    std::uint64_t seen = std::uint64_t{1} << start;
    std::vector<std::size_t> stack{start};
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      for (auto v : t.neighbors(RouterId{u})) {
        const auto bit = std::uint64_t{1} << v.index();
        if ((mask & bit) && !(seen & bit)) {
          seen |= bit;
          stack.push_back(v.index());
        }
      }
    }
    if (seen == mask) best = size - 1;
  }
  return best;
}

std::vector<std::vector<RouterId>> subsets(const std::vector<RouterId>& from, std::size_t k) {
  std::vector<std::vector<RouterId>> out;
  std::vector<bool> pick(from.size(), false);
  std::fill(pick.end() - static_cast<std::ptrdiff_t>(k), pick.end(), true);
  do {
    std::vector<RouterId> s;
    for (std::size_t i = 0; i < from.size(); ++i) {
      if (pick[i]) s.push_back(from[i]);
    }
    out.push_back(std::move(s));
  } while (std::next_permutation(pick.begin(), pick.end()));
  return out;
}

}  // namespace geocast::testing
