#include "geocast/topology.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "geocast/error.hpp"

namespace geocast {

namespace {

constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();
constexpr double kEarthRadiusKm = 6371.0088;

std::optional<long long> as_integer(const std::string& s) {
  long long v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end || s.empty()) return std::nullopt;
  return v;
}

}  // namespace

Topology Topology::normalize(RawGraph raw) {
  const std::size_t n = raw.ids.size();
  if (n == 0) throw DomainError(fmt::format("graph '{}' has no nodes", raw.name));
  raw.coords.resize(n);

  // Order used for renumbering.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::optional<long long>> numeric(n);
  bool all_numeric = true;
  for (std::size_t i = 0; i < n; ++i) {
    numeric[i] = as_integer(raw.ids[i]);
    all_numeric = all_numeric && numeric[i].has_value();
  }
  if (all_numeric) {
    std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return *numeric[x] < *numeric[y]; });
  }
  std::vector<std::size_t> rank(n);
  for (std::size_t r = 0; r < n; ++r) rank[order[r]] = r;

  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [u, v] : raw.edges) {
    if (u >= n || v >= n) throw DomainError(fmt::format("edge references unknown node in '{}'", raw.name));
    if (u == v) continue;
    adj[rank[u]].push_back(rank[v]);
    adj[rank[v]].push_back(rank[u]);
  }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }

  // Largest component; ties go to the component holding the lowest rank.
  std::vector<int> component(n, -1);
  std::vector<std::size_t> sizes;
  for (std::size_t s = 0; s < n; ++s) {
    if (component[s] >= 0) continue;
    const int c = static_cast<int>(sizes.size());
    std::size_t size = 0;
    std::deque<std::size_t> queue{s};
    component[s] = c;
    while (!queue.empty()) {
      const auto u = queue.front();
      queue.pop_front();
      ++size;
      for (auto v : adj[u]) {
        if (component[v] < 0) {
          component[v] = c;
          queue.push_back(v);
        }
      }
    }
    sizes.push_back(size);
  }
  const int keep = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  if (sizes[static_cast<std::size_t>(keep)] < 2)
    throw DomainError(fmt::format("graph '{}' has no links", raw.name));

  std::vector<std::uint32_t> dense(n, kUnreachable);
  Topology t;
  t.name_ = std::move(raw.name);
  for (std::size_t r = 0; r < n; ++r) {
    if (component[r] != keep) continue;
    dense[r] = static_cast<std::uint32_t>(t.labels_.size());
    t.labels_.push_back(raw.ids[order[r]]);
    t.coords_.push_back(raw.coords[order[r]]);
  }
  t.adjacency_.resize(t.labels_.size());
  for (std::size_t r = 0; r < n; ++r) {
    if (component[r] != keep) continue;
    const RouterId u{dense[r]};
    for (auto v : adj[r]) {
      const RouterId w{dense[v]};
      t.adjacency_[u.index()].push_back(w);
      if (u < w) t.links_.push_back({u, w});
    }
  }
  std::sort(t.links_.begin(), t.links_.end());
  return t;
}

bool Topology::adjacent(RouterId a, RouterId b) const {
  const auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

RouterId Topology::by_label(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return RouterId{i};
  }
  throw DomainError(fmt::format("no router labelled '{}' in '{}'", label, name_));
}

bool Topology::has_all_coordinates() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const auto& c) { return c.has_value(); });
}

double Topology::average_degree() const {
  return 2.0 * static_cast<double>(edge_count()) / static_cast<double>(node_count());
}

std::vector<RouterId> Topology::routers() const {
  std::vector<RouterId> out;
  out.reserve(node_count());
  for (std::size_t i = 0; i < node_count(); ++i) out.emplace_back(i);
  return out;
}

PathDb::PathDb(const Topology& t) : n_(t.node_count()), dist_(n_ * n_, kUnreachable), next_(n_ * n_, kEntry) {
  std::vector<std::uint32_t> to_target(n_);
  std::deque<RouterId> queue;
  for (std::size_t target = 0; target < n_; ++target) {
    std::fill(to_target.begin(), to_target.end(), kUnreachable);
    to_target[target] = 0;
    queue.assign({RouterId{target}});
    while (!queue.empty()) {
      const auto u = queue.front();
      queue.pop_front();
      for (auto v : t.neighbors(u)) {
        if (to_target[v.index()] == kUnreachable) {
          to_target[v.index()] = to_target[u.index()] + 1;
          queue.push_back(v);
        }
      }
    }
    for (std::size_t from = 0; from < n_; ++from) {
      const auto d = to_target[from];
      if (d == kUnreachable) throw DomainError(fmt::format("topology '{}' is disconnected", t.name()));
      dist_[from * n_ + target] = d;
      if (d == 0) continue;
      for (auto nb : t.neighbors(RouterId{from})) {
        if (to_target[nb.index()] + 1 == d) {
          next_[from * n_ + target] = nb;
          break;
        }
      }
    }
  }
}

std::vector<RouterId> PathDb::path(RouterId from, RouterId to) const {
  std::vector<RouterId> out{from};
  while (out.back() != to) out.push_back(next_hop(out.back(), to));
  return out;
}

std::uint32_t PathDb::eccentricity(RouterId r) const {
  std::uint32_t ecc = 0;
  for (std::size_t j = 0; j < n_; ++j) ecc = std::max(ecc, dist_[r.index() * n_ + j]);
  return ecc;
}

std::uint32_t PathDb::diameter() const {
  return n_ == 0 ? 0 : *std::max_element(dist_.begin(), dist_.end());
}

double geo_distance(const Coordinates& a, const Coordinates& b) {
  constexpr double kRad = M_PI / 180.0;
  const double dlat = (b.lat - a.lat) * kRad;
  const double dlon = (b.lon - a.lon) * kRad;
  const double h = std::sin(dlat / 2) * std::sin(dlat / 2) +
                   std::cos(a.lat * kRad) * std::cos(b.lat * kRad) * std::sin(dlon / 2) * std::sin(dlon / 2);
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
}

double geo_distance(const Topology& t, RouterId a, RouterId b) {
  const auto& ca = t.coordinates(a);
  const auto& cb = t.coordinates(b);
  if (!ca || !cb) throw DomainError(fmt::format("router '{}' or '{}' has no coordinates", t.label(a), t.label(b)));
  return geo_distance(*ca, *cb);
}

}  // namespace geocast
