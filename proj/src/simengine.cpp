#include "geocast/simengine.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <set>

#include <fmt/format.h>

#include "geocast/error.hpp"

namespace geocast::sim {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

std::uint64_t fnv_mix(std::uint64_t h, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) {
    h ^= (v >> (8 * i)) & 0xffU;
    h *= kFnvPrime;
  }
  return h;
}

// std::uniform_int_distribution differs between standard libraries; this
// one does not.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    const auto x = rng();
    if (x < limit) return x % bound;
  }
}

// C(m, k), or cap + 1 once it exceeds cap.
std::uint64_t binomial_capped(std::uint64_t m, std::uint64_t k, std::uint64_t cap) {
  k = std::min(k, m - k);
  std::uint64_t c = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    c = c * (m - i) / (i + 1);
    if (c > cap) return cap + 1;
  }
  return c;
}

bool contains(std::span<const RouterId> v, RouterId r) { return std::find(v.begin(), v.end(), r) != v.end(); }

}  // namespace

std::string_view name(Algorithm a) {
  switch (a) {
    case Algorithm::kFlood: return "flood";
    case Algorithm::kDv1: return "dv1";
    case Algorithm::kDv2: return "dv2";
    case Algorithm::kDv3: return "dv3";
    case Algorithm::kDv4: return "dv4";
    case Algorithm::kPath: return "path";
  }
  throw DomainError("unknown algorithm");
}

Algorithm parse_algorithm(std::string_view s) {
  for (const auto a : kAllAlgorithms) {
    if (name(a) == s) return a;
  }
  throw DomainError(fmt::format("unknown algorithm '{}'", s));
}

std::vector<Algorithm> parse_algorithms(std::string_view csv) {
  std::vector<Algorithm> out;
  while (!csv.empty()) {
    const auto comma = csv.find(',');
    const auto item = csv.substr(0, comma);
    if (!item.empty()) {
      const auto a = parse_algorithm(item);
      if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
    }
    if (comma == std::string_view::npos) break;
    csv.remove_prefix(comma + 1);
  }
  if (out.empty()) throw DomainError("no algorithms given");
  return out;
}

std::string_view name(Mode m) { return m == Mode::kGeo ? "geo" : "random"; }

Mode parse_mode(std::string_view s) {
  if (s == "geo") return Mode::kGeo;
  if (s == "random") return Mode::kRandom;
  throw DomainError(fmt::format("unknown mode '{}'", s));
}

std::uint64_t set_id(std::span<const RouterId> dests) {
  std::uint64_t h = kFnvOffset;
  for (const auto d : dests) h = fnv_mix(h, d.value, 4);
  return h;
}

DestSpec make_spec(const Topology& t, Mode mode, RouterId source, std::vector<RouterId> dests) {
  if (source.index() >= t.node_count()) throw DomainError(fmt::format("unknown source router {}", source.value));
  std::sort(dests.begin(), dests.end());
  dests.erase(std::unique(dests.begin(), dests.end()), dests.end());
  if (dests.empty()) throw DomainError("destination set is empty");
  if (dests.back().index() >= t.node_count()) throw DomainError(fmt::format("unknown router {}", dests.back().value));
  if (std::binary_search(dests.begin(), dests.end(), source))
    throw DomainError("destination set contains the source");
  DestSpec spec{mode, source, std::move(dests), 0};
  spec.set_id = set_id(spec.dests);
  return spec;
}

bool ForwardingRecord::complete() const {
  return std::includes(delivered.begin(), delivered.end(), dests.begin(), dests.end());
}

RoutingState::RoutingState(const Topology& t, std::span<const Algorithm> algorithms, std::uint64_t tie_seed)
    : topo_(&t) {
  for (const auto a : algorithms) {
    switch (a) {
      case Algorithm::kFlood: break;
      case Algorithm::kDv1:
      case Algorithm::kDv2:
      case Algorithm::kDv3:
        if (!arbitrary_) arbitrary_ = dv::DvTables::build(t, dv::TieBreak::kArbitrary, tie_seed);
        break;
      case Algorithm::kDv4:
        if (!lowest_) lowest_ = dv::DvTables::build(t, dv::TieBreak::kLowestId);
        break;
      case Algorithm::kPath:
        if (!path_) {
          path_ = path::PathTables::distribute(t);
          cache_.emplace(*path_);
        }
        break;
    }
  }
}

const dv::DvTables& RoutingState::arbitrary_tables() const {
  if (!arbitrary_) throw DomainError("routing state built without dv1..dv3 tables");
  return *arbitrary_;
}

const dv::DvTables& RoutingState::lowest_id_tables() const {
  if (!lowest_) throw DomainError("routing state built without dv4 tables");
  return *lowest_;
}

const path::PathTables& RoutingState::path_tables() const {
  if (!path_) throw DomainError("routing state built without path tables");
  return *path_;
}

path::DecisionCache& RoutingState::decision_cache() const {
  if (!cache_) throw DomainError("routing state built without path tables");
  return *cache_;
}

Simulator::Simulator(const RoutingState& state) : state_(&state) {}

std::vector<RouterId> Simulator::forward(Algorithm algo, const DestSpec& spec, RouterId at,
                                         std::span<const RouterId> senders) {
  const auto& t = state_->topology();
  PacketCtx ctx{spec.source, spec.dests, kEntry, at};
  std::vector<RouterId> out;

  switch (algo) {
    case Algorithm::kFlood: {
      // Only the first batch counts; every router it came from is excluded.
      if (processed_[at.index()] != 0) return out;
      processed_[at.index()] = 1;
      if (!contains(senders, kEntry)) ctx.prev_hop = senders.front();
      out = dv::flood_forward(t, ctx, false);
      std::erase_if(out, [&](RouterId r) { return contains(senders, r); });
      return out;
    }
    case Algorithm::kDv1: {
      // The next hops of a router do not change during a run, and each sender
      // only excludes itself, so two or more senders leave every next hop.
      auto& hops = dv1_hops_[at.index()];
      if (processed_[at.index()] == 0) {
        processed_[at.index()] = 1;
        hops = dv::dv_forward(dv::Variant::kNextHop, ctx, state_->arbitrary_tables());
      }
      out = hops;
      if (senders.size() == 1) std::erase(out, senders.front());
      return out;
    }
    case Algorithm::kDv2:
    case Algorithm::kDv3:
    case Algorithm::kDv4: {
      const auto variant = static_cast<dv::Variant>(static_cast<int>(algo) - static_cast<int>(Algorithm::kDv1) + 1);
      const auto& tables = algo == Algorithm::kDv4 ? state_->lowest_id_tables() : state_->arbitrary_tables();
      for (const auto s : senders) {
        ctx.prev_hop = s;
        for (const auto r : dv::dv_forward(variant, ctx, tables)) out.push_back(r);
      }
      break;
    }
    case Algorithm::kPath: {
      const auto& tables = state_->path_tables();
      auto& cache = state_->decision_cache();
      for (const auto s : senders) {
        ctx.prev_hop = s;
        for (const auto r : path::next_hop_lookup(tables, ctx, cache)) out.push_back(r);
      }
      break;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

const ForwardingRecord& Simulator::run(Algorithm algo, const DestSpec& spec) {
  const auto& t = state_->topology();
  const auto n = t.node_count();
  inbox_.resize(n);
  for (auto& box : inbox_) box.clear();
  processed_.assign(n, 0);
  dv1_hops_.resize(n);
  is_dest_.assign(n, 0);
  delivered_.assign(n, 0);
  for (const auto d : spec.dests) is_dest_.at(d.index()) = 1;
  if (sent_.size() != n * n) sent_.assign(n * n, 0);
  for (const auto& tx : record_.transmissions) sent_[tx.from.index() * n + tx.to.index()] = 0;

  record_.algorithm = algo;
  record_.src = spec.source;
  record_.dests = spec.dests;
  record_.transmissions.clear();
  record_.delivered.clear();
  record_.rounds = 0;

  inbox_.at(spec.source.index()).push_back(kEntry);
  const std::size_t limit = 4 * n;
  for (;;) {
    active_.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (!inbox_[i].empty()) active_.emplace_back(i);
    }
    if (active_.empty()) break;
    if (++record_.rounds > limit)
      throw InternalError(fmt::format("{} did not settle on '{}' within {} rounds", name(algo), t.name(), limit));

    // Ascending order; a copy emitted earlier in the round is already in the
    // receiver's inbox when the receiver's turn comes.
    for (const auto r : active_) {
      batch_.clear();
      std::swap(batch_, inbox_[r.index()]);
      std::sort(batch_.begin(), batch_.end());
      batch_.erase(std::unique(batch_.begin(), batch_.end()), batch_.end());
      if (is_dest_[r.index()] != 0) delivered_[r.index()] = 1;
      for (const auto m : forward(algo, spec, r, batch_)) {
        // A packet crosses each directed link at most once; a repeat would
        // carry the same previous hop and trigger the same decisions.
        auto& sent = sent_[r.index() * n + m.index()];
        if (sent != 0) continue;
        sent = 1;
        record_.transmissions.push_back({r, m});
        inbox_[m.index()].push_back(r);
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (delivered_[i] != 0) record_.delivered.emplace_back(i);
  }
  return record_;
}

ForwardingRecord simulate(const RoutingState& state, Algorithm algo, const DestSpec& spec) {
  Simulator s(state);
  return s.run(algo, spec);
}

void for_each_geo_spec(const Topology& t, const SpecSink& sink) {
  if (!t.has_all_coordinates()) throw DomainError(fmt::format("'{}' has routers without coordinates", t.name()));
  const auto n = t.node_count();

  // Per seed: every other router by (distance, ID).
  std::vector<std::vector<RouterId>> nearest(n);
  std::vector<double> dist(n);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t j = 0; j < n; ++j) dist[j] = geo_distance(t, RouterId{s}, RouterId{j});
    auto& order = nearest[s];
    for (std::size_t j = 0; j < n; ++j) {
      if (j != s) order.emplace_back(j);
    }
    std::sort(order.begin(), order.end(), [&](RouterId a, RouterId b) {
      return dist[a.index()] != dist[b.index()] ? dist[a.index()] < dist[b.index()] : a < b;
    });
  }

  std::vector<RouterId> dests;
  for (const auto source : t.routers()) {
    std::set<std::vector<RouterId>> seen;
    for (std::size_t k = 1; k < n; ++k) {
      for (const auto seed : t.routers()) {
        if (seed == source) continue;
        dests.assign({seed});
        for (const auto c : nearest[seed.index()]) {
          if (dests.size() == k) break;
          if (c != source) dests.push_back(c);
        }
        std::sort(dests.begin(), dests.end());
        if (!seen.insert(dests).second) continue;
        sink(DestSpec{Mode::kGeo, source, dests, set_id(dests)});
      }
    }
  }
}

std::vector<DestSpec> gen_geo_scoped(const Topology& t) {
  std::vector<DestSpec> out;
  for_each_geo_spec(t, [&](const DestSpec& s) { out.push_back(s); });
  return out;
}

void for_each_random_spec(const Topology& t, std::size_t cap, std::uint64_t seed, const SpecSink& sink) {
  if (cap == 0) throw DomainError("cap must be at least 1");
  std::vector<RouterId> others;
  std::vector<std::size_t> pick;
  std::vector<RouterId> dests;
  for (const auto source : t.routers()) {
    others.clear();
    for (const auto r : t.routers()) {
      if (r != source) others.push_back(r);
    }
    const auto m = others.size();
    for (std::size_t k = 1; k <= m; ++k) {
      if (binomial_capped(m, k, cap) <= cap) {
        // Lexicographic enumeration of index combinations.
        pick.resize(k);
        std::iota(pick.begin(), pick.end(), 0);
        for (;;) {
          dests.clear();
          for (const auto i : pick) dests.push_back(others[i]);
          sink(DestSpec{Mode::kRandom, source, dests, set_id(dests)});
          std::size_t i = k;
          while (i > 0 && pick[i - 1] == m - k + i - 1) --i;
          if (i == 0) break;
          ++pick[i - 1];
          for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
        }
        continue;
      }
      std::uint64_t h = fnv_mix(kFnvOffset, seed, 8);
      h = fnv_mix(h, source.value, 4);
      h = fnv_mix(h, k, 4);
      std::mt19937_64 rng(h);
      std::set<std::vector<RouterId>> seen;
      std::vector<RouterId> pool;
      while (seen.size() < cap) {
        pool = others;
        for (std::size_t i = 0; i < k; ++i) {
          const auto j = i + uniform_below(rng, m - i);
          std::swap(pool[i], pool[j]);
        }
        dests.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
        std::sort(dests.begin(), dests.end());
        if (!seen.insert(dests).second) continue;
        sink(DestSpec{Mode::kRandom, source, dests, set_id(dests)});
      }
    }
  }
}

std::vector<DestSpec> gen_random(const Topology& t, std::size_t cap, std::uint64_t seed) {
  std::vector<DestSpec> out;
  for_each_random_spec(t, cap, seed, [&](const DestSpec& s) { out.push_back(s); });
  return out;
}

}  // namespace geocast::sim
