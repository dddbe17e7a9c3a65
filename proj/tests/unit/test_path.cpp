#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "geocast/error.hpp"
#include "geocast/path_routing.hpp"
#include "support.hpp"

using namespace geocast;
using namespace geocast::path;
using geocast::testing::id;

namespace {

Path p(const Topology& t, std::initializer_list<int> labels) {
  Path out;
  for (auto l : labels) out.push_back(id(t, l));
  return out;
}

}  // namespace

TEST_CASE("two routers") {
  const auto t = testing::from_edges({{1, 2}});
  const auto tables = distribute_routes(t);
  CHECK(tables.rounds() == 2);
  const auto ads = tables[id(t, 2)].advertise_on_link(id(t, 1));
  REQUIRE(ads.size() == 2);
  CHECK(ads[0].path == p(t, {1, 2}));
  CHECK(ads[1].path == p(t, {2}));
  // the owner never picks a route through itself
  CHECK(tables[id(t, 1)].best(id(t, 1)) == nullptr);
  CHECK(tables[id(t, 1)].best(id(t, 2))->path == p(t, {2}));
  CHECK(tables[id(t, 1)].alternate(id(t, 2)) == nullptr);
}

TEST_CASE("FIG5RD alternate route") {
  const auto t = testing::fixture("fig5rd");
  const auto tables = distribute_routes(t);
  const auto& six = tables[id(t, 6)];
  CHECK(six.best(id(t, 1))->path == p(t, {1, 3}));
  CHECK(six.alternate(id(t, 1))->path == p(t, {1, 2, 5}));
  bool found = false;
  for (const auto& ad : six.advertise_on_link(id(t, 3))) {
    if (ad.advertiser == id(t, 1)) {
      CHECK(ad.path == p(t, {1, 2, 5, 6}));
      CHECK(ad.cost == 4);
      found = true;
    }
  }
  CHECK(found);
  CHECK(tables[id(t, 3)].entry(id(t, 1), id(t, 6))->path == p(t, {1, 2, 5, 6}));
  CHECK(tables[id(t, 1)].next_hop(id(t, 6)) == id(t, 3));
  CHECK(tables[id(t, 4)].next_hop(id(t, 5)) == id(t, 3));
  CHECK(tables[id(t, 3)].next_hop(id(t, 5)) == id(t, 6));
}

TEST_CASE("FIG7 tables") {
  const auto t = testing::fixture("fig7");
  const auto tables = distribute_routes(t);
  CHECK(tables[id(t, 5)].next_hop(id(t, 6)) == id(t, 4));
  CHECK(tables[id(t, 5)].entry(id(t, 6), id(t, 3))->path == p(t, {6, 4, 1, 2, 3}));
  CHECK(tables[id(t, 5)].entry(id(t, 2), id(t, 4))->path == p(t, {2, 1, 4}));
  CHECK(tables[id(t, 4)].best(id(t, 2))->path == p(t, {2, 1}));
  CHECK(tables[id(t, 3)].best(id(t, 2))->path == p(t, {2}));
  // 5 reaches 6 over 4 or 7 in two hops
  CHECK(tables[id(t, 5)].entry(id(t, 6), id(t, 4))->path == p(t, {6, 4}));
  CHECK(tables[id(t, 5)].entry(id(t, 6), id(t, 7))->path == p(t, {6, 7}));
}

TEST_CASE("dump format") {
  const auto t = testing::fixture("fig5rd");
  std::ostringstream a;
  distribute_routes(t).dump(a);
  std::ostringstream b;
  distribute_routes(t).dump(b);
  CHECK(a.str() == b.str());
  CHECK(a.str().find("6 3 1 2 1-3\n") != std::string::npos);
  CHECK(a.str().find("3 6 1 4 1-2-5-6\n") != std::string::npos);

  std::ifstream golden(testing::data_path("fixtures/fig5rd.tables"));
  REQUIRE(golden);
  std::ostringstream expect;
  expect << golden.rdbuf();
  CHECK(a.str() == expect.str());
}

TEST_CASE("stored paths are valid") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto t = testing::random_graph(15 + seed % 10, seed % 9, seed);
    const auto tables = distribute_routes(t);
    const PathDb db(t);
    for (auto r : t.routers()) {
      const auto& table = tables[r];
      for (auto a : t.routers()) {
        if (a != r) {
          REQUIRE(table.best(a) != nullptr);
          CHECK(table.best(a)->cost == db.dist(r, a));
          CHECK(table.next_hop(a) == db.next_hop(r, a));
          // the route a's own forwarding takes toward r
          Path full = table.best(a)->path;
          full.push_back(r);
          CHECK(full == db.path(a, r));
        }
        for (auto link : table.links()) {
          const auto* e = table.entry(a, link);
          REQUIRE(e != nullptr);
          CHECK(e->cost == e->path.size());
          CHECK(e->path.front() == a);
          CHECK(e->path.back() == link);
          CHECK(std::set<RouterId>(e->path.begin(), e->path.end()).size() == e->path.size());
          for (std::size_t i = 1; i < e->path.size(); ++i) CHECK(t.adjacent(e->path[i - 1], e->path[i]));
        }
      }
    }
  }
}

TEST_CASE("one more round changes nothing") {
  const auto t = testing::random_graph(20, 10, 5);
  const auto tables = distribute_routes(t);
  // feed every current advertisement again
  for (auto r : t.routers()) {
    for (auto m : t.neighbors(r)) {
      for (auto& ad : tables[r].advertise_on_link(m)) {
        PathTable target = tables[m];
        CHECK_FALSE(target.receive(r, ad));
      }
    }
  }
}

TEST_CASE("path concatenation") {
  const auto t = testing::fixture("fig7");
  CHECK(concat_paths(p(t, {2, 1, 4}), p(t, {4, 6})) == p(t, {2, 1, 4, 6}));
  CHECK(concat_paths(p(t, {2, 3}), p(t, {3, 2, 1, 4, 6})) == p(t, {2, 1, 4, 6}));
  CHECK(concat_paths(p(t, {2, 3}), id(t, 5), p(t, {4, 6})) == p(t, {2, 3, 5, 4, 6}));
  CHECK_THROWS_AS(concat_paths(p(t, {2, 3}), p(t, {4, 6})), DomainError);
}

TEST_CASE("path difference") {
  const auto fig7 = testing::fixture("fig7");
  const auto t7 = distribute_routes(fig7);
  CHECK_FALSE(find_dif(t7[id(fig7, 5)], id(fig7, 4), id(fig7, 3), id(fig7, 6), id(fig7, 2)));

  const auto fig9 = testing::fixture("fig9");
  const auto t9 = distribute_routes(fig9);
  CHECK_FALSE(find_dif(t9[id(fig9, 5)], id(fig9, 4), id(fig9, 2), id(fig9, 6), id(fig9, 2)));

  const auto chain = testing::from_edges({{1, 2}, {2, 3}});
  const auto tc = distribute_routes(chain);
  CHECK(find_dif(tc[id(chain, 2)], id(chain, 3), id(chain, 1), id(chain, 3), id(chain, 1)));
}

TEST_CASE("next hop lookup") {
  const auto t = testing::fixture("fig7");
  const auto tables = distribute_routes(t);
  const std::vector<RouterId> d{id(t, 5), id(t, 6)};
  CHECK(next_hop_lookup(tables[id(t, 2)], {id(t, 2), d, kEntry, id(t, 2)}) == testing::ids(t, {1, 3}));
  CHECK(next_hop_lookup(tables[id(t, 5)], {id(t, 2), d, id(t, 3), id(t, 5)}).empty());
  CHECK(next_hop_lookup(tables[id(t, 1)], {id(t, 2), d, id(t, 2), id(t, 1)}) == std::vector{id(t, 4)});

  const std::vector<RouterId> self{id(t, 5)};
  CHECK(next_hop_lookup(tables[id(t, 5)], {id(t, 2), self, id(t, 3), id(t, 5)}).empty());

  DecisionCache cache(tables);
  CHECK(next_hop_lookup(tables, {id(t, 2), d, id(t, 3), id(t, 5)}, cache).empty());
  CHECK(next_hop_lookup(tables, {id(t, 2), d, id(t, 2), id(t, 1)}, cache) == std::vector{id(t, 4)});
}
