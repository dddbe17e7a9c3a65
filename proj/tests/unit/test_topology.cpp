#include <doctest.h>

#include "geocast/error.hpp"
#include "geocast/topology.hpp"
#include "support.hpp"

using namespace geocast;
using geocast::testing::id;

namespace {

std::string graphml(const std::string& body) {
  return R"(<?xml version="1.0" encoding="utf-8"?>
<graphml xmlns="http://graphml.graphdrawing.org/xmlns">
  <key attr.name="Latitude" attr.type="double" for="node" id="d29" />
  <key attr.name="Longitude" attr.type="double" for="node" id="d32" />
  <key attr.name="Network" attr.type="string" for="graph" id="d5" />
  <graph edgedefault="undirected">
    <data key="d5">Test</data>
)" + body + R"(
  </graph>
</graphml>)";
}

}  // namespace

TEST_CASE("minimal GraphML") {
  const auto t = load_graphml(graphml(R"(
    <node id="0"><data key="d29">52.2</data><data key="d32">6.9</data></node>
    <node id="1"><data key="d29">52.0</data><data key="d32">4.3</data></node>
    <edge source="0" target="1" />)"));
  CHECK(t.node_count() == 2);
  CHECK(t.edge_count() == 1);
  CHECK(t.name() == "Test");
  REQUIRE(t.coordinates(RouterId{0}).has_value());
  CHECK(t.coordinates(RouterId{0})->lat == doctest::Approx(52.2));
  CHECK(t.has_all_coordinates());
}

TEST_CASE("parallel links and self-loops collapse") {
  const auto t = load_graphml(graphml(R"(
    <node id="a" /><node id="b" />
    <edge source="a" target="b" /><edge source="b" target="a" /><edge source="a" target="a" />)"));
  CHECK(t.edge_count() == 1);
  CHECK_FALSE(t.has_all_coordinates());
}

TEST_CASE("largest component is kept") {
  const auto t = load_graphml(graphml(R"(
    <node id="0" /><node id="1" /><node id="2" /><node id="3" /><node id="4" />
    <edge source="0" target="1" />
    <edge source="2" target="3" /><edge source="3" target="4" />)"));
  CHECK(t.node_count() == 3);
  CHECK(t.edge_count() == 2);
  CHECK(t.label(RouterId{0}) == "2");
}

TEST_CASE("GraphML errors") {
  CHECK_THROWS_AS(load_graphml("<graphml><graph>"), ParseError);
  CHECK_THROWS_AS(load_graphml("<other/>"), ParseError);
  CHECK_THROWS_AS(load_graphml(graphml(R"(<node id="0" /><edge source="0" target="9" />)")), ParseError);
  CHECK_THROWS_AS(load_graphml(graphml(R"(<node id="0" /><node id="0" />)")), ParseError);
  CHECK_THROWS_AS(load_graphml(graphml(R"(<node id="0" />)")), DomainError);
  CHECK_THROWS_AS(load_graphml(graphml("")), DomainError);
}

TEST_CASE("edge lists") {
  const auto t = load_edge_list("# comment\n10 2\n2 3\n# coord 3 1.5 2.5\n\n", "x");
  CHECK(t.node_count() == 3);
  // numeric labels keep numeric order
  CHECK(t.label(RouterId{0}) == "2");
  CHECK(t.label(RouterId{2}) == "10");
  CHECK(t.coordinates(t.by_label("3"))->lon == doctest::Approx(2.5));
  CHECK_THROWS_AS(load_edge_list("1 2 3\n"), ParseError);
  CHECK_THROWS_AS(load_edge_list("1\n"), ParseError);
  CHECK_THROWS_AS(t.by_label("7"), DomainError);

  const auto named = load_edge_list("b a\na c\n");
  CHECK(named.label(RouterId{0}) == "b");
}

TEST_CASE("fixtures load") {
  const auto fig7 = testing::fixture("fig7");
  CHECK(fig7.node_count() == 7);
  CHECK(fig7.edge_count() == 8);
  CHECK(testing::fixture("fig9").edge_count() == 7);
  CHECK(testing::fixture("fig5rd").edge_count() == 6);
}

TEST_CASE("shortest paths") {
  const auto tri = testing::from_edges({{1, 2}, {2, 3}, {1, 3}});
  const PathDb tdb(tri);
  CHECK(tdb.dist(id(tri, 1), id(tri, 1)) == 0);
  CHECK(tdb.dist(id(tri, 1), id(tri, 3)) == 1);

  const auto t = testing::fixture("fig7");
  const PathDb db(t);
  CHECK(db.path(id(t, 2), id(t, 6)) == std::vector{id(t, 2), id(t, 1), id(t, 4), id(t, 6)});
  CHECK(db.next_hop(id(t, 5), id(t, 6)) == id(t, 4));
  CHECK(db.diameter() == 3);
}

TEST_CASE("shortest paths agree with BFS") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto t = testing::random_graph(25, 15, seed);
    const PathDb db(t);
    for (auto s : t.routers()) {
      const auto d = testing::bfs(t, s);
      for (auto x : t.routers()) {
        CHECK(db.dist(s, x) == d[x.index()]);
        CHECK(db.path(s, x).size() == d[x.index()] + 1);
      }
    }
  }
}

TEST_CASE("great-circle distance") {
  const Coordinates a{10, 20};
  CHECK(geo_distance(a, a) == 0);
  CHECK(geo_distance({90, 0}, {-90, 0}) == doctest::Approx(20015).epsilon(0.005));
  CHECK(geo_distance({0, 0}, {0, 90}) == doctest::Approx(10008).epsilon(0.005));
  const auto t = testing::fixture("fig9");
  CHECK_THROWS_AS(geo_distance(t, RouterId{0}, RouterId{1}), DomainError);
}
