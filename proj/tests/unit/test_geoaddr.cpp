#include <doctest.h>

#include <random>

#include "geocast/error.hpp"
#include "geocast/geoaddr.hpp"

using namespace geocast;
using namespace geocast::geo;

namespace {

const BoundingBox kEnschede{52.19, 52.24, 6.84, 6.94};

}  // namespace

TEST_CASE("rectangle bits run from 8 down to 1") {
  CHECK(rectangle_bit(1) == 0x8);
  CHECK(rectangle_bit(4) == 0x1);
  CHECK_THROWS_AS(rectangle_bit(0), DomainError);
  CHECK_THROWS_AS(rectangle_bit(5), DomainError);
}

TEST_CASE("level-1 cell has one bit set") {
  for (double lat : {-60.0, -1.0, 1.0, 60.0}) {
    for (double lon : {-120.0, -1.0, 1.0, 120.0}) {
      const auto a = encode_cell(lat, lon, 1);
      REQUIRE(a.levels() == 1);
      CHECK(__builtin_popcount(a.nibble(0)) == 1);
    }
  }
}

TEST_CASE("quadrant numbering") {
  CHECK(encode_cell(45, -90, 1).to_dotted() == "3");
  CHECK(encode_cell(-45, -90, 1).to_dotted() == "2");
  CHECK(encode_cell(45, 90, 1).to_dotted() == "4");
  CHECK(encode_cell(-45, 90, 1).to_dotted() == "1");
}

TEST_CASE("points in one cell share the address") {
  const auto a = encode_cell(52.2101, 6.8901, 8);
  const auto b = encode_cell(52.2102, 6.8902, 8);
  CHECK(a == b);
  CHECK(a.levels() == 8);
}

TEST_CASE("Enschede bounding box") {
  const auto a = encode_bbox(kEnschede, 12);
  CHECK(a.to_dotted() == "4.4.2.3.2.1.1.2.4.[2,3].[1,2].4");
  CHECK(to_hex(a) == "1142:4884:16c1::");
  CHECK(overlaps(a, a.prefix(9)));
  const auto center = encode_cell(52.215, 6.89, 12);
  CHECK(center.levels() == 12);
  CHECK(overlaps(center, a));
}

TEST_CASE("whole world and exact cells") {
  CHECK(encode_bbox(kWholeWorld, 5).to_dotted() == "[1,2,3,4]");
  CHECK(encode_bbox(kWholeWorld, 5).nibbles().size() == 1);
  // one level-3 cell: 22.5 x 45 degrees
  const BoundingBox cell{45.0, 67.5, 90.0, 135.0};
  const auto a = encode_bbox(cell, 6);
  REQUIRE(a.levels() == 3);
  for (auto n : a.nibbles()) CHECK(__builtin_popcount(n) == 1);
  CHECK(a == encode_cell(56.0, 110.0, 3));
}

TEST_CASE("bounding box validation") {
  CHECK_THROWS_AS(encode_bbox({10, 5, 0, 1}, 4), DomainError);
  CHECK_THROWS_AS(encode_bbox({0, 1, 0, 1}, 0), DomainError);
  CHECK_THROWS_AS(encode_bbox({-91, 1, 0, 1}, 4), DomainError);
}

TEST_CASE("overlap rule") {
  const GeoAddress a({0x8});
  const GeoAddress b({0x1});
  CHECK(overlaps(a, a));
  CHECK_FALSE(overlaps(a, b));
  CHECK(overlaps(GeoAddress({0x9, 0x2}), GeoAddress({0x1})));
  CHECK_THROWS_AS(overlaps(GeoAddress{}, a), DomainError);
}

TEST_CASE("hex packing") {
  const GeoAddress paper({0x1, 0x1, 0x4, 0x2, 0x4, 0x8, 0x8, 0x4, 0x1, 0x6, 0xc, 0x1});
  CHECK(to_hex(paper) == "1142:4884:16c1::");
  CHECK(to_hex(GeoAddress{}) == "::");
  CHECK(to_hex(GeoAddress({0xf})) == "f000::");
  CHECK(GeoAddress::from_hex("1142:4884:16c1::") == paper);
}

TEST_CASE("dotted notation round trip") {
  const auto a = GeoAddress::parse("4.4.2.3.2.1.1.2.4.[2,3].[1,2].4");
  CHECK(a.levels() == 12);
  CHECK(a.nibble(9) == 0x6);
  CHECK(GeoAddress::parse(a.to_dotted()) == a);
  CHECK_THROWS_AS(GeoAddress::parse("4.5"), ParseError);
  CHECK_THROWS_AS(GeoAddress::parse("4..2"), ParseError);
  CHECK_THROWS_AS(GeoAddress({0x0}), DomainError);
  CHECK_THROWS_AS(GeoAddress({0x10}), DomainError);
}

TEST_CASE("aggregation") {
  const GeoAddress a({0x8});
  const GeoAddress b({0x1});
  const std::vector<GeoAddress> one{a};
  CHECK(aggregate(one) == a);
  const std::vector<GeoAddress> two{a, b};
  CHECK(aggregate(two) == GeoAddress({0x9}));

  // two neighbouring level-12 cells in the same parent
  const auto x = encode_cell(52.2101, 6.8901, 12);
  const double step = 360.0 / 4096;
  auto y = encode_cell(52.2101, 6.8901 + step, 12);
  if (x.prefix(11) != y.prefix(11)) y = encode_cell(52.2101, 6.8901 - step, 12);
  REQUIRE(x.prefix(11) == y.prefix(11));
  const std::vector<GeoAddress> sib{x, y};
  const auto s = aggregate(sib);
  CHECK(s.levels() == 12);
  CHECK(s.prefix(11) == x.prefix(11));
  CHECK(__builtin_popcount(s.nibble(11)) == 2);
}

TEST_CASE("cells overlap exactly when they are equal") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lat(-89.9, 89.9);
  std::uniform_real_distribution<double> lon(-179.9, 179.9);
  for (int i = 0; i < 2000; ++i) {
    const auto a = encode_cell(lat(rng), lon(rng), 6);
    const auto b = encode_cell(lat(rng), lon(rng), 6);
    CHECK(overlaps(a, b) == (a == b));
  }
}
