#include "geocast/geoaddr.hpp"

#include <array>
#include <cmath>
#include <cstdint>

#include <fmt/format.h>

#include "geocast/error.hpp"

namespace geocast::geo {

namespace {

// Rectangle number by (column bit, row bit). Columns count west to east, rows
// north to south. Calibrated so the Enschede box encodes to
// 4.4.2.3.2.1.1.2.4.[2,3].[1,2].4.
constexpr std::array<std::array<int, 2>, 2> kRectangleByBits{{{3, 2}, {4, 1}}};

// Mirrored parity: indices 2j+1 and 2j+2 (different parents) get equal bits.
constexpr unsigned mirrored_bit(std::uint64_t index) { return ((index + 1) >> 1) & 1U; }

struct CellRange {
  std::uint64_t lo;
  std::uint64_t hi;  // inclusive
};

std::uint64_t clamp_index(double scaled, std::uint64_t cells) {
  if (scaled <= 0) return 0;
  const auto idx = static_cast<std::uint64_t>(std::floor(scaled));
  return idx >= cells ? cells - 1 : idx;
}

// Column range covered by [lon_min, lon_max) at `level`.
CellRange column_range(double lon_min, double lon_max, int level) {
  const std::uint64_t cells = std::uint64_t{1} << level;
  const double scale = static_cast<double>(cells) / 360.0;
  const auto lo = clamp_index((lon_min + 180.0) * scale, cells);
  const double hi_scaled = std::ceil((lon_max + 180.0) * scale) - 1.0;
  auto hi = clamp_index(hi_scaled, cells);
  if (hi < lo) hi = lo;
  return {lo, hi};
}

// Row range (counted from the north pole) covered by (lat_min, lat_max].
CellRange row_range(double lat_min, double lat_max, int level) {
  const std::uint64_t cells = std::uint64_t{1} << level;
  const double scale = static_cast<double>(cells) / 180.0;
  const auto lo = clamp_index((90.0 - lat_max) * scale, cells);
  const double hi_scaled = std::ceil((90.0 - lat_min) * scale) - 1.0;
  auto hi = clamp_index(hi_scaled, cells);
  if (hi < lo) hi = lo;
  return {lo, hi};
}

// Which mirrored bits occur in an index range; the pattern repeats every 4.
std::array<bool, 2> bits_in(CellRange r) {
  std::array<bool, 2> seen{false, false};
  for (std::uint64_t i = r.lo; i <= r.hi && i < r.lo + 4; ++i) seen[mirrored_bit(i)] = true;
  return seen;
}

void check_level(int level) {
  if (level < 1 || level > kMaxLevels)
    throw DomainError(fmt::format("address level {} outside 1..{}", level, kMaxLevels));
}

void check_point(double lat, double lon) {
  if (!(lat >= -90.0 && lat <= 90.0) || !(lon >= -180.0 && lon <= 180.0))
    throw DomainError(fmt::format("coordinate ({}, {}) out of range", lat, lon));
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::vector<std::uint16_t> parse_groups(std::string_view text) {
  std::vector<std::uint16_t> groups;
  if (text.empty()) return groups;
  std::size_t start = 0;
  while (true) {
    const auto end = text.find(':', start);
    const auto token = text.substr(start, end == std::string_view::npos ? end : end - start);
    if (token.empty() || token.size() > 4) throw ParseError(fmt::format("bad hex group in '{}'", text));
    std::uint16_t value = 0;
    for (char c : token) {
      const int v = hex_value(c);
      if (v < 0) throw ParseError(fmt::format("bad hex digit '{}'", c));
      value = static_cast<std::uint16_t>((value << 4) | v);
    }
    groups.push_back(value);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return groups;
}

}  // namespace

void BoundingBox::validate() const {
  check_point(lat_min, lon_min);
  check_point(lat_max, lon_max);
  if (!(lat_min < lat_max) || !(lon_min < lon_max))
    throw DomainError("bounding box must satisfy lat_min < lat_max and lon_min < lon_max");
}

std::uint8_t rectangle_bit(int rect) {
  if (rect < 1 || rect > 4) throw DomainError(fmt::format("rectangle {} outside 1..4", rect));
  return static_cast<std::uint8_t>(0x8 >> (rect - 1));
}

GeoAddress::GeoAddress(std::vector<std::uint8_t> nibbles) : nibbles_(std::move(nibbles)) {
  if (nibbles_.size() > static_cast<std::size_t>(kMaxLevels))
    throw DomainError(fmt::format("address has {} levels, maximum is {}", nibbles_.size(), kMaxLevels));
  for (auto n : nibbles_) {
    if (n == 0 || n > 0xF) throw DomainError(fmt::format("invalid nibble {:#x}", n));
  }
}

GeoAddress GeoAddress::parse(std::string_view dotted) {
  std::vector<std::uint8_t> nibbles;
  std::size_t pos = 0;
  while (pos < dotted.size()) {
    std::uint8_t mask = 0;
    if (dotted[pos] == '[') {
      const auto close = dotted.find(']', pos);
      if (close == std::string_view::npos) throw ParseError(fmt::format("unterminated '[' in '{}'", dotted));
      for (std::size_t i = pos + 1; i < close; ++i) {
        const char c = dotted[i];
        if (c == ',' || c == ' ') continue;
        if (c < '1' || c > '4') throw ParseError(fmt::format("bad rectangle '{}' in '{}'", c, dotted));
        mask |= rectangle_bit(c - '0');
      }
      pos = close + 1;
    } else {
      const char c = dotted[pos];
      if (c < '1' || c > '4') throw ParseError(fmt::format("bad rectangle '{}' in '{}'", c, dotted));
      mask = rectangle_bit(c - '0');
      ++pos;
    }
    if (mask == 0) throw ParseError(fmt::format("empty level in '{}'", dotted));
    nibbles.push_back(mask);
    if (pos < dotted.size()) {
      if (dotted[pos] != '.') throw ParseError(fmt::format("expected '.' at offset {} in '{}'", pos, dotted));
      ++pos;
      if (pos == dotted.size()) throw ParseError(fmt::format("trailing '.' in '{}'", dotted));
    }
  }
  try {
    return GeoAddress(std::move(nibbles));
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

GeoAddress GeoAddress::from_hex(std::string_view hex) {
  std::vector<std::uint16_t> groups;
  if (const auto gap = hex.find("::"); gap != std::string_view::npos) {
    auto head = parse_groups(hex.substr(0, gap));
    auto tail = parse_groups(hex.substr(gap + 2));
    if (head.size() + tail.size() > 7) throw ParseError(fmt::format("too many groups in '{}'", hex));
    groups = std::move(head);
    groups.resize(8 - tail.size(), 0);
    groups.insert(groups.end(), tail.begin(), tail.end());
  } else {
    groups = parse_groups(hex);
    if (groups.size() != 8) throw ParseError(fmt::format("expected 8 groups in '{}'", hex));
  }

  std::vector<std::uint8_t> nibbles;
  bool ended = false;
  for (auto g : groups) {
    for (int shift = 12; shift >= 0; shift -= 4) {
      const auto n = static_cast<std::uint8_t>((g >> shift) & 0xF);
      if (n == 0) {
        ended = true;
      } else if (ended) {
        throw ParseError(fmt::format("zero level inside address '{}'", hex));
      } else {
        nibbles.push_back(n);
      }
    }
  }
  return GeoAddress(std::move(nibbles));
}

std::string GeoAddress::to_dotted() const {
  std::string out;
  for (std::size_t i = 0; i < nibbles_.size(); ++i) {
    if (i) out += '.';
    const auto n = nibbles_[i];
    std::string rects;
    int count = 0;
    for (int rect = 1; rect <= 4; ++rect) {
      if (n & rectangle_bit(rect)) {
        if (count++) rects += ',';
        rects += static_cast<char>('0' + rect);
      }
    }
    out += count == 1 ? rects : "[" + rects + "]";
  }
  return out;
}

GeoAddress GeoAddress::prefix(std::size_t levels) const {
  if (levels > nibbles_.size()) throw DomainError("prefix longer than address");
  return GeoAddress(std::vector<std::uint8_t>(nibbles_.begin(), nibbles_.begin() + static_cast<long>(levels)));
}

GeoAddress encode_cell(double lat, double lon, int level) {
  check_point(lat, lon);
  check_level(level);
  const std::uint64_t cells = std::uint64_t{1} << level;
  const auto col = clamp_index((lon + 180.0) * static_cast<double>(cells) / 360.0, cells);
  const auto row = clamp_index((90.0 - lat) * static_cast<double>(cells) / 180.0, cells);

  std::vector<std::uint8_t> nibbles;
  nibbles.reserve(static_cast<std::size_t>(level));
  for (int l = 1; l <= level; ++l) {
    const int shift = level - l;
    const int rect = kRectangleByBits[mirrored_bit(col >> shift)][mirrored_bit(row >> shift)];
    nibbles.push_back(rectangle_bit(rect));
  }
  return GeoAddress(std::move(nibbles));
}

GeoAddress encode_bbox(const BoundingBox& bbox, int max_level) {
  bbox.validate();
  check_level(max_level);

  std::vector<std::uint8_t> nibbles;
  for (int level = 1; level <= max_level; ++level) {
    const auto cols = bits_in(column_range(bbox.lon_min, bbox.lon_max, level));
    const auto rows = bits_in(row_range(bbox.lat_min, bbox.lat_max, level));
    std::uint8_t mask = 0;
    for (unsigned c = 0; c < 2; ++c) {
      for (unsigned r = 0; r < 2; ++r) {
        if (cols[c] && rows[r]) mask |= rectangle_bit(kRectangleByBits[c][r]);
      }
    }
    nibbles.push_back(mask);
  }
  while (nibbles.size() > 1 && nibbles.back() == 0xF) nibbles.pop_back();
  return GeoAddress(std::move(nibbles));
}

bool overlaps(const GeoAddress& a, const GeoAddress& b) {
  if (a.empty() || b.empty()) throw DomainError("overlap test on an empty address");
  const auto n = std::min(a.levels(), b.levels());
  for (std::size_t i = 0; i < n; ++i) {
    if ((a.nibble(i) & b.nibble(i)) == 0) return false;
  }
  return true;
}

std::string to_hex(const GeoAddress& a) {
  std::array<std::uint16_t, 8> groups{};
  const auto nibbles = a.nibbles();
  for (std::size_t i = 0; i < nibbles.size(); ++i) {
    groups[i / 4] = static_cast<std::uint16_t>(groups[i / 4] | (nibbles[i] << (12 - 4 * (i % 4))));
  }
  std::size_t used = groups.size();
  while (used > 0 && groups[used - 1] == 0) --used;

  std::string out;
  for (std::size_t i = 0; i < used; ++i) {
    if (i) out += ':';
    out += fmt::format("{:04x}", groups[i]);
  }
  if (used < groups.size()) out += "::";
  return out;
}

GeoAddress aggregate(std::span<const GeoAddress> addrs) {
  if (addrs.empty()) throw DomainError("aggregate of an empty address set");
  std::size_t len = addrs.front().levels();
  for (const auto& a : addrs) len = std::min(len, a.levels());
  std::vector<std::uint8_t> nibbles(len, 0);
  for (const auto& a : addrs) {
    for (std::size_t i = 0; i < len; ++i) nibbles[i] |= a.nibble(i);
  }
  return GeoAddress(std::move(nibbles));
}

}  // namespace geocast::geo
