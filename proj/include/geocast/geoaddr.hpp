#pragma once

// Hierarchical geographic addresses.
//
// The world is split at the equator and the prime meridian into four
// rectangles, each of which is split again into four, and so on. Every level
// of an address is one 4-bit mask selecting any subset of the four child
// rectangles, so an address of length L selects the cross-product of its
// per-level selections. Rectangles are numbered 1..4 in a mirrored pattern:
// two neighbouring rectangles with different parents carry the same number.
// Rectangle k occupies bit (8 >> (k - 1)) of its nibble.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace geocast::geo {

inline constexpr int kMaxLevels = 32;

struct BoundingBox {
  double lat_min = 0;
  double lat_max = 0;
  double lon_min = 0;
  double lon_max = 0;

  /// Throws DomainError unless ranges are valid and non-degenerate.
  void validate() const;
};

inline constexpr BoundingBox kWholeWorld{-90.0, 90.0, -180.0, 180.0};

/// Nibble value of rectangle `rect` (1..4): 1 -> 0b1000, ..., 4 -> 0b0001.
std::uint8_t rectangle_bit(int rect);

class GeoAddress {
 public:
  GeoAddress() = default;
  /// Throws DomainError on zero/oversized nibbles or more than kMaxLevels.
  explicit GeoAddress(std::vector<std::uint8_t> nibbles);

  /// Dotted rectangle notation, e.g. "4.4.2.[2,3].[1,2].4".
  static GeoAddress parse(std::string_view dotted);
  /// Inverse of to_hex().
  static GeoAddress from_hex(std::string_view hex);

  std::size_t levels() const { return nibbles_.size(); }
  bool empty() const { return nibbles_.empty(); }
  std::uint8_t nibble(std::size_t level) const { return nibbles_.at(level); }
  std::span<const std::uint8_t> nibbles() const { return nibbles_; }

  std::string to_dotted() const;

  GeoAddress prefix(std::size_t levels) const;

  bool operator==(const GeoAddress&) const = default;

 private:
  std::vector<std::uint8_t> nibbles_;
};

/// Address of the single level-`level` cell containing the point.
GeoAddress encode_cell(double lat, double lon, int level);

/// Tightest cross-product cover of `bbox` using at most `max_level` levels.
/// Trailing all-ones levels are dropped since they do not narrow the area.
GeoAddress encode_bbox(const BoundingBox& bbox, int max_level);

/// AND rule: every level up to the shorter length shares at least one bit.
bool overlaps(const GeoAddress& a, const GeoAddress& b);

/// Nibbles packed MSB-first into 16-bit groups; the zero tail becomes "::".
std::string to_hex(const GeoAddress& a);

/// Level-wise OR of all inputs, truncated to the shortest input.
GeoAddress aggregate(std::span<const GeoAddress> addrs);

}  // namespace geocast::geo
