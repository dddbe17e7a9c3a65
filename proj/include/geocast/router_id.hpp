#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>

namespace geocast {

/// Dense router index inside one Topology. Ordering is the router-ID order
/// used by every lowest-ID tie-break.
struct RouterId {
  std::uint32_t value = 0;

  constexpr RouterId() = default;
  constexpr explicit RouterId(std::uint32_t v) : value(v) {}
  constexpr explicit RouterId(std::size_t v) : value(static_cast<std::uint32_t>(v)) {}
  constexpr explicit RouterId(int v) : value(static_cast<std::uint32_t>(v)) {}

  constexpr std::size_t index() const { return value; }
  constexpr auto operator<=>(const RouterId&) const = default;
};

/// Previous-hop marker for a packet injected at its source router.
inline constexpr RouterId kEntry{std::numeric_limits<std::uint32_t>::max()};

struct DirectedLink {
  RouterId from;
  RouterId to;
  constexpr auto operator<=>(const DirectedLink&) const = default;
};

}  // namespace geocast

template <>
struct std::hash<geocast::RouterId> {
  std::size_t operator()(const geocast::RouterId& id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};
