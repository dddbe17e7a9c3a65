#pragma once

#include <span>

#include "geocast/router_id.hpp"

namespace geocast {

/// What a router sees when it evaluates one received copy of a packet.
struct PacketCtx {
  RouterId src;
  std::span<const RouterId> dests;  // sorted ascending, never contains src
  RouterId prev_hop = kEntry;       // kEntry at the source router
  RouterId current;

  bool at_entry() const { return prev_hop == kEntry; }
};

}  // namespace geocast
