/* SPDX-License-Identifier: GPL-2.0-only */
#pragma once

#include "dafsim/name.hpp"
#include "dafsim/simulator.hpp"

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

namespace dafsim {

/// Node identifier; doubles as the node's link-layer address.
using NodeId = std::uint32_t;

constexpr NodeId kBroadcast = std::numeric_limits<NodeId>::max();
/// Pseudo-address of the application face on the local node.
constexpr NodeId kLocalFace = kBroadcast - 1;

// Header sizes in bytes.
constexpr std::uint32_t kIpHeaderBytes = 48;       // IP + UDP + MAC, flat
constexpr std::uint32_t kInterestFieldsBytes = 16; // nonce + lifetime
constexpr std::uint32_t kNdnLinkHeaderBytes = 20;
constexpr std::uint32_t kDataHeaderBytes = 24;
constexpr std::uint32_t kIpRequestPayloadBytes = 12; // 4 B sequence + 8 B timestamp
constexpr std::uint32_t kDataPayloadBytes = 512;

struct Interest
{
  Name name;
  std::uint32_t nonce = 0;
  Time lifetime = 2.0;
  bool discovery = false; // self-learning only
  std::uint32_t hopCount = 0;
};

struct Data
{
  Name name;
  std::uint32_t payloadSize = kDataPayloadBytes;
  std::optional<Name> announcedPrefix;
  std::uint32_t hcFromSource = 0;
};

struct IpDatagram
{
  enum class Kind : std::uint8_t
  {
    Request,
    Response
  };
  Kind kind = Kind::Request;
  NodeId src = 0;
  NodeId dst = 0;
  std::uint32_t seq = 0;
  Time timestamp = 0.0;
  /// Hops traversed so far.
  std::uint32_t hops = 0;
  /// Request hop count echoed back by the responder.
  std::uint32_t echoedHops = 0;
  std::uint32_t payloadSize = kIpRequestPayloadBytes;
};

struct Rreq
{
  std::uint32_t rreqId = 0;
  NodeId originator = 0;
  std::uint32_t originatorSeq = 0;
  NodeId destination = 0;
  std::uint32_t destinationSeq = 0;
  bool unknownSeq = true;
  std::uint32_t hopCount = 0;
};

struct Rrep
{
  NodeId originator = 0;
  NodeId destination = 0;
  std::uint32_t destinationSeq = 0;
  std::uint32_t hopCount = 0;
  Time lifetime = 0.0;
};

struct Rerr
{
  struct Unreachable
  {
    NodeId destination;
    std::uint32_t seq;
  };
  std::vector<Unreachable> destinations;
};

struct Hello
{
  NodeId origin = 0;
  std::uint32_t seq = 0;
};

using Packet = std::variant<Interest, Data, IpDatagram, Rreq, Rrep, Rerr, Hello>;
using PacketPtr = std::shared_ptr<const Packet>;

/// On-air size of @p packet in bytes.
std::uint32_t WireSize(const Packet& packet);

/// Short lowercase label used in traces and event logs.
const char* PacketKind(const Packet& packet);

} // namespace dafsim
