/* SPDX-License-Identifier: GPL-2.0-only */
#include "dafsim/packet.hpp"

namespace dafsim {

namespace {

// AODV message bodies (RFC 3561 layouts).
constexpr std::uint32_t kRreqBytes = 24;
constexpr std::uint32_t kRrepBytes = 20;
constexpr std::uint32_t kRerrBaseBytes = 4;
constexpr std::uint32_t kRerrPerDestBytes = 8;

template <class... Ts>
struct Overloaded : Ts...
{
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

} // namespace

std::uint32_t
WireSize(const Packet& packet)
{
  return std::visit(
    Overloaded{
      [](const Interest& i) -> std::uint32_t {
        return static_cast<std::uint32_t>(i.name.WireLength()) + kInterestFieldsBytes +
               kNdnLinkHeaderBytes;
      },
      [](const Data& d) -> std::uint32_t {
        std::uint32_t size =
          d.payloadSize + static_cast<std::uint32_t>(d.name.WireLength()) + kDataHeaderBytes;
        if (d.announcedPrefix)
          size += static_cast<std::uint32_t>(d.announcedPrefix->WireLength());
        return size;
      },
      [](const IpDatagram& p) -> std::uint32_t { return p.payloadSize + kIpHeaderBytes; },
      [](const Rreq&) -> std::uint32_t { return kRreqBytes + kIpHeaderBytes; },
      [](const Rrep&) -> std::uint32_t { return kRrepBytes + kIpHeaderBytes; },
      [](const Rerr& e) -> std::uint32_t {
        return kRerrBaseBytes +
               kRerrPerDestBytes * static_cast<std::uint32_t>(e.destinations.size()) +
               kIpHeaderBytes;
      },
      [](const Hello&) -> std::uint32_t { return kRrepBytes + kIpHeaderBytes; },
    },
    packet);
}

const char*
PacketKind(const Packet& packet)
{
  static constexpr const char* kLabels[] = {"interest", "data", "ip", "rreq", "rrep", "rerr", "hello"};
  return kLabels[packet.index()];
}

} // namespace dafsim
