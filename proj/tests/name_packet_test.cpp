/* SPDX-License-Identifier: GPL-2.0-only */
#include "dafsim/name.hpp"
#include "dafsim/packet.hpp"

#include <gtest/gtest.h>

using namespace dafsim;

TEST(Name, ParseAndPrint)
{
  Name n = Name::Parse("/A/7");
  EXPECT_EQ(n.Size(), 2u);
  EXPECT_EQ(n.At(0), "A");
  EXPECT_EQ(n.ToUri(), "/A/7");
  EXPECT_EQ(Name::Parse("//A//7/").ToUri(), "/A/7");
  EXPECT_EQ(Name::Parse("/").ToUri(), "/");
  EXPECT_TRUE(Name::Parse("/").Empty());
  EXPECT_EQ(Name({"p3", "12"}), Name::Parse("/p3/12"));
}

TEST(Name, PrefixRelations)
{
  Name full = Name::Parse("/A/7");
  EXPECT_EQ(full.Prefix(1), Name::Parse("/A"));
  EXPECT_EQ(full.Prefix(9), full);
  EXPECT_TRUE(Name::Parse("/A").IsPrefixOf(full));
  EXPECT_TRUE(full.IsPrefixOf(full));
  EXPECT_FALSE(Name::Parse("/B").IsPrefixOf(full));
  EXPECT_FALSE(Name::Parse("/A/7/1").IsPrefixOf(full));
  // Component-wise, so /A is not a prefix of /AB.
  EXPECT_FALSE(Name::Parse("/A").IsPrefixOf(Name::Parse("/AB/1")));
  EXPECT_EQ(Name::Parse("/A").Append("3"), Name::Parse("/A/3"));
}

TEST(Name, WireLengthCountsSeparators)
{
  EXPECT_EQ(Name::Parse("/A/7").WireLength(), 4u);
  EXPECT_EQ(Name::Parse("/p12/345").WireLength(), 8u);
  EXPECT_EQ(Name().WireLength(), 0u);
}

TEST(Packet, NdnSizes)
{
  Interest i;
  i.name = Name::Parse("/A/7");
  EXPECT_EQ(WireSize(i), 4u + 16u + 20u);

  Data d;
  d.name = Name::Parse("/A/7");
  EXPECT_EQ(WireSize(d), 512u + 4u + 24u);
  d.announcedPrefix = Name::Parse("/A");
  EXPECT_EQ(WireSize(d), 512u + 4u + 24u + 2u);
}

TEST(Packet, IpSizes)
{
  IpDatagram req;
  EXPECT_EQ(WireSize(req), 12u + 48u);
  IpDatagram resp;
  resp.kind = IpDatagram::Kind::Response;
  resp.payloadSize = kDataPayloadBytes;
  EXPECT_EQ(WireSize(resp), 512u + 48u);
  EXPECT_GT(WireSize(Rreq{}), 48u);
  Rerr one, two;
  one.destinations = {{1, 1}};
  two.destinations = {{1, 1}, {2, 1}};
  EXPECT_GT(WireSize(two), WireSize(one));
}

TEST(Packet, KindNames)
{
  EXPECT_STREQ(PacketKind(Interest{}), "interest");
  EXPECT_STREQ(PacketKind(Data{}), "data");
}
