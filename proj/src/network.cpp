/* SPDX-License-Identifier: GPL-2.0-only */
#include "dafsim/network.hpp"

#include "dafsim/apps.hpp"
#include "dafsim/ndn_node.hpp"
#include "dafsim/strategies.hpp"

#include <cstdio>
#include <functional>
#include <memory>
#include <numeric>
#include <stdexcept>

namespace dafsim {

SimulationSetup
MakeSetup(const ScenarioConfig& config, std::uint64_t runSeed)
{
  SimulationSetup s;
  s.scheme = config.scheme;
  s.area = config.area;
  s.csCapacity = config.IsNdn() ? config.csCapacity : 0;
  s.rtxMax = config.rtxMax;
  s.requestRate = config.requestRate;
  s.requestsPerConsumer = config.requestsPerConsumer;
  s.durationCap = config.durationCap;
  s.seed = runSeed;
  s.mac = config.mac;

  RngStream placement(runSeed, "placement");
  s.positions = PlaceGrid(config.nodes, config.area, placement);
  for (auto& p : s.positions)
    p.speed = config.speed;

  // Partial Fisher-Yates: the first consumers+producers slots are the roles.
  RngStream roles(runSeed, "roles");
  std::vector<NodeId> ids(config.nodes);
  std::iota(ids.begin(), ids.end(), 0);
  const std::uint32_t needed = config.consumers + config.ProducerCount();
  for (std::uint32_t i = 0; i < needed; ++i)
    std::swap(ids[i], ids[roles.UniformInt(i, config.nodes - 1)]);

  const std::uint32_t nc = config.consumers;
  const std::uint32_t np = config.ProducerCount();
  for (std::uint32_t i = 0; i < np; ++i)
    {
      ProducerSpec p;
      p.node = ids[nc + i];
      switch (config.pattern)
        {
        case Pattern::OneToOne:
          p.prefix = "/p" + std::to_string(i);
          break;
        case Pattern::ManyToMany:
          p.prefix = i < (np + 1) / 2 ? "/A" : "/B";
          break;
        case Pattern::ManyToOne:
          p.prefix = i == 0 ? "/A" : "/B";
          break;
        }
      s.producers.push_back(p);
    }

  RngStream starts(runSeed, "app-start");
  for (std::uint32_t i = 0; i < nc; ++i)
    {
      ConsumerSpec c;
      c.node = ids[i];
      const bool firstHalf = i < (nc + 1) / 2;
      switch (config.pattern)
        {
        case Pattern::OneToOne:
        case Pattern::ManyToMany:
          // Under IP each consumer still talks to exactly one responder.
          c.prefix = s.producers[i].prefix;
          c.responder = s.producers[i].node;
          break;
        case Pattern::ManyToOne:
          c.prefix = firstHalf ? "/A" : "/B";
          c.responder = s.producers[firstHalf ? 0 : 1].node;
          break;
        }
      c.startTime = starts.Uniform(1.0, 3.0);
      s.consumers.push_back(c);
    }
  return s;
}

namespace {

std::string
Describe(const Packet& p)
{
  if (const auto* i = std::get_if<Interest>(&p))
    return std::string("interest:") + i->name.ToUri();
  if (const auto* d = std::get_if<Data>(&p))
    return std::string("data:") + d->name.ToUri();
  if (const auto* ip = std::get_if<IpDatagram>(&p))
    return std::string(ip->kind == IpDatagram::Kind::Request ? "ip-req:" : "ip-resp:") +
           std::to_string(ip->dst);
  return PacketKind(p);
}

std::uint32_t
SeqOf(const Name& name)
{
  if (name.Empty())
    return 0;
  try
    {
      return static_cast<std::uint32_t>(std::stoul(name.At(name.Size() - 1)));
    }
  catch (const std::exception&)
    {
      return 0;
    }
}

} // namespace

RunResult
RunSimulation(const SimulationSetup& setup, const RunOptions& options)
{
  const auto n = static_cast<std::uint32_t>(setup.positions.size());
  for (const auto& c : setup.consumers)
    if (c.node >= n)
      throw std::invalid_argument("consumer node out of range");
  for (const auto& p : setup.producers)
    if (p.node >= n)
      throw std::invalid_argument("producer node out of range");

  Simulator sim;
  MobilityModel mobility(setup.positions, setup.area, setup.seed);
  Medium medium(sim, mobility, setup.mac, setup.seed);
  const TraceSink* trace = options.trace ? &options.trace : nullptr;

  RunResult result;
  RunLog& log = result.log;
  log.consumers = static_cast<std::uint32_t>(setup.consumers.size());
  log.requestsPerConsumer = setup.requestsPerConsumer;

  std::unique_ptr<EventLogWriter> writer;
  if (options.eventLog != nullptr)
    {
      writer = std::make_unique<EventLogWriter>(*options.eventLog);
      medium.SetTxObserver([&](const Frame& f) {
        writer->Tx(f.txStart, f.sender, Describe(*f.packet), f.size);
      });
    }

  const bool ndn = setup.scheme != "aodv";
  std::vector<std::unique_ptr<NdnNode>> ndnNodes;
  std::vector<std::unique_ptr<AodvNode>> ipNodes;
  for (NodeId i = 0; i < n; ++i)
    {
      NetworkLayer* layer = nullptr;
      if (ndn)
        {
          NdnNodeConfig cfg;
          cfg.csCapacity = setup.csCapacity;
          ndnNodes.push_back(
            std::make_unique<NdnNode>(i, sim, medium, MakeStrategy(setup.scheme), cfg, setup.seed, trace));
          layer = ndnNodes.back().get();
        }
      else
        {
          ipNodes.push_back(std::make_unique<AodvNode>(i, sim, medium, setup.aodv, setup.seed, trace));
          layer = ipNodes.back().get();
        }
      medium.SetReceiveHandler(i, [layer](const Frame& f, bool addressed) { layer->OnFrame(f, addressed); });
    }

  for (const auto& p : setup.producers)
    {
      if (ndn)
        ndnNodes[p.node]->AddProducerPrefix(Name::Parse(p.prefix));
      else
        ipNodes[p.node]->SetResponder(true);
    }

  std::size_t done = 0;
  std::vector<std::unique_ptr<ConsumerApp>> apps;
  for (const auto& c : setup.consumers)
    {
      ConsumerParams params;
      params.requests = setup.requestsPerConsumer;
      params.rate = setup.requestRate;
      params.maxRtx = setup.rtxMax;
      params.startTime = c.startTime;

      ConsumerApp::SendFn send;
      if (ndn)
        {
          NdnNode* node = ndnNodes[c.node].get();
          const Name prefix = Name::Parse(c.prefix);
          send = [node, prefix](std::uint32_t seq, bool rtx) {
            node->ExpressInterest(prefix.Append(std::to_string(seq)), rtx);
          };
        }
      else
        {
          AodvNode* node = ipNodes[c.node].get();
          const NodeId responder = c.responder;
          send = [node, responder, &sim](std::uint32_t seq, bool) {
            IpDatagram d;
            d.kind = IpDatagram::Kind::Request;
            d.dst = responder;
            d.seq = seq;
            d.timestamp = sim.Now();
            node->SendFromApp(d);
          };
        }
      apps.push_back(std::make_unique<ConsumerApp>(sim, c.node, params, std::move(send)));
      ConsumerApp* app = apps.back().get();
      app->SetLog(&log);
      app->SetDoneCallback([&] {
        if (++done == setup.consumers.size())
          sim.Stop();
      });
      const std::string target = ndn ? c.prefix : std::to_string(c.responder);
      if (writer)
        {
          writer->Consumer(c.node, target, setup.requestsPerConsumer);
          EventLogWriter* w = writer.get();
          app->SetObservers(
            [w, &sim, node = c.node, target](std::uint32_t seq) { w->Request(sim.Now(), node, target, seq); },
            [w, &sim, node = c.node, target](std::uint32_t seq, std::uint32_t hops) {
              w->Retrieve(sim.Now(), node, target, seq, hops);
            });
        }

      if (ndn)
        ndnNodes[c.node]->SetAppSink([app](const Data& d, std::uint32_t hops) { app->OnResponse(SeqOf(d.name), hops); });
      else
        ipNodes[c.node]->SetAppSink([app](const IpDatagram& d) {
          if (d.kind == IpDatagram::Kind::Response)
            app->OnResponse(d.seq, d.echoedHops);
        });
    }

  for (auto& node : ndnNodes)
    node->Start();
  for (auto& node : ipNodes)
    node->Start();
  for (auto& app : apps)
    app->Start();

  std::function<void()> samplePositions;
  if (options.positionTrace != nullptr)
    {
      *options.positionTrace << "time,node,x,y\n";
      samplePositions = [&] {
        char line[128];
        for (NodeId i = 0; i < n; ++i)
          {
            const NodePosition& p = mobility.PositionAt(i, sim.Now());
            std::snprintf(line, sizeof line, "%.6f,%u,%.3f,%.3f\n", sim.Now(), i, p.x, p.y);
            *options.positionTrace << line;
          }
        sim.Schedule(options.positionPeriod, samplePositions);
      };
      sim.ScheduleAt(0.0, samplePositions);
    }

  const auto stats = sim.Run(setup.durationCap);
  result.endTime = stats.finalClock;
  result.events = stats.eventsProcessed;
  result.hitCap = done < setup.consumers.size();
  log.totalTx = medium.TxEvents();
  log.totalTxBytes = medium.TxBytes();
  result.collisions = medium.CollisionLosses();
  result.queueDrops = medium.QueueDrops();
  result.metrics = ComputeMetrics(log);
  return result;
}

} // namespace dafsim
