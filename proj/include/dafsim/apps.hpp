/* SPDX-License-Identifier: GPL-2.0-only */
#pragma once

#include "dafsim/metrics.hpp"
#include "dafsim/simulator.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace dafsim {

struct ConsumerParams
{
  std::uint32_t requests = 500;
  double rate = 5.0;
  Time timeout = 2.0;
  std::uint32_t maxRtx = 0;
  Time startTime = 1.0;
};

/**
 * Constant-rate request/response client. Issues seqs 1..requests at
 * 1/rate spacing; each unanswered seq is retried up to maxRtx times
 * and then abandoned. Latency is measured from the first send.
 *
 * The transport is injected: NDN sends an Interest, IP a datagram.
 */
class ConsumerApp
{
public:
  /// @p retransmission is set for every send after the first of a seq.
  using SendFn = std::function<void(std::uint32_t seq, bool retransmission)>;
  using DoneFn = std::function<void()>;

  ConsumerApp(Simulator& sim, NodeId node, ConsumerParams params, SendFn send);

  void SetDoneCallback(DoneFn done) { m_done = std::move(done); }
  void SetLog(RunLog* log) { m_log = log; }
  /// Called on the first send of each seq and on each first arrival.
  void SetObservers(std::function<void(std::uint32_t seq)> onRequest,
                    std::function<void(std::uint32_t seq, std::uint32_t hops)> onRetrieve)
  {
    m_onRequest = std::move(onRequest);
    m_onRetrieve = std::move(onRetrieve);
  }

  void Start();
  void OnResponse(std::uint32_t seq, std::uint32_t hops);

  NodeId Node() const { return m_node; }
  std::uint32_t Issued() const { return m_nextSeq - 1; }
  std::size_t Received() const { return m_received; }
  std::size_t Outstanding() const { return m_outstanding.size(); }
  std::uint64_t Sends() const { return m_sends; }
  std::uint64_t Anomalies() const { return m_anomalies; }
  bool Done() const { return m_finished; }

private:
  struct Pending
  {
    Time firstSend = 0.0;
    std::uint32_t rtx = 0;
    EventId timer;
  };

  void Tick();
  void OnTimeout(std::uint32_t seq);
  void CheckDone();

  Simulator& m_sim;
  NodeId m_node;
  ConsumerParams m_params;
  SendFn m_send;
  DoneFn m_done;
  RunLog* m_log = nullptr;
  std::function<void(std::uint32_t)> m_onRequest;
  std::function<void(std::uint32_t, std::uint32_t)> m_onRetrieve;

  std::uint32_t m_nextSeq = 1;
  std::map<std::uint32_t, Pending> m_outstanding;
  std::size_t m_received = 0;
  std::uint64_t m_sends = 0;
  std::uint64_t m_anomalies = 0;
  bool m_finished = false;
};

} // namespace dafsim
