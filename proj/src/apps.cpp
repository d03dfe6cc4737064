/* SPDX-License-Identifier: GPL-2.0-only */
#include "dafsim/apps.hpp"

namespace dafsim {

ConsumerApp::ConsumerApp(Simulator& sim, NodeId node, ConsumerParams params, SendFn send)
  : m_sim(sim),
    m_node(node),
    m_params(params),
    m_send(std::move(send))
{
}

void
ConsumerApp::Start()
{
  if (m_params.requests == 0)
    {
      CheckDone();
      return;
    }
  m_sim.ScheduleAt(m_params.startTime, [this] { Tick(); });
}

void
ConsumerApp::Tick()
{
  const std::uint32_t seq = m_nextSeq++;
  Pending& p = m_outstanding[seq];
  p.firstSend = m_sim.Now();
  p.timer = m_sim.Schedule(m_params.timeout, [this, seq] { OnTimeout(seq); });
  if (m_onRequest)
    m_onRequest(seq);
  ++m_sends;
  m_send(seq, false);
  if (m_nextSeq <= m_params.requests)
    m_sim.Schedule(1.0 / m_params.rate, [this] { Tick(); });
}

void
ConsumerApp::OnTimeout(std::uint32_t seq)
{
  auto it = m_outstanding.find(seq);
  if (it == m_outstanding.end())
    return;
  Pending& p = it->second;
  if (p.rtx < m_params.maxRtx)
    {
      ++p.rtx;
      p.timer = m_sim.Schedule(m_params.timeout, [this, seq] { OnTimeout(seq); });
      ++m_sends;
      m_send(seq, true);
      return;
    }
  // Abandoned: a late answer is not counted.
  m_outstanding.erase(it);
  CheckDone();
}

void
ConsumerApp::OnResponse(std::uint32_t seq, std::uint32_t hops)
{
  if (seq == 0 || seq >= m_nextSeq)
    {
      ++m_anomalies;
      if (m_log != nullptr)
        ++m_log->anomalies;
      return;
    }
  auto it = m_outstanding.find(seq);
  if (it == m_outstanding.end())
    return; // duplicate or after abandon
  m_sim.Cancel(it->second.timer);
  if (m_log != nullptr)
    m_log->retrievals.push_back(Retrieval{m_node, seq, it->second.firstSend, m_sim.Now(), hops});
  if (m_onRetrieve)
    m_onRetrieve(seq, hops);
  m_outstanding.erase(it);
  ++m_received;
  CheckDone();
}

void
ConsumerApp::CheckDone()
{
  if (m_finished || m_nextSeq <= m_params.requests || !m_outstanding.empty())
    return;
  m_finished = true;
  if (m_done)
    m_done();
}

} // namespace dafsim
