/* SPDX-License-Identifier: GPL-2.0-only */
#include "dafsim/simulator.hpp"

#include <cmath>
#include <string>

namespace dafsim {

EventId
Simulator::ScheduleAt(Time at, Action action)
{
  if (!(at >= m_now) || std::isnan(at))
    throw SchedulingError("event scheduled in the past: t=" + std::to_string(at) +
                          " now=" + std::to_string(m_now));
  const std::uint64_t seq = m_nextSeq++;
  m_queue.push(Entry{at, seq});
  m_actions.emplace(seq, std::move(action));
  return EventId{seq};
}

bool
Simulator::Cancel(EventId id)
{
  return m_actions.erase(id.seq) != 0;
}

Simulator::RunResult
Simulator::Run(Time until)
{
  std::uint64_t processed = 0;
  m_stopRequested = false;
  while (!m_queue.empty() && !m_stopRequested)
    {
      const Entry head = m_queue.top();
      if (head.at > until)
        {
          m_now = until;
          break;
        }
      m_queue.pop();
      auto it = m_actions.find(head.seq);
      if (it == m_actions.end())
        continue; // cancelled
      Action action = std::move(it->second);
      m_actions.erase(it);
      m_now = head.at;
      action();
      ++processed;
    }
  return RunResult{m_now, processed};
}

} // namespace dafsim
