/* SPDX-License-Identifier: GPL-2.0-only */
#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace dafsim {

/// Virtual time in seconds.
using Time = double;

/// Opaque handle returned by Simulator::Schedule; permits cancellation.
struct EventId
{
  std::uint64_t seq = 0;

  bool IsValid() const { return seq != 0; }
  friend bool operator==(EventId, EventId) = default;
};

class SchedulingError : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

/**
 * Single-threaded discrete-event engine.
 *
 * Events fire in nondecreasing time order; events scheduled for the same
 * instant fire in insertion order. Cancelled events are dropped lazily
 * when they reach the head of the queue.
 */
class Simulator
{
public:
  using Action = std::function<void()>;

  Time Now() const { return m_now; }

  /// Schedules @p action at absolute time @p at. Throws if @p at is in the past.
  EventId ScheduleAt(Time at, Action action);

  EventId Schedule(Time delay, Action action) { return ScheduleAt(m_now + delay, std::move(action)); }

  /// Returns true if the event was pending and is now removed.
  bool Cancel(EventId id);

  bool IsPending(EventId id) const { return m_actions.count(id.seq) != 0; }

  struct RunResult
  {
    Time finalClock;
    std::uint64_t eventsProcessed;
  };

  /**
   * Processes events with fire time <= @p until. Returns early when the
   * queue drains or Stop() is called from inside an event.
   */
  RunResult Run(Time until = std::numeric_limits<Time>::infinity());

  /// Requests that Run() return after the current event completes.
  void Stop() { m_stopRequested = true; }

  std::size_t PendingCount() const { return m_actions.size(); }

private:
  struct Entry
  {
    Time at;
    std::uint64_t seq;
  };
  struct Later
  {
    bool operator()(const Entry& a, const Entry& b) const
    {
      if (a.at != b.at)
        return a.at > b.at;
      return a.seq > b.seq;
    }
  };

  Time m_now = 0.0;
  std::uint64_t m_nextSeq = 1;
  bool m_stopRequested = false;
  std::priority_queue<Entry, std::vector<Entry>, Later> m_queue;
  std::unordered_map<std::uint64_t, Action> m_actions;
};

} // namespace dafsim
