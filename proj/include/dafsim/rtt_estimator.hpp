/* SPDX-License-Identifier: GPL-2.0-only */
#pragma once

#include "dafsim/simulator.hpp"

#include <cstdint>
#include <stdexcept>

namespace dafsim {

/// Smoothed RTT and RTT variation of one FIB next-hop.
struct RttEstimate
{
  Time srtt = 0.0;
  Time rttv = 0.0;
  std::uint32_t samples = 0;

  bool HasSample() const { return samples != 0; }
};

constexpr double kSrttGain = 7.0 / 8.0;  // weight kept on the old SRTT
constexpr double kRttvGain = 3.0 / 4.0;  // weight kept on the old RTTV
constexpr double kTimeoutVarianceFactor = 4.0;
/// Next-hop lifetime used before any RTT sample exists.
constexpr Time kInitialNextHopTimeout = 1.0;

/**
 * Folds one RTT sample into @p est. The first sample sets srtt = rtt and
 * rttv = rtt / 2. Later samples update rttv against the old srtt, then srtt.
 * Throws std::invalid_argument for a nonpositive sample.
 */
inline RttEstimate
UpdateRttEstimate(RttEstimate est, Time rtt)
{
  if (!(rtt > 0.0))
    throw std::invalid_argument("RTT sample must be positive");
  if (!est.HasSample())
    {
      est.srtt = rtt;
      est.rttv = rtt / 2.0;
    }
  else
    {
      const Time deviation = rtt > est.srtt ? rtt - est.srtt : est.srtt - rtt;
      est.rttv = kRttvGain * est.rttv + (1.0 - kRttvGain) * deviation;
      est.srtt = kSrttGain * est.srtt + (1.0 - kSrttGain) * rtt;
    }
  ++est.samples;
  return est;
}

/// Lifetime of a next-hop after a unicast Interest: srtt + 4 * rttv.
inline Time
NextHopTimeout(const RttEstimate& est)
{
  if (!est.HasSample())
    return kInitialNextHopTimeout;
  return est.srtt + kTimeoutVarianceFactor * est.rttv;
}

} // namespace dafsim
