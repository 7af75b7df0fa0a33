#pragma once

#include <cstdint>

namespace coexsim {

// Simulation clock in integer microseconds. Every duration in the model
// (9 us slot, 16 us SIFS, 500 us sync slot, 2 ms transmission, 10 ms frame)
// is an exact multiple of 1 us, so the engine never touches floating-point
// time and two runs with the same seed replay the same integer trace.
using SimTime = std::int64_t;

inline constexpr SimTime kInvalidTime = -1;

inline constexpr SimTime kSlotUs = 9;
inline constexpr SimTime kSifsUs = 16;
// Best Effort AIFS = SIFS + 3 slots; both networks contend with it.
inline constexpr SimTime kAifsUs = kSifsUs + 3 * kSlotUs;
inline constexpr SimTime kSyncSlotUs = 500;
inline constexpr SimTime kTxDurationUs = 2000;
inline constexpr SimTime kFrameUs = 10'000;
inline constexpr SimTime kAgentPeriodUs = 10'000;
inline constexpr SimTime kDefaultSimTimeUs = 10'000'000;

} // namespace coexsim
