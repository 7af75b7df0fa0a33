#pragma once

#include <cstdint>
#include <vector>

#include "coexsim/node.hpp"
#include "coexsim/rng.hpp"
#include "coexsim/sim_time.hpp"

namespace coexsim {

// Uniform integer in [0, cw]; cw = 0 degenerates to 0.
int draw_backoff(Rng& rng, int cw);

// Smallest instant >= t of the form offset + k * 500 us.
SimTime next_lssb(SimTime t, SimTime offset = 0);

// Backoff value for a DB node after a transmission: the fixed round-robin
// value after a success, a doubled-CW uniform draw after a collision.
int db_next_backoff(bool success, int db_fixed, int cw_current, Rng& rng);

// Transmit/mute decisions of one contender across the nominal CR slots
// 1..n_sl. Bit (j-1) set = transmits a reservation in slot j.
struct CrPattern {
    std::uint32_t tx_mask = 0;
    bool transmits(int slot) const { return (tx_mask >> (slot - 1)) & 1u; }
};

// Draws a pattern for one attempt. fixed_mute_slot is the per-node slot a
// CR_LBT contender always mutes in; the other variants ignore it.
CrPattern make_cr_pattern(const ProtocolParams& params, Rng& rng, int fixed_mute_slot);

struct CrResult {
    std::vector<int> survivors;       // contender indices, ascending
    std::vector<int> deferred;        // contender indices, ascending
    std::vector<int> defer_slot;      // nominal slot where each deferred one gave up
};

// Runs the slot-by-slot tournament over the last `fitting_slots` nominal
// slots (the window before the boundary truncates from the front). A
// contender that mutes in a slot where some still-live contender transmits
// defers at the end of that slot; everyone left transmits at the boundary.
CrResult cr_contention(const std::vector<CrPattern>& patterns, int n_sl, int fitting_slots);

} // namespace coexsim
