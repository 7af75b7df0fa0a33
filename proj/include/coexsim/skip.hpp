#pragma once

#include <optional>

#include "coexsim/sim_time.hpp"

namespace coexsim {

// 0 = no skipping, 1 = defer the next attempt to the next slot boundary,
// 2..4 = forfeit the next 1..3 transmission opportunities after a success.
enum class SkipLevel : int {
    NoSkip = 0,
    SkipNextSlot = 1,
    SkipNextTx = 2,
    SkipNextTx2 = 3,
    SkipNextTx3 = 4,
};

inline constexpr int kMaxSkipLevel = 4;

struct SkipDirective {
    enum class Mode { None, DeferToNextLssb, SkipOpportunities };
    Mode mode = Mode::None;
    int count = 0; // forfeited wins for SkipOpportunities
};

// Directive handed to a PC3 node right after a successful transmission.
SkipDirective apply_skip(SkipLevel level);

// Frame-by-frame escalation toward the URLLC delay target. Escalates while
// the measured PC1 delay exceeds the target (a starved PC1, reported as
// no-sample, counts as above target); de-escalates with hysteresis once the
// delay falls below deescalate_factor * target.
class SkipController {
public:
    SkipController(double target_delay_us, double deescalate_factor = 0.5)
        : target_(target_delay_us), factor_(deescalate_factor) {}

    SkipLevel update(std::optional<double> measured_delay_us);

    SkipLevel level() const { return level_; }
    double target() const { return target_; }

private:
    double target_;
    double factor_;
    SkipLevel level_ = SkipLevel::NoSkip;
};

struct SkipSettings {
    enum class Mode { Off, Fixed, Dynamic };
    Mode mode = Mode::Off;
    int fixed_level = 0;
    double target_delay_us = 500.0;
    double deescalate_factor = 0.5;
};

} // namespace coexsim
