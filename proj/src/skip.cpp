#include "coexsim/skip.hpp"

#include <algorithm>
#include <stdexcept>

namespace coexsim {

SkipDirective apply_skip(SkipLevel level) {
    const int l = static_cast<int>(level);
    if (l < 0 || l > kMaxSkipLevel) throw std::invalid_argument("skip level out of range");
    SkipDirective d;
    if (l == 1) {
        d.mode = SkipDirective::Mode::DeferToNextLssb;
    } else if (l >= 2) {
        d.mode = SkipDirective::Mode::SkipOpportunities;
        d.count = l - 1;
    }
    return d;
}

SkipLevel SkipController::update(std::optional<double> measured_delay_us) {
    int l = static_cast<int>(level_);
    if (!measured_delay_us || *measured_delay_us > target_) {
        l = std::min(l + 1, kMaxSkipLevel);
    } else if (*measured_delay_us < factor_ * target_) {
        l = std::max(l - 1, 0);
    }
    level_ = static_cast<SkipLevel>(l);
    return level_;
}

} // namespace coexsim
