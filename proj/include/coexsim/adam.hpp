#pragma once

#include <cstdint>
#include <vector>

namespace coexsim {

struct AdamState {
    std::vector<std::vector<double>> m;
    std::vector<std::vector<double>> v;
    std::uint64_t t = 0;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    double lr = 1e-3;

    static AdamState like(const std::vector<std::vector<double>>& params);
};

// Standard bias-corrected Adam update, in place.
void adam_step(std::vector<std::vector<double>>& params,
               const std::vector<std::vector<double>>& grads, AdamState& state);

} // namespace coexsim
