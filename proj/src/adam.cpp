#include "coexsim/adam.hpp"

#include <cassert>
#include <cmath>

namespace coexsim {

AdamState AdamState::like(const std::vector<std::vector<double>>& params) {
    AdamState st;
    for (const auto& p : params) {
        st.m.emplace_back(p.size(), 0.0);
        st.v.emplace_back(p.size(), 0.0);
    }
    return st;
}

void adam_step(std::vector<std::vector<double>>& params,
               const std::vector<std::vector<double>>& grads, AdamState& state) {
    assert(params.size() == grads.size() && params.size() == state.m.size());
    state.t += 1;
    const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.t));
    const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.t));
    for (std::size_t k = 0; k < params.size(); ++k) {
        auto& p = params[k];
        const auto& g = grads[k];
        auto& m = state.m[k];
        auto& v = state.v[k];
        assert(p.size() == g.size());
        for (std::size_t i = 0; i < p.size(); ++i) {
            m[i] = state.beta1 * m[i] + (1.0 - state.beta1) * g[i];
            v[i] = state.beta2 * v[i] + (1.0 - state.beta2) * g[i] * g[i];
            const double mhat = m[i] / bc1;
            const double vhat = v[i] / bc2;
            p[i] -= state.lr * mhat / (std::sqrt(vhat) + state.epsilon);
        }
    }
}

} // namespace coexsim
