#include "coexsim/mlp.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace coexsim {

Mlp Mlp::make(std::vector<int> dims, Rng& rng) {
    if (dims.size() < 2) throw std::invalid_argument("Mlp: need at least two dims");
    Mlp net;
    net.dims = std::move(dims);
    for (int l = 0; l + 1 < static_cast<int>(net.dims.size()); ++l) {
        const int fan_in = net.dims[l];
        const int fan_out = net.dims[l + 1];
        const double limit = std::sqrt(6.0 / static_cast<double>(fan_in));
        std::vector<double> w(static_cast<std::size_t>(fan_out) * fan_in);
        for (auto& x : w) x = (rng.uniform01() * 2.0 - 1.0) * limit;
        net.tensors.push_back(std::move(w));
        net.tensors.emplace_back(fan_out, 0.0);
    }
    return net;
}

namespace {

// forward pass keeping post-activation values of every layer
std::vector<std::vector<double>> forward_full(const Mlp& net, std::span<const double> input) {
    assert(static_cast<int>(input.size()) == net.dims.front());
    std::vector<std::vector<double>> acts;
    acts.emplace_back(input.begin(), input.end());
    for (int l = 0; l < net.layers(); ++l) {
        const auto& w = net.tensors[2 * l];
        const auto& b = net.tensors[2 * l + 1];
        const int in = net.dims[l];
        const int out = net.dims[l + 1];
        const auto& x = acts.back();
        std::vector<double> y(out);
        for (int o = 0; o < out; ++o) {
            double acc = b[o];
            const double* row = w.data() + static_cast<std::size_t>(o) * in;
            for (int i = 0; i < in; ++i) acc += row[i] * x[i];
            y[o] = acc;
        }
        if (l + 1 < net.layers()) {
            for (auto& v : y) v = v > 0.0 ? v : 0.0;
        }
        acts.push_back(std::move(y));
    }
    return acts;
}

} // namespace

std::vector<double> Mlp::forward(std::span<const double> input) const {
    return forward_full(*this, input).back();
}

double td_loss(const Mlp& net, std::span<const TrainSample> batch) {
    assert(!batch.empty());
    double loss = 0.0;
    for (const auto& s : batch) {
        const auto q = net.forward(s.state);
        const double err = q[s.action] - s.target;
        loss += err * err;
    }
    return loss / static_cast<double>(batch.size());
}

std::vector<std::vector<double>> backward(const Mlp& net, std::span<const TrainSample> batch) {
    assert(!batch.empty());
    std::vector<std::vector<double>> grads;
    grads.reserve(net.tensors.size());
    for (const auto& t : net.tensors) grads.emplace_back(t.size(), 0.0);

    const double scale = 2.0 / static_cast<double>(batch.size());
    for (const auto& s : batch) {
        const auto acts = forward_full(net, s.state);
        const auto& q = acts.back();

        std::vector<double> delta(q.size(), 0.0);
        delta[s.action] = scale * (q[s.action] - s.target);

        for (int l = net.layers() - 1; l >= 0; --l) {
            const auto& w = net.tensors[2 * l];
            auto& gw = grads[2 * l];
            auto& gb = grads[2 * l + 1];
            const int in = net.dims[l];
            const int out = net.dims[l + 1];
            const auto& x = acts[l];

            for (int o = 0; o < out; ++o) {
                const double d = delta[o];
                if (d == 0.0) continue;
                gb[o] += d;
                double* grow = gw.data() + static_cast<std::size_t>(o) * in;
                for (int i = 0; i < in; ++i) grow[i] += d * x[i];
            }
            if (l == 0) break;
            std::vector<double> prev(in, 0.0);
            for (int o = 0; o < out; ++o) {
                const double d = delta[o];
                if (d == 0.0) continue;
                const double* row = w.data() + static_cast<std::size_t>(o) * in;
                for (int i = 0; i < in; ++i) prev[i] += d * row[i];
            }
            // rectifier derivative: the stored activation is already max(0, z)
            for (int i = 0; i < in; ++i)
                if (x[i] <= 0.0) prev[i] = 0.0;
            delta = std::move(prev);
        }
    }
    return grads;
}

} // namespace coexsim
