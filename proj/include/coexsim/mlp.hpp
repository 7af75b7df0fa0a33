#pragma once

#include <span>
#include <vector>

#include "coexsim/rng.hpp"

namespace coexsim {

// Fully connected net with rectifier hidden layers and an identity output.
// Parameters live in `tensors` as [W1, b1, W2, b2, ...], weights row-major
// [out][in]; the flat layout is shared with the Adam state and checkpoints.
struct Mlp {
    std::vector<int> dims; // e.g. {5, 128, 64, 7}
    std::vector<std::vector<double>> tensors;

    static Mlp make(std::vector<int> dims, Rng& rng);

    int layers() const { return static_cast<int>(dims.size()) - 1; }
    std::vector<double> forward(std::span<const double> input) const;
};

struct TrainSample {
    std::vector<double> state;
    int action = 0;
    double target = 0.0;
};

// Mean squared TD error over the batch; only the taken action's output
// enters the loss.
double td_loss(const Mlp& net, std::span<const TrainSample> batch);

// Gradient of td_loss w.r.t. every parameter, same shape as net.tensors.
std::vector<std::vector<double>> backward(const Mlp& net, std::span<const TrainSample> batch);

} // namespace coexsim
