#pragma once

#include <cstddef>
#include <vector>

#include "coexsim/rng.hpp"

namespace coexsim {

// Fixed-capacity ring buffer with uniform sampling (with replacement).
template <typename T>
class ReplayBuffer {
public:
    explicit ReplayBuffer(std::size_t capacity) : cap_(capacity) {}

    void push(const T& item) {
        if (buf_.size() < cap_) {
            buf_.push_back(item);
        } else {
            buf_[next_] = item;
        }
        next_ = (next_ + 1) % cap_;
    }

    std::size_t size() const { return buf_.size(); }
    std::size_t capacity() const { return cap_; }
    const T& at(std::size_t i) const { return buf_[i]; }

    std::vector<T> sample(int batch, Rng& rng) const {
        std::vector<T> out;
        out.reserve(static_cast<std::size_t>(batch));
        for (int i = 0; i < batch; ++i) {
            const auto idx = static_cast<std::size_t>(
                rng.uniform_int(0, static_cast<std::int64_t>(buf_.size()) - 1));
            out.push_back(buf_[idx]);
        }
        return out;
    }

private:
    std::vector<T> buf_;
    std::size_t cap_;
    std::size_t next_ = 0;
};

} // namespace coexsim
