#include "coexsim/dqn.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <memory>
#include <stdexcept>

namespace coexsim {

static_assert(std::endian::native == std::endian::little,
              "checkpoint format is little-endian");

int cw_from_action(int a) {
    if (a < 0 || a >= kActionCount) throw std::logic_error("action out of range");
    return (1 << (a + 4)) - 1;
}

double reward(double alpha, double d_l_pc1, double jfi) {
    return alpha * (1.0 - d_l_pc1) + (1.0 - alpha) * jfi;
}

double epsilon(std::uint64_t iter, std::uint64_t total_iters) {
    constexpr double hi = 0.9;
    constexpr double lo = 0.001;
    const std::uint64_t decay_end = std::max<std::uint64_t>(1, total_iters / 5);
    if (iter >= decay_end) return lo;
    const double frac = static_cast<double>(iter) / static_cast<double>(decay_end);
    return hi + (lo - hi) * frac;
}

double td_target(double r, double max_q_next, double gamma, bool terminal) {
    if (terminal) return r;
    return r + gamma * max_q_next;
}

DqnState build_state(const PeriodView& view, int action_ap, int action_gnb) {
    DqnState s;
    s.e_w = view.e_w;
    s.e_l_pc3 = view.e_l_pc3;
    s.d_l_pc1 = view.d_l_pc1;
    s.cw_w_norm = static_cast<double>(action_ap) / (kActionCount - 1);
    s.cw_l_norm = static_cast<double>(action_gnb) / (kActionCount - 1);
    return s;
}

DqnAgent::DqnAgent(std::uint64_t seed, std::uint64_t stream, DqnConfig cfg)
    : cfg_(std::move(cfg)), rng_(seed, stream), replay_(cfg_.replay_capacity) {
    std::vector<int> dims;
    dims.push_back(5);
    for (int h : cfg_.hidden) dims.push_back(h);
    dims.push_back(kActionCount);
    net_ = Mlp::make(dims, rng_);
    target_ = net_;
    adam_ = AdamState::like(net_.tensors);
    adam_.lr = cfg_.lr;
}

int DqnAgent::act(const DqnState& s, double eps) {
    if (eps > 0.0 && rng_.uniform01() < eps)
        return static_cast<int>(rng_.uniform_int(0, kActionCount - 1));
    const auto flat = s.flat();
    const auto q = net_.forward(flat);
    int best = 0;
    for (int a = 1; a < kActionCount; ++a)
        if (q[a] > q[best]) best = a;
    return best;
}

void DqnAgent::remember(const DqnState& s, int action, double r, const DqnState& s2) {
    replay_.push({s, action, r, s2});
}

bool DqnAgent::train_step() {
    if (replay_.size() < static_cast<std::size_t>(cfg_.batch)) return false;
    const auto batch = replay_.sample(cfg_.batch, rng_);
    const Mlp& bootstrap = cfg_.use_target_network ? target_ : net_;

    std::vector<TrainSample> samples;
    samples.reserve(batch.size());
    for (const auto& e : batch) {
        const auto flat2 = e.s2.flat();
        const auto q2 = bootstrap.forward(flat2);
        const double maxq = *std::max_element(q2.begin(), q2.end());
        const auto flat = e.s.flat();
        samples.push_back({{flat.begin(), flat.end()}, e.action,
                           td_target(e.reward, maxq, cfg_.gamma)});
    }
    const auto grads = backward(net_, samples);
    adam_step(net_.tensors, grads, adam_);
    ++updates_;
    if (cfg_.use_target_network && updates_ % cfg_.target_sync_every == 0)
        target_ = net_;
    return true;
}

DqnHarness::DqnHarness(std::uint64_t seed, double alpha, std::uint64_t total_iters,
                       bool training, DqnConfig cfg)
    : alpha_(alpha),
      total_iters_(total_iters),
      training_(training),
      gnb_(seed, 1, cfg),
      ap_(seed, 2, cfg) {}

PeriodDecision DqnHarness::on_period(const PeriodView& view, SimTime) {
    const DqnState s = build_state(view, action_ap_, action_gnb_);
    const double r = reward(alpha_, view.d_l_pc1, view.jfi);
    if (have_prev_) {
        gnb_.remember(prev_state_, action_gnb_, r, s);
        ap_.remember(prev_state_, action_ap_, r, s);
        if (training_) {
            gnb_.train_step();
            ap_.train_step();
        }
    }

    const double eps = training_ ? epsilon(iter_, total_iters_) : 0.0;
    const int a_gnb = gnb_.act(s, eps);
    const int a_ap = ap_.act(s, eps);
    curve_.push_back({iter_, eps, r, a_gnb, a_ap, view});

    prev_state_ = s;
    action_gnb_ = a_gnb;
    action_ap_ = a_ap;
    have_prev_ = true;
    ++iter_;
    return {cw_from_action(a_gnb), cw_from_action(a_ap)};
}

void DqnHarness::reset_episode() {
    have_prev_ = false;
    prev_state_ = DqnState{};
    action_gnb_ = 0;
    action_ap_ = 0;
    iter_ = 0;
    curve_.clear();
}

namespace {

constexpr std::uint32_t kMagic = 0x43585131; // "CXQ1" little-endian on disk
constexpr std::uint32_t kVersion = 1;

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

template <typename T>
void write_pod(std::FILE* f, const T& v) {
    if (std::fwrite(&v, sizeof(T), 1, f) != 1)
        throw std::runtime_error("checkpoint: write failed");
}

template <typename T>
T read_pod(std::FILE* f) {
    T v{};
    if (std::fread(&v, sizeof(T), 1, f) != 1)
        throw std::runtime_error("checkpoint: truncated file");
    return v;
}

void write_vec(std::FILE* f, const std::vector<double>& v) {
    write_pod<std::uint64_t>(f, v.size());
    if (!v.empty() && std::fwrite(v.data(), sizeof(double), v.size(), f) != v.size())
        throw std::runtime_error("checkpoint: write failed");
}

void read_vec_into(std::FILE* f, std::vector<double>& v) {
    const auto n = read_pod<std::uint64_t>(f);
    if (n != v.size()) throw std::runtime_error("checkpoint: tensor shape mismatch");
    if (!v.empty() && std::fread(v.data(), sizeof(double), v.size(), f) != v.size())
        throw std::runtime_error("checkpoint: truncated file");
}

void write_agent(std::FILE* f, const DqnAgent& agent, std::uint32_t role) {
    write_pod(f, role);
    const auto& net = agent.net();
    write_pod<std::uint32_t>(f, static_cast<std::uint32_t>(net.dims.size()));
    for (int d : net.dims) write_pod<std::uint32_t>(f, static_cast<std::uint32_t>(d));
    for (const auto& t : net.tensors) write_vec(f, t);
    const auto& adam = agent.adam();
    write_pod<std::uint64_t>(f, adam.t);
    for (const auto& t : adam.m) write_vec(f, t);
    for (const auto& t : adam.v) write_vec(f, t);
    write_pod<std::uint64_t>(f, agent.updates());
}

void read_agent(std::FILE* f, DqnAgent& agent, std::uint32_t expect_role) {
    if (read_pod<std::uint32_t>(f) != expect_role)
        throw std::runtime_error("checkpoint: unexpected agent role");
    auto& net = agent.net();
    const auto ndims = read_pod<std::uint32_t>(f);
    if (ndims != net.dims.size()) throw std::runtime_error("checkpoint: layer count mismatch");
    for (int d : net.dims)
        if (read_pod<std::uint32_t>(f) != static_cast<std::uint32_t>(d))
            throw std::runtime_error("checkpoint: layer dimension mismatch");
    for (auto& t : net.tensors) read_vec_into(f, t);
    auto& adam = agent.adam();
    adam.t = read_pod<std::uint64_t>(f);
    for (auto& t : adam.m) read_vec_into(f, t);
    for (auto& t : adam.v) read_vec_into(f, t);
    agent.mark_restored(read_pod<std::uint64_t>(f));
}

} // namespace

void save_checkpoint(const std::string& path, const DqnHarness& harness) {
    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f) throw std::runtime_error("checkpoint: cannot open " + path + " for writing");
    write_pod(f.get(), kMagic);
    write_pod(f.get(), kVersion);
    write_pod(f.get(), harness.alpha());
    write_pod<std::uint64_t>(f.get(), harness.total_iters());
    write_pod<std::uint32_t>(f.get(), 2);
    write_agent(f.get(), harness.gnb(), 0);
    write_agent(f.get(), harness.ap(), 1);
}

void load_checkpoint(const std::string& path, DqnHarness& harness) {
    FilePtr f(std::fopen(path.c_str(), "rb"));
    if (!f) throw std::runtime_error("checkpoint: cannot open " + path);
    if (read_pod<std::uint32_t>(f.get()) != kMagic)
        throw std::runtime_error("checkpoint: bad magic in " + path);
    if (read_pod<std::uint32_t>(f.get()) != kVersion)
        throw std::runtime_error("checkpoint: unsupported version in " + path);
    read_pod<double>(f.get());        // stored alpha, informational
    read_pod<std::uint64_t>(f.get()); // stored training iterations
    if (read_pod<std::uint32_t>(f.get()) != 2)
        throw std::runtime_error("checkpoint: unexpected agent count");
    read_agent(f.get(), harness.gnb(), 0);
    read_agent(f.get(), harness.ap(), 1);
}

} // namespace coexsim
