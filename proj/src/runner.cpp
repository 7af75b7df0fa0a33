#include "coexsim/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace coexsim {

namespace {

int worker_count(const ScenarioConfig& cfg) {
    if (cfg.parallel > 0) return cfg.parallel;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Independent single-threaded runs distributed over a small pool. Each job
// writes only its own result slot; the first failure wins and is rethrown.
void parallel_run(std::size_t count, int workers,
                  const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    workers = std::min<std::size_t>(workers, count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

std::string fmt_delay(const std::optional<double>& v) {
    if (!v) return "nan";
    return fmt("%.3f", *v);
}

void append_snapshot_rows(std::vector<ResultRow>& rows, const ResultRow& base,
                          const RunResult& result, const ScenarioConfig& cfg) {
    if (!cfg.emit_windows) {
        ResultRow row = base;
        row.window_start_us = 0;
        row.snap = compute_snapshot(result.history, result.node_configs,
                                    {0, result.horizon}, cfg.jfi_per_node);
        rows.push_back(std::move(row));
        return;
    }
    for (SimTime t0 = 0; t0 < result.horizon; t0 += cfg.window_us) {
        ResultRow row = base;
        row.window_start_us = t0;
        row.snap = compute_snapshot(result.history, result.node_configs,
                                    {t0, std::min(t0 + cfg.window_us, result.horizon)},
                                    cfg.jfi_per_node);
        rows.push_back(std::move(row));
    }
}

void maybe_write_trace(const ScenarioConfig& cfg, const std::string& tag, bool single,
                       const RunResult& result) {
    if (cfg.trace_path.empty()) return;
    const std::string path = single ? cfg.trace_path : cfg.trace_path + "." + tag;
    write_file(path, format_trace(result.history));
}

std::string run_tag(const std::string& protocol, int n, std::uint64_t seed) {
    return protocol + "_n" + std::to_string(n) + "_s" + std::to_string(seed);
}

} // namespace

RunResult run_single(const std::vector<NodeConfig>& nodes, std::uint64_t seed,
                     SimTime horizon, SkipSettings skip, InteractionController* agent) {
    Simulation sim(nodes, seed, horizon, skip, agent);
    return sim.run();
}

std::vector<ResultRow> compare_rows(const ScenarioConfig& cfg) {
    struct Job {
        Protocol protocol;
        int n;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (Protocol p : cfg.roster)
        for (int n : cfg.sweep_n)
            for (int rep = 0; rep < cfg.runs; ++rep)
                jobs.push_back({p, n, cfg.base_seed + static_cast<std::uint64_t>(rep)});

    std::vector<std::vector<ResultRow>> out(jobs.size());
    parallel_run(jobs.size(), worker_count(cfg), [&](std::size_t i) {
        const Job& job = jobs[i];
        const std::string tag = run_tag(to_string(job.protocol), job.n, job.seed);
        try {
            const auto nodes = build_compare_nodes(cfg, job.protocol, job.n);
            const RunResult result = run_single(nodes, job.seed, cfg.sim_time_us);
            maybe_write_trace(cfg, tag, jobs.size() == 1, result);
            ResultRow base;
            base.protocol = to_string(job.protocol);
            base.n_nrus = job.n;
            base.n_wifi = job.n;
            base.n_pc3 = job.n;
            base.alpha = 0.0;
            base.seed = job.seed;
            append_snapshot_rows(out[i], base, result, cfg);
        } catch (const std::exception& e) {
            throw std::runtime_error("run " + tag + ": " + e.what());
        }
    });

    std::vector<ResultRow> rows;
    for (auto& part : out)
        for (auto& row : part) rows.push_back(std::move(row));
    std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
        return std::tie(a.protocol, a.n_nrus, a.seed, a.window_start_us) <
               std::tie(b.protocol, b.n_nrus, b.seed, b.window_start_us);
    });
    return rows;
}

std::vector<ResultRow> skip_rows(const ScenarioConfig& cfg) {
    struct Job {
        std::string tag;
        SkipSettings skip;
        int k;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (int level : cfg.skip_levels) {
        SkipSettings s;
        s.mode = SkipSettings::Mode::Fixed;
        s.fixed_level = level;
        for (int k : cfg.k_sweep)
            for (int rep = 0; rep < cfg.runs; ++rep)
                jobs.push_back({"fixed" + std::to_string(level), s, k,
                                cfg.base_seed + static_cast<std::uint64_t>(rep)});
    }
    for (double target : cfg.skip_targets_us) {
        SkipSettings s;
        s.mode = SkipSettings::Mode::Dynamic;
        s.target_delay_us = target;
        s.deescalate_factor = cfg.skip.deescalate_factor;
        for (int k : cfg.k_sweep)
            for (int rep = 0; rep < cfg.runs; ++rep)
                jobs.push_back({"dyn" + std::to_string(static_cast<long>(target)), s, k,
                                cfg.base_seed + static_cast<std::uint64_t>(rep)});
    }

    std::vector<std::vector<ResultRow>> out(jobs.size());
    parallel_run(jobs.size(), worker_count(cfg), [&](std::size_t i) {
        const Job& job = jobs[i];
        const std::string tag = run_tag(job.tag, job.k, job.seed);
        try {
            const auto nodes = build_priority_nodes(cfg, job.k, cfg.skip_coexistence);
            const RunResult result = run_single(nodes, job.seed, cfg.sim_time_us, job.skip);
            maybe_write_trace(cfg, tag, jobs.size() == 1, result);
            ResultRow base;
            base.protocol = to_string(cfg.nru_protocol.kind);
            base.n_nrus = 1 + job.k;
            base.n_wifi = cfg.skip_coexistence ? job.k : 0;
            base.n_pc3 = job.k;
            base.alpha = 0.0;
            base.seed = job.seed;
            base.skip_tag = job.tag;
            if (job.skip.mode == SkipSettings::Mode::Fixed) {
                base.skip_level_mean = job.skip.fixed_level;
                base.skip_level_final = job.skip.fixed_level;
            } else if (!result.frame_levels.empty()) {
                double sum = 0.0;
                for (int l : result.frame_levels) sum += l;
                base.skip_level_mean = sum / static_cast<double>(result.frame_levels.size());
                base.skip_level_final = result.frame_levels.back();
            }
            base.pc1_wait_us = mean_wait_us(result, Priority::PC1);
            append_snapshot_rows(out[i], base, result, cfg);
        } catch (const std::exception& e) {
            throw std::runtime_error("run " + tag + ": " + e.what());
        }
    });

    std::vector<ResultRow> rows;
    for (auto& part : out)
        for (auto& row : part) rows.push_back(std::move(row));
    std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
        return std::tie(a.skip_tag, a.n_pc3, a.seed, a.window_start_us) <
               std::tie(b.skip_tag, b.n_pc3, b.seed, b.window_start_us);
    });
    return rows;
}

TrainOutput train_run(const ScenarioConfig& cfg) {
    const auto nodes = build_priority_nodes(cfg, cfg.n_pc3, true);
    const std::uint64_t total_iters =
        static_cast<std::uint64_t>(cfg.train_time_us / kAgentPeriodUs);
    DqnHarness harness(cfg.base_seed, cfg.alpha, total_iters, true, cfg.dqn);
    const RunResult result = run_single(nodes, cfg.base_seed, cfg.train_time_us, {}, &harness);
    maybe_write_trace(cfg, "train", true, result);
    save_checkpoint(cfg.checkpoint_path, harness);
    return {harness.curve(), cfg.checkpoint_path};
}

std::vector<ResultRow> eval_rows(const ScenarioConfig& cfg) {
    const std::uint64_t total_iters =
        static_cast<std::uint64_t>(cfg.sim_time_us / kAgentPeriodUs);
    DqnHarness prototype(cfg.base_seed, cfg.alpha, total_iters, false, cfg.dqn);
    load_checkpoint(cfg.checkpoint_path, prototype);

    struct Job {
        int k;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    const std::vector<int> ks = cfg.rl_k.empty() ? std::vector<int>{cfg.n_pc3} : cfg.rl_k;
    for (int k : ks)
        for (int rep = 0; rep < cfg.runs; ++rep)
            jobs.push_back({k, cfg.base_seed + static_cast<std::uint64_t>(rep)});

    std::vector<std::vector<ResultRow>> out(jobs.size());
    parallel_run(jobs.size(), worker_count(cfg), [&](std::size_t i) {
        const Job& job = jobs[i];
        const std::string tag = run_tag("eval", job.k, job.seed);
        try {
            DqnHarness harness = prototype; // trained weights, greedy policy
            harness.reset_episode();
            const auto nodes = build_priority_nodes(cfg, job.k, true);
            const RunResult result =
                run_single(nodes, job.seed, cfg.sim_time_us, {}, &harness);
            maybe_write_trace(cfg, tag, jobs.size() == 1, result);
            ResultRow base;
            base.protocol = to_string(cfg.nru_protocol.kind);
            base.n_nrus = 1 + job.k;
            base.n_wifi = job.k;
            base.n_pc3 = job.k;
            base.alpha = cfg.alpha;
            base.seed = job.seed;
            append_snapshot_rows(out[i], base, result, cfg);
        } catch (const std::exception& e) {
            throw std::runtime_error("run " + tag + ": " + e.what());
        }
    });

    std::vector<ResultRow> rows;
    for (auto& part : out)
        for (auto& row : part) rows.push_back(std::move(row));
    std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
        return std::tie(a.n_pc3, a.seed, a.window_start_us) <
               std::tie(b.n_pc3, b.seed, b.window_start_us);
    });
    return rows;
}

std::string to_csv(const std::vector<ResultRow>& rows, bool skip_extras) {
    std::string out = kCsvHeader;
    if (skip_extras) out += ",skip_mode,skip_level_mean,skip_level_final,pc1_wait_us";
    out += '\n';
    for (const auto& r : rows) {
        out += r.protocol;
        out += ',' + std::to_string(r.n_nrus);
        out += ',' + std::to_string(r.n_wifi);
        out += ',' + std::to_string(r.n_pc3);
        out += ',' + fmt("%.4f", r.alpha);
        out += ',' + std::to_string(r.seed);
        out += ',' + std::to_string(r.window_start_us);
        out += ',' + fmt("%.6f", r.snap.p_coll_nru);
        out += ',' + fmt("%.6f", r.snap.p_coll_wifi);
        out += ',' + fmt("%.6f", r.snap.eff_nru);
        out += ',' + fmt("%.6f", r.snap.eff_pc3);
        out += ',' + fmt("%.6f", r.snap.eff_wifi);
        out += ',' + fmt_delay(r.snap.delay_pc1_us);
        out += ',' + fmt_delay(r.snap.delay_pc3_us);
        out += ',' + fmt_delay(r.snap.delay_wifi_us);
        out += ',' + fmt("%.6f", r.snap.d_l_pc1);
        out += ',' + fmt("%.6f", r.snap.jfi);
        if (skip_extras) {
            out += ',' + r.skip_tag;
            out += ',' + fmt("%.4f", r.skip_level_mean);
            out += ',' + std::to_string(r.skip_level_final);
            out += ',' + fmt_delay(r.pc1_wait_us);
        }
        out += '\n';
    }
    return out;
}

std::string curve_csv(const std::vector<CurvePoint>& curve) {
    std::string out = "iter,epsilon,reward,action_gnb,action_ap,cw_gnb,cw_ap,"
                      "e_w,e_l_pc3,d_l_pc1,jfi\n";
    for (const auto& p : curve) {
        out += std::to_string(p.iter);
        out += ',' + fmt("%.6f", p.eps);
        out += ',' + fmt("%.6f", p.reward);
        out += ',' + std::to_string(p.action_gnb);
        out += ',' + std::to_string(p.action_ap);
        out += ',' + std::to_string(cw_from_action(p.action_gnb));
        out += ',' + std::to_string(cw_from_action(p.action_ap));
        out += ',' + fmt("%.6f", p.view.e_w);
        out += ',' + fmt("%.6f", p.view.e_l_pc3);
        out += ',' + fmt("%.6f", p.view.d_l_pc1);
        out += ',' + fmt("%.6f", p.view.jfi);
        out += '\n';
    }
    return out;
}

std::string run_mode(const ScenarioConfig& cfg) {
    switch (cfg.mode) {
        case ScenarioConfig::Mode::Compare:
            return to_csv(compare_rows(cfg), false);
        case ScenarioConfig::Mode::Skip:
            return to_csv(skip_rows(cfg), true);
        case ScenarioConfig::Mode::Train:
            return curve_csv(train_run(cfg).curve);
        case ScenarioConfig::Mode::Eval:
            return to_csv(eval_rows(cfg), false);
    }
    throw std::logic_error("run_mode: unreachable");
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
    if (!out) throw std::runtime_error("write to " + path + " failed");
}

} // namespace coexsim
