#include "coexsim/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace coexsim {

const char* to_string(ScenarioConfig::Mode m) {
    switch (m) {
        case ScenarioConfig::Mode::Compare: return "compare";
        case ScenarioConfig::Mode::Skip: return "skip";
        case ScenarioConfig::Mode::Train: return "train";
        case ScenarioConfig::Mode::Eval: return "eval";
    }
    return "?";
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

// raw key/value store with consumption tracking, so leftover keys can be
// reported as unknown with their full path
class KvDoc {
public:
    void put(const std::string& key, const std::string& value, int line) {
        if (values_.count(key))
            throw std::runtime_error("config: duplicate key '" + key + "' at line " +
                                     std::to_string(line));
        values_[key] = value;
    }

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string take(const std::string& key) {
        consumed_.insert(key);
        return values_.at(key);
    }

    template <typename F>
    void opt(const std::string& key, F&& apply) {
        if (has(key)) apply(take(key));
    }

    void finish() const {
        for (const auto& [key, value] : values_) {
            if (!consumed_.count(key))
                throw std::runtime_error("config: unknown key '" + key + "'");
        }
    }

private:
    std::map<std::string, std::string> values_;
    std::set<std::string> consumed_;
};

long long parse_int(const std::string& key, const std::string& raw) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(raw, &pos);
        if (pos != raw.size()) throw std::invalid_argument(raw);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("config: key '" + key + "': expected integer, got '" + raw + "'");
    }
}

double parse_double(const std::string& key, const std::string& raw) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(raw, &pos);
        if (pos != raw.size()) throw std::invalid_argument(raw);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("config: key '" + key + "': expected number, got '" + raw + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& raw) {
    if (raw == "true" || raw == "on" || raw == "1") return true;
    if (raw == "false" || raw == "off" || raw == "0") return false;
    throw std::runtime_error("config: key '" + key + "': expected boolean, got '" + raw + "'");
}

std::vector<std::string> split_list(const std::string& key, std::string raw) {
    raw = trim(raw);
    if (raw.size() >= 2 && raw.front() == '[' && raw.back() == ']')
        raw = raw.substr(1, raw.size() - 2);
    std::vector<std::string> items;
    std::stringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) items.push_back(item);
    }
    if (items.empty())
        throw std::runtime_error("config: key '" + key + "': empty list");
    return items;
}

// integer lists accept `lo..hi` range elements
std::vector<int> parse_int_list(const std::string& key, const std::string& raw) {
    std::vector<int> out;
    for (const auto& item : split_list(key, raw)) {
        const auto dots = item.find("..");
        if (dots != std::string::npos) {
            const long long lo = parse_int(key, trim(item.substr(0, dots)));
            const long long hi = parse_int(key, trim(item.substr(dots + 2)));
            if (hi < lo)
                throw std::runtime_error("config: key '" + key + "': bad range '" + item + "'");
            for (long long v = lo; v <= hi; ++v) out.push_back(static_cast<int>(v));
        } else {
            out.push_back(static_cast<int>(parse_int(key, item)));
        }
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& key, const std::string& raw) {
    std::vector<double> out;
    for (const auto& item : split_list(key, raw)) out.push_back(parse_double(key, item));
    return out;
}

Protocol parse_protocol(const std::string& key, const std::string& raw) {
    Protocol p;
    if (!protocol_from_string(raw, p))
        throw std::runtime_error("config: key '" + key + "': unknown protocol '" + raw + "'");
    return p;
}

} // namespace

ScenarioConfig parse_config(const std::string& text) {
    KvDoc doc;
    std::string section;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw std::runtime_error("config: empty section name at line " +
                                         std::to_string(lineno));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: expected 'key = value' at line " +
                                     std::to_string(lineno));
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::runtime_error("config: empty key or value at line " +
                                     std::to_string(lineno));
        if (!section.empty()) key = section + "." + key;
        doc.put(key, value, lineno);
    }

    ScenarioConfig cfg;

    doc.opt("mode", [&](const std::string& v) {
        if (v == "compare") cfg.mode = ScenarioConfig::Mode::Compare;
        else if (v == "skip") cfg.mode = ScenarioConfig::Mode::Skip;
        else if (v == "train") cfg.mode = ScenarioConfig::Mode::Train;
        else if (v == "eval") cfg.mode = ScenarioConfig::Mode::Eval;
        else throw std::runtime_error("config: key 'mode': unknown mode '" + v + "'");
        cfg.mode_explicit = true;
    });

    doc.opt("scenario.n_gnb", [&](const std::string& v) {
        cfg.n_gnb = static_cast<int>(parse_int("scenario.n_gnb", v));
    });
    doc.opt("scenario.n_ap", [&](const std::string& v) {
        cfg.n_ap = static_cast<int>(parse_int("scenario.n_ap", v));
    });
    doc.opt("scenario.n_pc1", [&](const std::string& v) {
        cfg.n_pc1 = static_cast<int>(parse_int("scenario.n_pc1", v));
    });
    doc.opt("scenario.n_pc3", [&](const std::string& v) {
        cfg.n_pc3 = static_cast<int>(parse_int("scenario.n_pc3", v));
    });
    doc.opt("scenario.sim_time_s", [&](const std::string& v) {
        cfg.sim_time_us = static_cast<SimTime>(parse_double("scenario.sim_time_s", v) * 1e6);
    });
    doc.opt("scenario.base_seed", [&](const std::string& v) {
        cfg.base_seed = static_cast<std::uint64_t>(parse_int("scenario.base_seed", v));
    });
    doc.opt("scenario.runs", [&](const std::string& v) {
        cfg.runs = static_cast<int>(parse_int("scenario.runs", v));
    });
    doc.opt("scenario.cw_min", [&](const std::string& v) {
        cfg.cw_min = static_cast<int>(parse_int("scenario.cw_min", v));
    });
    doc.opt("scenario.cw_max", [&](const std::string& v) {
        cfg.cw_max = static_cast<int>(parse_int("scenario.cw_max", v));
    });
    doc.opt("scenario.tx_duration_us", [&](const std::string& v) {
        cfg.tx_duration_us = parse_int("scenario.tx_duration_us", v);
    });
    doc.opt("scenario.sweep_n", [&](const std::string& v) {
        cfg.sweep_n = parse_int_list("scenario.sweep_n", v);
    });

    doc.opt("nru_protocol.kind", [&](const std::string& v) {
        cfg.nru_protocol.kind = parse_protocol("nru_protocol.kind", v);
    });
    doc.opt("nru_protocol.n_sl", [&](const std::string& v) {
        cfg.nru_protocol.n_sl = static_cast<int>(parse_int("nru_protocol.n_sl", v));
    });
    doc.opt("nru_protocol.p_rs", [&](const std::string& v) {
        cfg.nru_protocol.p_rs = parse_double("nru_protocol.p_rs", v);
    });
    doc.opt("nru_protocol.db_fixed", [&](const std::string& v) {
        cfg.nru_protocol.db_fixed = static_cast<int>(parse_int("nru_protocol.db_fixed", v));
    });
    doc.opt("nru_protocol.db_both_networks", [&](const std::string& v) {
        cfg.nru_protocol.db_both_networks = parse_bool("nru_protocol.db_both_networks", v);
    });
    doc.opt("nru_protocol.gap_desync", [&](const std::string& v) {
        cfg.nru_protocol.gap_desync = parse_bool("nru_protocol.gap_desync", v);
    });
    doc.opt("wifi_protocol.kind", [&](const std::string& v) {
        const Protocol p = parse_protocol("wifi_protocol.kind", v);
        if (p != Protocol::EDCA && p != Protocol::DB_LBT)
            throw std::runtime_error("config: key 'wifi_protocol.kind': Wi-Fi runs edca or db_lbt");
        cfg.wifi_protocol = p;
    });

    doc.opt("compare.roster", [&](const std::string& v) {
        cfg.roster.clear();
        for (const auto& item : split_list("compare.roster", v))
            cfg.roster.push_back(parse_protocol("compare.roster", item));
    });

    doc.opt("skip.mode", [&](const std::string& v) {
        if (v == "off") cfg.skip.mode = SkipSettings::Mode::Off;
        else if (v == "fixed") cfg.skip.mode = SkipSettings::Mode::Fixed;
        else if (v == "dynamic") cfg.skip.mode = SkipSettings::Mode::Dynamic;
        else throw std::runtime_error("config: key 'skip.mode': expected off|fixed|dynamic");
    });
    doc.opt("skip.fixed_level", [&](const std::string& v) {
        cfg.skip.fixed_level = static_cast<int>(parse_int("skip.fixed_level", v));
    });
    doc.opt("skip.target_delay_us", [&](const std::string& v) {
        cfg.skip.target_delay_us = parse_double("skip.target_delay_us", v);
    });
    doc.opt("skip.deescalate_factor", [&](const std::string& v) {
        cfg.skip.deescalate_factor = parse_double("skip.deescalate_factor", v);
    });
    doc.opt("skip.levels", [&](const std::string& v) {
        cfg.skip_levels = parse_int_list("skip.levels", v);
    });
    doc.opt("skip.targets_us", [&](const std::string& v) {
        cfg.skip_targets_us = parse_double_list("skip.targets_us", v);
    });
    doc.opt("skip.coexistence", [&](const std::string& v) {
        cfg.skip_coexistence = parse_bool("skip.coexistence", v);
    });
    doc.opt("skip.k_sweep", [&](const std::string& v) {
        cfg.k_sweep = parse_int_list("skip.k_sweep", v);
    });

    doc.opt("rl.alpha", [&](const std::string& v) { cfg.alpha = parse_double("rl.alpha", v); });
    doc.opt("rl.checkpoint", [&](const std::string& v) { cfg.checkpoint_path = v; });
    doc.opt("rl.train_time_s", [&](const std::string& v) {
        cfg.train_time_us = static_cast<SimTime>(parse_double("rl.train_time_s", v) * 1e6);
    });
    doc.opt("rl.gamma", [&](const std::string& v) { cfg.dqn.gamma = parse_double("rl.gamma", v); });
    doc.opt("rl.lr", [&](const std::string& v) { cfg.dqn.lr = parse_double("rl.lr", v); });
    doc.opt("rl.batch", [&](const std::string& v) {
        cfg.dqn.batch = static_cast<int>(parse_int("rl.batch", v));
    });
    doc.opt("rl.replay_capacity", [&](const std::string& v) {
        cfg.dqn.replay_capacity = static_cast<std::size_t>(parse_int("rl.replay_capacity", v));
    });
    doc.opt("rl.target_network", [&](const std::string& v) {
        cfg.dqn.use_target_network = parse_bool("rl.target_network", v);
    });
    doc.opt("rl.k_sweep", [&](const std::string& v) {
        cfg.rl_k = parse_int_list("rl.k_sweep", v);
    });

    doc.opt("metrics.jfi_per_node", [&](const std::string& v) {
        cfg.jfi_per_node = parse_bool("metrics.jfi_per_node", v);
    });
    doc.opt("metrics.windows", [&](const std::string& v) {
        cfg.emit_windows = parse_bool("metrics.windows", v);
    });
    doc.opt("metrics.window_us", [&](const std::string& v) {
        cfg.window_us = parse_int("metrics.window_us", v);
    });

    doc.opt("output.csv", [&](const std::string& v) { cfg.out_path = v; });
    doc.opt("output.trace", [&](const std::string& v) { cfg.trace_path = v; });
    doc.opt("output.parallel", [&](const std::string& v) {
        cfg.parallel = static_cast<int>(parse_int("output.parallel", v));
    });

    doc.finish();
    validate(cfg);
    return cfg;
}

ScenarioConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void validate(const ScenarioConfig& cfg) {
    if (cfg.n_pc1 + cfg.n_pc3 != cfg.n_gnb)
        throw std::runtime_error("config: scenario.n_pc1 + scenario.n_pc3 must equal scenario.n_gnb");
    if (cfg.n_gnb < 0 || cfg.n_ap < 0)
        throw std::runtime_error("config: negative node count");
    if (cfg.sim_time_us <= 0) throw std::runtime_error("config: scenario.sim_time_s must be > 0");
    if (cfg.runs < 1) throw std::runtime_error("config: scenario.runs must be >= 1");
    if (cfg.sweep_n.empty()) throw std::runtime_error("config: scenario.sweep_n must not be empty");
    if (cfg.k_sweep.empty()) throw std::runtime_error("config: skip.k_sweep must not be empty");
    if (cfg.roster.empty()) throw std::runtime_error("config: compare.roster must not be empty");
    for (int level : cfg.skip_levels)
        if (level < 0 || level > kMaxSkipLevel)
            throw std::runtime_error("config: skip.levels entries must lie in 0..4");
    if (cfg.skip.fixed_level < 0 || cfg.skip.fixed_level > kMaxSkipLevel)
        throw std::runtime_error("config: skip.fixed_level must lie in 0..4");
    if (cfg.alpha < 0.0 || cfg.alpha > 1.0)
        throw std::runtime_error("config: rl.alpha must lie in [0,1]");
    if (cfg.mode == ScenarioConfig::Mode::Train || cfg.mode == ScenarioConfig::Mode::Eval) {
        if (cfg.n_pc1 != 1)
            throw std::runtime_error("config: train/eval modes need exactly one PC1 node");
        if (cfg.n_pc3 != cfg.n_ap)
            throw std::runtime_error("config: train/eval modes need n_pc3 == n_ap");
    }
    const auto pow2m1 = [](int v) { return v >= 1 && ((v + 1) & v) == 0; };
    if (!pow2m1(cfg.cw_min) || !pow2m1(cfg.cw_max) || cfg.cw_min > cfg.cw_max)
        throw std::runtime_error("config: contention windows must be 2^k - 1 with cw_min <= cw_max");
}

std::vector<NodeConfig> build_compare_nodes(const ScenarioConfig& cfg, Protocol nru_protocol,
                                            int n_per_network) {
    std::vector<NodeConfig> nodes;
    ProtocolParams nru = cfg.nru_protocol;
    nru.kind = nru_protocol;
    for (int i = 0; i < n_per_network; ++i) {
        NodeConfig c;
        c.network = Network::NRU;
        c.priority = Priority::PC3;
        c.protocol = nru;
        c.cw_min = cfg.cw_min;
        c.cw_max = cfg.cw_max;
        c.tx_duration = cfg.tx_duration_us;
        nodes.push_back(c);
    }
    const bool wifi_db = nru_protocol == Protocol::DB_LBT && cfg.nru_protocol.db_both_networks;
    for (int i = 0; i < n_per_network; ++i) {
        NodeConfig c;
        c.network = Network::WiFi;
        c.priority = Priority::WiFiBE;
        c.protocol = nru;
        c.protocol.kind = wifi_db ? Protocol::DB_LBT : cfg.wifi_protocol;
        c.cw_min = cfg.cw_min;
        c.cw_max = cfg.cw_max;
        c.tx_duration = cfg.tx_duration_us;
        nodes.push_back(c);
    }
    return nodes;
}

std::vector<NodeConfig> build_priority_nodes(const ScenarioConfig& cfg, int n_pc3,
                                             bool coexistence) {
    std::vector<NodeConfig> nodes;
    for (int i = 0; i < 1 + n_pc3; ++i) {
        NodeConfig c;
        c.network = Network::NRU;
        c.priority = i == 0 ? Priority::PC1 : Priority::PC3;
        c.protocol = cfg.nru_protocol;
        c.cw_min = cfg.cw_min;
        c.cw_max = cfg.cw_max;
        c.tx_duration = cfg.tx_duration_us;
        nodes.push_back(c);
    }
    if (coexistence) {
        for (int i = 0; i < n_pc3; ++i) {
            NodeConfig c;
            c.network = Network::WiFi;
            c.priority = Priority::WiFiBE;
            c.protocol.kind = cfg.wifi_protocol;
            c.cw_min = cfg.cw_min;
            c.cw_max = cfg.cw_max;
            c.tx_duration = cfg.tx_duration_us;
            nodes.push_back(c);
        }
    }
    return nodes;
}

} // namespace coexsim
