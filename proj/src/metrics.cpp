#include "coexsim/metrics.hpp"

#include <algorithm>

namespace coexsim {

const char* const kCsvHeader =
    "protocol,n_nrus,n_wifi,n_pc3,alpha,seed,window_start_us,"
    "p_coll_nru,p_coll_wifi,eff_nru,eff_pc3,eff_wifi,"
    "delay_pc1_us,delay_pc3_us,delay_wifi_us,d_l_pc1,jfi";

namespace {

bool starts_in(const TransmissionRecord& r, Window w) {
    return r.start >= w.t0 && r.start < w.t1;
}

} // namespace

double intra_collision_probability(std::span<const TransmissionRecord> history,
                                   Network network, Window window) {
    long total = 0;
    long intra = 0;
    for (const auto& r : history) {
        if (r.kind != RecordKind::Data || r.network != network || !starts_in(r, window))
            continue;
        ++total;
        if (r.outcome == Outcome::IntraCollision) ++intra;
    }
    if (total == 0) return 0.0;
    return static_cast<double>(intra) / static_cast<double>(total);
}

AirtimeLedger successful_airtime(std::span<const TransmissionRecord> history,
                                 int node_count, Window window) {
    AirtimeLedger ledger;
    ledger.per_node.assign(static_cast<std::size_t>(node_count), 0);
    for (const auto& r : history) {
        if (r.kind != RecordKind::Data || r.outcome != Outcome::Success) continue;
        const SimTime a = std::max(r.start, window.t0);
        const SimTime b = std::min(r.end, window.t1);
        if (b <= a) continue;
        const SimTime amount = b - a;
        if (r.owner >= 0 && r.owner < node_count) ledger.per_node[r.owner] += amount;
        if (r.network == Network::NRU)
            ledger.nru += amount;
        else
            ledger.wifi += amount;
    }
    return ledger;
}

double channel_efficiency(const AirtimeLedger& ledger, Network network, Window window) {
    if (window.length() <= 0) return 0.0;
    const SimTime air = network == Network::NRU ? ledger.nru : ledger.wifi;
    return static_cast<double>(air) / static_cast<double>(window.length());
}

std::optional<double> channel_access_delay(std::span<const TransmissionRecord> history,
                                           std::span<const int> node_ids, Window window) {
    double sum = 0.0;
    long count = 0;
    for (int id : node_ids) {
        SimTime prev_start = kInvalidTime;
        for (const auto& r : history) {
            if (r.owner != id || r.kind != RecordKind::Data || r.outcome != Outcome::Success)
                continue;
            if (prev_start != kInvalidTime && starts_in(r, window)) {
                sum += static_cast<double>(r.start - prev_start);
                ++count;
            }
            prev_start = r.start;
        }
    }
    if (count == 0) return std::nullopt;
    return sum / static_cast<double>(count);
}

double pc1_delay_share(std::optional<double> pc1_mean_us, std::optional<double> pc3_mean_us) {
    if (!pc1_mean_us) return 1.0;
    if (!pc3_mean_us) return 1.0; // share of a one-sided total degenerates to 1
    const double total = *pc1_mean_us + *pc3_mean_us;
    if (total <= 0.0) return 0.0;
    return *pc1_mean_us / total;
}

double jain_index(std::span<const double> xs) {
    double sum = 0.0;
    double sumsq = 0.0;
    for (double x : xs) {
        sum += x;
        sumsq += x * x;
    }
    if (sumsq == 0.0) return 1.0; // nothing transmitted: vacuously fair
    const double n = static_cast<double>(xs.size());
    return sum * sum / (n * sumsq);
}

MetricsSnapshot compute_snapshot(std::span<const TransmissionRecord> history,
                                 std::span<const NodeConfig> nodes, Window window,
                                 bool jfi_per_node) {
    MetricsSnapshot snap;
    snap.window = window;
    snap.p_coll_nru = intra_collision_probability(history, Network::NRU, window);
    snap.p_coll_wifi = intra_collision_probability(history, Network::WiFi, window);

    const int node_count = static_cast<int>(nodes.size());
    const AirtimeLedger ledger = successful_airtime(history, node_count, window);
    snap.eff_nru = channel_efficiency(ledger, Network::NRU, window);
    snap.eff_wifi = channel_efficiency(ledger, Network::WiFi, window);

    std::vector<int> pc1_ids;
    std::vector<int> pc3_ids;
    std::vector<int> wifi_ids;
    SimTime pc3_air = 0;
    for (const auto& n : nodes) {
        switch (n.priority) {
            case Priority::PC1: pc1_ids.push_back(n.id); break;
            case Priority::PC3: pc3_ids.push_back(n.id); break;
            case Priority::WiFiBE: wifi_ids.push_back(n.id); break;
        }
        if (n.priority == Priority::PC3) pc3_air += ledger.per_node[n.id];
    }
    snap.eff_pc3 = window.length() > 0
                       ? static_cast<double>(pc3_air) / static_cast<double>(window.length())
                       : 0.0;

    snap.delay_pc1_us = channel_access_delay(history, pc1_ids, window);
    snap.delay_pc3_us = channel_access_delay(history, pc3_ids, window);
    snap.delay_wifi_us = channel_access_delay(history, wifi_ids, window);
    snap.d_l_pc1 = pc1_delay_share(snap.delay_pc1_us, snap.delay_pc3_us);

    if (jfi_per_node) {
        std::vector<double> xs;
        xs.reserve(ledger.per_node.size());
        for (SimTime a : ledger.per_node) xs.push_back(static_cast<double>(a));
        snap.jfi = jain_index(xs);
    } else {
        const double xs[2] = {static_cast<double>(ledger.nru), static_cast<double>(ledger.wifi)};
        snap.jfi = jain_index(xs);
    }
    return snap;
}

} // namespace coexsim
