#pragma once

#include <optional>
#include <span>
#include <vector>

#include "coexsim/channel.hpp"
#include "coexsim/node.hpp"
#include "coexsim/sim_time.hpp"

namespace coexsim {

struct Window {
    SimTime t0 = 0;
    SimTime t1 = 0;
    SimTime length() const { return t1 - t0; }
};

// Data records only; reservations never enter a metric denominator.
// Returns 0 when the network transmitted nothing in the window.
double intra_collision_probability(std::span<const TransmissionRecord> history,
                                   Network network, Window window);

struct AirtimeLedger {
    std::vector<SimTime> per_node; // successful Data airtime clipped to the window
    SimTime nru = 0;
    SimTime wifi = 0;
};

AirtimeLedger successful_airtime(std::span<const TransmissionRecord> history,
                                 int node_count, Window window);

double channel_efficiency(const AirtimeLedger& ledger, Network network, Window window);

// Pooled gaps between consecutive successful Data starts of the listed
// nodes; a gap belongs to the window when its later start lies inside.
// Nodes with fewer than two successes contribute nothing; returns nullopt
// when no gap exists at all.
std::optional<double> channel_access_delay(std::span<const TransmissionRecord> history,
                                           std::span<const int> node_ids, Window window);

// D_l,pc1: the PC1 share of total NR-U delay. A starved PC1 (no sample) is
// the worst case 1.0 so the controller and the reward can never benefit from
// starving it; PC3 with no sample makes the share 1 by the same formula.
double pc1_delay_share(std::optional<double> pc1_mean_us, std::optional<double> pc3_mean_us);

// (sum x)^2 / (n * sum x^2); all-zero input is defined as 1.
double jain_index(std::span<const double> xs);

struct MetricsSnapshot {
    Window window;
    double p_coll_nru = 0.0;
    double p_coll_wifi = 0.0;
    double eff_nru = 0.0;
    double eff_pc3 = 0.0;
    double eff_wifi = 0.0;
    std::optional<double> delay_pc1_us;
    std::optional<double> delay_pc3_us;
    std::optional<double> delay_wifi_us;
    double d_l_pc1 = 1.0;
    double jfi = 1.0;
};

MetricsSnapshot compute_snapshot(std::span<const TransmissionRecord> history,
                                 std::span<const NodeConfig> nodes, Window window,
                                 bool jfi_per_node = false);

// CSV row schema shared by every run mode.
extern const char* const kCsvHeader;

} // namespace coexsim
