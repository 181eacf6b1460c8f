#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tcnfet/engine.hpp"
#include "tcnfet/netlist.hpp"
#include "tcnfet/reference.hpp"

namespace tcnfet {

/// One resistor charging one node capacitance.
struct RcStage {
    double resistance = 0.0;   // ohms
    double capacitance = 0.0;  // farads
};

/// Sum of R_j * C_j over the stages.
[[nodiscard]] double elmore_sum(std::span<const RcStage> stages) noexcept;

/// Stages of a conducting path, rail side first. Each logic device charges the
/// node on its output side; clocked footers and precharge devices are skipped.
[[nodiscard]] std::vector<RcStage> path_stages(const Netlist& nl, const PhaseRecord& evaluate,
                                               const ConductingPath& path, const NodeCapModel& caps);

struct OutputDelay {
    std::string output;
    double delay = 0.0;  // seconds, worst over cycles
};

struct DelayResult {
    double seconds = 0.0;
    std::string output;                // empty when nothing was driven
    std::vector<std::string> devices;  // realizing path, output side first
    std::size_t cycle = 0;
    std::vector<OutputDelay> per_output;
};

/// For each measured cycle and output, the fastest driving path; the result is
/// the slowest of those.
[[nodiscard]] DelayResult critical_path_delay(const Netlist& nl, const SimTrace& trace, const NodeCapModel& caps);

struct NodeActivity {
    NodeId node;
    double alpha = 0.0;       // swings per measured cycle, 0..2
    double mean_dv2 = 0.0;    // V^2, averaged over this node's swings
    double capacitance = 0.0;
};

/// Activity of every node that draws switching charge: rails, inputs and the
/// clock reference are excluded.
[[nodiscard]] std::vector<NodeActivity> node_activity(const Netlist& nl, const SimTrace& trace,
                                                      const NodeCapModel& caps);

/// P = sum_i alpha_i * f * C_i * dV_i^2.
[[nodiscard]] double dynamic_power(std::span<const NodeActivity> activity, double frequency);
[[nodiscard]] double dynamic_power(const Netlist& nl, const SimTrace& trace, const NodeCapModel& caps,
                                   double frequency);

/// Time-averaged contention current: vdd / R per incident, weighted by phase
/// duration (half a cycle).
[[nodiscard]] double contention_current(const SimTrace& trace, double vdd);

/// (devices x (i_sub + i_gate + i_junct) + I_contention) x vdd.
[[nodiscard]] double static_power(std::size_t devices, double contention, const TechConfig& tech);
[[nodiscard]] double static_power(const Netlist& nl, const SimTrace& trace, const TechConfig& tech);

struct Metrics {
    double dynamic_power = 0.0;   // W
    double static_power = 0.0;    // W
    double avg_power = 0.0;       // W
    double worst_delay = 0.0;     // s
    double pdp = 0.0;             // J
    double edp = 0.0;             // J s
    double contention_current = 0.0;  // A
    std::size_t contention_incidents = 0;
    DelayResult delay;
};

/// avg = dynamic + static; pdp = avg * delay; edp = pdp * delay.
[[nodiscard]] Metrics combine_metrics(double dynamic, double stat, double delay);
[[nodiscard]] Metrics total_metrics(const Netlist& nl, const SimTrace& trace, const NodeCapModel& caps,
                                    const TechConfig& tech);

/// Wraps the testbench at `fanout` and runs the canonical pattern with one
/// warm-up cycle.
[[nodiscard]] Metrics run_pattern_analysis(const Netlist& nl, int fanout);

struct SweepPoint {
    double vdd = 0.0;
    int fanout = 4;
    Metrics metrics;
    std::optional<bool> functional;   // set when a reference was supplied
    std::vector<std::string> at_risk;  // FunctionalityAtRisk diagnostics
};

/// Devices whose on/off state at some canonical level (0, vdd/2, vdd) differs
/// between the netlist's own supply and `vdd`.
[[nodiscard]] std::vector<std::string> functionality_at_risk(const Netlist& nl, double vdd);

[[nodiscard]] std::vector<SweepPoint> sweep_vdd(const Netlist& nl, const std::vector<double>& vdds, int fanout = 4,
                                                const CellReference* ref = nullptr);
[[nodiscard]] std::vector<SweepPoint> sweep_fanout(const Netlist& nl, const std::vector<int>& fanouts,
                                                   const CellReference* ref = nullptr);

struct Substitution {
    std::string label;
    ChiralityVector from;
    ChiralityVector to;
};

struct ScenarioResult {
    std::string label;
    Metrics metrics;
    std::size_t distinct_chiralities = 0;
    std::optional<VerifyReport> verify;
};

/// The multiplier chirality swaps: every (28,0) to (19,0), and every (19,0) to (28,0).
[[nodiscard]] std::vector<Substitution> multiplier_scenarios();

/// Base row ("proposed") followed by one row per substitution, all at FO4.
[[nodiscard]] std::vector<ScenarioResult> scenario_compare(const Netlist& base,
                                                           const std::vector<Substitution>& substitutions,
                                                           const CellReference* ref = nullptr);

}  // namespace tcnfet
