#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tcnfet/netlist.hpp"
#include "tcnfet/reference.hpp"

namespace tcnfet {

/// Voltages closer than this are considered equal by the relaxation.
inline constexpr double kVoltageTolerance = 1e-12;

struct SimState {
    std::vector<double> voltages;  // indexed by NodeId
    Phase phase = Phase::Evaluate;
    std::size_t cycle_index = 0;
};

/// Outputs at their precharge level, everything else at 0 V, rails at level.
[[nodiscard]] SimState initial_state(const Netlist& nl);

struct SwingEvent {
    NodeId node;
    double delta = 0.0;  // magnitude, always > 0
};

struct ContentionIncident {
    std::vector<NodeId> component;
    double low_level = 0.0;   // volts of the two conflicting sources
    double high_level = 0.0;
    double resistance = 0.0;  // lowest series resistance between them, ohms
};

struct PhaseRecord {
    Phase phase = Phase::Precharge;
    std::vector<double> voltages;            // settled
    std::vector<std::size_t> conducting;     // device indices, ascending
    std::vector<SwingEvent> swings;          // vs. the previous settlement
    std::vector<ContentionIncident> contention;
    std::size_t iterations = 0;
};

struct CycleTrace {
    std::vector<Trit> inputs;  // declaration order
    std::array<PhaseRecord, 2> phases;
    /// Evaluate-phase output trits; nullopt where a level is indeterminate.
    std::vector<std::optional<Trit>> outputs;
    /// Devices carrying each output's result (see active_devices).
    std::vector<std::size_t> active;

    [[nodiscard]] const PhaseRecord& precharge() const { return phases[0]; }
    [[nodiscard]] const PhaseRecord& evaluate() const { return phases[1]; }
};

struct SimTrace {
    std::vector<CycleTrace> cycles;
    std::size_t warmup = 0;  // leading cycles excluded from measurement

    [[nodiscard]] std::size_t measured_cycles() const { return cycles.size() - warmup; }
    [[nodiscard]] std::size_t contention_count() const;
};

/// Relaxes one phase to a fixed point. `inputs` is in declaration order.
/// Throws OscillationError beyond 2 x device-count iterations (minimum 4).
[[nodiscard]] SimState solve_phase(const Netlist& nl, const SimState& state, Phase phase,
                                   const std::vector<Trit>& inputs, PhaseRecord* record = nullptr);

/// Precharge then Evaluate.
[[nodiscard]] SimState run_cycle(const Netlist& nl, const SimState& state, const std::vector<Trit>& inputs,
                                 CycleTrace& trace);

[[nodiscard]] SimTrace run_sequence(const Netlist& nl, const std::vector<std::vector<Trit>>& sequence,
                                    std::size_t warmup = 0);

/// A conducting chain from an output to a source node, output side first.
struct ConductingPath {
    NodeId output;
    std::vector<std::size_t> devices;  // devices[j] joins nodes[j] and nodes[j + 1]
    std::vector<NodeId> nodes;         // nodes.front() == output, nodes.back() is the source
};

/// Every simple Evaluate-phase conducting path from `output` to a rail or
/// input, not passing through other rails, inputs or outputs.
[[nodiscard]] std::vector<ConductingPath> conducting_paths(const Netlist& nl, const PhaseRecord& evaluate,
                                                           NodeId output);

/// Logic devices on the conducting paths of every output; an output with no
/// path contributes the precharge devices attached to it.
[[nodiscard]] std::vector<std::size_t> active_devices(const Netlist& nl, const PhaseRecord& evaluate);

/// Linear de Bruijn sequence over all 3^arity input rows: every ordered pair of
/// rows appears exactly once as consecutive entries. Length 9^arity + 1; the
/// first entry is the warm-up row.
[[nodiscard]] std::vector<std::vector<Trit>> canonical_pattern(std::size_t arity);

/// Row index <-> input trits, first input most significant.
[[nodiscard]] std::vector<Trit> row_inputs(std::size_t index, std::size_t arity);

struct VerifyRow {
    std::vector<Trit> inputs;
    std::vector<Trit> expected;
    std::vector<std::optional<Trit>> actual;
    bool outputs_ok = false;
    std::optional<std::set<std::string>> expected_path;
    std::set<std::string> actual_path;
    bool path_ok = true;
};

struct VerifyReport {
    std::string cell;
    std::vector<VerifyRow> rows;
    std::string error;  // simulation error, if any; every row fails then

    [[nodiscard]] std::size_t outputs_passed() const;
    [[nodiscard]] std::size_t paths_checked() const;
    [[nodiscard]] std::size_t paths_passed() const;
    [[nodiscard]] bool passed() const;
};

/// Simulates the canonical pattern and checks every occurrence of every row.
[[nodiscard]] VerifyReport exhaustive_verify(const Netlist& nl, const CellReference& ref);

/// One JSON object per cycle.
void write_trace_jsonl(std::ostream& os, const Netlist& nl, const SimTrace& trace);

}  // namespace tcnfet
