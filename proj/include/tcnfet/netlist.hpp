#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tcnfet/device.hpp"
#include "tcnfet/tech.hpp"
#include "tcnfet/ternary.hpp"

namespace tcnfet {

enum class NodeKind { Rail0, RailHalf, RailVdd, Input, Output, Internal, ClockRef };

[[nodiscard]] const char* to_string(NodeKind kind) noexcept;

/// Rail level of a rail kind, nullopt for every other kind.
[[nodiscard]] std::optional<Trit> rail_level(NodeKind kind) noexcept;
[[nodiscard]] NodeKind rail_kind(Trit level) noexcept;

struct Node {
    std::string name;
    NodeKind kind = NodeKind::Internal;
    double extra_cap = 0.0;  // farads
    /// Level an Output is driven to while precharging. Static outputs have none.
    std::optional<Trit> precharge;

    bool operator==(const Node&) const = default;
};

enum class Phase { Precharge, Evaluate };

[[nodiscard]] const char* to_string(Phase p) noexcept;

struct PhaseSchedule {
    static constexpr std::array<Phase, 2> phases{Phase::Precharge, Phase::Evaluate};
    double cycle_period = 1e-9;  // seconds; each phase lasts half of it
};

/// Immutable circuit graph. Nodes and devices are addressed by index; node
/// references inside devices are NodeIds into nodes().
class Netlist {
public:
    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] const std::string& source() const noexcept { return source_; }
    [[nodiscard]] const TechConfig& tech() const noexcept { return tech_; }
    [[nodiscard]] double vdd() const noexcept { return tech_.vdd; }
    [[nodiscard]] const ChiralityVector& default_chirality() const noexcept { return default_chirality_; }
    [[nodiscard]] PhaseSchedule schedule() const noexcept { return {tech_.period()}; }

    [[nodiscard]] std::span<const Node> nodes() const noexcept { return nodes_; }
    [[nodiscard]] std::span<const DeviceSpec> devices() const noexcept { return devices_; }
    [[nodiscard]] const Node& node(NodeId id) const { return nodes_.at(id.value); }
    [[nodiscard]] const DeviceSpec& device(std::size_t index) const { return devices_.at(index); }
    [[nodiscard]] std::optional<NodeId> find_node(std::string_view name) const;
    [[nodiscard]] std::optional<std::size_t> find_device(std::string_view name) const;

    /// Declaration order.
    [[nodiscard]] const std::vector<NodeId>& inputs() const noexcept { return inputs_; }
    [[nodiscard]] const std::vector<NodeId>& outputs() const noexcept { return outputs_; }

    [[nodiscard]] std::set<ChiralityVector> chiralities() const;
    [[nodiscard]] std::size_t distinct_chiralities() const { return chiralities().size(); }

    [[nodiscard]] Netlist with_tech(const TechConfig& tech) const;
    [[nodiscard]] Netlist with_vdd(double vdd) const;
    /// Replaces devices and nodes wholesale; topology indices must stay in range.
    [[nodiscard]] Netlist with_devices(std::vector<DeviceSpec> devices) const;
    [[nodiscard]] Netlist with_nodes(std::vector<Node> nodes) const;
    [[nodiscard]] Netlist with_default_chirality(const ChiralityVector& cv) const;

    bool operator==(const Netlist&) const = default;

private:
    friend class NetlistBuilder;
    Netlist() = default;
    void reindex();

    std::string name_;
    std::string source_;
    TechConfig tech_;
    ChiralityVector default_chirality_{19, 0};
    std::vector<Node> nodes_;
    std::vector<DeviceSpec> devices_;
    std::vector<NodeId> inputs_;
    std::vector<NodeId> outputs_;
    std::map<std::string, NodeId, std::less<>> node_index_;
    std::map<std::string, std::size_t, std::less<>> device_index_;
};

/// Incremental construction by name. Unknown node references and duplicate
/// names throw std::invalid_argument; structural invariants are left to validate().
class NetlistBuilder {
public:
    explicit NetlistBuilder(std::string name);

    NetlistBuilder& name(std::string text);
    NetlistBuilder& source(std::string text);
    NetlistBuilder& tech(const TechConfig& tech);
    NetlistBuilder& vdd(double v);
    NetlistBuilder& default_chirality(const ChiralityVector& cv);

    NodeId rail(std::string name, Trit level);
    NodeId clock(std::string name);
    NodeId input(std::string name);
    NodeId output(std::string name, std::optional<Trit> precharge, double extra_cap = 0.0);
    NodeId node(std::string name, double extra_cap = 0.0);

    struct DeviceArgs {
        std::string name;
        Polarity polarity = Polarity::N;
        std::string_view gate;
        std::string_view drain;
        std::string_view source;
        std::optional<ChiralityVector> chirality;  // default chirality when absent
        Role role = Role::Logic;
        int tubes = 3;
        double pitch = 20.0;
    };
    std::size_t device(const DeviceArgs& args);

    [[nodiscard]] bool has_node(std::string_view name) const { return nl_.find_node(name).has_value(); }
    [[nodiscard]] bool has_device(std::string_view name) const { return nl_.find_device(name).has_value(); }

    [[nodiscard]] Netlist build() const;
    /// Netlist under construction, without copying.
    [[nodiscard]] const Netlist& current() const noexcept { return nl_; }

private:
    NodeId add_node(Node n);
    NodeId resolve(std::string_view name) const;

    Netlist nl_;
};

struct Diagnostic {
    enum class Code {
        UnknownNode,
        DuplicateRail,
        MissingRail,
        InputDriven,
        MissingPrecharge,
        PrechargeLevelMismatch,
        UnexpectedPrecharge,
        MetallicChirality,
        BadGeometry,
        BadTechnology,
    };
    Code code;
    std::string message;
};

[[nodiscard]] const char* to_string(Diagnostic::Code code) noexcept;

/// One diagnostic per violated invariant; empty for a well-formed netlist.
[[nodiscard]] std::vector<Diagnostic> validate(const Netlist& nl);

/// Adds fanout x (one standard ternary inverter input) of load to every
/// output. Input buffers are ideal re-drive and need no devices. Fanout must be
/// 1, 2 or 4.
[[nodiscard]] Netlist wrap_testbench(const Netlist& nl, int fanout);

/// Rewrites every device of chirality `from` to `to`. Throws ChiralityError if
/// `to` is metallic.
[[nodiscard]] Netlist substitute_chirality(const Netlist& nl, const ChiralityVector& from,
                                           const ChiralityVector& to);

/// Per-node capacitance: base + explicit load + attached gate and junction caps.
class NodeCapModel {
public:
    explicit NodeCapModel(const Netlist& nl);
    explicit NodeCapModel(std::vector<double> caps) : caps_(std::move(caps)) {}

    [[nodiscard]] double operator[](NodeId id) const { return caps_.at(id.value); }
    [[nodiscard]] std::span<const double> values() const noexcept { return caps_; }
    [[nodiscard]] NodeCapModel scaled(double k) const;

private:
    std::vector<double> caps_;
};

/// Gate capacitance one device presents, including its variation knobs.
[[nodiscard]] double gate_capacitance(const DeviceSpec& dev, const TechConfig& tech);

}  // namespace tcnfet
