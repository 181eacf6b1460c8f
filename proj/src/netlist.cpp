#include "tcnfet/netlist.hpp"

#include <queue>
#include <stdexcept>

#include "tcnfet/error.hpp"

namespace tcnfet {

const char* to_string(NodeKind kind) noexcept
{
    switch (kind) {
    case NodeKind::Rail0: return "rail0";
    case NodeKind::RailHalf: return "rail_half";
    case NodeKind::RailVdd: return "rail_vdd";
    case NodeKind::Input: return "input";
    case NodeKind::Output: return "output";
    case NodeKind::Internal: return "internal";
    case NodeKind::ClockRef: return "clock";
    }
    return "?";
}

std::optional<Trit> rail_level(NodeKind kind) noexcept
{
    switch (kind) {
    case NodeKind::Rail0: return Trit{0};
    case NodeKind::RailHalf: return Trit{1};
    case NodeKind::RailVdd: return Trit{2};
    default: return std::nullopt;
    }
}

NodeKind rail_kind(Trit level) noexcept
{
    switch (level.value()) {
    case 0: return NodeKind::Rail0;
    case 1: return NodeKind::RailHalf;
    default: return NodeKind::RailVdd;
    }
}

const char* to_string(Phase p) noexcept
{
    return p == Phase::Precharge ? "precharge" : "evaluate";
}

const char* to_string(Diagnostic::Code code) noexcept
{
    using C = Diagnostic::Code;
    switch (code) {
    case C::UnknownNode: return "unknown-node";
    case C::DuplicateRail: return "duplicate-rail";
    case C::MissingRail: return "missing-rail";
    case C::InputDriven: return "input-driven";
    case C::MissingPrecharge: return "missing-precharge";
    case C::PrechargeLevelMismatch: return "precharge-level-mismatch";
    case C::UnexpectedPrecharge: return "unexpected-precharge";
    case C::MetallicChirality: return "metallic-chirality";
    case C::BadGeometry: return "bad-geometry";
    case C::BadTechnology: return "bad-technology";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Netlist

std::optional<NodeId> Netlist::find_node(std::string_view name) const
{
    if (auto it = node_index_.find(name); it != node_index_.end()) return it->second;
    return std::nullopt;
}

std::optional<std::size_t> Netlist::find_device(std::string_view name) const
{
    if (auto it = device_index_.find(name); it != device_index_.end()) return it->second;
    return std::nullopt;
}

std::set<ChiralityVector> Netlist::chiralities() const
{
    std::set<ChiralityVector> out;
    for (const auto& d : devices_) out.insert(d.chirality);
    return out;
}

void Netlist::reindex()
{
    node_index_.clear();
    device_index_.clear();
    inputs_.clear();
    outputs_.clear();
    for (std::uint32_t i = 0; i < nodes_.size(); ++i) {
        node_index_.emplace(nodes_[i].name, NodeId{i});
        if (nodes_[i].kind == NodeKind::Input) inputs_.push_back(NodeId{i});
        if (nodes_[i].kind == NodeKind::Output) outputs_.push_back(NodeId{i});
    }
    for (std::size_t i = 0; i < devices_.size(); ++i) device_index_.emplace(devices_[i].name, i);
}

Netlist Netlist::with_tech(const TechConfig& tech) const
{
    Netlist copy = *this;
    copy.tech_ = tech;
    return copy;
}

Netlist Netlist::with_vdd(double vdd) const
{
    TechConfig t = tech_;
    t.vdd = vdd;
    return with_tech(t);
}

Netlist Netlist::with_devices(std::vector<DeviceSpec> devices) const
{
    Netlist copy = *this;
    copy.devices_ = std::move(devices);
    copy.reindex();
    return copy;
}

Netlist Netlist::with_nodes(std::vector<Node> nodes) const
{
    if (nodes.size() != nodes_.size()) throw std::invalid_argument("node count must not change");
    Netlist copy = *this;
    copy.nodes_ = std::move(nodes);
    copy.reindex();
    return copy;
}

Netlist Netlist::with_default_chirality(const ChiralityVector& cv) const
{
    Netlist copy = *this;
    copy.default_chirality_ = cv;
    return copy;
}

// ---------------------------------------------------------------------------
// NetlistBuilder

NetlistBuilder::NetlistBuilder(std::string name)
{
    nl_.name_ = std::move(name);
}

NetlistBuilder& NetlistBuilder::name(std::string text)
{
    nl_.name_ = std::move(text);
    return *this;
}

NetlistBuilder& NetlistBuilder::source(std::string text)
{
    nl_.source_ = std::move(text);
    return *this;
}

NetlistBuilder& NetlistBuilder::tech(const TechConfig& tech)
{
    nl_.tech_ = tech;
    return *this;
}

NetlistBuilder& NetlistBuilder::vdd(double v)
{
    nl_.tech_.vdd = v;
    return *this;
}

NetlistBuilder& NetlistBuilder::default_chirality(const ChiralityVector& cv)
{
    nl_.default_chirality_ = cv;
    return *this;
}

NodeId NetlistBuilder::add_node(Node n)
{
    if (has_node(n.name)) throw std::invalid_argument("duplicate node '" + n.name + "'");
    const NodeId id{static_cast<std::uint32_t>(nl_.nodes_.size())};
    nl_.node_index_.emplace(n.name, id);
    if (n.kind == NodeKind::Input) nl_.inputs_.push_back(id);
    if (n.kind == NodeKind::Output) nl_.outputs_.push_back(id);
    nl_.nodes_.push_back(std::move(n));
    return id;
}

NodeId NetlistBuilder::rail(std::string name, Trit level)
{
    return add_node({std::move(name), rail_kind(level), 0.0, std::nullopt});
}

NodeId NetlistBuilder::clock(std::string name)
{
    return add_node({std::move(name), NodeKind::ClockRef, 0.0, std::nullopt});
}

NodeId NetlistBuilder::input(std::string name)
{
    return add_node({std::move(name), NodeKind::Input, 0.0, std::nullopt});
}

NodeId NetlistBuilder::output(std::string name, std::optional<Trit> precharge, double extra_cap)
{
    return add_node({std::move(name), NodeKind::Output, extra_cap, precharge});
}

NodeId NetlistBuilder::node(std::string name, double extra_cap)
{
    return add_node({std::move(name), NodeKind::Internal, extra_cap, std::nullopt});
}

NodeId NetlistBuilder::resolve(std::string_view name) const
{
    if (auto id = nl_.find_node(name)) return *id;
    throw std::invalid_argument("unknown node '" + std::string(name) + "'");
}

std::size_t NetlistBuilder::device(const DeviceArgs& args)
{
    if (has_device(args.name)) throw std::invalid_argument("duplicate device '" + args.name + "'");
    DeviceSpec d;
    d.name = args.name;
    d.polarity = args.polarity;
    d.chirality = args.chirality.value_or(nl_.default_chirality_);
    d.tubes = args.tubes;
    d.pitch = args.pitch;
    d.role = args.role;
    d.gate = resolve(args.gate);
    d.drain = resolve(args.drain);
    d.source = resolve(args.source);
    nl_.device_index_.emplace(d.name, nl_.devices_.size());
    nl_.devices_.push_back(std::move(d));
    return nl_.devices_.size() - 1;
}

Netlist NetlistBuilder::build() const
{
    return nl_;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

bool in_range(const Netlist& nl, NodeId id)
{
    return id.value < nl.nodes().size();
}

std::optional<Trit> rail_of(const Netlist& nl, NodeId id)
{
    return in_range(nl, id) ? rail_level(nl.node(id).kind) : std::nullopt;
}

}  // namespace

std::vector<Diagnostic> validate(const Netlist& nl)
{
    using C = Diagnostic::Code;
    std::vector<Diagnostic> out;
    auto report = [&](C code, std::string msg) { out.push_back({code, std::move(msg)}); };

    for (const auto& problem : nl.tech().check()) report(C::BadTechnology, problem);

    std::array<int, 3> rail_count{};
    for (const Node& n : nl.nodes()) {
        if (auto level = rail_level(n.kind)) ++rail_count[static_cast<std::size_t>(level->value())];
    }
    for (int level = 0; level < 3; ++level) {
        if (rail_count[static_cast<std::size_t>(level)] > 1) {
            report(C::DuplicateRail, "more than one rail at level " + std::to_string(level));
        }
    }

    bool topology_ok = true;
    for (const DeviceSpec& d : nl.devices()) {
        for (const NodeId t : {d.gate, d.drain, d.source}) {
            if (!in_range(nl, t)) {
                report(C::UnknownNode, "device " + d.name + " references node #" + std::to_string(t.value) +
                                           " which does not exist");
                topology_ok = false;
            }
        }
        if (d.tubes < 1) report(C::BadGeometry, "device " + d.name + " has fewer than one tube");
        if (!(d.pitch > 0.0)) report(C::BadGeometry, "device " + d.name + " has non-positive pitch");
        if (classify_conduction(d.chirality) == Conduction::Metallic) {
            report(C::MetallicChirality,
                   "device " + d.name + " uses metallic chirality (" + d.chirality.to_string() + ")");
        }
    }
    if (!topology_ok) return out;

    // Channel adjacency, ignoring conduction state.
    std::vector<std::vector<NodeId>> adj(nl.nodes().size());
    for (const DeviceSpec& d : nl.devices()) {
        adj[d.drain.value].push_back(d.source);
        adj[d.source.value].push_back(d.drain);
    }
    for (const NodeId in : nl.inputs()) {
        std::vector<bool> seen(nl.nodes().size(), false);
        std::queue<NodeId> todo;
        todo.push(in);
        seen[in.value] = true;
        bool reaches_rail = false;
        while (!todo.empty() && !reaches_rail) {
            const NodeId n = todo.front();
            todo.pop();
            for (const NodeId m : adj[n.value]) {
                if (seen[m.value]) continue;
                seen[m.value] = true;
                if (rail_of(nl, m)) {
                    reaches_rail = true;
                    break;
                }
                todo.push(m);
            }
        }
        if (reaches_rail) {
            report(C::InputDriven, "input " + nl.node(in).name + " has a channel path to a rail");
        }
    }

    for (const DeviceSpec& d : nl.devices()) {
        if (d.role != Role::Precharge) continue;
        const auto rd = rail_of(nl, d.drain);
        const auto rs = rail_of(nl, d.source);
        if (rd.has_value() == rs.has_value()) {
            report(C::UnexpectedPrecharge, "precharge device " + d.name + " must connect exactly one rail to a node");
            continue;
        }
        const NodeId target = rd ? d.source : d.drain;
        const Node& tn = nl.node(target);
        if (tn.kind == NodeKind::Output && !tn.precharge) {
            report(C::UnexpectedPrecharge, "static output " + tn.name + " is driven by precharge device " + d.name);
        }
    }

    for (const NodeId o : nl.outputs()) {
        const Node& on = nl.node(o);
        if (!on.precharge) continue;
        if (rail_count[static_cast<std::size_t>(on.precharge->value())] == 0) {
            report(C::MissingRail, "output " + on.name + " precharges to a rail that is not declared");
        }
        int drivers = 0;
        for (const DeviceSpec& d : nl.devices()) {
            if (d.role != Role::Precharge) continue;
            std::optional<Trit> level;
            if (d.drain == o) level = rail_of(nl, d.source);
            else if (d.source == o) level = rail_of(nl, d.drain);
            else continue;
            if (!level) continue;
            ++drivers;
            if (*level != *on.precharge) {
                report(C::PrechargeLevelMismatch, "precharge device " + d.name + " drives " + on.name +
                                                      " to level " + std::to_string(level->value()) +
                                                      " but the output declares " +
                                                      std::to_string(on.precharge->value()));
            }
        }
        if (drivers == 0) report(C::MissingPrecharge, "output " + on.name + " has no precharge device");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Transforms

Netlist wrap_testbench(const Netlist& nl, int fanout)
{
    if (fanout != 1 && fanout != 2 && fanout != 4) {
        throw std::invalid_argument("unsupported fanout " + std::to_string(fanout) + " (expected 1, 2 or 4)");
    }
    std::vector<Node> nodes(nl.nodes().begin(), nl.nodes().end());
    for (const NodeId o : nl.outputs()) nodes[o.value].extra_cap += fanout * nl.tech().c_sti_input;
    return nl.with_nodes(std::move(nodes));
}

Netlist substitute_chirality(const Netlist& nl, const ChiralityVector& from, const ChiralityVector& to)
{
    if (classify_conduction(to) == Conduction::Metallic) {
        throw ChiralityError("substitution target (" + to.to_string() + ") is metallic");
    }
    std::vector<DeviceSpec> devices(nl.devices().begin(), nl.devices().end());
    for (auto& d : devices) {
        if (d.chirality == from) d.chirality = to;
    }
    Netlist out = nl.with_devices(std::move(devices));
    if (nl.default_chirality() == from) out = out.with_default_chirality(to);
    return out;
}

// ---------------------------------------------------------------------------
// Capacitance

double gate_capacitance(const DeviceSpec& dev, const TechConfig& tech)
{
    return dev.tubes * dev.density_scale * tech.c_gate_per_tube / dev.oxide_scale;
}

NodeCapModel::NodeCapModel(const Netlist& nl)
{
    const TechConfig& tech = nl.tech();
    caps_.reserve(nl.nodes().size());
    for (const Node& n : nl.nodes()) caps_.push_back(tech.c_node_base + n.extra_cap);
    for (const DeviceSpec& d : nl.devices()) {
        caps_.at(d.gate.value) += gate_capacitance(d, tech);
        caps_.at(d.drain.value) += tech.c_junction;
        caps_.at(d.source.value) += tech.c_junction;
    }
}

NodeCapModel NodeCapModel::scaled(double k) const
{
    std::vector<double> c = caps_;
    for (double& v : c) v *= k;
    return NodeCapModel{std::move(c)};
}

}  // namespace tcnfet
