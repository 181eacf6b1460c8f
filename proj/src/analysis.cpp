#include "tcnfet/analysis.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace tcnfet {

double elmore_sum(std::span<const RcStage> stages) noexcept
{
    double t = 0.0;
    for (const RcStage& s : stages) t += s.resistance * s.capacitance;
    return t;
}

std::vector<RcStage> path_stages(const Netlist& nl, const PhaseRecord& evaluate, const ConductingPath& path,
                                 const NodeCapModel& caps)
{
    std::vector<RcStage> stages;
    for (std::size_t j = path.devices.size(); j-- > 0;) {
        const DeviceSpec& d = nl.device(path.devices[j]);
        if (d.role != Role::Logic) continue;
        const double vg = std::clamp(evaluate.voltages[d.gate.value], 0.0, nl.vdd());
        stages.push_back({on_resistance(d, vg, nl.vdd(), nl.tech()), caps[path.nodes[j]]});
    }
    return stages;
}

DelayResult critical_path_delay(const Netlist& nl, const SimTrace& trace, const NodeCapModel& caps)
{
    DelayResult out;
    for (const NodeId o : nl.outputs()) out.per_output.push_back({nl.node(o).name, 0.0});
    for (std::size_t c = trace.warmup; c < trace.cycles.size(); ++c) {
        const PhaseRecord& ev = trace.cycles[c].evaluate();
        for (std::size_t k = 0; k < nl.outputs().size(); ++k) {
            const auto paths = conducting_paths(nl, ev, nl.outputs()[k]);
            if (paths.empty()) continue;
            double best = std::numeric_limits<double>::infinity();
            const ConductingPath* best_path = nullptr;
            for (const auto& p : paths) {
                const double t = elmore_sum(path_stages(nl, ev, p, caps));
                if (t < best) {
                    best = t;
                    best_path = &p;
                }
            }
            out.per_output[k].delay = std::max(out.per_output[k].delay, best);
            if (best > out.seconds) {
                out.seconds = best;
                out.output = out.per_output[k].output;
                out.cycle = c;
                out.devices.clear();
                for (const std::size_t i : best_path->devices) out.devices.push_back(nl.device(i).name);
            }
        }
    }
    return out;
}

std::vector<NodeActivity> node_activity(const Netlist& nl, const SimTrace& trace, const NodeCapModel& caps)
{
    const auto nodes = nl.nodes();
    std::vector<std::size_t> count(nodes.size());
    std::vector<double> dv2(nodes.size());
    for (std::size_t c = trace.warmup; c < trace.cycles.size(); ++c) {
        for (const PhaseRecord& p : trace.cycles[c].phases) {
            for (const SwingEvent& s : p.swings) {
                ++count[s.node.value];
                dv2[s.node.value] += s.delta * s.delta;
            }
        }
    }
    const double measured = static_cast<double>(trace.measured_cycles());
    std::vector<NodeActivity> out;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const NodeKind k = nodes[i].kind;
        if (rail_level(k) || k == NodeKind::Input || k == NodeKind::ClockRef) continue;
        const NodeId id{static_cast<std::uint32_t>(i)};
        NodeActivity a{id, count[i] / measured, count[i] ? dv2[i] / static_cast<double>(count[i]) : 0.0, caps[id]};
        out.push_back(a);
    }
    return out;
}

double dynamic_power(std::span<const NodeActivity> activity, double frequency)
{
    double p = 0.0;
    for (const NodeActivity& a : activity) p += a.alpha * frequency * a.capacitance * a.mean_dv2;
    return p;
}

double dynamic_power(const Netlist& nl, const SimTrace& trace, const NodeCapModel& caps, double frequency)
{
    if (trace.measured_cycles() == 0) throw std::invalid_argument("trace has no measured cycles");
    return dynamic_power(node_activity(nl, trace, caps), frequency);
}

double contention_current(const SimTrace& trace, double vdd)
{
    if (trace.measured_cycles() == 0) return 0.0;
    double sum = 0.0;
    for (std::size_t c = trace.warmup; c < trace.cycles.size(); ++c) {
        for (const PhaseRecord& p : trace.cycles[c].phases) {
            for (const ContentionIncident& inc : p.contention) sum += 0.5 * vdd / inc.resistance;
        }
    }
    return sum / static_cast<double>(trace.measured_cycles());
}

double static_power(std::size_t devices, double contention, const TechConfig& tech)
{
    const double leak = static_cast<double>(devices) * (tech.i_sub + tech.i_gate + tech.i_junct);
    return (leak + contention) * tech.vdd;
}

double static_power(const Netlist& nl, const SimTrace& trace, const TechConfig& tech)
{
    return static_power(nl.devices().size(), contention_current(trace, tech.vdd), tech);
}

Metrics combine_metrics(double dynamic, double stat, double delay)
{
    Metrics m;
    m.dynamic_power = dynamic;
    m.static_power = stat;
    m.avg_power = dynamic + stat;
    m.worst_delay = delay;
    m.pdp = m.avg_power * delay;
    m.edp = m.pdp * delay;
    return m;
}

Metrics total_metrics(const Netlist& nl, const SimTrace& trace, const NodeCapModel& caps, const TechConfig& tech)
{
    const DelayResult delay = critical_path_delay(nl, trace, caps);
    Metrics m = combine_metrics(dynamic_power(nl, trace, caps, tech.frequency), static_power(nl, trace, tech),
                                delay.seconds);
    m.contention_current = contention_current(trace, tech.vdd);
    m.contention_incidents = trace.contention_count();
    m.delay = delay;
    return m;
}

Metrics run_pattern_analysis(const Netlist& nl, int fanout)
{
    const Netlist wrapped = wrap_testbench(nl, fanout);
    const SimTrace trace = run_sequence(wrapped, canonical_pattern(wrapped.inputs().size()), 1);
    return total_metrics(wrapped, trace, NodeCapModel(wrapped), wrapped.tech());
}

std::vector<std::string> functionality_at_risk(const Netlist& nl, double vdd)
{
    std::vector<std::string> out;
    const double nominal = nl.vdd();
    for (const DeviceSpec& d : nl.devices()) {
        if (d.role != Role::Logic) continue;
        for (int level = 0; level <= 2; ++level) {
            const auto a = switch_state(d, nominal * level / 2.0, nominal);
            const auto b = switch_state(d, vdd * level / 2.0, vdd);
            if (a != b) {
                std::ostringstream os;
                os << "FunctionalityAtRisk: " << d.name << " (" << to_string(d.polarity) << ' '
                   << d.chirality.to_string() << ") is " << to_string(b) << " at level " << level << " with vdd "
                   << vdd << ", " << to_string(a) << " at vdd " << nominal;
                out.push_back(os.str());
            }
        }
    }
    return out;
}

namespace {

SweepPoint analyze_point(const Netlist& nl, int fanout, const CellReference* ref)
{
    SweepPoint p;
    p.vdd = nl.vdd();
    p.fanout = fanout;
    p.metrics = run_pattern_analysis(nl, fanout);
    if (ref) p.functional = exhaustive_verify(nl, *ref).passed();
    return p;
}

}  // namespace

std::vector<SweepPoint> sweep_vdd(const Netlist& nl, const std::vector<double>& vdds, int fanout,
                                  const CellReference* ref)
{
    if (vdds.empty()) throw std::invalid_argument("vdd list is empty");
    std::vector<SweepPoint> out;
    for (const double v : vdds) {
        if (!(v > 0.0)) throw std::invalid_argument("vdd must be positive");
        SweepPoint p = analyze_point(nl.with_vdd(v), fanout, ref);
        p.at_risk = functionality_at_risk(nl, v);
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<SweepPoint> sweep_fanout(const Netlist& nl, const std::vector<int>& fanouts, const CellReference* ref)
{
    if (fanouts.empty()) throw std::invalid_argument("fanout list is empty");
    std::vector<SweepPoint> out;
    for (const int fo : fanouts) out.push_back(analyze_point(nl, fo, ref));
    return out;
}

std::vector<Substitution> multiplier_scenarios()
{
    return {
        {"(28,0) substituted with (19,0)", ChiralityVector{28, 0}, ChiralityVector{19, 0}},
        {"(19,0) substituted with (28,0)", ChiralityVector{19, 0}, ChiralityVector{28, 0}},
    };
}

std::vector<ScenarioResult> scenario_compare(const Netlist& base, const std::vector<Substitution>& substitutions,
                                             const CellReference* ref)
{
    auto run = [&](std::string label, const Netlist& nl) {
        ScenarioResult r;
        r.label = std::move(label);
        r.metrics = run_pattern_analysis(nl, 4);
        r.distinct_chiralities = nl.distinct_chiralities();
        if (ref) r.verify = exhaustive_verify(nl, *ref);
        return r;
    };
    std::vector<ScenarioResult> out;
    out.push_back(run("proposed", base));
    for (const Substitution& s : substitutions) out.push_back(run(s.label, substitute_chirality(base, s.from, s.to)));
    return out;
}

}  // namespace tcnfet
