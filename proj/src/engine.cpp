#include "tcnfet/engine.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <ostream>
#include <queue>

#include "json.hpp"

#include "tcnfet/error.hpp"

namespace tcnfet {

namespace {

bool is_rail(NodeKind k)
{
    return rail_level(k).has_value();
}

bool is_source(NodeKind k)
{
    return is_rail(k) || k == NodeKind::Input || k == NodeKind::ClockRef;
}

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x)
    {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (b < a) std::swap(a, b);
        parent_[b] = a;
    }

private:
    std::vector<std::size_t> parent_;
};

/// Per-phase view of the netlist: fixed node voltages and device conduction.
class PhaseSolver {
public:
    PhaseSolver(const Netlist& nl, Phase phase, const std::vector<Trit>& inputs)
        : nl_(nl), phase_(phase), caps_(nl), fixed_(nl.nodes().size())
    {
        if (inputs.size() != nl.inputs().size()) {
            throw std::invalid_argument("expected " + std::to_string(nl.inputs().size()) + " input trits, got " +
                                        std::to_string(inputs.size()));
        }
        const double vdd = nl.vdd();
        for (std::size_t i = 0; i < fixed_.size(); ++i) {
            const Node& n = nl.nodes()[i];
            if (auto lvl = rail_level(n.kind)) fixed_[i] = vdd * lvl->value() / 2.0;
            if (n.kind == NodeKind::ClockRef) fixed_[i] = phase == Phase::Precharge ? 0.0 : vdd;
        }
        for (std::size_t k = 0; k < inputs.size(); ++k) fixed_[nl.inputs()[k].value] = vdd * inputs[k].value() / 2.0;
    }

    [[nodiscard]] const std::vector<std::optional<double>>& fixed() const { return fixed_; }

    [[nodiscard]] double gate_voltage(const DeviceSpec& d, const std::vector<double>& v) const
    {
        return std::clamp(v[d.gate.value], 0.0, nl_.vdd());
    }

    [[nodiscard]] bool conducts(const DeviceSpec& d, const std::vector<double>& v) const
    {
        switch (d.role) {
        case Role::Precharge: return phase_ == Phase::Precharge;
        case Role::Evaluate: return phase_ == Phase::Evaluate;
        case Role::Logic: break;
        }
        return switch_state(d, gate_voltage(d, v), nl_.vdd()) == SwitchState::On;
    }

    [[nodiscard]] double resistance(const DeviceSpec& d, const std::vector<double>& v) const
    {
        if (d.role != Role::Logic) return clocked_on_resistance(d, nl_.vdd(), nl_.tech());
        return on_resistance(d, gate_voltage(d, v), nl_.vdd(), nl_.tech());
    }

    [[nodiscard]] std::vector<bool> conduction(const std::vector<double>& v) const
    {
        std::vector<bool> on(nl_.devices().size());
        for (std::size_t i = 0; i < on.size(); ++i) on[i] = conducts(nl_.devices()[i], v);
        return on;
    }

    /// Groups nodes into conducting components, in ascending order of their
    /// smallest member.
    [[nodiscard]] std::vector<std::vector<std::size_t>> components(const std::vector<bool>& on) const
    {
        DisjointSets sets(nl_.nodes().size());
        for (std::size_t i = 0; i < on.size(); ++i) {
            if (on[i]) sets.unite(nl_.devices()[i].drain.value, nl_.devices()[i].source.value);
        }
        std::vector<std::vector<std::size_t>> groups(nl_.nodes().size());
        for (std::size_t n = 0; n < groups.size(); ++n) groups[sets.find(n)].push_back(n);
        std::erase_if(groups, [](const auto& g) { return g.empty(); });
        return groups;
    }

    struct NearestSource {
        std::vector<double> dist;
        std::vector<std::size_t> source;  // node index of the nearest source
    };

    /// Multi-source shortest resistance from every source in `members`.
    [[nodiscard]] NearestSource nearest(const std::vector<std::size_t>& members, const std::vector<bool>& on,
                                        const std::vector<double>& v) const
    {
        constexpr double inf = std::numeric_limits<double>::infinity();
        const std::size_t n = nl_.nodes().size();
        NearestSource r{std::vector<double>(n, inf), std::vector<std::size_t>(n, n)};
        using Item = std::pair<double, std::size_t>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
        for (const std::size_t m : members) {
            if (fixed_[m]) {
                r.dist[m] = 0.0;
                r.source[m] = m;
                queue.emplace(0.0, m);
            }
        }
        const auto adj = adjacency(on);
        while (!queue.empty()) {
            const auto [d, u] = queue.top();
            queue.pop();
            if (d > r.dist[u]) continue;
            if (fixed_[u] && r.source[u] != u) continue;
            for (const auto& [dev, w] : adj[u]) {
                if (fixed_[w]) continue;
                const double nd = d + resistance(nl_.devices()[dev], v);
                if (nd < r.dist[w] || (nd == r.dist[w] && r.source[u] < r.source[w])) {
                    r.dist[w] = nd;
                    r.source[w] = r.source[u];
                    queue.emplace(nd, w);
                }
            }
        }
        return r;
    }

    [[nodiscard]] std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency(
        const std::vector<bool>& on) const
    {
        std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(nl_.nodes().size());
        for (std::size_t i = 0; i < on.size(); ++i) {
            if (!on[i]) continue;
            const auto& d = nl_.devices()[i];
            adj[d.drain.value].emplace_back(i, d.source.value);
            adj[d.source.value].emplace_back(i, d.drain.value);
        }
        return adj;
    }

    [[nodiscard]] static std::vector<double> distinct_levels(const std::vector<std::size_t>& members,
                                                             const std::vector<std::optional<double>>& fixed)
    {
        std::vector<double> levels;
        for (const std::size_t m : members) {
            if (!fixed[m]) continue;
            const double lvl = *fixed[m];
            const bool seen =
                std::any_of(levels.begin(), levels.end(), [&](double x) { return std::abs(x - lvl) <= kVoltageTolerance; });
            if (!seen) levels.push_back(lvl);
        }
        std::sort(levels.begin(), levels.end());
        return levels;
    }

    /// One relaxation step: new voltages from the conduction implied by `v`.
    [[nodiscard]] std::vector<double> step(const std::vector<double>& v) const
    {
        const auto on = conduction(v);
        std::vector<double> out = v;
        for (const auto& members : components(on)) {
            const auto levels = distinct_levels(members, fixed_);
            if (levels.size() == 1) {
                for (const std::size_t m : members) out[m] = fixed_[m] ? *fixed_[m] : levels.front();
            } else if (levels.empty()) {
                // Shared charge relative to the first member, so equal voltages stay exact.
                const double ref = v[members.front()];
                double q = 0.0;
                double c = 0.0;
                for (const std::size_t m : members) {
                    q += caps_.values()[m] * (v[m] - ref);
                    c += caps_.values()[m];
                }
                for (const std::size_t m : members) out[m] = ref + q / c;
            } else {
                const auto near = nearest(members, on, v);
                for (const std::size_t m : members) {
                    out[m] = fixed_[m] ? *fixed_[m] : *fixed_[near.source[m]];
                }
            }
        }
        return out;
    }

    [[nodiscard]] std::vector<ContentionIncident> contention(const std::vector<double>& v) const
    {
        const auto on = conduction(v);
        std::vector<ContentionIncident> out;
        for (const auto& members : components(on)) {
            if (distinct_levels(members, fixed_).size() < 2) continue;
            const auto near = nearest(members, on, v);
            ContentionIncident inc;
            for (const std::size_t m : members) inc.component.push_back(NodeId{static_cast<std::uint32_t>(m)});
            inc.resistance = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < on.size(); ++i) {
                if (!on[i]) continue;
                const auto& d = nl_.devices()[i];
                const std::size_t a = d.drain.value;
                const std::size_t b = d.source.value;
                if (near.source[a] >= fixed_.size() || near.source[b] >= fixed_.size()) continue;
                const double la = *fixed_[near.source[a]];
                const double lb = *fixed_[near.source[b]];
                if (std::abs(la - lb) <= kVoltageTolerance) continue;
                const double r = near.dist[a] + resistance(d, v) + near.dist[b];
                if (r < inc.resistance) {
                    inc.resistance = r;
                    inc.low_level = std::min(la, lb);
                    inc.high_level = std::max(la, lb);
                }
            }
            out.push_back(std::move(inc));
        }
        return out;
    }

private:
    const Netlist& nl_;
    Phase phase_;
    NodeCapModel caps_;
    std::vector<std::optional<double>> fixed_;
};

}  // namespace

std::size_t SimTrace::contention_count() const
{
    std::size_t n = 0;
    for (std::size_t c = warmup; c < cycles.size(); ++c) {
        for (const auto& p : cycles[c].phases) n += p.contention.size();
    }
    return n;
}

SimState initial_state(const Netlist& nl)
{
    SimState s;
    s.voltages.assign(nl.nodes().size(), 0.0);
    for (std::size_t i = 0; i < s.voltages.size(); ++i) {
        const Node& n = nl.nodes()[i];
        if (auto lvl = rail_level(n.kind)) s.voltages[i] = nl.vdd() * lvl->value() / 2.0;
        if (n.kind == NodeKind::Output && n.precharge) s.voltages[i] = nl.vdd() * n.precharge->value() / 2.0;
    }
    return s;
}

SimState solve_phase(const Netlist& nl, const SimState& state, Phase phase, const std::vector<Trit>& inputs,
                     PhaseRecord* record)
{
    const PhaseSolver solver(nl, phase, inputs);
    std::vector<double> v = state.voltages;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (solver.fixed()[i]) v[i] = *solver.fixed()[i];
    }
    const std::size_t bound = std::max<std::size_t>(4, 2 * nl.devices().size());
    std::size_t iterations = 0;
    for (;;) {
        ++iterations;
        auto next = solver.step(v);
        bool changed = false;
        for (std::size_t i = 0; i < v.size() && !changed; ++i) changed = std::abs(next[i] - v[i]) > kVoltageTolerance;
        v = std::move(next);
        if (!changed) break;
        if (iterations >= bound) {
            throw OscillationError("phase " + std::string(to_string(phase)) + " of '" + nl.name() +
                                   "' did not settle within " + std::to_string(bound) + " iterations");
        }
    }

    SimState out{v, phase, state.cycle_index};
    if (record) {
        record->phase = phase;
        record->voltages = v;
        record->iterations = iterations;
        record->conducting.clear();
        const auto on = solver.conduction(v);
        for (std::size_t i = 0; i < on.size(); ++i) {
            if (on[i]) record->conducting.push_back(i);
        }
        record->swings.clear();
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (is_rail(nl.nodes()[i].kind)) continue;
            const double dv = std::abs(v[i] - state.voltages[i]);
            if (dv > kVoltageTolerance) record->swings.push_back({NodeId{static_cast<std::uint32_t>(i)}, dv});
        }
        record->contention = solver.contention(v);
    }
    return out;
}

SimState run_cycle(const Netlist& nl, const SimState& state, const std::vector<Trit>& inputs, CycleTrace& trace)
{
    trace.inputs = inputs;
    SimState s = solve_phase(nl, state, Phase::Precharge, inputs, &trace.phases[0]);
    s = solve_phase(nl, s, Phase::Evaluate, inputs, &trace.phases[1]);
    const VoltageLevelMap levels(nl.vdd(), nl.vdd() / 8.0);
    trace.outputs.clear();
    for (const NodeId o : nl.outputs()) {
        try {
            trace.outputs.emplace_back(levels.to_trit(s.voltages[o.value]));
        } catch (const IndeterminateLevel&) {
            trace.outputs.emplace_back(std::nullopt);
        }
    }
    trace.active = active_devices(nl, trace.phases[1]);
    return s;
}

SimTrace run_sequence(const Netlist& nl, const std::vector<std::vector<Trit>>& sequence, std::size_t warmup)
{
    if (sequence.empty()) throw std::invalid_argument("input sequence is empty");
    if (warmup >= sequence.size()) throw std::invalid_argument("warm-up covers the whole sequence");
    SimTrace trace;
    trace.warmup = warmup;
    trace.cycles.resize(sequence.size());
    SimState s = initial_state(nl);
    for (std::size_t c = 0; c < sequence.size(); ++c) {
        s.cycle_index = c;
        s = run_cycle(nl, s, sequence[c], trace.cycles[c]);
    }
    return trace;
}

std::vector<ConductingPath> conducting_paths(const Netlist& nl, const PhaseRecord& evaluate, NodeId output)
{
    constexpr std::size_t kMaxPaths = 4096;
    const auto nodes = nl.nodes();
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(nodes.size());
    for (const std::size_t i : evaluate.conducting) {
        const auto& d = nl.device(i);
        adj[d.drain.value].emplace_back(i, d.source.value);
        adj[d.source.value].emplace_back(i, d.drain.value);
    }
    std::vector<ConductingPath> paths;
    std::vector<bool> visited(nodes.size());
    ConductingPath cur{output, {}, {output}};
    visited[output.value] = true;

    std::function<void(std::size_t)> walk = [&](std::size_t u) {
        for (const auto& [dev, w] : adj[u]) {
            if (visited[w] || paths.size() >= kMaxPaths) continue;
            const NodeKind k = nodes[w].kind;
            if (k == NodeKind::Output) continue;
            cur.devices.push_back(dev);
            cur.nodes.push_back(NodeId{static_cast<std::uint32_t>(w)});
            if (is_source(k)) {
                paths.push_back(cur);
            } else {
                visited[w] = true;
                walk(w);
                visited[w] = false;
            }
            cur.devices.pop_back();
            cur.nodes.pop_back();
        }
    };
    walk(output.value);
    return paths;
}

std::vector<std::size_t> active_devices(const Netlist& nl, const PhaseRecord& evaluate)
{
    std::set<std::size_t> active;
    for (const NodeId o : nl.outputs()) {
        const auto paths = conducting_paths(nl, evaluate, o);
        if (paths.empty()) {
            for (std::size_t i = 0; i < nl.devices().size(); ++i) {
                const auto& d = nl.device(i);
                if (d.role == Role::Precharge && (d.drain == o || d.source == o)) active.insert(i);
            }
            continue;
        }
        for (const auto& p : paths) {
            for (const std::size_t i : p.devices) {
                if (nl.device(i).role == Role::Logic) active.insert(i);
            }
        }
    }
    return {active.begin(), active.end()};
}

std::vector<Trit> row_inputs(std::size_t index, std::size_t arity)
{
    std::vector<Trit> out(arity);
    for (std::size_t k = arity; k-- > 0;) {
        out[k] = Trit{static_cast<int>(index % 3)};
        index /= 3;
    }
    return out;
}

std::vector<std::vector<Trit>> canonical_pattern(std::size_t arity)
{
    std::size_t m = 1;
    for (std::size_t i = 0; i < arity; ++i) m *= 3;
    // Lyndon-word construction of the order-2 de Bruijn sequence over m symbols.
    constexpr std::size_t n = 2;
    std::vector<std::size_t> a(n + 1, 0);
    std::vector<std::size_t> seq;
    std::function<void(std::size_t, std::size_t)> db = [&](std::size_t t, std::size_t p) {
        if (t > n) {
            if (n % p == 0) seq.insert(seq.end(), a.begin() + 1, a.begin() + static_cast<std::ptrdiff_t>(p) + 1);
            return;
        }
        a[t] = a[t - p];
        db(t + 1, p);
        for (std::size_t j = a[t - p] + 1; j < m; ++j) {
            a[t] = j;
            db(t + 1, t);
        }
    };
    db(1, 1);
    seq.push_back(seq.front());
    std::vector<std::vector<Trit>> out;
    out.reserve(seq.size());
    for (const std::size_t s : seq) out.push_back(row_inputs(s, arity));
    return out;
}

std::size_t VerifyReport::outputs_passed() const
{
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const VerifyRow& r) { return r.outputs_ok; }));
}

std::size_t VerifyReport::paths_checked() const
{
    return static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [](const VerifyRow& r) { return r.expected_path.has_value(); }));
}

std::size_t VerifyReport::paths_passed() const
{
    return static_cast<std::size_t>(std::count_if(
        rows.begin(), rows.end(), [](const VerifyRow& r) { return r.expected_path.has_value() && r.path_ok; }));
}

bool VerifyReport::passed() const
{
    return error.empty() && outputs_passed() == rows.size() && paths_passed() == paths_checked();
}

VerifyReport exhaustive_verify(const Netlist& nl, const CellReference& ref)
{
    VerifyReport report;
    report.cell = ref.cell;
    std::size_t combos = 1;
    for (std::size_t i = 0; i < ref.arity; ++i) combos *= 3;
    for (std::size_t r = 0; r < combos; ++r) {
        VerifyRow row;
        row.inputs = row_inputs(r, ref.arity);
        row.expected = ref.eval(row.inputs);
        row.outputs_ok = false;
        if (auto it = ref.on_paths.find(row.inputs); it != ref.on_paths.end()) row.expected_path = it->second;
        report.rows.push_back(std::move(row));
    }
    if (nl.inputs().size() != ref.arity) {
        report.error = "netlist has " + std::to_string(nl.inputs().size()) + " inputs, reference expects " +
                       std::to_string(ref.arity);
        for (auto& row : report.rows) row.path_ok = false;
        return report;
    }

    SimTrace trace;
    try {
        trace = run_sequence(nl, canonical_pattern(ref.arity), 1);
    } catch (const std::exception& e) {
        report.error = e.what();
        for (auto& row : report.rows) row.path_ok = false;
        return report;
    }

    std::vector<bool> seen(combos);
    for (std::size_t c = trace.warmup; c < trace.cycles.size(); ++c) {
        const CycleTrace& cyc = trace.cycles[c];
        std::size_t index = 0;
        for (const Trit t : cyc.inputs) index = index * 3 + static_cast<std::size_t>(t.value());
        VerifyRow& row = report.rows[index];

        bool out_ok = cyc.outputs.size() == row.expected.size();
        for (std::size_t k = 0; out_ok && k < row.expected.size(); ++k) out_ok = cyc.outputs[k] == row.expected[k];
        std::set<std::string> names;
        for (const std::size_t i : cyc.active) names.insert(nl.device(i).name);
        const bool path_ok = !row.expected_path || names == *row.expected_path;

        if (!seen[index]) {
            seen[index] = true;
            row.outputs_ok = out_ok;
            row.path_ok = path_ok;
            row.actual = cyc.outputs;
            row.actual_path = std::move(names);
            continue;
        }
        // Keep the first failing occurrence for the report.
        if (row.outputs_ok && !out_ok) row.actual = cyc.outputs;
        if (row.path_ok && !path_ok) row.actual_path = std::move(names);
        row.outputs_ok = row.outputs_ok && out_ok;
        row.path_ok = row.path_ok && path_ok;
    }
    return report;
}

void write_trace_jsonl(std::ostream& os, const Netlist& nl, const SimTrace& trace)
{
    using json = nlohmann::ordered_json;
    auto trits = [](const std::vector<Trit>& ts) {
        std::string s;
        for (const Trit t : ts) s.push_back(t.to_char());
        return s;
    };
    for (std::size_t c = 0; c < trace.cycles.size(); ++c) {
        const CycleTrace& cyc = trace.cycles[c];
        json rec;
        rec["cycle"] = c;
        rec["warmup"] = c < trace.warmup;
        rec["inputs"] = trits(cyc.inputs);
        std::string outs;
        for (const auto& o : cyc.outputs) outs.push_back(o ? o->to_char() : 'x');
        rec["outputs"] = outs;
        json phases = json::array();
        for (const PhaseRecord& p : cyc.phases) {
            json jp;
            jp["phase"] = to_string(p.phase);
            jp["iterations"] = p.iterations;
            json cond = json::array();
            for (const std::size_t i : p.conducting) cond.push_back(nl.device(i).name);
            jp["conducting"] = std::move(cond);
            json swings = json::array();
            for (const SwingEvent& s : p.swings) swings.push_back({{"node", nl.node(s.node).name}, {"dv", s.delta}});
            jp["swings"] = std::move(swings);
            json cont = json::array();
            for (const ContentionIncident& inc : p.contention) {
                json nodes = json::array();
                for (const NodeId n : inc.component) nodes.push_back(nl.node(n).name);
                cont.push_back({{"nodes", std::move(nodes)},
                                {"low_v", inc.low_level},
                                {"high_v", inc.high_level},
                                {"resistance_ohm", inc.resistance}});
            }
            jp["contention"] = std::move(cont);
            phases.push_back(std::move(jp));
        }
        rec["phases"] = std::move(phases);
        json active = json::array();
        for (const std::size_t i : cyc.active) active.push_back(nl.device(i).name);
        rec["active"] = std::move(active);
        os << rec.dump() << '\n';
    }
}

}  // namespace tcnfet
