#include <catch_amalgamated.hpp>

#include "tcnfet/analysis.hpp"
#include "tcnfet/builtins.hpp"

using namespace tcnfet;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

struct Run {
    Netlist nl;
    SimTrace trace;
    NodeCapModel caps;
};

Run pattern_run(const Netlist& nl, int fanout)
{
    Netlist w = wrap_testbench(nl, fanout);
    SimTrace t = run_sequence(w, canonical_pattern(w.inputs().size()), 1);
    NodeCapModel caps(w);
    return {std::move(w), std::move(t), std::move(caps)};
}

TechConfig leakless(TechConfig t)
{
    t.i_sub = t.i_gate = t.i_junct = 0.0;
    return t;
}

}  // namespace

TEST_CASE("Elmore sums")
{
    const std::vector<RcStage> one{{10e3, 1e-15}};
    CHECK_THAT(elmore_sum(one), WithinRel(10e-12, 1e-12));
    const std::vector<RcStage> two{{10e3, 1e-15}, {10e3, 2e-15}};
    CHECK_THAT(elmore_sum(two), WithinRel(30e-12, 1e-12));
    CHECK(elmore_sum({}) == 0.0);

    std::vector<RcStage> joined = one;
    joined.insert(joined.end(), two.begin(), two.end());
    CHECK_THAT(elmore_sum(joined), WithinRel(elmore_sum(one) + elmore_sum(two), 1e-15));
}

TEST_CASE("dynamic power from activity")
{
    const std::vector<NodeActivity> one{{NodeId{0}, 1.0, 0.45 * 0.45, 1e-15}};
    CHECK_THAT(dynamic_power(one, 1e9), WithinRel(202.5e-9, 1e-12));
    CHECK_THAT(dynamic_power(one, 2e9), WithinRel(2 * dynamic_power(one, 1e9), 1e-15));
    const std::vector<NodeActivity> idle{{NodeId{0}, 0.0, 0.0, 1e-15}};
    CHECK(dynamic_power(idle, 1e9) == 0.0);

    // A static input held constant never swings anything.
    const Netlist nti = build_nti();
    const SimTrace held = run_sequence(nti, {{Trit{1}}, {Trit{1}}, {Trit{1}}}, 1);
    CHECK(dynamic_power(nti, held, NodeCapModel(nti), 1e9) == 0.0);
    CHECK_THROWS_AS(dynamic_power(nti, run_sequence(nti, {{Trit{1}}}, 1), NodeCapModel(nti), 1e9),
                    std::invalid_argument);
}

TEST_CASE("static power")
{
    TechConfig t = leakless(TechConfig{});
    CHECK(static_power(10, 0.0, t) == 0.0);
    t.i_sub = 0.1e-9;
    CHECK_THAT(static_power(10, 0.0, t), WithinRel(0.9e-9, 1e-12));

    const Run tha = pattern_run(build_tha(), 4);
    CHECK(contention_current(tha.trace, tha.nl.vdd()) == 0.0);
    const double leak = 36 * (tha.nl.tech().i_sub + tha.nl.tech().i_gate + tha.nl.tech().i_junct) * tha.nl.vdd();
    CHECK_THAT(static_power(tha.nl, tha.trace, tha.nl.tech()), WithinRel(leak, 1e-12));
}

TEST_CASE("metric arithmetic")
{
    const Metrics zero = combine_metrics(0.0, 0.0, 0.0);
    CHECK(zero.avg_power == 0.0);
    CHECK(zero.pdp == 0.0);
    CHECK(zero.edp == 0.0);

    const Metrics m = combine_metrics(80.0e-9, 4.84e-9, 73.25e-12);
    CHECK(m.avg_power == 80.0e-9 + 4.84e-9);
    CHECK_THAT(m.pdp, WithinAbs(6.21e-18, 0.005e-18));
    CHECK_THAT(m.edp, WithinRel(455e-30, 0.01));
    CHECK(m.edp == m.pdp * m.worst_delay);

    const Run tha = pattern_run(build_tha(), 4);
    const Metrics t = total_metrics(tha.nl, tha.trace, tha.caps, tha.nl.tech());
    CHECK(t.avg_power == t.dynamic_power + t.static_power);
    CHECK(t.pdp == t.avg_power * t.worst_delay);
    CHECK(t.edp == t.pdp * t.worst_delay);
    CHECK(t.dynamic_power > 0.0);
    CHECK(t.worst_delay > 0.0);
    CHECK(t.contention_incidents == 0);
    CHECK_FALSE(t.delay.devices.empty());
}

TEST_CASE("critical path is reported output side first")
{
    const Run tha = pattern_run(build_tha(), 4);
    const DelayResult d = critical_path_delay(tha.nl, tha.trace, tha.caps);
    REQUIRE_FALSE(d.devices.empty());
    CHECK((d.output == "sum" || d.output == "carry"));
    CHECK(d.cycle >= 1);
    double worst = 0.0;
    for (const OutputDelay& o : d.per_output) worst = std::max(worst, o.delay);
    CHECK(worst == d.seconds);

    const auto paths = conducting_paths(tha.nl, tha.trace.cycles[d.cycle].evaluate(), *tha.nl.find_node(d.output));
    bool found = false;
    for (const auto& p : paths) {
        std::vector<std::string> names;
        for (const std::size_t i : p.devices) names.push_back(tha.nl.device(i).name);
        if (names == d.devices) {
            found = true;
            CHECK_THAT(elmore_sum(path_stages(tha.nl, tha.trace.cycles[d.cycle].evaluate(), p, tha.caps)),
                       WithinRel(d.seconds, 1e-12));
        }
    }
    CHECK(found);
}

TEST_CASE("an empty trace has zero delay")
{
    const Netlist nti = build_nti();
    SimTrace empty;
    const DelayResult d = critical_path_delay(nti, empty, NodeCapModel(nti));
    CHECK(d.seconds == 0.0);
    CHECK(d.devices.empty());
}

TEST_CASE("activity factors are bounded")
{
    for (const char* name : {"tha", "tmul"}) {
        const Run r = pattern_run(*builtin_netlist(name), 4);
        for (const NodeActivity& a : node_activity(r.nl, r.trace, r.caps)) {
            CHECK(a.alpha >= 0.0);
            CHECK(a.alpha <= 2.0);
            CHECK(a.mean_dv2 <= r.nl.vdd() * r.nl.vdd() + 1e-15);
            const NodeKind k = r.nl.node(a.node).kind;
            CHECK_FALSE(rail_level(k).has_value());
            CHECK(k != NodeKind::Input);
        }
    }
}

TEST_CASE("metrics grow with fanout")
{
    for (const char* name : {"tha", "tmul"}) {
        CAPTURE(name);
        const auto pts = sweep_fanout(*builtin_netlist(name), {1, 2, 4});
        REQUIRE(pts.size() == 3);
        for (std::size_t i = 1; i < pts.size(); ++i) {
            CHECK(pts[i].metrics.avg_power >= pts[i - 1].metrics.avg_power);
            CHECK(pts[i].metrics.dynamic_power >= pts[i - 1].metrics.dynamic_power);
            CHECK(pts[i].metrics.worst_delay >= pts[i - 1].metrics.worst_delay);
        }
    }
    const Metrics a = run_pattern_analysis(build_tha(), 4);
    const Metrics b = run_pattern_analysis(build_tha(), 4);
    CHECK(a.pdp == b.pdp);
    CHECK(a.delay.devices == b.delay.devices);
}

TEST_CASE("supply sweep trends")
{
    for (const char* name : {"tha", "tmul"}) {
        CAPTURE(name);
        const CellReference ref = *builtin_reference(name);
        const auto pts = sweep_vdd(*builtin_netlist(name), {0.8, 0.9, 1.0}, 4, &ref);
        REQUIRE(pts.size() == 3);
        for (std::size_t i = 1; i < pts.size(); ++i) {
            CHECK(pts[i].metrics.dynamic_power > pts[i - 1].metrics.dynamic_power);
            CHECK(pts[i].metrics.worst_delay < pts[i - 1].metrics.worst_delay);
        }
        for (const auto& p : pts) {
            CHECK(p.functional == true);
            CHECK(p.at_risk.empty());
        }
    }
    CHECK_THROWS_AS(sweep_vdd(build_tha(), {}), std::invalid_argument);
    CHECK_THROWS_AS(sweep_fanout(build_tha(), {}), std::invalid_argument);
}

TEST_CASE("low supply flags devices at risk")
{
    const auto risk = functionality_at_risk(build_tha(), 0.5);
    REQUIRE_FALSE(risk.empty());
    for (const auto& r : risk) CHECK(r.rfind("FunctionalityAtRisk:", 0) == 0);
    CHECK(functionality_at_risk(build_tha(), 0.9).empty());
}

TEST_CASE("capacitance scaling law", "[property]")
{
    const Run r = pattern_run(build_tmul(), 4);
    const TechConfig t = leakless(r.nl.tech());
    const Metrics base = total_metrics(r.nl, r.trace, r.caps, t);
    REQUIRE(base.pdp > 0.0);
    for (const double k : {0.5, 2.0, 3.0}) {
        const Metrics m = total_metrics(r.nl, r.trace, r.caps.scaled(k), t);
        CHECK_THAT(m.dynamic_power, WithinRel(k * base.dynamic_power, 1e-12));
        CHECK_THAT(m.worst_delay, WithinRel(k * base.worst_delay, 1e-12));
        CHECK_THAT(m.pdp, WithinRel(k * k * base.pdp, 1e-12));
        CHECK_THAT(m.edp, WithinRel(k * k * k * base.edp, 1e-12));
    }
}

TEST_CASE("more tubes per device lowers delay")
{
    const Netlist tha = build_tha();
    std::vector<DeviceSpec> devs(tha.devices().begin(), tha.devices().end());
    for (DeviceSpec& d : devs) d.tubes *= 2;
    const Netlist fat = tha.with_devices(std::move(devs));
    // Gate load grows with tube count too, so hold capacitance fixed to isolate resistance.
    const Run thin = pattern_run(tha, 4);
    const Netlist fat_w = wrap_testbench(fat, 4);
    const SimTrace fat_t = run_sequence(fat_w, canonical_pattern(2), 1);
    CHECK(critical_path_delay(fat_w, fat_t, thin.caps).seconds < critical_path_delay(thin.nl, thin.trace, thin.caps).seconds);
}

TEST_CASE("multiplier chirality scenarios")
{
    const CellReference ref = *builtin_reference("tmul");
    const auto rows = scenario_compare(build_tmul(), multiplier_scenarios(), &ref);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].label == "proposed");
    CHECK(rows[0].distinct_chiralities == 3);
    for (const auto& r : rows) {
        REQUIRE(r.verify.has_value());
        CHECK(r.verify->outputs_passed() == 9);
        CHECK(r.verify->passed());
    }
    const double proposed = rows[0].metrics.worst_delay;
    CHECK(rows[1].metrics.worst_delay > 1.5 * proposed);
    CHECK(std::abs(rows[2].metrics.worst_delay - proposed) / proposed < 0.10);
}
