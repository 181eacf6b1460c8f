// One PASS/FAIL line per acceptance criterion; nonzero exit if any fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "tcnfet/analysis.hpp"
#include "tcnfet/builtins.hpp"
#include "tcnfet/device.hpp"
#include "tcnfet/monte_carlo.hpp"
#include "tcnfet/multiplier.hpp"
#include "tcnfet/report.hpp"
#include "tcnfet/ternary.hpp"

using namespace tcnfet;

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what)
    {
        if (!ok) failures.push_back(what);
    }
};

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void device_tables(Check& c)
{
    const auto start = Clock::now();
    struct Row {
        ChiralityVector cv;
        double d;
        double vt;
    };
    for (const Row& r : {Row{{10, 0}, 0.783, 0.549}, Row{{19, 0}, 1.488, 0.289}, Row{{28, 0}, 2.192, 0.196}}) {
        c.expect(std::abs(diameter(r.cv) - r.d) <= 0.001, "diameter " + r.cv.to_string());
        c.expect(std::abs(threshold_voltage(r.cv) - r.vt) <= 0.001, "Vt " + r.cv.to_string());
    }
    using S = SwitchState;
    struct MatrixRow {
        ChiralityVector cv;
        Polarity p;
        std::array<S, 3> states;
    };
    const std::vector<MatrixRow> matrix{
        {{10, 0}, Polarity::N, {S::Off, S::Off, S::On}}, {{10, 0}, Polarity::P, {S::On, S::Off, S::Off}},
        {{19, 0}, Polarity::N, {S::Off, S::On, S::On}},  {{19, 0}, Polarity::P, {S::On, S::On, S::Off}},
        {{28, 0}, Polarity::N, {S::Off, S::On, S::On}},  {{28, 0}, Polarity::P, {S::On, S::On, S::Off}},
    };
    int cells = 0;
    for (const MatrixRow& r : matrix) {
        DeviceSpec d;
        d.polarity = r.p;
        d.chirality = r.cv;
        for (int level = 0; level <= 2; ++level) {
            ++cells;
            c.expect(switch_state(d, 0.9 * level / 2.0, 0.9) == r.states[static_cast<std::size_t>(level)],
                     "switch " + std::string(to_string(r.p)) + r.cv.to_string() + " level " + std::to_string(level));
        }
    }
    c.expect(cells == 18, "18 matrix cells");
    c.expect(seconds_since(start) < 1.0, "runtime under 1 s");
}

void radix_tables(Check& c)
{
    const double nm[5][3] = {{3, 1.5, 0.75}, {1.8, 0.9, 0.45}, {1.2, 0.6, 0.3}, {0.9, 0.45, 0.225}, {0.75, 0.375, 0.1875}};
    for (const auto& r : nm) {
        c.expect(std::abs(noise_margin(2, r[0]) - r[1]) < 1e-12, "binary noise margin at " + std::to_string(r[0]));
        c.expect(std::abs(noise_margin(3, r[0]) - r[2]) < 1e-12, "ternary noise margin at " + std::to_string(r[0]));
    }
    struct Row {
        int digits;
        const char* binary;
        const char* ternary;
    };
    const std::vector<Row> table{
        {1, "1", "2"},
        {2, "3", "8"},
        {4, "15", "80"},
        {8, "255", "6560"},
        {16, "65535", "43046720"},
        {32, "4294967295", "1.85302018e15"},
        {64, "1.84467440e19", "3.43368382e30"},
    };
    auto render = [](const BigUnsigned& v) {
        return v < BigUnsigned(1'000'000'000'000ULL) ? v.str() : format_truncated_scientific(v, 9);
    };
    for (const Row& r : table) {
        c.expect(render(max_unsigned(2, r.digits)) == r.binary, "binary max at " + std::to_string(r.digits));
        c.expect(render(max_unsigned(3, r.digits)) == r.ternary, "ternary max at " + std::to_string(r.digits));
    }
}

void functional_verification(Check& c)
{
    const auto start = Clock::now();
    for (const char* name : {"tha", "tmul"}) {
        const VerifyReport r = exhaustive_verify(*builtin_netlist(name), *builtin_reference(name));
        const std::string n = name;
        c.expect(r.error.empty(), n + " simulation error " + r.error);
        c.expect(r.rows.size() == 9, n + " row count");
        c.expect(r.outputs_passed() == 9, n + " outputs " + std::to_string(r.outputs_passed()) + "/9");
        c.expect(r.paths_checked() == 9 && r.paths_passed() == 9,
                 n + " ON paths " + std::to_string(r.paths_passed()) + "/" + std::to_string(r.paths_checked()));
    }
    c.expect(seconds_since(start) < 1.0, "runtime under 1 s");
}

void structural_counts(Check& c)
{
    const Netlist tha = build_tha();
    const Netlist tmul = build_tmul();
    c.expect(tha.devices().size() == 36, "THA device count");
    c.expect(tha.distinct_chiralities() == 2, "THA chirality count");
    c.expect(tmul.devices().size() == 25, "TMUL device count");
    c.expect(tmul.distinct_chiralities() == 3, "TMUL chirality count");
    c.expect(tha.node(*tha.find_node("sum")).precharge == Trit{1}, "THA sum precharge");
    c.expect(tha.node(*tha.find_node("carry")).precharge == Trit{0}, "THA carry precharge");
    c.expect(tmul.node(*tmul.find_node("prod")).precharge == Trit{0}, "TMUL product precharge");
    c.expect(tmul.node(*tmul.find_node("carry")).precharge == Trit{0}, "TMUL carry precharge");
}

void zero_contention(Check& c)
{
    for (const char* name : {"tha", "tmul"}) {
        const Netlist nl = *builtin_netlist(name);
        const auto pattern = canonical_pattern(2);
        c.expect(pattern.size() == 82, "pattern length");
        const SimTrace t = run_sequence(nl, pattern, 1);
        c.expect(t.measured_cycles() == 81, std::string(name) + " transitions");
        c.expect(t.contention_count() == 0, std::string(name) + " contention " + std::to_string(t.contention_count()));
    }
    NetlistBuilder b("shorted");
    b.rail("gnd", Trit{0});
    b.rail("vdd", Trit{2});
    b.input("a");
    b.output("y", std::nullopt);
    b.device({"MP", Polarity::P, "a", "y", "vdd"});
    b.device({"MN", Polarity::N, "a", "y", "gnd"});
    b.device({"MS", Polarity::N, "vdd", "y", "gnd"});
    c.expect(run_sequence(b.build(), canonical_pattern(1), 1).contention_count() > 0, "shorted netlist contention");
}

void scenarios(Check& c)
{
    const CellReference ref = *builtin_reference("tmul");
    const auto rows = scenario_compare(build_tmul(), multiplier_scenarios(), &ref);
    c.expect(rows.size() == 3, "three scenarios");
    if (rows.size() != 3) return;
    for (const auto& r : rows) c.expect(r.verify && r.verify->outputs_passed() == 9 && r.verify->passed(), r.label + " 9/9");
    const double proposed = rows[0].metrics.worst_delay;
    const double all19 = rows[1].metrics.worst_delay;
    const double all28 = rows[2].metrics.worst_delay;
    c.expect(all19 > 1.5 * proposed, "all-(19,0) delay ratio " + std::to_string(all19 / proposed));
    c.expect(std::abs(all28 - proposed) / proposed < 0.10, "all-(28,0) delay ratio " + std::to_string(all28 / proposed));
}

void composition(Check& c)
{
    const auto start = Clock::now();
    const MultiplierNetwork net(4);
    c.expect(net.census() == CellCensus{16, 15, 18}, "cell census");
    int passed = 0;
    for (std::uint64_t a = 0; a < 81; ++a) {
        for (std::uint64_t b = 0; b < 81; ++b) {
            if (word_to_int(net.evaluate(int_to_word(a, 4), int_to_word(b, 4))) == a * b) ++passed;
        }
    }
    c.expect(passed == 6561, "integer oracle " + std::to_string(passed) + "/6561");
    c.expect(seconds_since(start) < 5.0, "runtime under 5 s");
}

void trends(Check& c)
{
    for (const char* name : {"tha", "tmul"}) {
        const std::string n = name;
        const Netlist nl = *builtin_netlist(name);
        const auto fo = sweep_fanout(nl, {1, 2, 4});
        for (std::size_t i = 1; i < fo.size(); ++i) {
            c.expect(fo[i].metrics.avg_power >= fo[i - 1].metrics.avg_power, n + " power over fanout");
            c.expect(fo[i].metrics.worst_delay >= fo[i - 1].metrics.worst_delay, n + " delay over fanout");
        }
        const auto vdd = sweep_vdd(nl, {0.8, 0.9, 1.0});
        for (std::size_t i = 1; i < vdd.size(); ++i) {
            c.expect(vdd[i].metrics.dynamic_power > vdd[i - 1].metrics.dynamic_power, n + " dynamic power over vdd");
            c.expect(vdd[i].metrics.worst_delay < vdd[i - 1].metrics.worst_delay, n + " delay over vdd");
        }

        const Netlist w = wrap_testbench(nl, 4);
        const SimTrace trace = run_sequence(w, canonical_pattern(2), 1);
        const NodeCapModel caps(w);
        const Metrics m = total_metrics(w, trace, caps, w.tech());
        c.expect(m.avg_power == m.dynamic_power + m.static_power, n + " power additivity");

        const ConductingPath* longest = nullptr;
        std::vector<ConductingPath> paths;
        for (const CycleTrace& cy : trace.cycles) {
            for (const NodeId o : w.outputs()) {
                for (auto& p : conducting_paths(w, cy.evaluate(), o)) {
                    if (p.devices.size() >= 2) {
                        const auto stages = path_stages(w, cy.evaluate(), p, caps);
                        if (stages.size() >= 2) {
                            const std::vector<RcStage> head(stages.begin(), stages.begin() + 1);
                            const std::vector<RcStage> tail(stages.begin() + 1, stages.end());
                            c.expect(std::abs(elmore_sum(stages) - elmore_sum(head) - elmore_sum(tail)) <=
                                         1e-15 * elmore_sum(stages),
                                     n + " path additivity");
                            longest = &p;
                        }
                    }
                }
            }
        }
        c.expect(longest != nullptr, n + " has a multi-stage path");

        TechConfig t = w.tech();
        t.i_sub = t.i_gate = t.i_junct = 0.0;
        const Metrics base = total_metrics(w, trace, caps, t);
        for (const double k : {0.5, 2.0, 3.0}) {
            const Metrics s = total_metrics(w, trace, caps.scaled(k), t);
            auto close = [](double x, double y) { return std::abs(x - y) <= 1e-12 * std::abs(y); };
            c.expect(close(s.pdp, k * k * base.pdp), n + " PDP scales as k^2");
            c.expect(close(s.edp, k * k * k * base.edp), n + " EDP scales as k^3");
        }
    }
}

std::string mc_report(const MonteCarloReport& r)
{
    return metrics_json("tha", 4, 0.9, Metrics{}, &r).dump() + format_double(r.vt_sigma_over_mean);
}

void monte_carlo_checks(Check& c)
{
    const Netlist tha = build_tha();
    const CellReference ref = *builtin_reference("tha");
    MonteCarloConfig cfg;
    const auto start = Clock::now();
    const MonteCarloReport r = monte_carlo(tha, cfg, &ref);
    c.expect(seconds_since(start) < 60.0, "100 iterations under 60 s");
    c.expect(r.samples.size() == 100, "100 samples");
    const double rel = std::abs(r.vt_sigma_over_mean - cfg.sigma_fraction) / cfg.sigma_fraction;
    c.expect(rel < 0.20, "Vt sigma/mean " + std::to_string(r.vt_sigma_over_mean));

    cfg.iterations = 10;
    cfg.base_seed = 1234;
    const std::string a = mc_report(monte_carlo(tha, cfg, &ref));
    const std::string b = mc_report(monte_carlo(tha, cfg, &ref));
    c.expect(a == b, "same seed gives identical report");

    cfg.sigma_fraction = 0.0;
    const MonteCarloReport flat = monte_carlo(tha, cfg, &ref);
    c.expect(flat.sigma_pdp == 0.0 && flat.vt_sigma_over_mean == 0.0 && flat.failures == 0, "zero sigma degenerates");
}

void precharge_rationale(Check& c)
{
    int tha_carry_zero = 0;
    int tmul_carry_nonzero = 0;
    for (const Trit a : kAllTrits) {
        for (const Trit b : kAllTrits) {
            tha_carry_zero += tha_ref(a, b).carry == Trit{0};
            tmul_carry_nonzero += tmul_ref(a, b).carry != Trit{0};
        }
    }
    c.expect(tha_carry_zero == 6, "THA carry zero in " + std::to_string(tha_carry_zero) + "/9");
    c.expect(tmul_carry_nonzero == 1, "TMUL carry nonzero in " + std::to_string(tmul_carry_nonzero) + "/9");
}

}  // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
        {"device tables", device_tables},
        {"noise margin and radix tables", radix_tables},
        {"functional verification", functional_verification},
        {"structural counts", structural_counts},
        {"zero contention", zero_contention},
        {"chirality scenarios", scenarios},
        {"multiplier composition", composition},
        {"trend suites", trends},
        {"monte carlo", monte_carlo_checks},
        {"precharge rationale counts", precharge_rationale},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        const auto start = Clock::now();
        try {
            criteria[i].second(c);
        } catch (const std::exception& e) {
            c.failures.push_back(std::string("exception: ") + e.what());
        }
        const bool ok = c.failures.empty();
        failed += !ok;
        std::cout << (ok ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << " ("
                  << static_cast<int>(seconds_since(start) * 1000) << " ms)";
        if (!ok) {
            std::cout << ": " << c.failures.front();
            if (c.failures.size() > 1) std::cout << " (+" << c.failures.size() - 1 << " more)";
        }
        std::cout << '\n';
    }
    return failed == 0 ? 0 : 1;
}
