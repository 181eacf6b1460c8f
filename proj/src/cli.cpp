#include "tcnfet/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "tcnfet/analysis.hpp"
#include "tcnfet/builtins.hpp"
#include "tcnfet/error.hpp"
#include "tcnfet/monte_carlo.hpp"
#include "tcnfet/multiplier.hpp"
#include "tcnfet/netlist_io.hpp"
#include "tcnfet/report.hpp"

namespace tcnfet {

namespace {

using ojson = nlohmann::ordered_json;

/// Usage-level failure detected after option parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string format = "table";
    std::string out_path;
    std::string tech_path;
    std::uint64_t seed = 1;
};

/// Left-aligned text table.
class Table {
public:
    explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

    void print(std::ostream& os) const
    {
        std::vector<std::size_t> width;
        for (const auto& r : rows_) {
            width.resize(std::max(width.size(), r.size()));
            for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
        }
        for (const auto& r : rows_) {
            std::string line;
            for (std::size_t i = 0; i < r.size(); ++i) {
                line += r[i];
                if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
            }
            os << line << '\n';
        }
    }

private:
    std::vector<std::vector<std::string>> rows_;
};

std::string fixed(double v, int digits)
{
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

std::string sig(double v, int digits = 5)
{
    std::ostringstream os;
    os << std::setprecision(digits) << v;
    return os.str();
}

std::string trits(const std::vector<Trit>& ts)
{
    std::string s;
    for (const Trit t : ts) s.push_back(t.to_char());
    return s;
}

std::string joined(const std::set<std::string>& names)
{
    std::string s;
    for (const auto& n : names) s += (s.empty() ? "" : " ") + n;
    return s.empty() ? "-" : s;
}

struct Circuit {
    Netlist netlist;
    std::optional<CellReference> reference;
};

Circuit load_circuit(const std::string& which, const Common& common, std::optional<double> vdd)
{
    auto nl = builtin_netlist(which);
    Netlist netlist = nl ? *nl : load_netlist(which);
    if (!common.tech_path.empty()) netlist = netlist.with_tech(load_tech_config(common.tech_path));
    if (vdd) netlist = netlist.with_vdd(*vdd);
    const auto diags = validate(netlist);
    if (!diags.empty()) {
        std::string msg = "netlist '" + netlist.name() + "' is invalid:";
        for (const auto& d : diags) msg += "\n  " + std::string(to_string(d.code)) + ": " + d.message;
        throw UsageError(msg);
    }
    return {netlist, builtin_reference(netlist.name())};
}

void check_format(const Common& c)
{
    if (c.format != "table" && c.format != "json" && c.format != "csv") {
        throw UsageError("--format must be table, json or csv");
    }
}

// ---------------------------------------------------------------------------

int cmd_device(const std::string& chir, double vdd, const Common& c, std::ostream& os)
{
    const ChiralityVector cv = ChiralityVector::parse(chir);
    const double d = diameter(cv);
    const bool metallic = classify_conduction(cv) == Conduction::Metallic;
    std::optional<double> vt;
    std::vector<std::pair<Polarity, std::vector<std::string>>> rows;
    if (!metallic) {
        vt = threshold_voltage(cv);
        for (const Polarity p : {Polarity::N, Polarity::P}) {
            DeviceSpec dev;
            dev.polarity = p;
            dev.chirality = cv;
            std::vector<std::string> states;
            for (int level = 0; level <= 2; ++level) states.push_back(to_string(switch_state(dev, vdd * level / 2.0, vdd)));
            rows.emplace_back(p, std::move(states));
        }
    }
    const std::string warning = metallic ? "metallic nanotube: no threshold voltage, unusable as a switch" : "";

    if (c.format == "json") {
        ojson j;
        j["chirality"] = cv.to_string();
        j["diameter_nm"] = d;
        j["conduction"] = to_string(classify_conduction(cv));
        j["geometry"] = to_string(classify_geometry(cv));
        j["vdd"] = vdd;
        j["vt_v"] = vt ? ojson(*vt) : ojson(nullptr);
        ojson sw = ojson::object();
        for (const auto& [p, states] : rows) sw[p == Polarity::N ? "N" : "P"] = states;
        j["switch"] = sw;
        if (metallic) j["warning"] = warning;
        os << j.dump(2) << '\n';
    } else if (c.format == "csv") {
        os << "chirality,diameter_nm,conduction,geometry,vt_v,vdd,n_0,n_half,n_vdd,p_0,p_half,p_vdd\n";
        os << '"' << cv.to_string() << "\"," << format_double(d) << ',' << to_string(classify_conduction(cv)) << ','
           << to_string(classify_geometry(cv)) << ',' << (vt ? format_double(*vt) : "") << ','
           << format_double(vdd);
        for (const auto& [p, states] : rows) {
            for (const auto& s : states) os << ',' << s;
        }
        if (rows.empty()) os << ",,,,,,";
        os << '\n';
    } else {
        Table t({"property", "value"});
        t.add({"chirality", "(" + cv.to_string() + ")"});
        t.add({"diameter", fixed(d, 3) + " nm"});
        t.add({"conduction", to_string(classify_conduction(cv))});
        t.add({"geometry", to_string(classify_geometry(cv))});
        t.add({"threshold", vt ? fixed(*vt, 3) + " V" : "n/a"});
        t.add({"vdd", sig(vdd) + " V"});
        t.print(os);
        if (metallic) {
            os << "warning: " << warning << '\n';
        } else {
            os << '\n';
            Table s({"gate", "0", "vdd/2", "vdd"});
            for (const auto& [p, states] : rows) {
                s.add({p == Polarity::N ? "N-CNFET" : "P-CNFET", states[0], states[1], states[2]});
            }
            s.print(os);
        }
    }
    return kExitOk;
}

int cmd_verify(const std::string& which, const Common& c, std::ostream& os)
{
    const Circuit circ = load_circuit(which, c, std::nullopt);
    if (!circ.reference) throw UsageError("no reference model for cell '" + circ.netlist.name() + "'");
    const VerifyReport r = exhaustive_verify(circ.netlist, *circ.reference);
    if (c.format == "json") {
        os << verify_json(r).dump(2) << '\n';
    } else if (c.format == "csv") {
        os << "inputs,expected,actual,outputs_ok,expected_path,actual_path,path_ok\n";
        for (const VerifyRow& row : r.rows) {
            std::string actual;
            for (const auto& o : row.actual) actual.push_back(o ? o->to_char() : 'x');
            os << trits(row.inputs) << ',' << trits(row.expected) << ',' << actual << ','
               << (row.outputs_ok ? "pass" : "FAIL") << ',' << (row.expected_path ? joined(*row.expected_path) : "")
               << ',' << joined(row.actual_path) << ',' << (row.expected_path ? (row.path_ok ? "pass" : "FAIL") : "")
               << '\n';
        }
    } else {
        std::string outs;
        for (const NodeId o : circ.netlist.outputs()) outs += (outs.empty() ? "" : ",") + circ.netlist.node(o).name;
        os << "cell " << r.cell << " (outputs " << outs << ")\n";
        Table t({"inputs", "expected", "actual", "outputs", "active devices", "path"});
        for (const VerifyRow& row : r.rows) {
            std::string actual;
            for (const auto& o : row.actual) actual.push_back(o ? o->to_char() : 'x');
            t.add({trits(row.inputs), trits(row.expected), actual, row.outputs_ok ? "pass" : "FAIL",
                   joined(row.actual_path), row.expected_path ? (row.path_ok ? "pass" : "FAIL") : "-"});
        }
        t.print(os);
        if (!r.error.empty()) os << "error: " << r.error << '\n';
        os << "outputs " << r.outputs_passed() << '/' << r.rows.size() << ", paths " << r.paths_passed() << '/'
           << r.paths_checked() << (r.passed() ? ", PASS" : ", FAIL") << '\n';
    }
    return r.passed() ? kExitOk : kExitVerifyFailed;
}

void print_metrics_table(std::ostream& os, const std::string& circuit, int fo, double vdd, const Metrics& m)
{
    Table t({"metric", "value"});
    t.add({"circuit", circuit});
    t.add({"fanout", "FO" + std::to_string(fo)});
    t.add({"vdd", sig(vdd) + " V"});
    t.add({"avg power", sig(m.avg_power * 1e9) + " nW"});
    t.add({"dynamic power", sig(m.dynamic_power * 1e9) + " nW"});
    t.add({"static power", sig(m.static_power * 1e9) + " nW"});
    t.add({"delay", sig(m.worst_delay * 1e12) + " ps"});
    t.add({"PDP", sig(m.pdp * 1e18) + " aJ"});
    t.add({"EDP", sig(m.edp * 1e30) + " 1e-30 J s"});
    t.add({"contention", sig(m.contention_current) + " A"});
    std::string path;
    for (const auto& d : m.delay.devices) path += (path.empty() ? "" : " ") + d;
    t.add({"critical path", m.delay.output.empty() ? "-" : m.delay.output + ": " + path});
    t.print(os);
}

int cmd_analyze(const std::string& which, int fo, std::optional<double> vdd, const Common& c, std::ostream& os)
{
    const Circuit circ = load_circuit(which, c, vdd);
    const Metrics m = run_pattern_analysis(circ.netlist, fo);
    const std::string& name = circ.netlist.name();
    if (c.format == "json") {
        os << metrics_json(name, fo, circ.netlist.vdd(), m).dump(2) << '\n';
    } else if (c.format == "csv") {
        os << metrics_csv_header() << '\n' << metrics_csv_row(name, fo, circ.netlist.vdd(), m) << '\n';
    } else {
        print_metrics_table(os, name, fo, circ.netlist.vdd(), m);
    }
    return kExitOk;
}

int cmd_sweep(const std::string& which, const std::vector<double>& vdds, const std::vector<int>& fos, int fo,
              const Common& c, std::ostream& os)
{
    if (vdds.empty() == fos.empty()) throw UsageError("sweep needs exactly one non-empty --vdd or --fo list");
    const Circuit circ = load_circuit(which, c, std::nullopt);
    const CellReference* ref = circ.reference ? &*circ.reference : nullptr;
    const auto points = vdds.empty() ? sweep_fanout(circ.netlist, fos, ref) : sweep_vdd(circ.netlist, vdds, fo, ref);
    const std::string& name = circ.netlist.name();
    bool ok = true;
    for (const auto& p : points) ok = ok && p.functional.value_or(true) && p.at_risk.empty();

    if (c.format == "json") {
        ojson rows = ojson::array();
        for (const auto& p : points) {
            ojson j = metrics_json(name, p.fanout, p.vdd, p.metrics);
            j["functional"] = p.functional ? ojson(*p.functional) : ojson(nullptr);
            j["at_risk"] = p.at_risk;
            rows.push_back(std::move(j));
        }
        os << rows.dump(2) << '\n';
    } else if (c.format == "csv") {
        os << metrics_csv_header() << ",functional\n";
        for (const auto& p : points) {
            os << metrics_csv_row(name, p.fanout, p.vdd, p.metrics) << ','
               << (p.functional ? (*p.functional ? "pass" : "FAIL") : "") << '\n';
        }
    } else {
        Table t({"vdd", "fanout", "power_nW", "delay_ps", "pdp_aJ", "edp_1e-30Js", "functional"});
        for (const auto& p : points) {
            t.add({sig(p.vdd), "FO" + std::to_string(p.fanout), sig(p.metrics.avg_power * 1e9),
                   sig(p.metrics.worst_delay * 1e12), sig(p.metrics.pdp * 1e18), sig(p.metrics.edp * 1e30),
                   p.functional ? (*p.functional ? "pass" : "FAIL") : "-"});
        }
        t.print(os);
        for (const auto& p : points) {
            for (const auto& d : p.at_risk) os << d << '\n';
        }
    }
    return ok ? kExitOk : kExitVerifyFailed;
}

int cmd_scenarios(const std::string& which, const Common& c, std::ostream& os)
{
    const Circuit circ = load_circuit(which, c, std::nullopt);
    const CellReference* ref = circ.reference ? &*circ.reference : nullptr;
    const auto rows = scenario_compare(circ.netlist, multiplier_scenarios(), ref);

    struct Check {
        std::string name;
        bool pass;
    };
    std::vector<Check> checks;
    bool all_functional = true;
    for (const auto& r : rows) all_functional = all_functional && (!r.verify || r.verify->passed());
    checks.push_back({"all scenarios functionally correct", all_functional});
    const double base = rows[0].metrics.worst_delay;
    if (base > 0.0 && rows.size() == 3) {
        checks.push_back({"delay(all (19,0)) > 1.5 x delay(proposed)", rows[1].metrics.worst_delay > 1.5 * base});
        checks.push_back(
            {"delay(all (28,0)) within 10% of proposed", std::abs(rows[2].metrics.worst_delay - base) / base < 0.10});
    }
    bool ok = true;
    for (const auto& ch : checks) ok = ok && ch.pass;

    if (c.format == "json") {
        ojson j;
        j["circuit"] = circ.netlist.name();
        ojson list = ojson::array();
        for (const auto& r : rows) {
            ojson e = metrics_json(circ.netlist.name(), 4, circ.netlist.vdd(), r.metrics);
            e["scenario"] = r.label;
            e["chiralities"] = r.distinct_chiralities;
            e["functional"] = r.verify ? ojson(r.verify->passed()) : ojson(nullptr);
            list.push_back(std::move(e));
        }
        j["scenarios"] = std::move(list);
        ojson cj = ojson::array();
        for (const auto& ch : checks) cj.push_back({{"check", ch.name}, {"pass", ch.pass}});
        j["checks"] = std::move(cj);
        os << j.dump(2) << '\n';
    } else if (c.format == "csv") {
        os << "scenario," << metrics_csv_header() << ",chiralities,functional\n";
        for (const auto& r : rows) {
            os << '"' << r.label << "\"," << metrics_csv_row(circ.netlist.name(), 4, circ.netlist.vdd(), r.metrics)
               << ',' << r.distinct_chiralities << ',' << (r.verify ? (r.verify->passed() ? "pass" : "FAIL") : "")
               << '\n';
        }
    } else {
        Table t({"scenario", "chiralities", "power_nW", "delay_ps", "pdp_aJ", "edp_1e-30Js", "functional"});
        for (const auto& r : rows) {
            t.add({r.label, std::to_string(r.distinct_chiralities), sig(r.metrics.avg_power * 1e9),
                   sig(r.metrics.worst_delay * 1e12), sig(r.metrics.pdp * 1e18), sig(r.metrics.edp * 1e30),
                   r.verify ? (r.verify->passed() ? "pass" : "FAIL") : "-"});
        }
        t.print(os);
        os << '\n';
        for (const auto& ch : checks) os << (ch.pass ? "PASS  " : "FAIL  ") << ch.name << '\n';
    }
    return ok ? kExitOk : kExitVerifyFailed;
}

int cmd_mc(const std::string& which, const MonteCarloConfig& cfg, const Common& c, std::ostream& os)
{
    const Circuit circ = load_circuit(which, c, std::nullopt);
    const CellReference* ref = circ.reference ? &*circ.reference : nullptr;
    const MonteCarloReport r = monte_carlo(circ.netlist, cfg, ref);
    const Metrics nominal = run_pattern_analysis(circ.netlist, cfg.fanout);
    const std::string& name = circ.netlist.name();
    if (c.format == "json") {
        ojson j = metrics_json(name, cfg.fanout, circ.netlist.vdd(), nominal, &r);
        j["mc"]["sigma_fraction"] = cfg.sigma_fraction;
        j["mc"]["seed"] = cfg.base_seed;
        ojson samples = ojson::array();
        for (const auto& s : r.samples) samples.push_back(s.pdp);
        j["mc"]["pdp_samples"] = std::move(samples);
        os << j.dump(2) << '\n';
    } else if (c.format == "csv") {
        os << "iteration,pdp_j,avg_power_w,delay_s,functional\n";
        for (std::size_t k = 0; k < r.samples.size(); ++k) {
            const auto& s = r.samples[k];
            os << k << ',' << format_double(s.pdp) << ',' << format_double(s.avg_power) << ','
               << format_double(s.delay) << ',' << (s.functional ? "pass" : "FAIL") << '\n';
        }
    } else {
        Table t({"quantity", "value"});
        t.add({"circuit", name});
        t.add({"iterations", std::to_string(r.samples.size())});
        t.add({"sigma fraction", sig(cfg.sigma_fraction)});
        t.add({"seed", std::to_string(cfg.base_seed)});
        t.add({"nominal PDP", sig(nominal.pdp * 1e18) + " aJ"});
        t.add({"mean PDP", sig(r.mean_pdp * 1e18) + " aJ"});
        t.add({"sigma PDP", sig(r.sigma_pdp * 1e18) + " aJ"});
        t.add({"sigma/mean", sig(r.sigma_over_mean)});
        t.add({"Vt sigma/mean", sig(r.vt_sigma_over_mean)});
        t.add({"failures", std::to_string(r.failures)});
        t.print(os);
    }
    return r.failures == 0 ? kExitOk : kExitVerifyFailed;
}

int cmd_multiply(const std::vector<std::string>& operands, bool exhaustive, std::size_t width, const Common& c,
                 std::ostream& os)
{
    if (!exhaustive && operands.size() != 2) throw UsageError("multiply needs two trit strings, or --exhaustive");
    if (operands.size() == 1 || operands.size() > 2) throw UsageError("multiply takes exactly two operands");
    std::optional<TritWord> a, b, product;
    bool ok = true;
    if (operands.size() == 2) {
        a = TritWord::parse(operands[0]);
        b = TritWord::parse(operands[1]);
        if (a->width() != b->width() || a->width() == 0) throw UsageError("operands must be equal-width trit strings");
        width = a->width();
        product = multiply_words_behavioral(*a, *b);
        ok = word_to_int(*product) == word_to_int(*a) * word_to_int(*b);
    }
    const MultiplierNetwork net(width);
    const CellCensus census = net.census();
    std::size_t total = 0;
    std::size_t passed = 0;
    if (exhaustive) {
        if (width > 6) throw UsageError("--exhaustive supports widths up to 6");
        std::uint64_t n = 1;
        for (std::size_t i = 0; i < width; ++i) n *= 3;
        for (std::uint64_t x = 0; x < n; ++x) {
            const TritWord wx = int_to_word(x, width);
            for (std::uint64_t y = 0; y < n; ++y) {
                ++total;
                if (word_to_int(net.evaluate(wx, int_to_word(y, width))) == x * y) ++passed;
            }
        }
        ok = ok && passed == total;
    }

    if (c.format == "json") {
        ojson j;
        j["width"] = width;
        if (product) {
            j["a"] = a->to_string();
            j["b"] = b->to_string();
            j["product"] = product->to_string();
            j["product_int"] = word_to_int(*product);
        }
        j["census"] = {{"tmul", census.tmul}, {"tha", census.tha}, {"tfa", census.tfa}};
        if (exhaustive) j["exhaustive"] = {{"passed", passed}, {"total", total}};
        j["pass"] = ok;
        os << j.dump(2) << '\n';
    } else if (c.format == "csv") {
        os << "a,b,product,tmul,tha,tfa,passed,total\n";
        os << (a ? a->to_string() : "") << ',' << (b ? b->to_string() : "") << ','
           << (product ? product->to_string() : "") << ',' << census.tmul << ',' << census.tha << ',' << census.tfa
           << ',' << passed << ',' << total << '\n';
    } else {
        if (product) {
            os << a->to_string() << " x " << b->to_string() << " = " << product->to_string() << "  ("
               << word_to_int(*a) << " x " << word_to_int(*b) << " = " << word_to_int(*product) << ")\n";
        }
        os << "cells: " << census.tmul << " TMUL, " << census.tha << " THA, " << census.tfa << " TFA\n";
        if (exhaustive) os << "exhaustive: " << passed << '/' << total << (passed == total ? " pass" : " FAIL") << '\n';
    }
    return ok ? kExitOk : kExitVerifyFailed;
}

int cmd_trace(const std::string& which, const std::string& rows, const Common& c, std::ostream& os)
{
    const Circuit circ = load_circuit(which, c, std::nullopt);
    const std::size_t arity = circ.netlist.inputs().size();
    std::vector<std::vector<Trit>> seq;
    std::size_t warmup = 0;
    if (rows.empty()) {
        seq = canonical_pattern(arity);
        warmup = 1;
    } else {
        std::stringstream ss(rows);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const TritWord w = TritWord::parse(item);
            if (w.width() != arity) throw UsageError("input row '" + item + "' needs " + std::to_string(arity) + " trits");
            seq.push_back(w.digits());
        }
        if (seq.empty()) throw UsageError("--inputs is empty");
    }
    write_trace_jsonl(os, circ.netlist, run_sequence(circ.netlist, seq, warmup));
    return kExitOk;
}

int cmd_emit(const std::string& which, const Common& c, std::ostream& os)
{
    os << emit_netlist(load_circuit(which, c, std::nullopt).netlist);
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Switch-level simulator and power/timing analysis for dynamic ternary CNFET logic", "tcnfet"};
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    app.add_option("--format", common.format, "Report format: table, json or csv");
    app.add_option("--out", common.out_path, "Write the report to this file");
    app.add_option("--tech", common.tech_path, "Technology parameter file (key = value)");
    app.add_option("--seed", common.seed, "Base random seed");

    std::string circuit;
    std::string chirality;
    double vdd_single = 0.9;
    std::optional<double> vdd_opt;
    std::vector<double> vdd_list;
    std::vector<int> fo_list;
    int fanout = 4;
    MonteCarloConfig mc;
    std::vector<std::string> operands;
    bool exhaustive = false;
    std::size_t width = 4;
    std::string rows;

    auto* device = app.add_subcommand("device", "Diameter, threshold and on/off row of a chirality");
    device->add_option("chirality", chirality, "n1,n2")->required();
    device->add_option("--vdd", vdd_single, "Supply voltage");

    auto* verify = app.add_subcommand("verify", "Exhaustive functional and ON-path verification");
    verify->add_option("circuit", circuit, "Builtin (nti, pti, tha, tmul) or netlist path")->required();

    auto* analyze = app.add_subcommand("analyze", "Power, delay, PDP and EDP over the 81-transition pattern");
    analyze->add_option("circuit", circuit)->required();
    analyze->add_option("--fo", fanout, "Fanout load: 1, 2 or 4");
    analyze->add_option("--vdd", vdd_opt, "Supply voltage");

    auto* sweep = app.add_subcommand("sweep", "Metrics over a supply or fanout list");
    sweep->add_option("circuit", circuit)->required();
    sweep->add_option("--vdd", vdd_list, "Comma-separated supply voltages")->delimiter(',');
    sweep->add_option("--fo", fo_list, "Comma-separated fanouts")->delimiter(',');

    auto* scenarios = app.add_subcommand("scenarios", "Chirality substitution scenarios at FO4");
    scenarios->add_option("circuit", circuit)->default_val("tmul");

    auto* mcc = app.add_subcommand("mc", "Monte Carlo process variation");
    mcc->add_option("circuit", circuit)->required();
    mcc->add_option("--iterations", mc.iterations, "Iteration count");
    mcc->add_option("--sigma", mc.sigma_fraction, "Relative sigma of each varied parameter");
    mcc->add_option("--fo", mc.fanout, "Fanout load");
    mcc->add_option("--threads", mc.threads, "Worker threads (0 = all cores)");

    auto* multiply = app.add_subcommand("multiply", "Behavioral 4x4 trit multiplier");
    multiply->add_option("operands", operands, "Two MSB-first trit strings");
    multiply->add_flag("--exhaustive", exhaustive, "Check every operand pair against integer multiplication");
    multiply->add_option("--width", width, "Operand width for --exhaustive");

    auto* trace = app.add_subcommand("trace", "Per-cycle simulation trace as JSON lines");
    trace->add_option("circuit", circuit)->required();
    trace->add_option("--inputs", rows, "Comma-separated input rows, e.g. 01,22 (default: canonical pattern)");

    auto* emit = app.add_subcommand("emit", "Print a circuit in canonical netlist form");
    emit->add_option("circuit", circuit)->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }

    std::ostringstream buffer;
    int code = kExitOk;
    try {
        check_format(common);
        if (*sweep && app.get_option("--format")->count() == 0) common.format = "csv";
        if (*device) code = cmd_device(chirality, vdd_single, common, buffer);
        else if (*verify) code = cmd_verify(circuit, common, buffer);
        else if (*analyze) {
            if (fanout != 1 && fanout != 2 && fanout != 4) throw UsageError("--fo must be 1, 2 or 4");
            code = cmd_analyze(circuit, fanout, vdd_opt, common, buffer);
        } else if (*sweep) {
            if (sweep->get_option("--vdd")->count() && vdd_list.empty()) throw UsageError("--vdd list is empty");
            if (sweep->get_option("--fo")->count() && fo_list.empty()) throw UsageError("--fo list is empty");
            code = cmd_sweep(circuit, vdd_list, fo_list, fanout, common, buffer);
        } else if (*scenarios) code = cmd_scenarios(circuit, common, buffer);
        else if (*mcc) {
            mc.base_seed = common.seed;
            code = cmd_mc(circuit, mc, common, buffer);
        } else if (*multiply) code = cmd_multiply(operands, exhaustive, width, common, buffer);
        else if (*trace) code = cmd_trace(circuit, rows, common, buffer);
        else if (*emit) code = cmd_emit(circuit, common, buffer);
    } catch (const OscillationError& e) {
        err << "simulation error: " << e.what() << '\n';
        return kExitSimulation;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "simulation error: " << e.what() << '\n';
        return kExitSimulation;
    }

    if (common.out_path.empty()) {
        out << buffer.str();
    } else {
        std::ofstream file(common.out_path, std::ios::binary);
        if (!file) {
            err << "error: cannot write '" << common.out_path << "'\n";
            return kExitUsage;
        }
        file << buffer.str();
    }
    return code;
}

}  // namespace tcnfet
