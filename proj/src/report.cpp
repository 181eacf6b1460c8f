#include "tcnfet/report.hpp"

#include <charconv>
#include <sstream>

namespace tcnfet {

namespace {

std::string trits(const std::vector<Trit>& ts)
{
    std::string s;
    for (const Trit t : ts) s.push_back(t.to_char());
    return s;
}

std::string trits(const std::vector<std::optional<Trit>>& ts)
{
    std::string s;
    for (const auto& t : ts) s.push_back(t ? t->to_char() : 'x');
    return s;
}

}  // namespace

std::string format_double(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

nlohmann::ordered_json metrics_json(const std::string& circuit, int fanout, double vdd, const Metrics& m,
                                    const MonteCarloReport* mc)
{
    nlohmann::ordered_json j;
    j["circuit"] = circuit;
    j["fanout"] = fanout;
    j["vdd"] = vdd;
    j["avg_power_w"] = m.avg_power;
    j["dynamic_power_w"] = m.dynamic_power;
    j["static_power_w"] = m.static_power;
    j["delay_s"] = m.worst_delay;
    j["pdp_j"] = m.pdp;
    j["edp_js"] = m.edp;
    j["contention_a"] = m.contention_current;
    j["critical_output"] = m.delay.output;
    j["critical_path"] = m.delay.devices;
    if (mc) {
        j["mc"] = {{"iterations", mc->samples.size()},
                   {"mean_pdp", mc->mean_pdp},
                   {"sigma_pdp", mc->sigma_pdp},
                   {"sigma_over_mean", mc->sigma_over_mean},
                   {"failures", mc->failures},
                   {"vt_sigma_over_mean", mc->vt_sigma_over_mean}};
    } else {
        j["mc"] = nullptr;
    }
    return j;
}

std::string metrics_csv_header()
{
    return "circuit,fanout,vdd,avg_power_w,dynamic_power_w,static_power_w,delay_s,pdp_j,edp_js,contention_a,"
           "mc_mean_pdp,mc_sigma_pdp,mc_sigma_over_mean,mc_failures";
}

std::string metrics_csv_row(const std::string& circuit, int fanout, double vdd, const Metrics& m,
                            const MonteCarloReport* mc)
{
    std::ostringstream os;
    os << circuit << ',' << fanout << ',' << format_double(vdd) << ',' << format_double(m.avg_power) << ','
       << format_double(m.dynamic_power) << ',' << format_double(m.static_power) << ','
       << format_double(m.worst_delay) << ',' << format_double(m.pdp) << ',' << format_double(m.edp) << ','
       << format_double(m.contention_current) << ',';
    if (mc) {
        os << format_double(mc->mean_pdp) << ',' << format_double(mc->sigma_pdp) << ','
           << format_double(mc->sigma_over_mean) << ',' << mc->failures;
    } else {
        os << ",,,";
    }
    return os.str();
}

nlohmann::ordered_json verify_json(const VerifyReport& r)
{
    nlohmann::ordered_json j;
    j["cell"] = r.cell;
    j["passed"] = r.passed();
    j["outputs_passed"] = r.outputs_passed();
    j["rows"] = r.rows.size();
    j["paths_passed"] = r.paths_passed();
    j["paths_checked"] = r.paths_checked();
    if (!r.error.empty()) j["error"] = r.error;
    auto rows = nlohmann::ordered_json::array();
    for (const VerifyRow& row : r.rows) {
        nlohmann::ordered_json jr;
        jr["inputs"] = trits(row.inputs);
        jr["expected"] = trits(row.expected);
        jr["actual"] = trits(row.actual);
        jr["outputs_ok"] = row.outputs_ok;
        if (row.expected_path) {
            jr["expected_path"] = *row.expected_path;
            jr["path_ok"] = row.path_ok;
        }
        jr["actual_path"] = row.actual_path;
        rows.push_back(std::move(jr));
    }
    j["table"] = std::move(rows);
    return j;
}

}  // namespace tcnfet
