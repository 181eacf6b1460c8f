#include "tcnfet/tech.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "tcnfet/error.hpp"

namespace tcnfet {

namespace {

using Field = double TechConfig::*;

const std::map<std::string, Field, std::less<>>& fields()
{
    static const std::map<std::string, Field, std::less<>> table{
        {"r0_per_tube", &TechConfig::r0_per_tube},
        {"v_ov_floor", &TechConfig::v_ov_floor},
        {"c_gate_per_tube", &TechConfig::c_gate_per_tube},
        {"c_junction", &TechConfig::c_junction},
        {"c_node_base", &TechConfig::c_node_base},
        {"c_sti_input", &TechConfig::c_sti_input},
        {"oxide_thickness_nominal", &TechConfig::oxide_thickness_nominal},
        {"i_sub", &TechConfig::i_sub},
        {"i_gate", &TechConfig::i_gate},
        {"i_junct", &TechConfig::i_junct},
        {"frequency", &TechConfig::frequency},
        {"vdd", &TechConfig::vdd},
    };
    return table;
}

std::string_view trim(std::string_view s)
{
    const auto ws = " \t\r";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<std::string> TechConfig::check() const
{
    std::vector<std::string> problems;
    for (const auto& [key, field] : fields()) {
        const double v = this->*field;
        const bool leakage = key == "i_sub" || key == "i_gate" || key == "i_junct";
        if (leakage ? !(v >= 0.0) : !(v > 0.0)) {
            problems.push_back(key + (leakage ? " must be non-negative" : " must be strictly positive"));
        }
    }
    return problems;
}

TechConfig parse_tech_config(std::string_view text)
{
    TechConfig tech;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError(ParseError::Kind::Syntax, line_no, 1, "expected key = value");
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        const auto it = fields().find(key);
        if (it == fields().end()) {
            throw ParseError(ParseError::Kind::Syntax, line_no, 1, "unknown technology key '" + std::string(key) + "'");
        }
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
        if (value.empty() || ec != std::errc{} || ptr != value.data() + value.size()) {
            throw ParseError(ParseError::Kind::InvalidValue, line_no, eq + 2,
                             "malformed number '" + std::string(value) + "'");
        }
        tech.*(it->second) = v;
    }
    if (const auto problems = tech.check(); !problems.empty()) {
        throw ParseError(ParseError::Kind::InvalidValue, line_no, 1, problems.front());
    }
    return tech;
}

TechConfig load_tech_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error("cannot open technology file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_tech_config(ss.str());
}

void write_tech_config(std::ostream& os, const TechConfig& tech)
{
    for (const auto& [key, field] : fields()) {
        char buf[64];
        const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, tech.*field);
        os << key << " = " << std::string_view(buf, static_cast<std::size_t>(ptr - buf)) << '\n';
    }
}

}  // namespace tcnfet
