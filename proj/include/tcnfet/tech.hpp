#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace tcnfet {

/// Technology parameters shared by the device model, the capacitance model and
/// the power/delay analysis. Units are SI unless the field name says otherwise.
struct TechConfig {
    double r0_per_tube = 20e3;             // ohms, single tube at overdrive vdd/2
    double v_ov_floor = 0.05;              // volts
    double c_gate_per_tube = 0.03e-15;     // farads
    double c_junction = 0.02e-15;          // farads per drain/source terminal
    double c_node_base = 0.05e-15;         // farads, wiring floor of every node
    double c_sti_input = 0.40e-15;         // farads, one standard ternary inverter input
    double oxide_thickness_nominal = 4.0;  // nm
    double i_sub = 50e-12;                 // amperes per device
    double i_gate = 5e-12;
    double i_junct = 5e-12;
    double frequency = 1e9;  // hertz
    double vdd = 0.9;        // volts

    [[nodiscard]] double period() const noexcept { return 1.0 / frequency; }

    /// Returns one message per violated invariant; empty when the config is usable.
    [[nodiscard]] std::vector<std::string> check() const;

    bool operator==(const TechConfig&) const = default;
};

/// Parses a flat `key = value` file. Unknown keys and malformed values throw
/// ParseError; keys that are absent keep their defaults.
[[nodiscard]] TechConfig parse_tech_config(std::string_view text);
[[nodiscard]] TechConfig load_tech_config(const std::string& path);

void write_tech_config(std::ostream& os, const TechConfig& tech);

}  // namespace tcnfet
