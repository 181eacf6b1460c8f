#include "tcnfet/device.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tcnfet/error.hpp"

namespace tcnfet {

ChiralityVector::ChiralityVector(int n1, int n2) : n1_(n1), n2_(n2)
{
    if (n1 < 0 || n2 < 0) {
        throw ChiralityError("chirality indices must be non-negative: (" + std::to_string(n1) + "," +
                             std::to_string(n2) + ")");
    }
    if (n1 == 0 && n2 == 0) {
        throw ChiralityError("chirality (0,0) does not describe a nanotube");
    }
}

namespace {

int parse_index(std::string_view text, std::string_view whole)
{
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    int value = 0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (text.empty() || ec != std::errc{} || ptr != last) {
        throw ChiralityError("malformed chirality '" + std::string(whole) + "', expected n1,n2");
    }
    return value;
}

}  // namespace

ChiralityVector ChiralityVector::parse(std::string_view text)
{
    const auto comma = text.find(',');
    if (comma == std::string_view::npos) {
        throw ChiralityError("malformed chirality '" + std::string(text) + "', expected n1,n2");
    }
    return {parse_index(text.substr(0, comma), text), parse_index(text.substr(comma + 1), text)};
}

std::string ChiralityVector::to_string() const
{
    return std::to_string(n1_) + "," + std::to_string(n2_);
}

const char* to_string(Conduction c) noexcept
{
    return c == Conduction::Metallic ? "metallic" : "semiconductor";
}

const char* to_string(Geometry g) noexcept
{
    switch (g) {
    case Geometry::Zigzag: return "zigzag";
    case Geometry::Armchair: return "armchair";
    case Geometry::Chiral: return "chiral";
    }
    return "?";
}

const char* to_string(Polarity p) noexcept
{
    return p == Polarity::N ? "n" : "p";
}

const char* to_string(Role r) noexcept
{
    switch (r) {
    case Role::Logic: return "logic";
    case Role::Precharge: return "precharge";
    case Role::Evaluate: return "evaluate";
    }
    return "?";
}

const char* to_string(SwitchState s) noexcept
{
    return s == SwitchState::On ? "ON" : "OFF";
}

double diameter(const ChiralityVector& cv, const PhysicalConstants& consts)
{
    const double n1 = cv.n1();
    const double n2 = cv.n2();
    return consts.diameter_coeff * std::sqrt(n1 * n1 + n2 * n2 + n1 * n2);
}

Conduction classify_conduction(const ChiralityVector& cv) noexcept
{
    return (cv.n1() - cv.n2()) % 3 == 0 ? Conduction::Metallic : Conduction::Semiconductor;
}

Geometry classify_geometry(const ChiralityVector& cv) noexcept
{
    if (cv.n1() == 0 || cv.n2() == 0) return Geometry::Zigzag;
    if (cv.n1() == cv.n2()) return Geometry::Armchair;
    return Geometry::Chiral;
}

namespace {

void require_semiconductor(const ChiralityVector& cv)
{
    if (classify_conduction(cv) == Conduction::Metallic) {
        throw ChiralityError("chirality (" + cv.to_string() + ") is metallic and has no threshold voltage");
    }
}

}  // namespace

double threshold_voltage(const ChiralityVector& cv, const PhysicalConstants& consts)
{
    require_semiconductor(cv);
    return consts.threshold_coeff / diameter(cv, consts);
}

double threshold_voltage_full(const ChiralityVector& cv, const PhysicalConstants& consts)
{
    require_semiconductor(cv);
    return std::numbers::sqrt3 / 3.0 * consts.a * consts.e_pi / diameter(cv, consts);
}

double device_threshold(const DeviceSpec& dev, const PhysicalConstants& consts)
{
    return threshold_voltage(dev.chirality, consts) / dev.diameter_scale;
}

double overdrive(const DeviceSpec& dev, double v_gate, double vdd)
{
    const double vt = device_threshold(dev);
    return dev.polarity == Polarity::N ? v_gate - vt : vdd - v_gate - vt;
}

SwitchState switch_state(const DeviceSpec& dev, double v_gate, double vdd)
{
    if (!(v_gate >= 0.0 && v_gate <= vdd)) {
        throw std::domain_error("gate voltage " + std::to_string(v_gate) + " V of " + dev.name +
                                " is outside [0, vdd]");
    }
    return overdrive(dev, v_gate, vdd) > 0.0 ? SwitchState::On : SwitchState::Off;
}

namespace {

double resistance_at(const DeviceSpec& dev, double v_ov, double vdd, const TechConfig& tech)
{
    const double effective_tubes = dev.tubes * dev.density_scale;
    return tech.r0_per_tube / effective_tubes * (vdd / 2.0) / std::max(v_ov, tech.v_ov_floor);
}

}  // namespace

double on_resistance(const DeviceSpec& dev, double v_gate, double vdd, const TechConfig& tech)
{
    if (switch_state(dev, v_gate, vdd) != SwitchState::On) {
        throw std::logic_error("on_resistance of " + dev.name + ", which is off at " + std::to_string(v_gate) +
                               " V");
    }
    return resistance_at(dev, overdrive(dev, v_gate, vdd), vdd, tech);
}

double clocked_on_resistance(const DeviceSpec& dev, double vdd, const TechConfig& tech)
{
    return resistance_at(dev, vdd - device_threshold(dev), vdd, tech);
}

}  // namespace tcnfet
