#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "tcnfet/tech.hpp"

namespace tcnfet {

/// Index of a node inside a netlist.
struct NodeId {
    std::uint32_t value = 0;
    auto operator<=>(const NodeId&) const = default;
};

/// Roll-up indices (n1, n2) of a single-walled nanotube. Stored as given; no
/// canonical ordering is imposed.
class ChiralityVector {
public:
    /// Throws ChiralityError for negative indices or (0, 0).
    ChiralityVector(int n1, int n2);

    /// Parses "n1,n2".
    static ChiralityVector parse(std::string_view text);

    [[nodiscard]] int n1() const noexcept { return n1_; }
    [[nodiscard]] int n2() const noexcept { return n2_; }
    [[nodiscard]] std::string to_string() const;

    auto operator<=>(const ChiralityVector&) const = default;

private:
    int n1_;
    int n2_;
};

struct PhysicalConstants {
    double a = 0.249;     // carbon-carbon spacing, nm
    double e_pi = 3.033;  // pi-pi bond energy, eV
    // Collapsed coefficients of the diameter and threshold relations. The
    // tabulated diameters use 0.0783 nm, which is not a/pi for a = 0.249.
    double diameter_coeff = 0.0783;  // nm
    double threshold_coeff = 0.43;   // V * nm
};

enum class Conduction { Metallic, Semiconductor };
enum class Geometry { Zigzag, Armchair, Chiral };
enum class Polarity { N, P };
/// Logic devices switch on their gate voltage. Precharge devices conduct only in
/// the precharge phase and Evaluate devices (clocked feet) only in the evaluate
/// phase.
enum class Role { Logic, Precharge, Evaluate };
enum class SwitchState { Off, On };

[[nodiscard]] const char* to_string(Conduction c) noexcept;
[[nodiscard]] const char* to_string(Geometry g) noexcept;
[[nodiscard]] const char* to_string(Polarity p) noexcept;
[[nodiscard]] const char* to_string(Role r) noexcept;
[[nodiscard]] const char* to_string(SwitchState s) noexcept;

/// One CNFET instance. The three scale factors are process-variation knobs and
/// are 1 for a nominal device.
struct DeviceSpec {
    std::string name;
    Polarity polarity = Polarity::N;
    ChiralityVector chirality{19, 0};
    int tubes = 3;
    double pitch = 20.0;  // nm
    Role role = Role::Logic;
    NodeId gate;
    NodeId drain;
    NodeId source;

    double diameter_scale = 1.0;  // actual / nominal tube diameter
    double oxide_scale = 1.0;     // actual / nominal oxide thickness
    double density_scale = 1.0;   // actual / nominal tube density

    bool operator==(const DeviceSpec&) const = default;
};

[[nodiscard]] double diameter(const ChiralityVector& cv, const PhysicalConstants& consts = {});

/// Threshold from the collapsed 0.43/D relation. Throws ChiralityError for
/// metallic tubes.
[[nodiscard]] double threshold_voltage(const ChiralityVector& cv, const PhysicalConstants& consts = {});

/// Full band-gap form sqrt(3)/3 * a * E_pi / D, used as a cross-check of the
/// collapsed constant.
[[nodiscard]] double threshold_voltage_full(const ChiralityVector& cv, const PhysicalConstants& consts = {});

[[nodiscard]] Conduction classify_conduction(const ChiralityVector& cv) noexcept;
[[nodiscard]] Geometry classify_geometry(const ChiralityVector& cv) noexcept;

/// Threshold of a concrete device, including its diameter variation.
[[nodiscard]] double device_threshold(const DeviceSpec& dev, const PhysicalConstants& consts = {});

/// Gate-to-rail switch predicate: N is on iff v_gate > Vt, P is on iff
/// vdd - v_gate > Vt. Requires 0 <= v_gate <= vdd.
[[nodiscard]] SwitchState switch_state(const DeviceSpec& dev, double v_gate, double vdd);

/// Gate overdrive of a device with the given gate voltage (may be negative).
[[nodiscard]] double overdrive(const DeviceSpec& dev, double v_gate, double vdd);

/// R = (r0 / effective tubes) * (vdd/2) / max(overdrive, floor). Throws
/// std::logic_error when the device is off at v_gate.
[[nodiscard]] double on_resistance(const DeviceSpec& dev, double v_gate, double vdd, const TechConfig& tech);

/// Resistance of a clocked (precharge/evaluate) device, whose gate swings rail to rail.
[[nodiscard]] double clocked_on_resistance(const DeviceSpec& dev, double vdd, const TechConfig& tech);

}  // namespace tcnfet
