#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tcnfet/netlist.hpp"
#include "tcnfet/reference.hpp"

namespace tcnfet {

/// Static inverters: input x, output y.
[[nodiscard]] Netlist build_nti();
[[nodiscard]] Netlist build_pti();

/// Dynamic half adder: inputs a, b; outputs sum (precharged to vdd/2) and
/// carry (pre-discharged). Default chirality (19,0).
[[nodiscard]] Netlist build_tha();

/// Dynamic 1-trit multiplier: inputs a, b; outputs prod and carry, both
/// pre-discharged. Default chirality (28,0).
[[nodiscard]] Netlist build_tmul();

[[nodiscard]] const std::vector<std::string>& builtin_names();
[[nodiscard]] std::optional<Netlist> builtin_netlist(std::string_view name);
/// Reference for a builtin cell name (also matches a loaded netlist's .name).
[[nodiscard]] std::optional<CellReference> builtin_reference(std::string_view name);

}  // namespace tcnfet
