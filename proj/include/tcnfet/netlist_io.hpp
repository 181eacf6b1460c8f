#pragma once

#include <string>
#include <string_view>

#include "tcnfet/netlist.hpp"

namespace tcnfet {

/// Parses the line-oriented netlist format:
///
///     .name  tha
///     .source free text
///     .vdd   0.9
///     .default_chirality 19,0
///     rail   gnd 0|half|vdd
///     clock  clk
///     input  a
///     output sum precharge=gnd|half|vdd|none [cap=<value>f]
///     node   n1 [cap=<value>f]
///     dev C1 pol=n|p [chir=n1,n2] [tubes=<int>] [pitch=<nm>] g=<node> d=<node> s=<node>
///            [role=logic|precharge|evaluate]
///
/// `#` starts a comment. Nodes must be declared before devices use them.
/// Throws ParseError with the offending line and column.
[[nodiscard]] Netlist parse_netlist(std::string_view text);

[[nodiscard]] Netlist load_netlist(const std::string& path);

/// Canonical text form; parse_netlist(emit_netlist(nl)) == nl for every netlist
/// with nominal (unvaried) devices.
[[nodiscard]] std::string emit_netlist(const Netlist& nl);

}  // namespace tcnfet
