#pragma once

#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "tcnfet/ternary.hpp"

namespace tcnfet {

/// Behavioral model of a cell plus, optionally, the devices expected to carry
/// each row's result.
struct CellReference {
    std::string cell;
    std::size_t arity = 2;
    /// Output trits in the netlist's output declaration order.
    std::function<std::vector<Trit>(std::span<const Trit>)> eval;
    /// Input row (declaration order) -> expected active device names. Empty
    /// when the cell has no published path table.
    std::map<std::vector<Trit>, std::set<std::string>> on_paths;
};

}  // namespace tcnfet
