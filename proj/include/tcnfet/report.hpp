#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "tcnfet/analysis.hpp"
#include "tcnfet/engine.hpp"
#include "tcnfet/monte_carlo.hpp"

namespace tcnfet {

/// Metrics record with the fixed report field names; `mc` is null unless a
/// Monte Carlo report is given.
[[nodiscard]] nlohmann::ordered_json metrics_json(const std::string& circuit, int fanout, double vdd,
                                                  const Metrics& m, const MonteCarloReport* mc = nullptr);

/// CSV columns matching metrics_json, with the Monte Carlo fields flattened.
[[nodiscard]] std::string metrics_csv_header();
[[nodiscard]] std::string metrics_csv_row(const std::string& circuit, int fanout, double vdd, const Metrics& m,
                                          const MonteCarloReport* mc = nullptr);

[[nodiscard]] nlohmann::ordered_json verify_json(const VerifyReport& r);

/// Shortest decimal text that reads back to the same double.
[[nodiscard]] std::string format_double(double v);

}  // namespace tcnfet
