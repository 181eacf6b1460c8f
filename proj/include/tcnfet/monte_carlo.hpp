#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "tcnfet/analysis.hpp"

namespace tcnfet {

struct MonteCarloConfig {
    std::size_t iterations = 100;
    /// Relative sigma of each varied parameter; draws are clipped at +-3 sigma.
    double sigma_fraction = 0.10 / 3.0;
    std::uint64_t base_seed = 1;
    int fanout = 4;
    unsigned threads = 0;  // 0 selects the hardware concurrency
};

struct MonteCarloSample {
    double pdp = 0.0;
    double avg_power = 0.0;
    double delay = 0.0;
    bool functional = true;
};

struct MonteCarloReport {
    std::vector<MonteCarloSample> samples;  // by iteration index
    double mean_pdp = 0.0;
    double sigma_pdp = 0.0;  // sample standard deviation
    double sigma_over_mean = 0.0;
    std::size_t failures = 0;
    /// Spread of Vt / Vt_nominal over every sampled device.
    double vt_sigma_over_mean = 0.0;
    std::size_t vt_samples = 0;
};

/// Draws 1 + clamp(N(0, sigma), -3 sigma, 3 sigma).
[[nodiscard]] double draw_scale(std::mt19937_64& rng, double sigma);

/// Independent diameter, oxide and density scales for every device.
[[nodiscard]] Netlist perturb(const Netlist& nl, double sigma, std::mt19937_64& rng);

struct Summary {
    double mean = 0.0;
    double sigma = 0.0;  // sample standard deviation (n - 1)
};

/// Mean and sample sigma. Identical values give exactly zero sigma.
[[nodiscard]] Summary summarize(const std::vector<double>& values);

/// Iteration k uses seed base_seed + k, so serial and parallel runs agree.
[[nodiscard]] MonteCarloReport monte_carlo(const Netlist& nl, const MonteCarloConfig& cfg,
                                           const CellReference* ref = nullptr);

}  // namespace tcnfet
