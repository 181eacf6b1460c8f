#include "tcnfet/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace tcnfet {

double draw_scale(std::mt19937_64& rng, double sigma)
{
    if (sigma == 0.0) return 1.0;
    std::normal_distribution<double> gauss(0.0, sigma);
    return 1.0 + std::clamp(gauss(rng), -3.0 * sigma, 3.0 * sigma);
}

Netlist perturb(const Netlist& nl, double sigma, std::mt19937_64& rng)
{
    std::vector<DeviceSpec> devices(nl.devices().begin(), nl.devices().end());
    for (DeviceSpec& d : devices) {
        d.diameter_scale = draw_scale(rng, sigma);
        d.oxide_scale = draw_scale(rng, sigma);
        d.density_scale = draw_scale(rng, sigma);
    }
    return nl.with_devices(std::move(devices));
}

Summary summarize(const std::vector<double>& values)
{
    Summary s;
    if (values.empty()) return s;
    // Shifting by the first value keeps a constant sample exact.
    const double x0 = values.front();
    double shift = 0.0;
    for (const double v : values) shift += v - x0;
    s.mean = x0 + shift / static_cast<double>(values.size());
    if (values.size() < 2) return s;
    double ss = 0.0;
    for (const double v : values) ss += (v - s.mean) * (v - s.mean);
    s.sigma = std::sqrt(ss / static_cast<double>(values.size() - 1));
    return s;
}

MonteCarloReport monte_carlo(const Netlist& nl, const MonteCarloConfig& cfg, const CellReference* ref)
{
    if (cfg.iterations == 0) throw std::invalid_argument("Monte Carlo needs at least one iteration");
    if (!(cfg.sigma_fraction >= 0.0)) throw std::invalid_argument("sigma fraction must be non-negative");

    MonteCarloReport report;
    report.samples.resize(cfg.iterations);
    std::vector<std::vector<double>> vt(cfg.iterations);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    auto worker = [&] {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= cfg.iterations) return;
            try {
                std::mt19937_64 rng(cfg.base_seed + k);
                const Netlist varied = perturb(nl, cfg.sigma_fraction, rng);
                for (const DeviceSpec& d : varied.devices()) vt[k].push_back(1.0 / d.diameter_scale);
                MonteCarloSample s;
                const Metrics m = run_pattern_analysis(varied, cfg.fanout);
                s.pdp = m.pdp;
                s.avg_power = m.avg_power;
                s.delay = m.worst_delay;
                if (ref) s.functional = exhaustive_verify(varied, *ref).passed();
                report.samples[k] = s;
            } catch (...) {
                const std::lock_guard lock(failure_lock);
                if (!failure) failure = std::current_exception();
                next = cfg.iterations;
                return;
            }
        }
    };

    unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, cfg.iterations));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    std::vector<double> pdp;
    for (const auto& s : report.samples) {
        pdp.push_back(s.pdp);
        if (!s.functional) ++report.failures;
    }
    const Summary sp = summarize(pdp);
    report.mean_pdp = sp.mean;
    report.sigma_pdp = sp.sigma;
    report.sigma_over_mean = sp.mean != 0.0 ? sp.sigma / sp.mean : 0.0;

    std::vector<double> all_vt;
    for (const auto& v : vt) all_vt.insert(all_vt.end(), v.begin(), v.end());
    const Summary sv = summarize(all_vt);
    report.vt_samples = all_vt.size();
    report.vt_sigma_over_mean = sv.mean != 0.0 ? sv.sigma / sv.mean : 0.0;
    return report;
}

}  // namespace tcnfet
