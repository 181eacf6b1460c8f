#include <catch_amalgamated.hpp>

#include "tcnfet/builtins.hpp"
#include "tcnfet/monte_carlo.hpp"
#include "tcnfet/report.hpp"

using namespace tcnfet;
using Catch::Matchers::WithinRel;

namespace {

bool same_samples(const MonteCarloReport& a, const MonteCarloReport& b)
{
    if (a.samples.size() != b.samples.size()) return false;
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        const auto& x = a.samples[i];
        const auto& y = b.samples[i];
        if (x.pdp != y.pdp || x.avg_power != y.avg_power || x.delay != y.delay || x.functional != y.functional) {
            return false;
        }
    }
    return a.mean_pdp == b.mean_pdp && a.sigma_pdp == b.sigma_pdp && a.failures == b.failures &&
           a.vt_sigma_over_mean == b.vt_sigma_over_mean;
}

}  // namespace

TEST_CASE("scale draws stay inside three sigma")
{
    std::mt19937_64 rng(7);
    const double sigma = 0.10 / 3;
    double lo = 1.0;
    double hi = 1.0;
    for (int i = 0; i < 20000; ++i) {
        const double s = draw_scale(rng, sigma);
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    CHECK(lo >= 1.0 - 3 * sigma);
    CHECK(hi <= 1.0 + 3 * sigma);
    CHECK(lo < 1.0 - 2 * sigma);
    CHECK(hi > 1.0 + 2 * sigma);
    std::mt19937_64 flat(7);
    CHECK(draw_scale(flat, 0.0) == 1.0);
}

TEST_CASE("perturbation touches every device and only the variation knobs")
{
    const Netlist tha = build_tha();
    std::mt19937_64 rng(3);
    const Netlist p = perturb(tha, 0.05, rng);
    REQUIRE(p.devices().size() == tha.devices().size());
    for (std::size_t i = 0; i < p.devices().size(); ++i) {
        DeviceSpec d = p.device(i);
        CHECK(d.diameter_scale != 1.0);
        CHECK(d.oxide_scale != 1.0);
        CHECK(d.density_scale != 1.0);
        d.diameter_scale = d.oxide_scale = d.density_scale = 1.0;
        CHECK(d == tha.device(i));
    }
}

TEST_CASE("summary statistics")
{
    const Summary s = summarize({2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0});
    CHECK_THAT(s.mean, WithinRel(5.0, 1e-15));
    CHECK_THAT(s.sigma, WithinRel(std::sqrt(32.0 / 7.0), 1e-12));
    CHECK(summarize({0.1, 0.1, 0.1}).sigma == 0.0);
    CHECK(summarize({3.0}).sigma == 0.0);
}

TEST_CASE("zero variation degenerates")
{
    MonteCarloConfig cfg;
    cfg.iterations = 8;
    cfg.sigma_fraction = 0.0;
    const CellReference ref = *builtin_reference("tha");
    const MonteCarloReport r = monte_carlo(build_tha(), cfg, &ref);
    CHECK(r.samples.size() == 8);
    CHECK(r.sigma_pdp == 0.0);
    CHECK(r.sigma_over_mean == 0.0);
    CHECK(r.vt_sigma_over_mean == 0.0);
    CHECK(r.failures == 0);
    CHECK(r.mean_pdp == r.samples.front().pdp);
}

TEST_CASE("hundred iterations with the threshold oracle")
{
    MonteCarloConfig cfg;
    const CellReference ref = *builtin_reference("tha");
    const MonteCarloReport r = monte_carlo(build_tha(), cfg, &ref);
    CHECK(r.samples.size() == 100);
    CHECK(r.vt_samples == 100 * 36);
    CHECK(std::abs(r.vt_sigma_over_mean - cfg.sigma_fraction) / cfg.sigma_fraction < 0.20);
    CHECK(r.sigma_pdp > 0.0);
    CHECK(r.mean_pdp > 0.0);
    CHECK(r.failures == 0);
}

TEST_CASE("same seed reproduces the report")
{
    MonteCarloConfig cfg;
    cfg.iterations = 12;
    cfg.base_seed = 42;
    cfg.threads = 1;
    const Netlist tmul = build_tmul();
    const MonteCarloReport a = monte_carlo(tmul, cfg);
    const MonteCarloReport b = monte_carlo(tmul, cfg);
    CHECK(same_samples(a, b));
    CHECK(metrics_json("tmul", 4, 0.9, Metrics{}, &a).dump() == metrics_json("tmul", 4, 0.9, Metrics{}, &b).dump());

    cfg.threads = 4;
    CHECK(same_samples(a, monte_carlo(tmul, cfg)));

    cfg.base_seed = 43;
    CHECK_FALSE(same_samples(a, monte_carlo(tmul, cfg)));
}
