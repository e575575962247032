#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "soliton/darboux.hpp"
#include "soliton/errors.hpp"
#include "soliton/metrics.hpp"

using namespace soliton;

namespace {

SampledPulse soliton_pulse(double sigma, double half_span, double dt) {
    DiscreteSpectrum spec;
    spec.entries = {{sigma, cplx(0.0, 2.0 * sigma)}};
    return darboux::synthesize(spec, TimeGrid::centered(half_span, dt));
}

}  // namespace

TEST_CASE("sech duration and bandwidth match the closed forms") {
    const auto p = soliton_pulse(0.5, 25.0, 0.02);
    for (const double eps : {1e-3, 1e-4, 1e-6}) {
        const auto m = metrics::measure(p, eps, 2.0);
        const double t_exact = 2.0 * std::atanh(1.0 - eps);
        const double b_exact = t_exact / (std::numbers::pi * std::numbers::pi);
        CHECK(m.t_w == doctest::Approx(t_exact).epsilon(1e-3));
        CHECK(m.b_w == doctest::Approx(b_exact).epsilon(1e-3));
        // The shortest window is only symmetric up to one grid cell.
        CHECK(std::abs(m.time_interval[0] + m.time_interval[1]) < 2.0 * p.grid.dt);
        CHECK(std::abs(m.freq_interval[0] + m.freq_interval[1]) < 0.02);
    }
}

TEST_CASE("time-bandwidth product is scale invariant") {
    const double eps = 1e-4;
    const auto p1 = soliton_pulse(0.5, 25.0, 0.02);
    const auto p2 = soliton_pulse(1.25, 12.0, 0.008);
    const auto m1 = metrics::measure(p1, eps, 2.0);
    const auto m2 = metrics::measure(p2, eps, 5.0);
    const double c = 2.5;  // sigma ratio
    CHECK(m2.t_w == doctest::Approx(m1.t_w / c).epsilon(1e-3));
    CHECK(m2.b_w == doctest::Approx(m1.b_w * c).epsilon(1e-3));
    CHECK(m2.t_w * m2.b_w == doctest::Approx(m1.t_w * m1.b_w).epsilon(1e-3));
}

TEST_CASE("frequency modulation shifts the band, not its width") {
    const auto p = soliton_pulse(0.5, 25.0, 0.02);
    const double f0 = 1.25;
    SampledPulse mod = p;
    for (std::size_t i = 0; i < mod.samples.size(); ++i) {
        mod.samples[i] *= std::exp(cplx(0.0, 2.0 * std::numbers::pi * f0 * mod.grid.t(i)));
    }
    const auto w0 = metrics::bandwidth(p, 1e-4, 2.0);
    const auto w1 = metrics::bandwidth(mod, 1e-4, 2.0);
    CHECK(w1.width == doctest::Approx(w0.width).epsilon(1e-3));
    CHECK(0.5 * (w1.lo + w1.hi) == doctest::Approx(f0).epsilon(1e-3));
}

TEST_CASE("grid capturing too little energy is reported") {
    const auto p = soliton_pulse(0.5, 4.0, 0.02);
    SampledPulse clipped = p;  // tanh(8) ~ 1 - 2e-7, so eps=1e-8 is unreachable
    CHECK_THROWS_AS(metrics::duration(clipped, 1e-8, 2.0), InsufficientEnergy);
}

TEST_CASE("undersampled pulse triggers the aliasing check") {
    const auto p = soliton_pulse(2.0, 8.0, 0.45);
    CHECK_THROWS_AS(metrics::bandwidth(p, 1e-4, 8.0), AliasingDetected);
}

TEST_CASE("parameter validation") {
    const auto p = soliton_pulse(0.5, 20.0, 0.05);
    CHECK_THROWS_AS(metrics::duration(p, 0.0, 2.0), InvalidArgument);
    CHECK_THROWS_AS(metrics::duration(p, 1.0, 2.0), InvalidArgument);
    CHECK_THROWS_AS(metrics::duration(p, 1e-4, -1.0), InvalidArgument);
    CHECK_THROWS_AS(metrics::bandwidth(p, 1e-4, 2.0, 0), InvalidArgument);
}

TEST_CASE("1-soliton product closed form") {
    CHECK(metrics::time_bandwidth_1(1e-4) == doctest::Approx(9.93749).epsilon(1e-5));
    CHECK(metrics::time_bandwidth_1(1e-10) == doctest::Approx(57.00237).epsilon(1e-5));
}

TEST_CASE("physical unit conversion") {
    metrics::PhysicalScale scale;
    scale.beta2 = -21.67e-27;  // s^2/m
    scale.gamma = 1.27e-3;     // 1/(W m)
    scale.t0 = 1e-12;          // s
    const double p0 = scale.p0();
    CHECK(p0 == doctest::Approx(-scale.beta2 / (scale.gamma * scale.t0 * scale.t0)));

    const auto p = soliton_pulse(0.5, 20.0, 0.05);
    const auto phys = metrics::to_physical(p, scale);
    REQUIRE(phys.samples_sqrt_w.size() == p.samples.size());
    const std::size_t mid = p.samples.size() / 2;
    CHECK(std::abs(phys.samples_sqrt_w[mid]) ==
          doctest::Approx(std::abs(p.samples[mid]) * std::sqrt(p0)));
    CHECK(phys.time_s[mid] == doctest::Approx(p.grid.t(mid) * scale.t0));
    CHECK(phys.z_to_meters ==
          doctest::Approx(2.0 * scale.t0 * scale.t0 / (-scale.beta2)));

    scale.beta2 = 1.0;
    CHECK_THROWS_AS(metrics::to_physical(p, scale), InvalidArgument);
}
