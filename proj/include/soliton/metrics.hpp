#pragma once

#include <array>
#include <vector>

#include "soliton/types.hpp"

namespace soliton::metrics {

/// Shortest interval holding the requested energy fraction.
struct Window {
    double width = 0.0;
    double lo = 0.0;
    double hi = 0.0;
};

/// Duration, bandwidth and the intervals achieving them for one epsilon.
struct MeasureResult {
    double t_w = 0.0;
    double b_w = 0.0;
    double epsilon = 0.0;
    std::array<double, 2> time_interval{};
    std::array<double, 2> freq_interval{};
};

/// Fiber parameters tying normalized units to physical ones.
struct PhysicalScale {
    double beta2 = 0.0;  // s^2/m, < 0 (anomalous dispersion)
    double gamma = 0.0;  // 1/(W*m), > 0
    double t0 = 0.0;     // s, > 0

    double p0() const { return -beta2 / (gamma * t0 * t0); }  // W
    void validate() const;
};

/// Pulse in physical units: amplitude in sqrt(W), time in seconds.
struct PhysicalPulse {
    std::vector<double> time_s;
    std::vector<cplx> samples_sqrt_w;
    /// Multiply a normalized distance z by this to get meters.
    double z_to_meters = 0.0;
};

/// Shortest time interval containing (1-epsilon) * e_total of energy.
/// e_total is the invariant spectral energy 4*sum(sigma_k), so a grid that
/// captures less than the target fraction fails with InsufficientEnergy.
Window duration(const SampledPulse& pulse, double epsilon, double e_total);

/// Shortest band (ordinary frequency, cycles per unit time) containing
/// (1-epsilon) * e_total of the Parseval-normalized spectral energy.
Window bandwidth(const SampledPulse& pulse, double epsilon, double e_total,
                 int pad_factor = 4);

/// Duration and bandwidth in one call.
MeasureResult measure(const SampledPulse& pulse, double epsilon, double e_total,
                      int pad_factor = 4);

/// Closed-form 1-soliton time-bandwidth product ln^2(2/eps)/pi^2.
double time_bandwidth_1(double epsilon);

PhysicalPulse to_physical(const SampledPulse& pulse, const PhysicalScale& scale);

}  // namespace soliton::metrics
