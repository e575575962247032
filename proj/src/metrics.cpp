#include "soliton/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "soliton/errors.hpp"
#include "soliton/fft.hpp"

namespace soliton::metrics {

namespace {

// Shortest window holding `target` energy over a piecewise-linear cumulative
// built from uniformly sampled density. Both sweep directions are scanned so
// the minimum over window positions is exact up to the linear edge
// interpolation (the window-length function is piecewise linear between
// sample breakpoints of either edge).
Window shortest_window(double x0, double h, const std::vector<double>& density,
                       double target) {
    const std::size_t n = density.size();
    std::vector<double> cum(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        cum[i] = cum[i - 1] + 0.5 * (density[i - 1] + density[i]) * h;
    }
    if (cum.back() < target) {
        throw InsufficientEnergy("shortest_window: grid captures less than the target energy");
    }

    const auto x_at = [&](std::size_t idx_lo, double frac) {
        return x0 + (static_cast<double>(idx_lo) + frac) * h;
    };
    // Position where the cumulative reaches value c, searching from hint.
    const auto invert = [&](double c) {
        const auto it = std::lower_bound(cum.begin(), cum.end(), c);
        const std::size_t j = static_cast<std::size_t>(it - cum.begin());
        if (j == 0) return x_at(0, 0.0);
        const double seg = cum[j] - cum[j - 1];
        const double frac = seg > 0.0 ? (c - cum[j - 1]) / seg : 0.0;
        return x_at(j - 1, frac);
    };

    Window best;
    best.width = std::numeric_limits<double>::infinity();
    // Left edge on samples, right edge interpolated.
    for (std::size_t i = 0; i < n; ++i) {
        const double c = cum[i] + target;
        if (c > cum.back()) break;
        const double a = x_at(i, 0.0);
        const double b = invert(c);
        if (b - a < best.width) best = {b - a, a, b};
    }
    // Right edge on samples, left edge interpolated.
    for (std::size_t j = 0; j < n; ++j) {
        const double c = cum[j] - target;
        if (c < 0.0) continue;
        const double b = x_at(j, 0.0);
        const double a = invert(c);
        if (b - a < best.width) best = {b - a, a, b};
    }
    return best;
}

void check_epsilon(double epsilon) {
    if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
        throw InvalidArgument("epsilon must lie in (0, 1)");
    }
}

}  // namespace

Window duration(const SampledPulse& pulse, double epsilon, double e_total) {
    check_epsilon(epsilon);
    if (!(e_total > 0.0)) throw InvalidArgument("duration: e_total must be > 0");
    pulse.grid.validate();
    if (pulse.samples.size() != pulse.grid.n_samples) {
        throw InvalidArgument("duration: samples.size() != grid.n_samples");
    }
    std::vector<double> density(pulse.samples.size());
    for (std::size_t i = 0; i < density.size(); ++i) density[i] = std::norm(pulse.samples[i]);
    return shortest_window(pulse.grid.t_start, pulse.grid.dt, density,
                           (1.0 - epsilon) * e_total);
}

Window bandwidth(const SampledPulse& pulse, double epsilon, double e_total,
                 int pad_factor) {
    check_epsilon(epsilon);
    if (!(e_total > 0.0)) throw InvalidArgument("bandwidth: e_total must be > 0");
    if (pad_factor < 1) throw InvalidArgument("bandwidth: pad_factor must be >= 1");
    pulse.grid.validate();
    if (pulse.samples.size() != pulse.grid.n_samples) {
        throw InvalidArgument("bandwidth: samples.size() != grid.n_samples");
    }

    const double dt = pulse.grid.dt;
    const std::size_t n_pad =
        fft::next_pow2(pulse.grid.n_samples) * static_cast<std::size_t>(pad_factor);
    std::vector<cplx> spec(pulse.samples);
    spec.resize(n_pad, cplx(0.0, 0.0));
    fft::forward(spec);
    fft::shift(spec);

    const double df = 1.0 / (static_cast<double>(n_pad) * dt);
    std::vector<double> density(n_pad);
    double spectral_sum = 0.0;
    for (std::size_t k = 0; k < n_pad; ++k) {
        density[k] = std::norm(spec[k]);
        spectral_sum += density[k];
    }
    const double peak = *std::max_element(density.begin(), density.end());
    const double edge = std::max(density.front(), density.back());
    if (peak > 0.0 && edge > 1e-6 * peak) {
        throw AliasingDetected("bandwidth: spectral density at the Nyquist edge is not negligible");
    }

    // Parseval normalization: spectral energy equals the time-domain grid energy.
    double time_energy = 0.0;
    for (const auto& q : pulse.samples) time_energy += std::norm(q);
    time_energy -= 0.5 * (std::norm(pulse.samples.front()) + std::norm(pulse.samples.back()));
    time_energy *= dt;
    if (!(spectral_sum > 0.0)) {
        throw InsufficientEnergy("bandwidth: zero spectral energy");
    }
    const double scale = time_energy / (spectral_sum * df);
    for (auto& d : density) d *= scale;

    const double f0 = -0.5 / dt;
    return shortest_window(f0, df, density, (1.0 - epsilon) * e_total);
}

MeasureResult measure(const SampledPulse& pulse, double epsilon, double e_total,
                      int pad_factor) {
    const Window tw = duration(pulse, epsilon, e_total);
    const Window bw = bandwidth(pulse, epsilon, e_total, pad_factor);
    MeasureResult r;
    r.t_w = tw.width;
    r.b_w = bw.width;
    r.epsilon = epsilon;
    r.time_interval = {tw.lo, tw.hi};
    r.freq_interval = {bw.lo, bw.hi};
    return r;
}

double time_bandwidth_1(double epsilon) {
    check_epsilon(epsilon);
    const double l = std::log(2.0 / epsilon);
    return l * l / (std::numbers::pi * std::numbers::pi);
}

void PhysicalScale::validate() const {
    if (!(beta2 < 0.0)) throw InvalidArgument("PhysicalScale: beta2 must be < 0");
    if (!(gamma > 0.0)) throw InvalidArgument("PhysicalScale: gamma must be > 0");
    if (!(t0 > 0.0)) throw InvalidArgument("PhysicalScale: t0 must be > 0");
}

PhysicalPulse to_physical(const SampledPulse& pulse, const PhysicalScale& scale) {
    scale.validate();
    pulse.grid.validate();
    const double amp = std::sqrt(scale.p0());
    PhysicalPulse out;
    out.time_s.resize(pulse.samples.size());
    out.samples_sqrt_w.resize(pulse.samples.size());
    for (std::size_t i = 0; i < pulse.samples.size(); ++i) {
        out.time_s[i] = pulse.grid.t(i) * scale.t0;
        out.samples_sqrt_w[i] = pulse.samples[i] * amp;
    }
    out.z_to_meters = 2.0 * scale.t0 * scale.t0 / (-scale.beta2);
    return out;
}

}  // namespace soliton::metrics
