#include "soliton/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "soliton/errors.hpp"
#include "soliton/fft.hpp"

namespace soliton::evolution {

void PropagationConfig::validate() const {
    if (!(z_total >= 0.0)) throw InvalidArgument("PropagationConfig: z_total must be >= 0");
    if (n_steps < 1) throw InvalidArgument("PropagationConfig: n_steps must be >= 1");
}

PropagationConfig PropagationConfig::oracle(double z_total) {
    PropagationConfig c;
    c.z_total = z_total;
    c.n_steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(z_total / 1e-3)));
    return c;
}

DiscreteSpectrum evolve_spectrum(const DiscreteSpectrum& spectrum, double z) {
    spectrum.validate();
    DiscreteSpectrum out = spectrum;
    for (auto& e : out.entries) {
        const cplx lam = e.lambda();
        e.qd *= std::exp(cplx(0.0, -4.0) * lam * lam * z);
    }
    return out;
}

SampledPulse propagate_nlse(const SampledPulse& pulse,
                            const PropagationConfig& config) {
    pulse.validate();
    config.validate();
    if (config.z_total == 0.0) return pulse;

    const std::size_t n = pulse.grid.n_samples;
    const double dt = pulse.grid.dt;
    const double dz = config.dz();

    double e_start = 0.0;
    for (const auto& q : pulse.samples) e_start += std::norm(q);

    // Dispersive phase per full step, exp(+j (2 pi f)^2 dz) on DFT bins.
    std::vector<cplx> disp(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double kk = (k <= n / 2) ? static_cast<double>(k)
                                       : static_cast<double>(k) - static_cast<double>(n);
        const double w = 2.0 * std::numbers::pi * kk / (static_cast<double>(n) * dt);
        disp[k] = std::exp(cplx(0.0, w * w * dz));
    }

    std::vector<cplx> q(pulse.samples);
    {
        // Nyquist content must be negligible for the periodic spectral step.
        std::vector<cplx> spec(q);
        fft::forward(spec);
        double peak = 0.0;
        for (const auto& c : spec) peak = std::max(peak, std::norm(c));
        if (peak > 0.0 && std::norm(spec[n / 2]) > 1e-6 * peak) {
            throw AliasingDetected("propagate_nlse: spectral density at the Nyquist edge is not negligible");
        }
    }

    const auto nonlinear_half = [&](double h) {
        for (auto& x : q) x *= std::exp(cplx(0.0, -2.0 * std::norm(x) * h));
    };

    for (std::size_t s = 0; s < config.n_steps; ++s) {
        nonlinear_half(0.5 * dz);
        fft::forward(q);
        for (std::size_t k = 0; k < n; ++k) q[k] *= disp[k];
        fft::inverse(q);
        nonlinear_half(0.5 * dz);
    }

    double e_end = 0.0;
    for (const auto& x : q) e_end += std::norm(x);
    if (e_start > 0.0 && std::abs(e_end - e_start) > 1e-6 * e_start) {
        throw EnergyDrift("propagate_nlse: grid energy drifted by more than 1e-6 relative");
    }

    SampledPulse out;
    out.grid = pulse.grid;
    out.samples = std::move(q);
    return out;
}

}  // namespace soliton::evolution
