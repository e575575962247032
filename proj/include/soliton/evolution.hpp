#pragma once

#include "soliton/types.hpp"

namespace soliton::evolution {

/// Split-step discretization of a propagation to normalized distance z_total.
struct PropagationConfig {
    double z_total = 0.0;
    std::size_t n_steps = 1;

    double dz() const { return z_total / static_cast<double>(n_steps); }
    void validate() const;

    /// Step count sized for oracle-grade accuracy (dz <= 1e-3).
    static PropagationConfig oracle(double z_total);
};

/// Linear spectral evolution: each Q_d is multiplied by exp(-4j lambda^2 z),
/// a pure phase rotation exp(+4j sigma^2 z) on the imaginary axis.
DiscreteSpectrum evolve_spectrum(const DiscreteSpectrum& spectrum, double z);

/// Symmetrized split-step Fourier solution of the normalized NLSE
/// q_z + j q_tt + 2j |q|^2 q = 0, periodic boundary via the DFT.
SampledPulse propagate_nlse(const SampledPulse& pulse,
                            const PropagationConfig& config);

}  // namespace soliton::evolution
