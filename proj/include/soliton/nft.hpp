#pragma once

#include <vector>

#include "soliton/types.hpp"

namespace soliton::nft {

/// Jost coefficients of a pulse at one spectral parameter lambda.
struct JostPair {
    cplx a;
    cplx b;
    cplx lambda;
    /// Set when |a|^2 + |b|^2 deviates from 1 by more than 1e-4 at real lambda.
    bool degraded_accuracy = false;
};

/// Solves the Zakharov-Shabat system across the grid with the
/// piecewise-constant transfer-matrix method (closed-form per-step
/// exponential, each sample constant over one dt-cell centered on it)
/// and applies the t -> +/- infinity limit definitions.
JostPair scatter(const SampledPulse& pulse, cplx lambda,
                 double decay_tol = kDefaultDecayTol);

/// All eigenvalues lambda = j*sigma with 0 < sigma <= sigma_max:
/// coarse scan of a(j*sigma) over n_seed points, then safeguarded Newton
/// refinement to |a| < 1e-9. Returned sorted by ascending sigma.
std::vector<cplx> find_eigenvalues(const SampledPulse& pulse, double sigma_max,
                                   int n_seed);

/// Q_d(lambda_k) = b(lambda_k) / a'(lambda_k). a' by central difference
/// (step 1e-5); b by matching the left Jost solution against the decaying
/// right solution at mid-grid, which is well conditioned at a bound state.
cplx spectral_amplitude(const SampledPulse& pulse, cplx lambda_k);

/// Q_c(lambda) = b/a on a real-lambda grid.
std::vector<cplx> continuous_spectrum(const SampledPulse& pulse,
                                      const std::vector<double>& lambda_grid);

/// Convenience: eigenvalue search followed by spectral amplitudes.
DiscreteSpectrum analyze(const SampledPulse& pulse, double sigma_max,
                         int n_seed);

}  // namespace soliton::nft
