#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace soliton {

using cplx = std::complex<double>;

inline constexpr double kDefaultDecayTol = 1e-6;

/// Uniform time grid covering [t_start, t_start + (n_samples-1)*dt].
struct TimeGrid {
    double t_start = 0.0;
    double dt = 0.0;
    std::size_t n_samples = 0;

    double t(std::size_t i) const { return t_start + static_cast<double>(i) * dt; }
    double t_end() const { return t(n_samples - 1); }
    double span() const { return static_cast<double>(n_samples - 1) * dt; }

    /// Grid symmetric about t = 0 with an odd sample count, so t = 0 is a sample.
    static TimeGrid centered(double half_span, double dt);

    void validate() const;  // throws InvalidArgument
    bool operator==(const TimeGrid&) const = default;
};

/// Complex envelope q sampled on a uniform time grid (normalized units).
struct SampledPulse {
    TimeGrid grid;
    std::vector<cplx> samples;

    double max_abs() const;

    /// Checks sample count and the boundary-decay assumption:
    /// |q| at both grid ends must be <= decay_tol * max|q|.
    void validate(double decay_tol = kDefaultDecayTol) const;
};

/// One (eigenvalue, spectral amplitude) pair with lambda = j*sigma, sigma > 0.
struct SpectrumEntry {
    double sigma = 0.0;
    cplx qd;

    cplx lambda() const { return {0.0, sigma}; }
};

/// Purely discrete, imaginary-axis nonlinear spectrum, sorted by ascending sigma.
struct DiscreteSpectrum {
    std::vector<SpectrumEntry> entries;

    std::size_t order() const { return entries.size(); }

    /// Invariant energy 4 * sum(sigma_k).
    double total_energy() const;

    void validate() const;  // throws InvalidArgument / DuplicateEigenvalue
};

}  // namespace soliton
