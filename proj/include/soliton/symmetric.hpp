#pragma once

#include <vector>

#include "soliton/types.hpp"

namespace soliton::symmetric {

/// Strictly ascending imaginary parts of an imaginary-axis eigenvalue set.
struct EigenvalueSet {
    std::vector<double> sigmas;

    std::size_t order() const { return sigmas.size(); }
    double sum() const;
    void validate() const;  // throws DegenerateEigenvalues / InvalidArgument
};

/// Spectral-amplitude magnitudes relative to the symmetric values,
/// one eta per eigenvalue with eta_1 = 1 by normalization.
struct EtaVector {
    std::vector<double> etas;

    void validate(std::size_t order) const;
    static EtaVector ones(std::size_t order);
};

/// |Q_d,sym(j sigma_k)| = 2 sigma_k prod_{m != k} |(sigma_k+sigma_m)/(sigma_k-sigma_m)|.
/// These magnitudes characterize the pulses with q(t) = q(-t), for every
/// phase choice and along propagation.
std::vector<double> symmetric_amplitudes(const EigenvalueSet& omega);

/// Spectrum with the symmetric magnitudes and the given phases.
DiscreteSpectrum build_symmetric_spectrum(const EigenvalueSet& omega,
                                          const std::vector<double>& phases);

/// Spectrum with |Q_d| = eta_k * |Q_d,sym| and the given phases.
DiscreteSpectrum build_spectrum(const EigenvalueSet& omega, const EtaVector& etas,
                                const std::vector<double>& phases);

/// Closed-form duration estimate of the symmetric N-soliton. Valid only for
/// epsilon << sigma_1 / sum(sigma); guarded at a factor of 0.1.
double t_sym(const EigenvalueSet& omega, double epsilon);

/// Lower bound on the worst-case bandwidth: the separated-soliton value
/// (2 sigma_N / pi^2) (ln(2/eps) - ln(sum(sigma)/sigma_N)).
double b_sep(const EigenvalueSet& omega, double epsilon);

/// Time-bandwidth product per eigenvalue estimate t_sym * b_sep / N.
double tb_estimate(const EigenvalueSet& omega, double epsilon);

}  // namespace soliton::symmetric
