#include "soliton/symmetric.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "soliton/errors.hpp"

namespace soliton::symmetric {

double EigenvalueSet::sum() const {
    return std::accumulate(sigmas.begin(), sigmas.end(), 0.0);
}

void EigenvalueSet::validate() const {
    if (sigmas.empty()) throw InvalidArgument("EigenvalueSet: empty");
    for (const double s : sigmas) {
        if (!(s > 0.0)) throw InvalidArgument("EigenvalueSet: sigmas must be > 0");
    }
    for (std::size_t i = 1; i < sigmas.size(); ++i) {
        if (std::abs(sigmas[i] - sigmas[i - 1]) < 1e-12) {
            throw DegenerateEigenvalues("EigenvalueSet: eigenvalues closer than 1e-12");
        }
        if (!(sigmas[i] > sigmas[i - 1])) {
            throw InvalidArgument("EigenvalueSet: sigmas must be strictly ascending");
        }
    }
}

void EtaVector::validate(std::size_t order) const {
    if (etas.size() != order) {
        throw InvalidArgument("EtaVector: length must match the eigenvalue set");
    }
    if (etas.empty() || etas.front() != 1.0) {
        throw InvalidArgument("EtaVector: eta_1 must be 1 by normalization");
    }
    for (const double e : etas) {
        if (!(e > 0.0)) throw InvalidArgument("EtaVector: etas must be > 0");
    }
}

EtaVector EtaVector::ones(std::size_t order) {
    return EtaVector{std::vector<double>(order, 1.0)};
}

std::vector<double> symmetric_amplitudes(const EigenvalueSet& omega) {
    omega.validate();
    const auto& s = omega.sigmas;
    std::vector<double> mags(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
        double prod = 1.0;
        for (std::size_t m = 0; m < s.size(); ++m) {
            if (m == k) continue;
            prod *= std::abs((s[k] + s[m]) / (s[k] - s[m]));
        }
        mags[k] = 2.0 * s[k] * prod;
    }
    return mags;
}

DiscreteSpectrum build_symmetric_spectrum(const EigenvalueSet& omega,
                                          const std::vector<double>& phases) {
    return build_spectrum(omega, EtaVector::ones(omega.order()), phases);
}

DiscreteSpectrum build_spectrum(const EigenvalueSet& omega, const EtaVector& etas,
                                const std::vector<double>& phases) {
    omega.validate();
    etas.validate(omega.order());
    if (phases.size() != omega.order()) {
        throw InvalidArgument("build_spectrum: phases length must match the eigenvalue set");
    }
    const auto mags = symmetric_amplitudes(omega);
    DiscreteSpectrum spectrum;
    spectrum.entries.reserve(omega.order());
    for (std::size_t k = 0; k < omega.order(); ++k) {
        spectrum.entries.push_back(
            {omega.sigmas[k], std::polar(etas.etas[k] * mags[k], phases[k])});
    }
    return spectrum;
}

double t_sym(const EigenvalueSet& omega, double epsilon) {
    omega.validate();
    if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
        throw InvalidArgument("t_sym: epsilon must lie in (0, 1)");
    }
    const double s1 = omega.sigmas.front();
    const double total = omega.sum();
    if (epsilon >= 0.1 * s1 / total) {
        throw ValidityViolated("t_sym: epsilon not << sigma_1 / sum(sigma)");
    }
    double tail_terms = 0.0;
    for (std::size_t m = 1; m < omega.sigmas.size(); ++m) {
        tail_terms += std::log((omega.sigmas[m] + s1) / (omega.sigmas[m] - s1));
    }
    return (2.0 * tail_terms + std::log(2.0 / epsilon) - std::log(total / s1)) /
           (2.0 * s1);
}

double b_sep(const EigenvalueSet& omega, double epsilon) {
    omega.validate();
    if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
        throw InvalidArgument("b_sep: epsilon must lie in (0, 1)");
    }
    const double sn = omega.sigmas.back();
    return 2.0 * sn / (std::numbers::pi * std::numbers::pi) *
           (std::log(2.0 / epsilon) - std::log(omega.sum() / sn));
}

double tb_estimate(const EigenvalueSet& omega, double epsilon) {
    return t_sym(omega, epsilon) * b_sep(omega, epsilon) /
           static_cast<double>(omega.order());
}

}  // namespace soliton::symmetric
