#include "soliton/types.hpp"

#include <algorithm>
#include <cmath>

#include "soliton/errors.hpp"

namespace soliton {

TimeGrid TimeGrid::centered(double half_span, double dt) {
    if (!(half_span > 0.0) || !(dt > 0.0)) {
        throw InvalidArgument("TimeGrid::centered requires half_span > 0 and dt > 0");
    }
    const auto half_count = static_cast<std::size_t>(std::ceil(half_span / dt));
    TimeGrid g;
    g.dt = dt;
    g.n_samples = 2 * half_count + 1;
    g.t_start = -static_cast<double>(half_count) * dt;
    return g;
}

void TimeGrid::validate() const {
    if (!(dt > 0.0)) throw InvalidArgument("TimeGrid: dt must be > 0");
    if (n_samples < 2) throw InvalidArgument("TimeGrid: n_samples must be >= 2");
}

double SampledPulse::max_abs() const {
    double m = 0.0;
    for (const auto& q : samples) m = std::max(m, std::abs(q));
    return m;
}

void SampledPulse::validate(double decay_tol) const {
    grid.validate();
    if (samples.size() != grid.n_samples) {
        throw InvalidArgument("SampledPulse: samples.size() != grid.n_samples");
    }
    const double peak = max_abs();
    const double edge = std::max(std::abs(samples.front()), std::abs(samples.back()));
    if (edge > decay_tol * peak) {
        throw NonDecayingPulse("SampledPulse: boundary samples exceed decay_tol * max|q|");
    }
}

double DiscreteSpectrum::total_energy() const {
    double s = 0.0;
    for (const auto& e : entries) s += e.sigma;
    return 4.0 * s;
}

void DiscreteSpectrum::validate() const {
    for (const auto& e : entries) {
        if (!(e.sigma > 0.0)) {
            throw InvalidArgument("DiscreteSpectrum: all sigma must be > 0");
        }
        if (e.qd == cplx(0.0, 0.0)) {
            throw InvalidArgument("DiscreteSpectrum: spectral amplitudes must be nonzero");
        }
    }
    for (std::size_t i = 1; i < entries.size(); ++i) {
        if (entries[i].sigma <= entries[i - 1].sigma) {
            if (entries[i].sigma == entries[i - 1].sigma) {
                throw DuplicateEigenvalue("DiscreteSpectrum: coincident eigenvalues");
            }
            throw InvalidArgument("DiscreteSpectrum: entries must be sorted by ascending sigma");
        }
    }
}

}  // namespace soliton
