#include "soliton/darboux.hpp"

#include <cmath>
#include <vector>

#include "soliton/errors.hpp"

namespace soliton::darboux {

namespace {

constexpr double kOverflowAbs = 1e150;
constexpr double kOverflowLog = 345.0;  // ln(1e150)

}  // namespace

SampledPulse synthesize(const DiscreteSpectrum& spectrum, const TimeGrid& grid) {
    spectrum.validate();
    return synthesize_ordered(spectrum.entries, grid);
}

SampledPulse synthesize_ordered(const std::vector<SpectrumEntry>& entries,
                                const TimeGrid& grid) {
    grid.validate();
    const std::size_t n_eig = entries.size();
    const std::size_t n_t = grid.n_samples;

    for (std::size_t k = 0; k < n_eig; ++k) {
        if (!(entries[k].sigma > 0.0)) {
            throw InvalidArgument("synthesize: all sigma must be > 0");
        }
        for (std::size_t m = k + 1; m < n_eig; ++m) {
            if (std::abs(entries[k].sigma - entries[m].sigma) < 1e-12) {
                throw DuplicateEigenvalue("synthesize: coincident eigenvalues");
            }
        }
    }

    // rho_k(t) = (Q_d(l_k)/(l_k - l_k*)) prod_{m!=k} (l_k - l_m)/(l_k - l_m*) exp(2j l_k t).
    // On the imaginary axis the product and 1/(l_k - l_k*) are real up to a
    // factor of j, and exp(2j l_k t) = exp(-2 sigma_k t). Seed each rho in
    // log-magnitude/phase form so wide grids fail loudly instead of silently
    // overflowing intermediate products.
    std::vector<std::vector<cplx>> rho(n_eig, std::vector<cplx>(n_t));
    for (std::size_t k = 0; k < n_eig; ++k) {
        const double sk = entries[k].sigma;
        double coef_real = 1.0;
        for (std::size_t m = 0; m < n_eig; ++m) {
            if (m == k) continue;
            const double sm = entries[m].sigma;
            coef_real *= (sk - sm) / (sk + sm);
        }
        const cplx coef = entries[k].qd / cplx(0.0, 2.0 * sk) * coef_real;
        const double log_mag = std::log(std::abs(coef));
        const double phase = std::arg(coef);
        for (std::size_t i = 0; i < n_t; ++i) {
            const double e = log_mag - 2.0 * sk * grid.t(i);
            if (e > kOverflowLog) {
                throw OverflowGuard("synthesize: |rho| exceeds 1e150; shift or shrink the grid");
            }
            rho[k][i] = std::polar(std::exp(e), phase);
        }
    }

    SampledPulse pulse;
    pulse.grid = grid;
    pulse.samples.assign(n_t, cplx(0.0, 0.0));

    for (std::size_t k = 0; k < n_eig; ++k) {
        const double sk = entries[k].sigma;
        const cplx lk(0.0, sk);
        const cplx two_j_im = cplx(0.0, 2.0) * (lk - std::conj(lk));  // = -4 sigma_k
        for (std::size_t i = 0; i < n_t; ++i) {
            const cplx r = rho[k][i];
            const double denom = 1.0 + std::norm(r);
            pulse.samples[i] += two_j_im * std::conj(r) / denom;

            const cplx s = (lk - std::conj(lk)) / denom;  // 2j sigma_k / (1+|rho|^2)
            for (std::size_t m = k + 1; m < n_eig; ++m) {
                const cplx lm(0.0, entries[m].sigma);
                const cplx rm = rho[m][i];
                const cplx num = (lm - lk) * rm + s * (rm - r);
                const cplx den = (lm - std::conj(lk)) - s * (1.0 + std::conj(r) * rm);
                const cplx next = num / den;
                if (!std::isfinite(next.real()) || !std::isfinite(next.imag()) ||
                    std::abs(next) > kOverflowAbs) {
                    throw OverflowGuard("synthesize: rho update overflowed; shift or shrink the grid");
                }
                rho[m][i] = next;
            }
        }
    }
    return pulse;
}

double numerical_energy(const SampledPulse& pulse) {
    pulse.grid.validate();
    if (pulse.samples.size() != pulse.grid.n_samples) {
        throw InvalidArgument("numerical_energy: samples.size() != grid.n_samples");
    }
    double sum = 0.0;
    for (const auto& q : pulse.samples) sum += std::norm(q);
    sum -= 0.5 * (std::norm(pulse.samples.front()) + std::norm(pulse.samples.back()));
    return sum * pulse.grid.dt;
}

}  // namespace soliton::darboux
