#include "soliton/nft.hpp"

#include <algorithm>
#include <cmath>

#include "soliton/errors.hpp"
#include "soliton/parallel.hpp"

namespace soliton::nft {

namespace {

constexpr double kNewtonStep = 1e-6;
constexpr double kRootTol = 1e-9;
constexpr int kNewtonMaxIter = 50;
constexpr double kDerivStep = 1e-5;

struct Vec2 {
    cplx v1, v2;
};

// cos(z) and sin(z)/z, series-accelerated for the small per-step arguments
// |z| = |k*dt| that dominate here.
void cos_sinc(cplx z, cplx& c, cplx& s) {
    const cplx z2 = z * z;
    if (std::abs(z) < 0.1) {
        c = 1.0 + z2 * (-1.0 / 2.0 + z2 * (1.0 / 24.0 + z2 * (-1.0 / 720.0 + z2 / 40320.0)));
        s = 1.0 + z2 * (-1.0 / 6.0 + z2 * (1.0 / 120.0 + z2 * (-1.0 / 5040.0 + z2 / 362880.0)));
    } else {
        c = std::cos(z);
        s = std::sin(z) / z;
    }
}

// One dt-cell of the Zakharov-Shabat system in the rotated frame
// u = theta * exp(j*lambda*t): u_next = exp(j*lambda*dt) * expm(dir*dt*A) * u
// with A = [[-j*lambda, q], [-conj(q), j*lambda]]. dir = -1 steps backward.
Vec2 step_cell(const Vec2& u, cplx q, cplx lambda, double dt, double dir,
               cplx phase_fwd) {
    const cplx k = std::sqrt(lambda * lambda + std::norm(q));
    cplx c, s;
    cos_sinc(k * (dir * dt), c, s);
    s *= dir * dt;
    const cplx jl(-lambda.imag(), lambda.real());  // j*lambda
    const cplx m11 = c - jl * s;
    const cplx m22 = c + jl * s;
    Vec2 out;
    out.v1 = phase_fwd * (m11 * u.v1 + q * s * u.v2);
    out.v2 = phase_fwd * (-std::conj(q) * s * u.v1 + m22 * u.v2);
    return out;
}

// Left Jost solution in the rotated frame, propagated across cells
// [0, n_cells). Starts as (1, 0) at the left grid edge.
Vec2 propagate_left(const SampledPulse& pulse, cplx lambda, std::size_t n_cells) {
    const double dt = pulse.grid.dt;
    const cplx phase = std::exp(cplx(0.0, 1.0) * lambda * dt);
    Vec2 u{1.0, 0.0};
    for (std::size_t i = 0; i < n_cells; ++i) {
        u = step_cell(u, pulse.samples[i], lambda, dt, 1.0, phase);
    }
    return u;
}

// Right Jost solution psi+ in the frame w = psi * exp(-j*lambda*t),
// propagated backward from the right grid edge down to cell `first`.
Vec2 propagate_right(const SampledPulse& pulse, cplx lambda, std::size_t first) {
    const double dt = pulse.grid.dt;
    const cplx phase = std::exp(cplx(0.0, 1.0) * lambda * dt);
    Vec2 w{0.0, 1.0};
    for (std::size_t i = pulse.grid.n_samples; i-- > first;) {
        w = step_cell(w, pulse.samples[i], lambda, dt, -1.0, phase);
    }
    return w;
}

JostPair scatter_impl(const SampledPulse& pulse, cplx lambda) {
    const auto n = pulse.grid.n_samples;
    const double dt = pulse.grid.dt;
    const Vec2 u = propagate_left(pulse, lambda, n);
    const double t_right = pulse.grid.t_end() + 0.5 * dt;

    JostPair jp;
    jp.lambda = lambda;
    jp.a = u.v1;
    jp.b = u.v2 * std::exp(cplx(0.0, -2.0) * lambda * t_right);
    if (lambda.imag() == 0.0) {
        const double unimod = std::norm(jp.a) + std::norm(jp.b) - 1.0;
        jp.degraded_accuracy = std::abs(unimod) > 1e-4;
    }
    return jp;
}

cplx a_coefficient(const SampledPulse& pulse, cplx lambda) {
    return propagate_left(pulse, lambda, pulse.grid.n_samples).v1;
}

// Norming constant b at a bound state: the left solution equals
// b * psi+ everywhere, so project the two solutions at mid-grid where both
// are O(1).
cplx bound_state_b(const SampledPulse& pulse, cplx lambda) {
    const std::size_t mid = pulse.grid.n_samples / 2;
    const double t_mid = pulse.grid.t_start + (static_cast<double>(mid) - 0.5) * pulse.grid.dt;
    const Vec2 u = propagate_left(pulse, lambda, mid);
    const Vec2 w = propagate_right(pulse, lambda, mid);
    const cplx el = std::exp(cplx(0.0, -1.0) * lambda * t_mid);
    const cplx er = std::exp(cplx(0.0, 1.0) * lambda * t_mid);
    const cplx th1 = u.v1 * el, th2 = u.v2 * el;
    const cplx ps1 = w.v1 * er, ps2 = w.v2 * er;
    const double denom = std::norm(ps1) + std::norm(ps2);
    if (!(denom > 0.0) || !std::isfinite(denom)) {
        throw NoConvergence("bound_state_b: right Jost solution degenerate at mid-grid");
    }
    return (th1 * std::conj(ps1) + th2 * std::conj(ps2)) / denom;
}

}  // namespace

JostPair scatter(const SampledPulse& pulse, cplx lambda, double decay_tol) {
    pulse.validate(decay_tol);
    if (lambda.imag() < 0.0) {
        throw InvalidArgument("scatter: Im(lambda) must be >= 0");
    }
    return scatter_impl(pulse, lambda);
}

std::vector<cplx> find_eigenvalues(const SampledPulse& pulse, double sigma_max,
                                   int n_seed) {
    pulse.validate();
    if (!(sigma_max > 0.0)) throw InvalidArgument("find_eigenvalues: sigma_max must be > 0");
    if (n_seed < 8) throw InvalidArgument("find_eigenvalues: n_seed must be >= 8");

    // a(j*sigma) is real for imaginary-axis lambda (a(-conj(lambda)) = conj(a)).
    const auto a_of = [&](double sigma) {
        return a_coefficient(pulse, cplx(0.0, sigma));
    };
    const auto g = [&](double sigma) { return a_of(sigma).real(); };

    const double step = sigma_max / static_cast<double>(n_seed);
    std::vector<double> seeds(static_cast<std::size_t>(n_seed));
    std::vector<double> ga(seeds.size());
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        seeds[i] = step * static_cast<double>(i + 1);
    }
    parallel_for(seeds.size(), [&](std::size_t i) { ga[i] = g(seeds[i]); });

    // a(j*sigma) -> 1 as sigma -> inf; a negative value at the top of the
    // range means an odd number of roots lie above it.
    if (ga.back() < 0.0) {
        throw SearchRangeTooSmall(
            "find_eigenvalues: a(j*sigma_max) < 0, eigenvalue above the search range");
    }

    const auto newton_from = [&](double sigma, double lo, double hi,
                                 bool bracketed) -> double {
        double glo = 0.0;
        if (bracketed) glo = g(lo);
        double cur = sigma;
        double gcur = g(cur);
        for (int it = 0; it < kNewtonMaxIter; ++it) {
            // Converge on the real part: in exact arithmetic a(j*sigma) is
            // real, but the discretized propagation leaves a small constant
            // imaginary residue that never shrinks with the iteration.
            if (std::abs(gcur) < kRootTol) return cur;
            if (bracketed && hi - lo < 1e-13) return 0.5 * (lo + hi);
            const double d = (g(cur + kNewtonStep) - g(cur - kNewtonStep)) / (2.0 * kNewtonStep);
            double nxt = cur - gcur / d;
            if (bracketed) {
                if (!std::isfinite(nxt) || nxt <= lo || nxt >= hi) nxt = 0.5 * (lo + hi);
            } else if (!std::isfinite(nxt) || nxt <= 0.0 || nxt > sigma_max) {
                return -1.0;  // speculative start wandered off; drop it
            }
            const double gn = g(nxt);
            if (bracketed) {
                if ((gn < 0.0) == (glo < 0.0)) {
                    lo = nxt;
                    glo = gn;
                } else {
                    hi = nxt;
                }
            }
            cur = nxt;
            gcur = gn;
        }
        if (bracketed) throw NoConvergence("find_eigenvalues: Newton exceeded 50 iterations");
        return -1.0;
    };

    std::vector<double> roots;
    for (std::size_t i = 0; i + 1 < seeds.size(); ++i) {
        if ((ga[i] < 0.0) != (ga[i + 1] < 0.0)) {
            roots.push_back(newton_from(0.5 * (seeds[i] + seeds[i + 1]), seeds[i],
                                        seeds[i + 1], true));
        }
    }
    // Local minima of |a| without a sign change: possible pair of close roots
    // straddled by the seed grid.
    for (std::size_t i = 1; i + 1 < seeds.size(); ++i) {
        const double m = std::abs(ga[i]);
        if (m < 1e-3 && m < std::abs(ga[i - 1]) && m < std::abs(ga[i + 1]) &&
            (ga[i] < 0.0) == (ga[i - 1] < 0.0) && (ga[i] < 0.0) == (ga[i + 1] < 0.0)) {
            const double r = newton_from(seeds[i], 0.0, 0.0, false);
            if (r > 0.0) roots.push_back(r);
        }
    }

    std::sort(roots.begin(), roots.end());
    std::vector<cplx> out;
    for (const double r : roots) {
        if (!out.empty() && r - out.back().imag() < 1e-7) continue;
        if (r > sigma_max - 0.5 * step) {
            throw SearchRangeTooSmall("find_eigenvalues: root at the sigma_max boundary");
        }
        out.emplace_back(0.0, r);
    }
    return out;
}

cplx spectral_amplitude(const SampledPulse& pulse, cplx lambda_k) {
    pulse.validate();
    if (!(lambda_k.imag() > 0.0)) {
        throw InvalidArgument("spectral_amplitude: Im(lambda_k) must be > 0");
    }
    if (std::abs(a_coefficient(pulse, lambda_k)) > 1e-4) {
        throw NotAnEigenvalue("spectral_amplitude: |a(lambda_k)| > 1e-4");
    }
    const cplx ap = (a_coefficient(pulse, lambda_k + kDerivStep) -
                     a_coefficient(pulse, lambda_k - kDerivStep)) /
                    (2.0 * kDerivStep);
    if (std::abs(ap) < 1e-8) {
        throw DegenerateRoot("spectral_amplitude: |a'(lambda_k)| < 1e-8");
    }
    return bound_state_b(pulse, lambda_k) / ap;
}

std::vector<cplx> continuous_spectrum(const SampledPulse& pulse,
                                      const std::vector<double>& lambda_grid) {
    pulse.validate();
    std::vector<cplx> qc(lambda_grid.size());
    parallel_for(lambda_grid.size(), [&](std::size_t i) {
        const JostPair jp = scatter_impl(pulse, cplx(lambda_grid[i], 0.0));
        qc[i] = jp.b / jp.a;
    });
    return qc;
}

DiscreteSpectrum analyze(const SampledPulse& pulse, double sigma_max, int n_seed) {
    const auto lambdas = find_eigenvalues(pulse, sigma_max, n_seed);
    DiscreteSpectrum spectrum;
    spectrum.entries.reserve(lambdas.size());
    for (const cplx lam : lambdas) {
        spectrum.entries.push_back({lam.imag(), spectral_amplitude(pulse, lam)});
    }
    return spectrum;
}

}  // namespace soliton::nft
