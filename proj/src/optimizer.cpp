#include "soliton/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "soliton/darboux.hpp"
#include "soliton/errors.hpp"
#include "soliton/metrics.hpp"
#include "soliton/parallel.hpp"

namespace soliton::optimizer {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Closed-form duration estimate without the validity guard; grid sizing only.
double t_sym_heuristic(const EigenvalueSet& omega, double epsilon) {
    const double s1 = omega.sigmas.front();
    double tail = 0.0;
    for (std::size_t m = 1; m < omega.sigmas.size(); ++m) {
        tail += std::log((omega.sigmas[m] + s1) / (omega.sigmas[m] - s1));
    }
    const double v = (2.0 * tail + std::log(2.0 / epsilon) -
                      std::log(omega.sum() / s1)) /
                     (2.0 * s1);
    return std::max(v, std::log(2.0 / epsilon) / (2.0 * s1));
}

TimeGrid sized_grid(const EigenvalueSet& omega, const EtaVector& etas,
                    double epsilon, double span_factor) {
    const double s1 = omega.sigmas.front();
    double shift_margin = 0.0;
    for (std::size_t k = 0; k < etas.etas.size(); ++k) {
        shift_margin = std::max(
            shift_margin, std::abs(std::log(etas.etas[k])) / (2.0 * omega.sigmas[k]));
    }
    const double half =
        span_factor * (t_sym_heuristic(omega, epsilon) + 3.0 / s1 + shift_margin);
    const double dt =
        std::min(1.0 / (8.0 * symmetric::b_sep(omega, epsilon)), 0.05);
    return TimeGrid::centered(half, dt);
}

struct Evaluation {
    double t_w = 0.0;
    double b_w = 0.0;
};

// Pure per-phase-combination evaluation on a shared grid.
class PhaseEvaluator {
public:
    PhaseEvaluator(const EigenvalueSet& omega, const EtaVector& etas,
                   double epsilon, TimeGrid grid)
        : omega_(omega), etas_(etas), epsilon_(epsilon), grid_(grid),
          e_total_(0.0) {
        for (const double s : omega.sigmas) e_total_ += 4.0 * s;
    }

    Evaluation operator()(const std::vector<double>& free_phases) const {
        std::vector<double> phases(omega_.order(), 0.0);
        for (std::size_t j = 0; j < free_phases.size(); ++j) phases[j + 1] = free_phases[j];
        const auto spectrum = symmetric::build_spectrum(omega_, etas_, phases);
        const auto pulse = darboux::synthesize(spectrum, grid_);
        const auto tw = metrics::duration(pulse, epsilon_, e_total_);
        const auto bw = metrics::bandwidth(pulse, epsilon_, e_total_);
        return {tw.width, bw.width};
    }

private:
    const EigenvalueSet& omega_;
    const EtaVector& etas_;
    double epsilon_;
    TimeGrid grid_;
    double e_total_;
};

// All combinations of one value-list per free axis, flattened with the
// first axis as the fastest-varying digit.
std::vector<std::vector<double>> combos(const std::vector<std::vector<double>>& axes) {
    std::size_t total = 1;
    for (const auto& a : axes) total *= a.size();
    std::vector<std::vector<double>> out;
    out.reserve(total);
    for (std::size_t c = 0; c < total; ++c) {
        std::vector<double> v(axes.size());
        std::size_t rem = c;
        for (std::size_t j = 0; j < axes.size(); ++j) {
            v[j] = axes[j][rem % axes[j].size()];
            rem /= axes[j].size();
        }
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<Evaluation> evaluate_all(const PhaseEvaluator& eval,
                                     const std::vector<std::vector<double>>& points,
                                     unsigned workers) {
    std::vector<Evaluation> results(points.size());
    parallel_for(points.size(), [&](std::size_t i) { results[i] = eval(points[i]); },
                 workers);
    return results;
}

struct Extreme {
    double value = 0.0;
    std::vector<double> free_phases;
};

}  // namespace

TimeGrid auto_grid(const EigenvalueSet& omega, const EtaVector& etas,
                   double epsilon) {
    omega.validate();
    etas.validate(omega.order());
    return sized_grid(omega, etas, epsilon, 1.0);
}

PhaseSweepResult phase_extremes(const EigenvalueSet& omega, const EtaVector& etas,
                                double epsilon, const SweepSettings& settings) {
    omega.validate();
    etas.validate(omega.order());
    if (settings.coarse_n < 2) throw InvalidArgument("phase_extremes: coarse_n must be >= 2");
    if (settings.refine_rounds < 0) throw InvalidArgument("phase_extremes: refine_rounds must be >= 0");

    const std::size_t n_free = omega.order() - 1;

    for (int attempt = 0;; ++attempt) {
        const TimeGrid grid = sized_grid(omega, etas, epsilon,
                                         attempt == 0 ? 1.0 : 2.0);
        try {
            const PhaseEvaluator eval(omega, etas, epsilon, grid);

            PhaseSweepResult out;
            out.epsilon = epsilon;

            if (n_free == 0) {
                const Evaluation e = eval({});
                out.t_max = e.t_w;
                out.b_max = out.b_min = e.b_w;
                out.phases_at_tmax = out.phases_at_bmax = out.phases_at_bmin = {0.0};
                return out;
            }

            std::vector<std::vector<double>> axes(
                n_free, std::vector<double>(static_cast<std::size_t>(settings.coarse_n)));
            for (auto& axis : axes) {
                for (int i = 0; i < settings.coarse_n; ++i) {
                    axis[static_cast<std::size_t>(i)] =
                        kTwoPi * static_cast<double>(i) / static_cast<double>(settings.coarse_n);
                }
            }
            const auto points = combos(axes);
            const auto results = evaluate_all(eval, points, settings.workers);

            // Coarse argmax/argmin, lowest index wins ties.
            std::size_t i_tmax = 0, i_bmax = 0, i_bmin = 0;
            for (std::size_t i = 1; i < results.size(); ++i) {
                if (results[i].t_w > results[i_tmax].t_w) i_tmax = i;
                if (results[i].b_w > results[i_bmax].b_w) i_bmax = i;
                if (results[i].b_w < results[i_bmin].b_w) i_bmin = i;
            }

            const double cell = kTwoPi / static_cast<double>(settings.coarse_n);
            struct Target {
                Extreme state;
                bool maximize;
                bool use_bandwidth;
            };
            std::array<Target, 3> targets{
                Target{{results[i_tmax].t_w, points[i_tmax]}, true, false},
                Target{{results[i_bmax].b_w, points[i_bmax]}, true, true},
                Target{{results[i_bmin].b_w, points[i_bmin]}, false, true},
            };

            for (auto& target : targets) {
                double h = cell;
                for (int round = 0; round < settings.refine_rounds; ++round) {
                    std::vector<std::vector<double>> raxes(n_free);
                    const double step =
                        2.0 * h / static_cast<double>(settings.coarse_n - 1);
                    for (std::size_t j = 0; j < n_free; ++j) {
                        raxes[j].resize(static_cast<std::size_t>(settings.coarse_n));
                        for (int i = 0; i < settings.coarse_n; ++i) {
                            raxes[j][static_cast<std::size_t>(i)] =
                                target.state.free_phases[j] - h +
                                step * static_cast<double>(i);
                        }
                    }
                    const auto rpoints = combos(raxes);
                    const auto rresults = evaluate_all(eval, rpoints, settings.workers);
                    for (std::size_t i = 0; i < rresults.size(); ++i) {
                        const double v =
                            target.use_bandwidth ? rresults[i].b_w : rresults[i].t_w;
                        const bool better =
                            target.maximize ? v > target.state.value : v < target.state.value;
                        if (better) target.state = {v, rpoints[i]};
                    }
                    h = step;
                }
            }

            const auto full_phases = [&](const std::vector<double>& free_phases) {
                std::vector<double> phases(omega.order(), 0.0);
                for (std::size_t j = 0; j < free_phases.size(); ++j) {
                    phases[j + 1] = free_phases[j];
                }
                return phases;
            };
            out.t_max = targets[0].state.value;
            out.b_max = targets[1].state.value;
            out.b_min = targets[2].state.value;
            out.phases_at_tmax = full_phases(targets[0].state.free_phases);
            out.phases_at_bmax = full_phases(targets[1].state.free_phases);
            out.phases_at_bmin = full_phases(targets[2].state.free_phases);
            return out;
        } catch (const InsufficientEnergy&) {
            if (attempt >= 1) throw;
        }
    }
}

SweepRecord make_record(const EigenvalueSet& omega, const EtaVector& etas,
                        const PhaseSweepResult& sweep) {
    SweepRecord rec;
    const double s1 = omega.sigmas.front();
    for (const double s : omega.sigmas) rec.sigma_ratios.push_back(s / s1);
    rec.etas = etas.etas;
    rec.epsilon = sweep.epsilon;
    rec.t_max = sweep.t_max;
    rec.b_max = sweep.b_max;
    rec.tb_per_eig = sweep.t_max * sweep.b_max / static_cast<double>(omega.order());
    rec.tb_ratio_vs_1soliton = rec.tb_per_eig / metrics::time_bandwidth_1(sweep.epsilon);
    return rec;
}

std::vector<SweepRecord> eta_sweep(const EigenvalueSet& omega,
                                   const std::vector<double>& epsilon_list,
                                   const std::vector<EtaVector>& eta_grid,
                                   const SweepSettings& settings) {
    omega.validate();
    for (const auto& etas : eta_grid) {
        etas.validate(omega.order());
        for (const double e : etas.etas) {
            if (e > 1.0) {
                throw InvalidArgument("eta_sweep: etas must lie in (0, 1]");
            }
        }
    }
    std::vector<SweepRecord> records;
    records.reserve(epsilon_list.size() * eta_grid.size());
    for (const double eps : epsilon_list) {
        for (const auto& etas : eta_grid) {
            records.push_back(make_record(omega, etas,
                                          phase_extremes(omega, etas, eps, settings)));
        }
    }
    return records;
}

std::pair<EtaVector, SweepRecord> optimize_eta(const EigenvalueSet& omega,
                                               double epsilon,
                                               int eta_grid_resolution,
                                               const SweepSettings& settings) {
    omega.validate();
    if (eta_grid_resolution < 2) {
        throw InvalidArgument("optimize_eta: eta_grid_resolution must be >= 2");
    }
    const std::size_t n_free = omega.order() - 1;
    if (n_free == 0) {
        const EtaVector etas = EtaVector::ones(1);
        return {etas, make_record(omega, etas, phase_extremes(omega, etas, epsilon, settings))};
    }

    // Reflection maps {eta_k} to {1/eta_k} jointly, so with eta_1 pinned at 1
    // only the eta_2 axis can be halved to (0, 1]. The remaining axes must
    // cover both sides of 1: configurations with the sigma_1 soliton between
    // the others need mixed eta signs in log, and for N = 3 the minimum of
    // t_max * b_max lies in that mixed region.
    const auto log_min = [](std::size_t) { return -3.0; };
    const auto log_max = [](std::size_t j) { return j == 0 ? 0.0 : 3.0; };
    const auto res = static_cast<std::size_t>(eta_grid_resolution);

    struct Best {
        double tb = 0.0;
        std::vector<double> log_eta;
        PhaseSweepResult sweep;
        bool valid = false;
    } best;

    const auto eval_combo = [&](const std::vector<double>& log_eta) {
        EtaVector etas = EtaVector::ones(omega.order());
        for (std::size_t j = 0; j < n_free; ++j) {
            etas.etas[j + 1] = std::pow(10.0, log_eta[j]);
        }
        const auto sweep = phase_extremes(omega, etas, epsilon, settings);
        const double tb = sweep.t_max * sweep.b_max;
        if (!best.valid || tb < best.tb) {
            best = {tb, log_eta, sweep, true};
        }
    };

    std::vector<std::vector<double>> axes(n_free, std::vector<double>(res));
    for (std::size_t j = 0; j < n_free; ++j) {
        for (std::size_t i = 0; i < res; ++i) {
            axes[j][i] = log_min(j) + (log_max(j) - log_min(j)) *
                                          static_cast<double>(i) /
                                          static_cast<double>(res - 1);
        }
    }
    for (const auto& pt : combos(axes)) eval_combo(pt);

    // One local re-gridding round around the coarse argmin.
    const auto center = best.log_eta;
    std::vector<std::vector<double>> raxes(n_free, std::vector<double>(res));
    for (std::size_t j = 0; j < n_free; ++j) {
        const double cell =
            (log_max(j) - log_min(j)) / static_cast<double>(res - 1);
        const double lo = std::max(log_min(j), center[j] - cell);
        const double hi = std::min(log_max(j), center[j] + cell);
        for (std::size_t i = 0; i < res; ++i) {
            raxes[j][i] = lo + (hi - lo) * static_cast<double>(i) /
                                   static_cast<double>(res - 1);
        }
    }
    for (const auto& pt : combos(raxes)) eval_combo(pt);

    EtaVector etas = EtaVector::ones(omega.order());
    for (std::size_t j = 0; j < n_free; ++j) {
        etas.etas[j + 1] = std::pow(10.0, best.log_eta[j]);
    }
    return {etas, make_record(omega, etas, best.sweep)};
}

std::vector<SweepRecord> eigenvalue_sweep(
    const std::vector<std::vector<double>>& ratio_grid, double epsilon,
    int eta_grid_resolution, const SweepSettings& settings) {
    constexpr double kSigma1 = 0.5;  // arbitrary by scale invariance
    std::vector<SweepRecord> records;
    records.reserve(ratio_grid.size());
    for (const auto& ratios : ratio_grid) {
        EigenvalueSet omega;
        omega.sigmas.push_back(kSigma1);
        for (const double r : ratios) {
            if (!(r > 1.0)) {
                throw InvalidArgument("eigenvalue_sweep: ratios must be > 1");
            }
            omega.sigmas.push_back(kSigma1 * r);
        }
        records.push_back(optimize_eta(omega, epsilon, eta_grid_resolution, settings).second);
    }
    return records;
}

std::vector<SampledPulse> optimal_pulse_gallery(const EigenvalueSet& omega,
                                                const EtaVector& etas,
                                                double epsilon,
                                                int phase_samples) {
    omega.validate();
    etas.validate(omega.order());
    if (phase_samples < 1) {
        throw InvalidArgument("optimal_pulse_gallery: phase_samples must be >= 1");
    }
    const TimeGrid grid = auto_grid(omega, etas, epsilon);
    std::vector<SampledPulse> pulses;
    pulses.reserve(static_cast<std::size_t>(phase_samples));
    for (int i = 0; i < phase_samples; ++i) {
        std::vector<double> phases(omega.order(), 0.0);
        for (std::size_t k = 1; k < omega.order(); ++k) {
            phases[k] = kTwoPi * static_cast<double>(i) / static_cast<double>(phase_samples);
        }
        pulses.push_back(
            darboux::synthesize(symmetric::build_spectrum(omega, etas, phases), grid));
    }
    return pulses;
}

}  // namespace soliton::optimizer
