#pragma once

#include <utility>
#include <vector>

#include "soliton/symmetric.hpp"
#include "soliton/types.hpp"

namespace soliton::optimizer {

using symmetric::EigenvalueSet;
using symmetric::EtaVector;

/// Worst-case duration and bandwidth over all phase combinations of one
/// (omega, eta) configuration, with the achieving phase vectors.
struct PhaseSweepResult {
    double t_max = 0.0;
    double b_max = 0.0;
    double b_min = 0.0;
    std::vector<double> phases_at_tmax;
    std::vector<double> phases_at_bmax;
    std::vector<double> phases_at_bmin;
    double epsilon = 0.0;
};

/// One flattened sweep record; serializable to CSV.
struct SweepRecord {
    std::vector<double> sigma_ratios;  // sigma_k / sigma_1, first entry 1
    std::vector<double> etas;          // eta_1 = 1
    double epsilon = 0.0;
    double t_max = 0.0;
    double b_max = 0.0;
    double tb_per_eig = 0.0;           // t_max * b_max / N
    double tb_ratio_vs_1soliton = 0.0; // tb_per_eig / time_bandwidth_1(eps)
};

/// Search protocol knobs. phi_1 is fixed to 0; each of the N-1 free phases
/// is quantized by coarse_n points, then each extreme is refined by
/// re-gridding the +/-1-cell neighborhood with coarse_n points per axis.
struct SweepSettings {
    int coarse_n = 64;
    int refine_rounds = 2;
    unsigned workers = 0;  // 0 = hardware concurrency
};

/// A-priori grid: span 2*(t_sym + 6/(2 sigma_1)) centered at 0 plus the
/// eta-induced shift margin, dt set so Nyquist >= 4*b_sep.
TimeGrid auto_grid(const EigenvalueSet& omega, const EtaVector& etas,
                   double epsilon);

/// Exhaustive coarse phase sweep plus local refinement for T_max, B_max and
/// B_min. On InsufficientEnergy the grid span is doubled once before the
/// error propagates.
PhaseSweepResult phase_extremes(const EigenvalueSet& omega, const EtaVector& etas,
                                double epsilon, const SweepSettings& settings = {});

/// One record per (epsilon, eta) pair; epsilons vary in the outer loop.
std::vector<SweepRecord> eta_sweep(const EigenvalueSet& omega,
                                   const std::vector<double>& epsilon_list,
                                   const std::vector<EtaVector>& eta_grid,
                                   const SweepSettings& settings = {});

/// Grid search of eta_k minimizing t_max * b_max, with one local
/// re-gridding round around the argmin. eta_2 spans logspace(1e-3, 1]
/// (reflection symmetry); eta_k for k >= 3 spans logspace(1e-3, 1e3),
/// covering pulses whose sigma_1 soliton sits between the others.
std::pair<EtaVector, SweepRecord> optimize_eta(const EigenvalueSet& omega,
                                               double epsilon,
                                               int eta_grid_resolution,
                                               const SweepSettings& settings = {});

/// For each ratio vector {sigma_k/sigma_1, k>=2} run optimize_eta with
/// sigma_1 fixed at 0.5 (scale invariance) and emit the record.
std::vector<SweepRecord> eigenvalue_sweep(
    const std::vector<std::vector<double>>& ratio_grid, double epsilon,
    int eta_grid_resolution, const SweepSettings& settings = {});

/// Pulses for `phase_samples` phase combinations uniformly spaced along the
/// diagonal of the free-phase torus; |q| traces for plotting.
std::vector<SampledPulse> optimal_pulse_gallery(const EigenvalueSet& omega,
                                                const EtaVector& etas,
                                                double epsilon,
                                                int phase_samples);

SweepRecord make_record(const EigenvalueSet& omega, const EtaVector& etas,
                        const PhaseSweepResult& sweep);

}  // namespace soliton::optimizer
