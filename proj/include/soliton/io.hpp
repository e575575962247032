#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "soliton/optimizer.hpp"
#include "soliton/symmetric.hpp"
#include "soliton/types.hpp"

namespace soliton::io {

/// A spectrum read from JSON, kept factored so eta-based commands can reuse
/// the parametrization.
struct SpectrumSpec {
    symmetric::EigenvalueSet omega;
    symmetric::EtaVector etas;        // all ones for raw-amplitude input
    std::vector<double> phases;
    std::vector<cplx> raw_qd;         // set only for "amplitudes" input
    bool raw = false;

    DiscreteSpectrum to_spectrum() const;
};

/// Accepted JSON forms, mirroring the three spectrum parametrizations:
///   {"eigenvalues":[s...], "amplitudes":[{"abs":a,"phase":p}, ...]}
///   {"eigenvalues":[s...], "symmetric_with_phases":[p...]}
///   {"eigenvalues":[s...], "etas_and_phases":{"etas":[e...],"phases":[p...]}}
SpectrumSpec parse_spectrum_json(const std::string& text);
SpectrumSpec load_spectrum_file(const std::string& path);

/// Fixed-precision scientific form used for every serialized float, so CSV
/// output is byte-deterministic across platforms and worker counts.
std::string format_double(double v);

/// Pulse CSV with header "t,re_q,im_q", 12 significant digits.
void write_pulse_csv(std::ostream& os, const SampledPulse& pulse);
void write_pulse_csv_file(const std::string& path, const SampledPulse& pulse);
SampledPulse read_pulse_csv_file(const std::string& path);

/// Sweep CSV: "sigma_ratios;etas;epsilon;t_max;b_max;tb_per_eig;tb_ratio;error".
/// List fields are comma-joined. The error column is empty on success.
std::string sweep_csv_header();
std::string sweep_record_key(const std::vector<double>& sigma_ratios,
                             const std::vector<double>& etas, double epsilon,
                             bool key_on_etas);
std::string sweep_record_line(const optimizer::SweepRecord& rec);
std::string sweep_failure_line(const std::vector<double>& sigma_ratios,
                               const std::vector<double>& etas, double epsilon,
                               const std::string& error);

/// Completed records parsed from an existing sweep CSV, keyed by input
/// tuple; used to resume. Torn or malformed lines are dropped.
std::vector<std::pair<std::string, std::string>> load_sweep_lines(
    const std::string& path, bool key_on_etas);

/// Key of an already-serialized record line, or nullopt if malformed.
std::optional<std::string> extract_sweep_key(const std::string& line,
                                             bool key_on_etas);

/// Gallery CSV: long format "phase_index,t,abs_q".
void write_gallery_csv(std::ostream& os, const std::vector<SampledPulse>& pulses);

}  // namespace soliton::io
