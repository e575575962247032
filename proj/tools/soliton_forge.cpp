// soliton_forge: command-line front end for multi-soliton synthesis,
// scattering analysis, propagation, and time-bandwidth sweeps.
//
// Exit codes: 0 success, 2 invalid input, 3 numerical failure.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "soliton/darboux.hpp"
#include "soliton/errors.hpp"
#include "soliton/evolution.hpp"
#include "soliton/io.hpp"
#include "soliton/metrics.hpp"
#include "soliton/nft.hpp"
#include "soliton/optimizer.hpp"
#include "soliton/symmetric.hpp"
#include "soliton/types.hpp"

namespace {

using nlohmann::json;
using namespace soliton;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitNumerical = 3;

bool is_input_error(const Error& e) {
    return dynamic_cast<const InvalidArgument*>(&e) != nullptr ||
           dynamic_cast<const ValidityViolated*>(&e) != nullptr ||
           dynamic_cast<const DuplicateEigenvalue*>(&e) != nullptr ||
           dynamic_cast<const DegenerateEigenvalues*>(&e) != nullptr;
}

json spectrum_to_json(const DiscreteSpectrum& spectrum) {
    json eig = json::array();
    json amp = json::array();
    for (const auto& e : spectrum.entries) {
        eig.push_back(e.sigma);
        amp.push_back({{"abs", std::abs(e.qd)}, {"phase", std::arg(e.qd)}});
    }
    return {{"eigenvalues", eig}, {"amplitudes", amp}};
}

// Grid sized from the parametrized form when available; raw-amplitude
// spectra get the extra span implied by their eta-equivalent magnitudes.
TimeGrid grid_for_spec(const io::SpectrumSpec& spec, double epsilon) {
    const TimeGrid base = optimizer::auto_grid(
        spec.omega, symmetric::EtaVector::ones(spec.omega.order()), epsilon);
    double extra = 0.0;
    if (spec.raw) {
        const auto sym = symmetric::symmetric_amplitudes(spec.omega);
        for (std::size_t k = 0; k < sym.size(); ++k) {
            const double eta = std::abs(spec.raw_qd[k]) / sym[k];
            extra = std::max(extra,
                             std::abs(std::log(eta)) / (2.0 * spec.omega.sigmas[k]));
        }
    } else {
        for (std::size_t k = 0; k < spec.etas.etas.size(); ++k) {
            extra = std::max(extra, std::abs(std::log(spec.etas.etas[k])) /
                                        (2.0 * spec.omega.sigmas[k]));
        }
    }
    return TimeGrid::centered(0.5 * base.span() + extra, base.dt);
}

// Synthesize on the sized grid; if the tails have not decayed, widen once.
SampledPulse synthesize_sized(const io::SpectrumSpec& spec, double epsilon,
                              std::optional<double> t_half,
                              std::optional<double> dt) {
    TimeGrid grid = grid_for_spec(spec, epsilon);
    if (t_half) grid = TimeGrid::centered(*t_half, dt.value_or(grid.dt));
    else if (dt) grid = TimeGrid::centered(0.5 * grid.span(), *dt);
    const auto spectrum = spec.to_spectrum();
    auto pulse = darboux::synthesize(spectrum, grid);
    try {
        pulse.validate();
    } catch (const NonDecayingPulse&) {
        if (t_half) throw;
        grid = TimeGrid::centered(grid.span(), grid.dt);
        pulse = darboux::synthesize(spectrum, grid);
        pulse.validate();
    }
    return pulse;
}

unsigned worker_default() {
    if (const char* env = std::getenv("SOLITON_FORGE_WORKERS")) {
        try {
            return static_cast<unsigned>(std::stoul(env));
        } catch (const std::exception&) {
            throw InvalidArgument("SOLITON_FORGE_WORKERS must be a non-negative integer");
        }
    }
    return 0;
}

struct SynthArgs {
    std::string spectrum_path;
    std::string out_path;
    double epsilon = 1e-6;
    std::optional<double> t_half;
    std::optional<double> dt;
};

int run_synth(const SynthArgs& args) {
    const auto spec = io::load_spectrum_file(args.spectrum_path);
    const auto pulse = synthesize_sized(spec, args.epsilon, args.t_half, args.dt);
    io::write_pulse_csv_file(args.out_path, pulse);

    double peak = pulse.max_abs();
    double sym_residual = 0.0;
    const std::size_t n = pulse.samples.size();
    for (std::size_t i = 0; i < n; ++i) {
        sym_residual = std::max(sym_residual,
                                std::abs(std::abs(pulse.samples[i]) -
                                         std::abs(pulse.samples[n - 1 - i])));
    }
    json report{
        {"out", args.out_path},
        {"n_samples", pulse.grid.n_samples},
        {"dt", pulse.grid.dt},
        {"t_half", -pulse.grid.t_start},
        {"energy_spectral", spec.to_spectrum().total_energy()},
        {"energy_numerical", darboux::numerical_energy(pulse)},
        {"abs_symmetry_residual", peak > 0.0 ? sym_residual / peak : 0.0},
    };
    std::cout << report.dump(2) << "\n";
    return kExitOk;
}

struct AnalyzeArgs {
    std::string pulse_path;
    std::string spectrum_path;
    double epsilon = 1e-4;
    double sigma_max = 0.0;  // 0 = auto
    int n_seed = 128;
};

int run_analyze(const AnalyzeArgs& args) {
    SampledPulse pulse;
    double sigma_max = args.sigma_max;
    if (!args.pulse_path.empty()) {
        pulse = io::read_pulse_csv_file(args.pulse_path);
        if (sigma_max <= 0.0) {
            sigma_max = 0.25 * darboux::numerical_energy(pulse) + 0.25;
        }
    } else {
        const auto spec = io::load_spectrum_file(args.spectrum_path);
        pulse = synthesize_sized(spec, 1e-6, std::nullopt, std::nullopt);
        if (sigma_max <= 0.0) {
            sigma_max = 1.5 * spec.omega.sigmas.back() + 0.5;
        }
    }
    pulse.validate();

    const auto spectrum = nft::analyze(pulse, sigma_max, args.n_seed);

    std::vector<double> lgrid;
    for (int i = -40; i <= 40; ++i) lgrid.push_back(0.05 * i);
    const auto qc = nft::continuous_spectrum(pulse, lgrid);
    double qc_max = 0.0;
    for (const auto& v : qc) qc_max = std::max(qc_max, std::abs(v));

    json report = spectrum_to_json(spectrum);
    report["sigma_max"] = sigma_max;
    report["qc_max_abs"] = qc_max;
    report["epsilon"] = args.epsilon;
    if (!spectrum.entries.empty()) {
        const auto m = metrics::measure(pulse, args.epsilon, spectrum.total_energy());
        report["energy"] = spectrum.total_energy();
        report["t_w"] = m.t_w;
        report["b_w"] = m.b_w;
        report["tb"] = m.t_w * m.b_w;
        report["tb_per_eig"] =
            m.t_w * m.b_w / static_cast<double>(spectrum.order());
    } else {
        report["energy"] = nullptr;
        report["t_w"] = nullptr;
        report["b_w"] = nullptr;
    }
    std::cout << report.dump(2) << "\n";
    return kExitOk;
}

struct PropagateArgs {
    std::string spectrum_path;
    std::string out_path;
    std::string method = "spectral";
    double z = 0.0;
    double dz = 1e-3;
    double epsilon = 1e-6;
};

int run_propagate(const PropagateArgs& args) {
    const auto spec = io::load_spectrum_file(args.spectrum_path);
    const auto spectrum = spec.to_spectrum();
    const auto q0 = synthesize_sized(spec, args.epsilon, std::nullopt, std::nullopt);

    json report{{"z", args.z}, {"method", args.method},
                {"energy_in", darboux::numerical_energy(q0)}};

    std::optional<SampledPulse> q_spectral;
    std::optional<SampledPulse> q_ssfm;

    if (args.method == "spectral" || args.method == "both") {
        const auto evolved = evolution::evolve_spectrum(spectrum, args.z);
        q_spectral = darboux::synthesize(evolved, q0.grid);
        report["spectrum_out"] = spectrum_to_json(evolved);
        report["energy_out"] = darboux::numerical_energy(*q_spectral);
    }
    if (args.method == "ssfm" || args.method == "both") {
        evolution::PropagationConfig config;
        config.z_total = args.z;
        config.n_steps = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::ceil(args.z / args.dz)));
        q_ssfm = evolution::propagate_nlse(q0, config);
        report["n_steps"] = config.n_steps;
        report["energy_out"] = darboux::numerical_energy(*q_ssfm);
    }
    if (q_spectral && q_ssfm) {
        double diff = 0.0;
        for (std::size_t i = 0; i < q_spectral->samples.size(); ++i) {
            diff = std::max(diff,
                            std::abs(q_spectral->samples[i] - q_ssfm->samples[i]));
        }
        const double peak = q_spectral->max_abs();
        report["method_discrepancy_abs"] = diff;
        report["method_discrepancy_rel"] = peak > 0.0 ? diff / peak : 0.0;
    }
    if (!args.out_path.empty()) {
        io::write_pulse_csv_file(args.out_path,
                                 q_spectral ? *q_spectral : *q_ssfm);
        report["out"] = args.out_path;
    }
    std::cout << report.dump(2) << "\n";
    return kExitOk;
}

struct SweepArgs {
    std::string mode;
    std::string params_path;
    std::string out_path;
    int workers = -1;  // -1 = env / auto
};

struct SweepJob {
    std::string key;
    // Eta mode: fixed omega, this eta vector and epsilon.
    // Ratio mode: this ratio vector, eta optimization inside.
    symmetric::EtaVector etas;
    double epsilon = 0.0;
    std::vector<double> ratios;         // ratio mode only (sigma_k/sigma_1, k >= 2)
    std::vector<double> display_ratios; // full ratio vector for failure lines
};

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open params file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InvalidArgument(std::string("params JSON: ") + e.what());
    }
}

int run_sweep(const SweepArgs& args) {
    if (args.mode != "eta" && args.mode != "ratio") {
        throw InvalidArgument("sweep: --mode must be eta or ratio");
    }
    const bool eta_mode = args.mode == "eta";
    const json params = load_json_file(args.params_path);
    if (!params.is_object()) throw InvalidArgument("params JSON: must be an object");

    optimizer::SweepSettings settings;
    if (params.contains("coarse_n")) settings.coarse_n = params["coarse_n"].get<int>();
    if (params.contains("refine_rounds")) {
        settings.refine_rounds = params["refine_rounds"].get<int>();
    }
    settings.workers =
        args.workers >= 0 ? static_cast<unsigned>(args.workers) : worker_default();

    symmetric::EigenvalueSet omega;
    int eta_resolution = 9;
    std::vector<SweepJob> jobs;

    if (eta_mode) {
        if (!params.contains("sigmas") || !params.contains("epsilons") ||
            !params.contains("etas")) {
            throw InvalidArgument("eta sweep params need \"sigmas\", \"epsilons\", \"etas\"");
        }
        omega.sigmas = params["sigmas"].get<std::vector<double>>();
        omega.validate();
        const auto epsilons = params["epsilons"].get<std::vector<double>>();
        const auto eta_rows = params["etas"].get<std::vector<std::vector<double>>>();
        std::vector<double> ratios;
        for (const double s : omega.sigmas) ratios.push_back(s / omega.sigmas.front());
        for (const double eps : epsilons) {
            for (const auto& row : eta_rows) {
                SweepJob job;
                job.etas.etas = row;
                job.etas.validate(omega.order());
                job.epsilon = eps;
                job.display_ratios = ratios;
                job.key = io::sweep_record_key(ratios, row, eps, true);
                jobs.push_back(std::move(job));
            }
        }
    } else {
        if (!params.contains("ratios") || !params.contains("epsilon")) {
            throw InvalidArgument("ratio sweep params need \"ratios\" and \"epsilon\"");
        }
        const double eps = params["epsilon"].get<double>();
        if (params.contains("eta_resolution")) {
            eta_resolution = params["eta_resolution"].get<int>();
        }
        const auto rows = params["ratios"].get<std::vector<std::vector<double>>>();
        for (const auto& row : rows) {
            SweepJob job;
            job.epsilon = eps;
            job.ratios = row;
            job.display_ratios.push_back(1.0);
            for (const double r : row) job.display_ratios.push_back(r);
            job.etas = symmetric::EtaVector::ones(row.size() + 1);
            job.key = io::sweep_record_key(job.display_ratios, {}, eps, false);
            jobs.push_back(std::move(job));
        }
    }
    if (jobs.empty()) throw InvalidArgument("sweep: no jobs in params file");

    // Resume: records already present for a requested key are reused verbatim.
    std::unordered_map<std::string, std::string> done;
    for (auto& [key, line] : io::load_sweep_lines(args.out_path, eta_mode)) {
        done.emplace(key, line);
    }

    std::ofstream out(args.out_path, std::ios::trunc);
    if (!out) throw InvalidArgument("cannot open output file: " + args.out_path);
    out << io::sweep_csv_header() << '\n' << std::flush;

    std::size_t succeeded = 0, failed = 0, reused = 0;
    for (const auto& job : jobs) {
        std::string line;
        if (auto it = done.find(job.key); it != done.end()) {
            line = it->second;
            ++reused;
        } else {
            try {
                optimizer::SweepRecord rec;
                if (eta_mode) {
                    rec = optimizer::make_record(
                        omega, job.etas,
                        optimizer::phase_extremes(omega, job.etas, job.epsilon, settings));
                } else {
                    rec = optimizer::eigenvalue_sweep({job.ratios}, job.epsilon,
                                                      eta_resolution, settings)
                              .front();
                }
                line = io::sweep_record_line(rec);
            } catch (const Error& e) {
                line = io::sweep_failure_line(job.display_ratios, job.etas.etas,
                                              job.epsilon, e.what());
            }
        }
        // The error column (8th) is empty on success.
        std::size_t semis = 0, last = std::string::npos;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == ';') { ++semis; last = i; }
        }
        const bool ok = semis == 7 && last == line.size() - 1;
        if (ok) ++succeeded; else ++failed;
        out << line << '\n' << std::flush;
    }

    json report{{"out", args.out_path}, {"jobs", jobs.size()},
                {"succeeded", succeeded}, {"failed", failed}, {"reused", reused}};
    std::cout << report.dump(2) << "\n";
    return succeeded > 0 ? kExitOk : kExitNumerical;
}

struct GalleryArgs {
    std::string spectrum_path;
    std::string out_path;
    double epsilon = 1e-4;
    int phase_samples = 8;
};

int run_gallery(const GalleryArgs& args) {
    const auto spec = io::load_spectrum_file(args.spectrum_path);
    if (spec.raw) {
        throw InvalidArgument(
            "gallery needs a parametrized spectrum (symmetric_with_phases or etas_and_phases)");
    }
    const auto pulses = optimizer::optimal_pulse_gallery(spec.omega, spec.etas,
                                                         args.epsilon,
                                                         args.phase_samples);
    std::ofstream out(args.out_path);
    if (!out) throw InvalidArgument("cannot open output file: " + args.out_path);
    io::write_gallery_csv(out, pulses);
    json report{{"out", args.out_path}, {"pulses", pulses.size()},
                {"samples_per_pulse", pulses.front().grid.n_samples}};
    std::cout << report.dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-soliton pulse synthesis and time-bandwidth analysis"};
    app.require_subcommand(1);

    SynthArgs synth_args;
    auto* synth = app.add_subcommand("synth", "Synthesize a pulse from a discrete spectrum");
    synth->add_option("--spectrum", synth_args.spectrum_path, "Spectrum JSON file")->required();
    synth->add_option("--out", synth_args.out_path, "Output pulse CSV")->required();
    synth->add_option("--epsilon", synth_args.epsilon, "Energy fraction for grid sizing");
    double synth_t_half = 0.0, synth_dt = 0.0;
    auto* opt_t_half = synth->add_option("--t-half", synth_t_half, "Override grid half span");
    auto* opt_dt = synth->add_option("--dt", synth_dt, "Override grid time step");

    AnalyzeArgs analyze_args;
    auto* analyze = app.add_subcommand("analyze", "Recover the discrete spectrum of a pulse");
    auto* opt_pulse = analyze->add_option("--pulse", analyze_args.pulse_path, "Pulse CSV file");
    auto* opt_spec = analyze->add_option("--spectrum", analyze_args.spectrum_path,
                                         "Spectrum JSON (synthesize, then analyze)");
    opt_pulse->excludes(opt_spec);
    analyze->add_option("--epsilon", analyze_args.epsilon, "Energy fraction for T/B");
    analyze->add_option("--sigma-max", analyze_args.sigma_max, "Eigenvalue search bound (0 = auto)");
    analyze->add_option("--n-seed", analyze_args.n_seed, "Eigenvalue scan resolution");

    PropagateArgs prop_args;
    auto* prop = app.add_subcommand("propagate", "Propagate a pulse to distance z");
    prop->add_option("--spectrum", prop_args.spectrum_path, "Spectrum JSON file")->required();
    prop->add_option("--z", prop_args.z, "Normalized distance")->required();
    prop->add_option("--method", prop_args.method, "spectral | ssfm | both")
        ->check(CLI::IsMember({"spectral", "ssfm", "both"}));
    prop->add_option("--dz", prop_args.dz, "Split-step size");
    prop->add_option("--out", prop_args.out_path, "Output pulse CSV");
    prop->add_option("--epsilon", prop_args.epsilon, "Energy fraction for grid sizing");

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "Worst-case T/B sweep over etas or eigenvalue ratios");
    sweep->add_option("--mode", sweep_args.mode, "eta | ratio")->required();
    sweep->add_option("--params", sweep_args.params_path, "Sweep parameter JSON")->required();
    sweep->add_option("--out", sweep_args.out_path, "Output CSV (resumable)")->required();
    sweep->add_option("--workers", sweep_args.workers,
                      "Worker threads (default: SOLITON_FORGE_WORKERS or hardware)");

    GalleryArgs gallery_args;
    auto* gallery = app.add_subcommand("gallery", "Sample |q| over phase combinations");
    gallery->add_option("--spectrum", gallery_args.spectrum_path, "Spectrum JSON file")->required();
    gallery->add_option("--out", gallery_args.out_path, "Output CSV")->required();
    gallery->add_option("--epsilon", gallery_args.epsilon, "Energy fraction for grid sizing");
    gallery->add_option("--phase-samples", gallery_args.phase_samples, "Number of phase points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (synth->parsed()) {
            if (opt_t_half->count()) synth_args.t_half = synth_t_half;
            if (opt_dt->count()) synth_args.dt = synth_dt;
            return run_synth(synth_args);
        }
        if (analyze->parsed()) {
            if (analyze_args.pulse_path.empty() && analyze_args.spectrum_path.empty()) {
                throw InvalidArgument("analyze: need --pulse or --spectrum");
            }
            return run_analyze(analyze_args);
        }
        if (prop->parsed()) return run_propagate(prop_args);
        if (sweep->parsed()) return run_sweep(sweep_args);
        if (gallery->parsed()) return run_gallery(gallery_args);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return is_input_error(e) ? kExitInvalid : kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitInvalid;
}
