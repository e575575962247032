#include "soliton/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "soliton/errors.hpp"

namespace soliton::io {

namespace {

using nlohmann::json;

std::vector<double> to_doubles(const json& arr, const char* what) {
    if (!arr.is_array()) throw InvalidArgument(std::string(what) + " must be an array");
    std::vector<double> out;
    out.reserve(arr.size());
    for (const auto& v : arr) {
        if (!v.is_number()) throw InvalidArgument(std::string(what) + " must contain numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

std::string join(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += format_double(values[i]);
    }
    return out;
}

std::vector<std::string> split(const std::string& s, char delim) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, delim)) parts.push_back(part);
    return parts;
}

}  // namespace

DiscreteSpectrum SpectrumSpec::to_spectrum() const {
    if (raw) {
        DiscreteSpectrum spectrum;
        for (std::size_t k = 0; k < omega.order(); ++k) {
            spectrum.entries.push_back({omega.sigmas[k], raw_qd[k]});
        }
        spectrum.validate();
        return spectrum;
    }
    return symmetric::build_spectrum(omega, etas, phases);
}

SpectrumSpec parse_spectrum_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        // Report line/column rather than the raw byte offset.
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw InvalidArgument("spectrum JSON: parse error at line " + std::to_string(line) +
                              ", column " + std::to_string(col));
    }
    if (!doc.is_object() || !doc.contains("eigenvalues")) {
        throw InvalidArgument("spectrum JSON: missing \"eigenvalues\"");
    }

    SpectrumSpec spec;
    spec.omega.sigmas = to_doubles(doc["eigenvalues"], "eigenvalues");
    spec.omega.validate();
    const std::size_t n = spec.omega.order();

    if (doc.contains("amplitudes")) {
        const auto& amps = doc["amplitudes"];
        if (!amps.is_array() || amps.size() != n) {
            throw InvalidArgument("spectrum JSON: amplitudes length must match eigenvalues");
        }
        spec.raw = true;
        spec.etas = symmetric::EtaVector::ones(n);
        for (const auto& a : amps) {
            if (!a.is_object() || !a.contains("abs") || !a.contains("phase")) {
                throw InvalidArgument("spectrum JSON: amplitudes entries need \"abs\" and \"phase\"");
            }
            const double mag = a["abs"].get<double>();
            if (!(mag > 0.0)) throw InvalidArgument("spectrum JSON: amplitude abs must be > 0");
            spec.raw_qd.push_back(std::polar(mag, a["phase"].get<double>()));
            spec.phases.push_back(a["phase"].get<double>());
        }
    } else if (doc.contains("symmetric_with_phases")) {
        spec.phases = to_doubles(doc["symmetric_with_phases"], "symmetric_with_phases");
        if (spec.phases.size() != n) {
            throw InvalidArgument("spectrum JSON: symmetric_with_phases length must match eigenvalues");
        }
        spec.etas = symmetric::EtaVector::ones(n);
    } else if (doc.contains("etas_and_phases")) {
        const auto& ep = doc["etas_and_phases"];
        if (!ep.is_object() || !ep.contains("etas") || !ep.contains("phases")) {
            throw InvalidArgument("spectrum JSON: etas_and_phases needs \"etas\" and \"phases\"");
        }
        spec.etas.etas = to_doubles(ep["etas"], "etas");
        spec.phases = to_doubles(ep["phases"], "phases");
        spec.etas.validate(n);
        if (spec.phases.size() != n) {
            throw InvalidArgument("spectrum JSON: phases length must match eigenvalues");
        }
    } else {
        throw InvalidArgument(
            "spectrum JSON: need one of \"amplitudes\", \"symmetric_with_phases\", \"etas_and_phases\"");
    }
    return spec;
}

SpectrumSpec load_spectrum_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open spectrum file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_spectrum_json(buf.str());
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.11e", v);
    return buf;
}

void write_pulse_csv(std::ostream& os, const SampledPulse& pulse) {
    os << "t,re_q,im_q\n";
    for (std::size_t i = 0; i < pulse.samples.size(); ++i) {
        os << format_double(pulse.grid.t(i)) << ','
           << format_double(pulse.samples[i].real()) << ','
           << format_double(pulse.samples[i].imag()) << '\n';
    }
}

void write_pulse_csv_file(const std::string& path, const SampledPulse& pulse) {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot open output file: " + path);
    write_pulse_csv(out, pulse);
}

SampledPulse read_pulse_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open pulse file: " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("t,re_q,im_q", 0) != 0) {
        throw InvalidArgument("pulse CSV: missing header t,re_q,im_q");
    }
    std::vector<double> times;
    std::vector<cplx> samples;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto parts = split(line, ',');
        if (parts.size() != 3) {
            throw InvalidArgument("pulse CSV: bad record at line " + std::to_string(line_no));
        }
        try {
            times.push_back(std::stod(parts[0]));
            samples.emplace_back(std::stod(parts[1]), std::stod(parts[2]));
        } catch (const std::exception&) {
            throw InvalidArgument("pulse CSV: bad number at line " + std::to_string(line_no));
        }
    }
    if (times.size() < 2) throw InvalidArgument("pulse CSV: need at least 2 samples");

    SampledPulse pulse;
    pulse.grid.t_start = times.front();
    pulse.grid.dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
    pulse.grid.n_samples = times.size();
    pulse.grid.validate();
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (std::abs(times[i] - pulse.grid.t(i)) > 1e-9 * std::max(1.0, std::abs(times[i]))) {
            throw InvalidArgument("pulse CSV: time grid is not uniform");
        }
    }
    pulse.samples = std::move(samples);
    return pulse;
}

std::string sweep_csv_header() {
    return "sigma_ratios;etas;epsilon;t_max;b_max;tb_per_eig;tb_ratio;error";
}

std::string sweep_record_key(const std::vector<double>& sigma_ratios,
                             const std::vector<double>& etas, double epsilon,
                             bool key_on_etas) {
    std::string key = join(sigma_ratios) + ';';
    if (key_on_etas) key += join(etas) + ';';
    key += format_double(epsilon);
    return key;
}

std::string sweep_record_line(const optimizer::SweepRecord& rec) {
    return join(rec.sigma_ratios) + ';' + join(rec.etas) + ';' +
           format_double(rec.epsilon) + ';' + format_double(rec.t_max) + ';' +
           format_double(rec.b_max) + ';' + format_double(rec.tb_per_eig) + ';' +
           format_double(rec.tb_ratio_vs_1soliton) + ';';
}

std::string sweep_failure_line(const std::vector<double>& sigma_ratios,
                               const std::vector<double>& etas, double epsilon,
                               const std::string& error) {
    std::string msg = error;
    for (auto& c : msg) {
        if (c == ';' || c == '\n') c = ' ';
    }
    return join(sigma_ratios) + ';' + join(etas) + ';' + format_double(epsilon) +
           ";nan;nan;nan;nan;" + msg;
}

std::optional<std::string> extract_sweep_key(const std::string& line,
                                             bool key_on_etas) {
    const auto parts = split(line, ';');
    if (parts.size() < 7 || parts[0].empty() || parts[1].empty() || parts[2].empty()) {
        return std::nullopt;
    }
    // Validate the numeric columns so a torn tail line never counts as done.
    try {
        for (const auto& field : split(parts[0], ',')) (void)std::stod(field);
        for (const auto& field : split(parts[1], ',')) (void)std::stod(field);
        for (int i = 2; i < 7; ++i) (void)std::stod(parts[static_cast<std::size_t>(i)]);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    if (key_on_etas) return parts[0] + ';' + parts[1] + ';' + parts[2];
    return parts[0] + ';' + parts[2];
}

std::vector<std::pair<std::string, std::string>> load_sweep_lines(
    const std::string& path, bool key_on_etas) {
    std::vector<std::pair<std::string, std::string>> out;
    std::ifstream in(path);
    if (!in) return out;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (first) {
            first = false;
            if (line.rfind("sigma_ratios;", 0) == 0) continue;
        }
        if (line.empty()) continue;
        if (auto key = extract_sweep_key(line, key_on_etas)) {
            out.emplace_back(*key, line);
        }
    }
    return out;
}

void write_gallery_csv(std::ostream& os, const std::vector<SampledPulse>& pulses) {
    os << "phase_index,t,abs_q\n";
    for (std::size_t p = 0; p < pulses.size(); ++p) {
        for (std::size_t i = 0; i < pulses[p].samples.size(); ++i) {
            os << p << ',' << format_double(pulses[p].grid.t(i)) << ','
               << format_double(std::abs(pulses[p].samples[i])) << '\n';
        }
    }
}

}  // namespace soliton::io
