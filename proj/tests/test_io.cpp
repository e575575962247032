#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "soliton/darboux.hpp"
#include "soliton/errors.hpp"
#include "soliton/io.hpp"

using namespace soliton;

namespace {

std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("raw amplitude spectrum JSON") {
    const auto spec = io::parse_spectrum_json(R"({
        "eigenvalues": [0.5, 1.0],
        "amplitudes": [{"abs": 3.0, "phase": 0.0}, {"abs": 1.5, "phase": 1.3}]
    })");
    CHECK(spec.raw);
    const auto s = spec.to_spectrum();
    REQUIRE(s.order() == 2);
    CHECK(std::abs(s.entries[1].qd) == doctest::Approx(1.5));
    CHECK(std::arg(s.entries[1].qd) == doctest::Approx(1.3));
}

TEST_CASE("symmetric-with-phases spectrum JSON") {
    const auto spec = io::parse_spectrum_json(R"({
        "eigenvalues": [0.5, 1.0],
        "symmetric_with_phases": [0.0, 0.5]
    })");
    CHECK_FALSE(spec.raw);
    const auto s = spec.to_spectrum();
    CHECK(std::abs(s.entries[0].qd) == doctest::Approx(3.0));
    CHECK(std::abs(s.entries[1].qd) == doctest::Approx(6.0));
}

TEST_CASE("etas-and-phases spectrum JSON") {
    const auto spec = io::parse_spectrum_json(R"({
        "eigenvalues": [0.5, 1.0],
        "etas_and_phases": {"etas": [1.0, 0.25], "phases": [0.0, 0.0]}
    })");
    const auto s = spec.to_spectrum();
    CHECK(std::abs(s.entries[1].qd) == doctest::Approx(1.5));
}

TEST_CASE("malformed JSON reports line and column") {
    try {
        io::parse_spectrum_json("{\n \"eigenvalues\": [0.5,,]\n}");
        FAIL("expected InvalidArgument");
    } catch (const InvalidArgument& e) {
        const std::string msg = e.what();
        CHECK(msg.find("line 2") != std::string::npos);
        CHECK(msg.find("column") != std::string::npos);
    }
}

TEST_CASE("spectrum JSON validation errors") {
    CHECK_THROWS_AS(io::parse_spectrum_json("{}"), InvalidArgument);
    CHECK_THROWS_AS(io::parse_spectrum_json(R"({"eigenvalues": [1.0, 0.5],
        "symmetric_with_phases": [0, 0]})"),
                    InvalidArgument);
    CHECK_THROWS_AS(io::parse_spectrum_json(R"({"eigenvalues": [0.5],
        "amplitudes": [{"abs": 0.0, "phase": 0}]})"),
                    InvalidArgument);
    CHECK_THROWS_AS(io::parse_spectrum_json(R"({"eigenvalues": [0.5]})"),
                    InvalidArgument);
}

TEST_CASE("pulse CSV round trip preserves the samples") {
    DiscreteSpectrum spec;
    spec.entries = {{0.5, cplx(0.3, 0.9)}};
    const auto p = darboux::synthesize(spec, TimeGrid::centered(15.0, 0.05));
    const auto path = temp_file("soliton_io_pulse.csv");
    io::write_pulse_csv_file(path.string(), p);
    const auto back = io::read_pulse_csv_file(path.string());
    REQUIRE(back.samples.size() == p.samples.size());
    CHECK(back.grid.dt == doctest::Approx(p.grid.dt).epsilon(1e-12));
    for (std::size_t i = 0; i < p.samples.size(); i += 13) {
        CHECK(std::abs(back.samples[i] - p.samples[i]) < 1e-10);
    }
    std::filesystem::remove(path);
}

TEST_CASE("pulse CSV rejects a non-uniform grid") {
    const auto path = temp_file("soliton_io_bad.csv");
    std::ofstream(path) << "t,re_q,im_q\n0,1,0\n0.1,1,0\n0.3,1,0\n";
    CHECK_THROWS_AS(io::read_pulse_csv_file(path.string()), InvalidArgument);
    std::filesystem::remove(path);
}

TEST_CASE("serialized floats are fixed width") {
    CHECK(io::format_double(1.0) == "1.00000000000e+00");
    CHECK(io::format_double(-0.5) == "-5.00000000000e-01");
    CHECK(io::format_double(1e-4) == "1.00000000000e-04");
}

TEST_CASE("sweep lines carry their key and survive a round trip") {
    optimizer::SweepRecord rec;
    rec.sigma_ratios = {1.0, 2.0};
    rec.etas = {1.0, 0.25};
    rec.epsilon = 1e-4;
    rec.t_max = 11.0;
    rec.b_max = 3.2;
    rec.tb_per_eig = 17.6;
    rec.tb_ratio_vs_1soliton = 1.77;
    const auto line = io::sweep_record_line(rec);
    const auto key = io::extract_sweep_key(line, true);
    REQUIRE(key.has_value());
    CHECK(*key == io::sweep_record_key(rec.sigma_ratios, rec.etas, rec.epsilon, true));
    const auto key2 = io::extract_sweep_key(line, false);
    REQUIRE(key2.has_value());
    CHECK(*key2 == io::sweep_record_key(rec.sigma_ratios, {}, rec.epsilon, false));
}

TEST_CASE("failure lines sanitize the message and never parse as done records") {
    const auto line = io::sweep_failure_line({1.0, 2.0}, {1.0, 0.5}, 1e-4,
                                             "bad;thing\nhappened");
    CHECK(line.find("bad thing happened") != std::string::npos);
    CHECK(line.find('\n') == std::string::npos);
    // Failure lines still key (they are deterministic), torn lines do not.
    CHECK(io::extract_sweep_key(line, true).has_value());
    CHECK_FALSE(io::extract_sweep_key("1.0;1.0;1e-4;12.", true).has_value());
    CHECK_FALSE(io::extract_sweep_key("", true).has_value());
}

TEST_CASE("resume loader skips the header and torn lines") {
    const auto path = temp_file("soliton_io_sweep.csv");
    {
        std::ofstream out(path);
        out << io::sweep_csv_header() << '\n';
        optimizer::SweepRecord rec;
        rec.sigma_ratios = {1.0, 2.0};
        rec.etas = {1.0, 1.0};
        rec.epsilon = 1e-4;
        rec.t_max = 11.0;
        rec.b_max = 3.2;
        rec.tb_per_eig = 17.6;
        rec.tb_ratio_vs_1soliton = 1.77;
        out << io::sweep_record_line(rec) << '\n';
        out << "1.00000000000e+00,2.0;1.0,1.0;1e-4;torn";  // no newline, malformed
    }
    const auto lines = io::load_sweep_lines(path.string(), true);
    CHECK(lines.size() == 1);
    std::filesystem::remove(path);
}

TEST_CASE("gallery CSV layout") {
    SampledPulse p;
    p.grid = TimeGrid::centered(0.1, 0.1);
    p.samples = {cplx(0, 0), cplx(1, 0), cplx(0, 0)};
    std::ostringstream os;
    io::write_gallery_csv(os, {p, p});
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "phase_index,t,abs_q");
    int rows = 0;
    while (std::getline(is, line)) ++rows;
    CHECK(rows == 6);
}
