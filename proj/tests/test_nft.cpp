#include <doctest.h>

#include <cmath>
#include <complex>

#include "soliton/darboux.hpp"
#include "soliton/errors.hpp"
#include "soliton/nft.hpp"
#include "soliton/symmetric.hpp"

using namespace soliton;

namespace {

SampledPulse sech_pulse(double sigma, double half_span, double dt) {
    SampledPulse p;
    p.grid = TimeGrid::centered(half_span, dt);
    p.samples.resize(p.grid.n_samples);
    for (std::size_t i = 0; i < p.grid.n_samples; ++i) {
        p.samples[i] = -2.0 * sigma / std::cosh(2.0 * sigma * p.grid.t(i));
    }
    return p;
}

}  // namespace

TEST_CASE("sech scattering matches the closed-form a(lambda)") {
    const auto p = sech_pulse(0.5, 25.0, 0.02);
    // a(lambda) = (lambda - 0.5j) / (lambda + 0.5j)
    for (const cplx lam : {cplx(0.3, 0.0), cplx(-1.2, 0.0), cplx(0.0, 0.25),
                           cplx(0.0, 0.8)}) {
        const auto jp = nft::scatter(p, lam);
        const cplx expect = (lam - cplx(0, 0.5)) / (lam + cplx(0, 0.5));
        CHECK(std::abs(jp.a - expect) < 2e-5);
    }
}

TEST_CASE("real-axis scattering is unimodular for a soliton") {
    const auto p = sech_pulse(0.5, 25.0, 0.02);
    for (const double l : {-1.0, -0.2, 0.4, 1.5}) {
        const auto jp = nft::scatter(p, cplx(l, 0.0));
        CHECK(std::abs(std::norm(jp.a) + std::norm(jp.b) - 1.0) < 1e-5);
        CHECK_FALSE(jp.degraded_accuracy);
        CHECK(std::abs(jp.b) < 1e-4);  // reflectionless
    }
}

TEST_CASE("a(j sigma) is real on the imaginary axis") {
    symmetric::EigenvalueSet om{{0.5, 1.0}};
    const auto spec =
        symmetric::build_spectrum(om, symmetric::EtaVector::ones(2), {0.4, 2.2});
    const auto p = darboux::synthesize(spec, TimeGrid::centered(20.0, 0.02));
    for (const double s : {0.3, 0.7, 1.4}) {
        const auto jp = nft::scatter(p, cplx(0.0, s));
        CHECK(std::abs(jp.a.imag()) < 1e-8 * std::max(1.0, std::abs(jp.a.real())));
    }
}

TEST_CASE("eigenvalue search recovers a 2-soliton spectrum") {
    symmetric::EigenvalueSet om{{0.5, 1.0}};
    const auto spec =
        symmetric::build_spectrum(om, symmetric::EtaVector::ones(2), {1.0, 0.3});
    const auto p = darboux::synthesize(spec, TimeGrid::centered(20.0, 0.02));
    const auto eig = nft::find_eigenvalues(p, 1.5, 128);
    REQUIRE(eig.size() == 2);
    CHECK(std::abs(eig[0] - cplx(0.0, 0.5)) < 1e-5);
    CHECK(std::abs(eig[1] - cplx(0.0, 1.0)) < 1e-5);
}

TEST_CASE("eigenvalue above the search range is reported") {
    const auto p = sech_pulse(1.0, 15.0, 0.02);
    // a(0.9j) = (0.9 - 1) / (0.9 + 1) < 0: the sign cannot recover to +1
    // below sigma_max, so the sigma = 1 root must lie above the range.
    CHECK_THROWS_AS(nft::find_eigenvalues(p, 0.9, 64), SearchRangeTooSmall);
    CHECK_NOTHROW(nft::find_eigenvalues(p, 1.5, 64));
}

TEST_CASE("spectral amplitude round trip") {
    symmetric::EigenvalueSet om{{0.5, 1.0}};
    const auto spec =
        symmetric::build_spectrum(om, symmetric::EtaVector{{1.0, 0.4}}, {0.9, 2.5});
    const auto p = darboux::synthesize(spec, TimeGrid::centered(22.0, 0.02));
    const auto rec = nft::analyze(p, 1.5, 128);
    REQUIRE(rec.order() == 2);
    for (std::size_t k = 0; k < 2; ++k) {
        CHECK(std::abs(rec.entries[k].sigma - spec.entries[k].sigma) < 5e-5);
        CHECK(std::abs(rec.entries[k].qd - spec.entries[k].qd) <
              1e-3 * std::abs(spec.entries[k].qd));
    }
}

TEST_CASE("spectral_amplitude rejects a non-eigenvalue") {
    const auto p = sech_pulse(0.5, 25.0, 0.02);
    CHECK_THROWS_AS(nft::spectral_amplitude(p, cplx(0.0, 0.7)), NotAnEigenvalue);
}

TEST_CASE("continuous spectrum of a pure soliton is negligible") {
    const auto p = sech_pulse(0.5, 25.0, 0.02);
    const auto qc = nft::continuous_spectrum(p, {-1.5, -0.5, 0.1, 0.9});
    for (const auto& v : qc) CHECK(std::abs(v) < 1e-4);
}

TEST_CASE("eigenvalues scale with the pulse: c q(ct) has sigma -> c sigma") {
    const double c = 1.7;
    SampledPulse p;
    p.grid = TimeGrid::centered(18.0, 0.02 / c);
    p.samples.resize(p.grid.n_samples);
    for (std::size_t i = 0; i < p.grid.n_samples; ++i) {
        p.samples[i] = -c / std::cosh(c * p.grid.t(i));
    }
    const auto eig = nft::find_eigenvalues(p, 1.5, 128);
    REQUIRE(eig.size() == 1);
    CHECK(std::abs(eig[0] - cplx(0.0, 0.5 * c)) < 1e-5);
}

TEST_CASE("eigenvalue accuracy improves under grid refinement") {
    double prev = 1.0;
    for (const double dt : {0.08, 0.04, 0.02}) {
        const auto p = sech_pulse(0.5, 25.0, dt);
        const auto eig = nft::find_eigenvalues(p, 1.0, 64);
        REQUIRE(eig.size() == 1);
        const double err = std::abs(eig[0] - cplx(0.0, 0.5));
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 1e-5);
}

TEST_CASE("non-decaying input is rejected") {
    SampledPulse p;
    p.grid = TimeGrid::centered(5.0, 0.1);
    p.samples.assign(p.grid.n_samples, cplx(1.0, 0.0));
    CHECK_THROWS_AS(nft::scatter(p, cplx(0.0, 0.5)), NonDecayingPulse);
}
