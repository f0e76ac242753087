#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "slowlight/error.hpp"
#include "slowlight/signal.hpp"

using namespace slowlight;
using doctest::Approx;

TEST_CASE("signal: grid invariants and conjugate lattice") {
    CHECK_THROWS_AS(SamplingGrid(4, 1.0, 0.0), Error);
    CHECK_THROWS_AS(SamplingGrid(12, 1.0, 0.0), Error);
    CHECK_THROWS_AS(SamplingGrid(16, 0.0, 0.0), Error);
    CHECK_THROWS_AS(SamplingGrid(16, -1.0, 0.0), Error);

    const SamplingGrid g(64, 0.5e-6, -10e-6);
    CHECK(g.df() == Approx(1.0 / (64 * 0.5e-6)));
    CHECK(g.detuning(32) == 0.0);
    CHECK(g.detuning(0) == Approx(-1.0 / (2 * 0.5e-6)));
    CHECK(g.detuning(63) == Approx(1.0 / (2 * 0.5e-6) - g.df()));
    CHECK(g.time(0) == -10e-6);

    const SamplingGrid c = SamplingGrid::centered(128, 1e-7, 3e-6);
    CHECK(c.time(64) == Approx(3e-6).epsilon(1e-15));
}

TEST_CASE("signal: default grid rules") {
    const PulseSpec amg = PulseSpec::amg(6.5e-6, 1.0, 700e3);
    const SamplingGrid g = default_grid(amg);
    const double width = std::numbers::ln2 / (std::numbers::pi * 6.5e-6);
    CHECK(g.df() <= width / 8.0);
    CHECK(g.window() >= 16.0 * 6.5e-6);
    CHECK(1.0 / (2.0 * g.dt()) >= 8.0 * (700e3 + width));
    CHECK(g.dt() <= 6.5e-6 / 64.0);
    const double bins = 700e3 / g.df();
    CHECK(std::abs(bins - std::round(bins)) < 1e-9);
    CHECK(g.time(g.size() / 2) == Approx(0.0).epsilon(1e-12));
    CHECK(g.size() == 4096);

    const SamplingGrid gg = default_grid(PulseSpec::gaussian(6.5e-6, 2e-6));
    CHECK(gg.df() <= width / 8.0);
    CHECK(gg.dt() <= 6.5e-6 / 64.0);
    CHECK(gg.time(gg.size() / 2) == Approx(2e-6).epsilon(1e-12));
}

TEST_CASE("signal: pulse spec validation") {
    CHECK_THROWS_AS(PulseSpec::gaussian(0.0), Error);
    CHECK_THROWS_AS(PulseSpec::amg(6.5e-6, 2.0, 700e3), Error);
    CHECK_THROWS_AS(PulseSpec::amg(6.5e-6, -0.1, 700e3), Error);
    CHECK_THROWS_AS(PulseSpec::amg(6.5e-6, 0.5, 0.0), Error);
    try {
        PulseSpec::amg(6.5e-6, 2.0, 700e3);
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("pulse.depth") == 0);
    }
    CHECK(PulseSpec::gaussian_from_intensity_fwhm(6.5e-6).t0 == Approx(3.25e-6));
    CHECK(PulseSpec::amg_from_intensity_fwhm(6.5e-6, 1.0, 7e5).t0 == Approx(3.25e-6));
}

TEST_CASE("signal: gaussian synthesis") {
    const double t0 = 6.5e-6;
    const PulseSpec spec = PulseSpec::gaussian(t0, 1e-6);
    // dt = t0/32 puts center +- t0 exactly 32 samples from the peak.
    const SamplingGrid grid = SamplingGrid::centered(1024, t0 / 32.0, 1e-6);
    const IntensityTrace i = intensity_of(synth_gaussian(spec, grid));
    CHECK(i[512] == 1.0);
    CHECK(i[512 + 32] == Approx(0.5).epsilon(1e-12));
    CHECK(i[512 - 32] == Approx(0.5).epsilon(1e-12));
    for (std::size_t j = 1; j < 400; ++j) CHECK(i[512 + j] == Approx(i[512 - j]).epsilon(1e-15));
    for (std::size_t k = 0; k < i.size(); ++k) CHECK(i[k] >= 0.0);

    CHECK_THROWS_AS(synth_gaussian(PulseSpec::amg(t0, 1.0, 7e5), grid), Error);
}

TEST_CASE("signal: truncated window is rejected") {
    const double t0 = 6.5e-6;
    const SamplingGrid short_grid = SamplingGrid::centered(64, 7.0 * t0 / 64.0, 0.0);
    try {
        synth_gaussian(PulseSpec::gaussian(t0), short_grid);
        FAIL("expected truncation error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Numeric);
    }
    // Long enough but off-center.
    const SamplingGrid offset(1024, 20.0 * t0 / 1024.0, 0.0);
    CHECK_THROWS_AS(synth_gaussian(PulseSpec::gaussian(t0), offset), Error);
}

TEST_CASE("signal: AMG synthesis") {
    const double t0 = 6.5e-6;
    const double mod = 700e3;
    const double half_period = 1.0 / (2.0 * mod);
    // 16 samples per half modulation period puts the fringe zeros on samples.
    const SamplingGrid grid = SamplingGrid::centered(8192, half_period / 16.0, 0.0);
    const PulseSpec spec = PulseSpec::amg(t0, 1.0, mod);
    const IntensityTrace i = intensity_of(synth_amg(spec, grid));
    const std::size_t c = 4096;
    CHECK(i[c] == Approx(4.0).epsilon(1e-15));
    for (int m : {1, 3, 5, 7}) {
        CHECK(i[c + 16 * m] < 1e-28);
        CHECK(i[c - 16 * m] < 1e-28);
    }
    // Oracle: the printed intensity formula evaluated on the grid.
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double t = grid.time(k);
        const double env = std::exp(-std::numbers::ln2 * t * t / (t0 * t0));
        const double m = 1.0 + std::cos(2.0 * std::numbers::pi * mod * t);
        CHECK(std::abs(i[k] - env * m * m) < 1e-14);
    }
    for (std::size_t j = 1; j < 2000; ++j) CHECK(i[c + j] == Approx(i[c - j]).epsilon(1e-9));

    const Waveform flat = synth_amg(PulseSpec::amg(t0, 0.0, mod), grid);
    const Waveform gauss = synth_gaussian(PulseSpec::gaussian(t0), grid);
    for (std::size_t k = 0; k < grid.size(); ++k) CHECK(flat[k] == gauss[k]);
}

TEST_CASE("signal: AMG pulse energy against quadrature") {
    const double t0 = 6.5e-6;
    const double mod = 700e3;
    const PulseSpec amg = PulseSpec::amg(t0, 1.0, mod);
    const SamplingGrid grid = default_grid(amg);
    const double e_amg = synth_amg(amg, grid).energy();
    const double e_gauss = synth_gaussian(PulseSpec::gaussian(t0), grid).energy();

    // Composite Simpson over +-20 t0 of the analytic intensity.
    const auto intensity = [&](double t, double depth) {
        const double m = 1.0 + depth * std::cos(2.0 * std::numbers::pi * mod * t);
        return std::exp(-std::numbers::ln2 * t * t / (t0 * t0)) * m * m;
    };
    const auto simpson = [&](double depth) {
        const int steps = 400000;
        const double a = -20.0 * t0;
        const double h = 40.0 * t0 / steps;
        double s = intensity(a, depth) + intensity(-a, depth);
        for (int k = 1; k < steps; ++k) s += (k % 2 ? 4.0 : 2.0) * intensity(a + k * h, depth);
        return s * h / 3.0;
    };
    CHECK(oracle::relative_error(e_amg, simpson(1.0)) < 1e-9);
    CHECK(oracle::relative_error(e_gauss, simpson(0.0)) < 1e-9);
    CHECK(oracle::relative_error(e_gauss, t0 * std::sqrt(std::numbers::pi / std::numbers::ln2)) < 1e-9);
    // 1 + A^2/2 plus overlap terms that vanish for delta >> 1/t0.
    CHECK(e_amg / e_gauss == Approx(1.5).epsilon(1e-9));
}

TEST_CASE("signal: intensity and amplitude conversions") {
    const SamplingGrid g(8, 1.0, 0.0);
    CHECK(intensity_of(Waveform(g, std::vector<Complex>(8, 0.0)))[3] == 0.0);

    std::vector<Complex> e(8, 0.5);
    e[4] = 2.0;
    CHECK(intensity_of(Waveform(g, e))[4] == 4.0);

    const Waveform ones = amplitude_from_intensity(IntensityTrace(g, std::vector<double>(8, 1.0)));
    for (std::size_t k = 0; k < 8; ++k) CHECK(ones[k] == Complex(1.0));

    const std::vector<double> measured{0.0, 0.25, 4.0, 0.0, 1.0, 9.0, 0.0, 2.0};
    const Waveform amp = amplitude_from_intensity(IntensityTrace(g, measured));
    CHECK(amp[2] == Complex(2.0));
    CHECK(amp[0] == Complex(0.0));
    CHECK(amp[3] == Complex(0.0));
    const IntensityTrace back = intensity_of(amp);
    for (std::size_t k = 0; k < 8; ++k) {
        CHECK(std::abs(back[k] - measured[k]) <= 1e-12 * std::max(measured[k], 1.0));
    }

    std::vector<double> bad = measured;
    bad[1] = -1e-9;
    CHECK_THROWS_AS(IntensityTrace(g, bad), Error);
    CHECK_THROWS_AS(Waveform(g, std::vector<Complex>(4)), Error);
}
