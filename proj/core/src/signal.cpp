#include "slowlight/signal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "slowlight/error.hpp"

namespace slowlight {

namespace {

constexpr double kLn2 = std::numbers::ln2;

// Half of the pulse support that must fit inside the window, in units of t0.
constexpr double kSupportHalfWidth = 4.0;

std::string describe(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

void require_support(const PulseSpec& spec, const SamplingGrid& grid) {
    const double lo = spec.center - kSupportHalfWidth * spec.t0;
    const double hi = spec.center + kSupportHalfWidth * spec.t0;
    const double first = grid.t_start();
    const double last = grid.time(grid.size() - 1);
    if (grid.window() < 2.0 * kSupportHalfWidth * spec.t0 || lo < first || hi > last) {
        fail_numeric("pulse support [" + describe(lo) + ", " + describe(hi) +
                     "] s does not fit the grid window [" + describe(first) + ", " +
                     describe(last) + "] s (window must cover 8*t0)");
    }
}

}  // namespace

SamplingGrid::SamplingGrid(std::size_t n, double dt, double t_start)
    : n_(n), dt_(dt), t_start_(t_start) {
    if (n < 8 || !std::has_single_bit(n)) {
        fail_validation("grid.n: sample count must be a power of two >= 8, got " +
                        std::to_string(n));
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        fail_validation("grid.dt: sample spacing must be positive, got " + describe(dt));
    }
    if (!std::isfinite(t_start)) {
        fail_validation("grid.t_start: must be finite");
    }
}

SamplingGrid SamplingGrid::centered(std::size_t n, double dt, double center) {
    return SamplingGrid(n, dt, center - static_cast<double>(n / 2) * dt);
}

std::vector<double> SamplingGrid::times() const {
    std::vector<double> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = time(i);
    return out;
}

std::vector<double> SamplingGrid::detunings() const {
    std::vector<double> out(n_);
    for (std::size_t k = 0; k < n_; ++k) out[k] = detuning(k);
    return out;
}

Waveform::Waveform(SamplingGrid grid, std::vector<Complex> samples)
    : grid_(grid), samples_(std::move(samples)) {
    if (samples_.size() != grid_.size()) {
        fail_validation("waveform: sample count " + std::to_string(samples_.size()) +
                        " does not match grid size " + std::to_string(grid_.size()));
    }
}

double Waveform::energy() const {
    double sum = 0.0;
    for (const auto& s : samples_) sum += std::norm(s);
    return sum * grid_.dt();
}

IntensityTrace::IntensityTrace(SamplingGrid grid, std::vector<double> samples)
    : grid_(grid), samples_(std::move(samples)) {
    if (samples_.size() != grid_.size()) {
        fail_validation("intensity trace: sample count " + std::to_string(samples_.size()) +
                        " does not match grid size " + std::to_string(grid_.size()));
    }
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        if (!(samples_[i] >= 0.0) || !std::isfinite(samples_[i])) {
            fail_validation("intensity trace: sample " + std::to_string(i) +
                            " is negative or not finite (" + describe(samples_[i]) +
                            "); clip the measurement before conversion");
        }
    }
}

PulseSpec PulseSpec::gaussian(double t0, double center) {
    PulseSpec spec{PulseKind::Gaussian, t0, 0.0, 0.0, center};
    spec.validate();
    return spec;
}

PulseSpec PulseSpec::amg(double t0, double depth, double mod_freq, double center) {
    PulseSpec spec{PulseKind::Amg, t0, depth, mod_freq, center};
    spec.validate();
    return spec;
}

PulseSpec PulseSpec::gaussian_from_intensity_fwhm(double fwhm, double center) {
    return gaussian(fwhm / 2.0, center);
}

PulseSpec PulseSpec::amg_from_intensity_fwhm(double fwhm, double depth, double mod_freq,
                                             double center) {
    return amg(fwhm / 2.0, depth, mod_freq, center);
}

void PulseSpec::validate() const {
    if (!(t0 > 0.0) || !std::isfinite(t0)) {
        fail_validation("pulse.t0: must be positive, got " + describe(t0));
    }
    if (!std::isfinite(center)) fail_validation("pulse.center: must be finite");
    if (kind == PulseKind::Amg) {
        if (!(mod_depth >= 0.0 && mod_depth <= 1.0)) {
            fail_validation("pulse.depth: modulation depth must be in [0, 1], got " +
                            describe(mod_depth));
        }
        if (!(mod_freq > 0.0) || !std::isfinite(mod_freq)) {
            fail_validation("pulse.mod_freq: modulation frequency must be positive, got " +
                            describe(mod_freq));
        }
    }
}

double PulseSpec::spectral_fwhm() const { return kLn2 / (std::numbers::pi * t0); }

SamplingGrid default_grid(const PulseSpec& spec) {
    spec.validate();
    const double width = spec.spectral_fwhm();
    const double mod = spec.kind == PulseKind::Amg ? spec.mod_freq : 0.0;

    double df = std::min(width / 8.0, 1.0 / (16.0 * spec.t0));
    if (mod > 0.0) df = mod / std::ceil(mod / df);

    const double nyquist_min = 8.0 * (mod + width);
    const double dt_max = spec.t0 / 64.0;
    std::size_t n = 8;
    while (static_cast<double>(n) * df / 2.0 < nyquist_min ||
           1.0 / (static_cast<double>(n) * df) > dt_max) {
        n *= 2;
    }
    const double dt = 1.0 / (static_cast<double>(n) * df);
    return SamplingGrid::centered(n, dt, spec.center);
}

Waveform synth_gaussian(const PulseSpec& spec, const SamplingGrid& grid) {
    spec.validate();
    if (spec.kind != PulseKind::Gaussian) fail_validation("pulse.kind: expected gaussian");
    require_support(spec, grid);
    std::vector<Complex> samples(grid.size());
    const double a = kLn2 / (2.0 * spec.t0 * spec.t0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid.time(i) - spec.center;
        samples[i] = std::exp(-a * t * t);
    }
    return Waveform(grid, std::move(samples));
}

Waveform synth_amg(const PulseSpec& spec, const SamplingGrid& grid) {
    spec.validate();
    if (spec.kind != PulseKind::Amg) fail_validation("pulse.kind: expected amg");
    require_support(spec, grid);
    std::vector<Complex> samples(grid.size());
    const double a = kLn2 / (2.0 * spec.t0 * spec.t0);
    const double w = 2.0 * std::numbers::pi * spec.mod_freq;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid.time(i) - spec.center;
        // 1 + A cos can round to a tiny negative value at the fringe zeros.
        const double mod = std::max(0.0, 1.0 + spec.mod_depth * std::cos(w * t));
        samples[i] = std::exp(-a * t * t) * mod;
    }
    return Waveform(grid, std::move(samples));
}

Waveform synth(const PulseSpec& spec, const SamplingGrid& grid) {
    return spec.kind == PulseKind::Gaussian ? synth_gaussian(spec, grid) : synth_amg(spec, grid);
}

IntensityTrace intensity_of(const Waveform& w) {
    std::vector<double> out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) out[i] = std::norm(w[i]);
    return IntensityTrace(w.grid(), std::move(out));
}

Waveform amplitude_from_intensity(const IntensityTrace& trace) {
    std::vector<Complex> out(trace.size());
    for (std::size_t i = 0; i < trace.size(); ++i) out[i] = std::sqrt(trace[i]);
    return Waveform(trace.grid(), std::move(out));
}

}  // namespace slowlight
