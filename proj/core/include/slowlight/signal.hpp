#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace slowlight {

using Complex = std::complex<double>;

/// Uniform time lattice t_i = t_start + i*dt, i in [0, n).
///
/// The conjugate detuning lattice is centered on the carrier:
/// detuning(k) = (k - n/2) * df with df = 1/(n*dt), so bin n/2 is zero
/// detuning and the lattice spans [-1/(2dt), 1/(2dt)).
class SamplingGrid {
public:
    /// Throws Error(Validation) unless n >= 8 is a power of two and dt > 0.
    SamplingGrid(std::size_t n, double dt, double t_start);

    /// Grid whose sample n/2 falls exactly on `center`.
    static SamplingGrid centered(std::size_t n, double dt, double center);

    std::size_t size() const noexcept { return n_; }
    double dt() const noexcept { return dt_; }
    double t_start() const noexcept { return t_start_; }
    double window() const noexcept { return static_cast<double>(n_) * dt_; }
    double df() const noexcept { return 1.0 / window(); }

    double time(std::size_t i) const noexcept { return t_start_ + static_cast<double>(i) * dt_; }
    double detuning(std::size_t k) const noexcept {
        return (static_cast<double>(k) - static_cast<double>(n_ / 2)) * df();
    }

    std::vector<double> times() const;
    std::vector<double> detunings() const;

    bool operator==(const SamplingGrid&) const = default;

private:
    std::size_t n_;
    double dt_;
    double t_start_;
};

/// Complex field amplitude samples e(t) on a grid.
class Waveform {
public:
    Waveform(SamplingGrid grid, std::vector<Complex> samples);

    const SamplingGrid& grid() const noexcept { return grid_; }
    std::span<const Complex> samples() const noexcept { return samples_; }
    std::size_t size() const noexcept { return samples_.size(); }
    const Complex& operator[](std::size_t i) const { return samples_[i]; }

    /// Sum |e|^2 dt.
    double energy() const;

private:
    SamplingGrid grid_;
    std::vector<Complex> samples_;
};

/// Nonnegative intensity samples I(t) on a grid.
class IntensityTrace {
public:
    /// Throws Error(Validation) on any negative or non-finite sample.
    IntensityTrace(SamplingGrid grid, std::vector<double> samples);

    const SamplingGrid& grid() const noexcept { return grid_; }
    std::span<const double> samples() const noexcept { return samples_; }
    std::size_t size() const noexcept { return samples_.size(); }
    double operator[](std::size_t i) const { return samples_[i]; }

private:
    SamplingGrid grid_;
    std::vector<double> samples_;
};

enum class PulseKind { Gaussian, Amg };

/// Probe pulse parameters. Intensity envelope exp[-(ln2)(t-center)^2/t0^2],
/// times [1 + mod_depth*cos(2*pi*mod_freq*(t-center))]^2 for AMG pulses.
///
/// Note that the intensity FWHM of this envelope is 2*t0. Use the
/// *_from_intensity_fwhm factories when the pulse is specified by its
/// measured duration instead.
struct PulseSpec {
    PulseKind kind = PulseKind::Gaussian;
    double t0 = 0.0;         // s
    double mod_depth = 0.0;  // A, AMG only
    double mod_freq = 0.0;   // delta, Hz, AMG only
    double center = 0.0;     // s

    static PulseSpec gaussian(double t0, double center = 0.0);
    static PulseSpec amg(double t0, double depth, double mod_freq, double center = 0.0);
    static PulseSpec gaussian_from_intensity_fwhm(double fwhm, double center = 0.0);
    static PulseSpec amg_from_intensity_fwhm(double fwhm, double depth, double mod_freq,
                                             double center = 0.0);

    /// Throws Error(Validation) naming the offending field.
    void validate() const;

    /// Intensity-spectrum FWHM of the Gaussian envelope, ln2/(pi*t0).
    double spectral_fwhm() const;
};

/// Grid sized for `spec`: df <= spectral_fwhm/8 (snapped so mod_freq is a
/// whole number of bins), Nyquist >= 8*(mod_freq + spectral_fwhm), window
/// at least 16*t0, pulse center on sample n/2.
SamplingGrid default_grid(const PulseSpec& spec);

/// Throws Error(Numeric) unless [center - 4 t0, center + 4 t0] fits in the grid.
Waveform synth_gaussian(const PulseSpec& spec, const SamplingGrid& grid);
Waveform synth_amg(const PulseSpec& spec, const SamplingGrid& grid);
Waveform synth(const PulseSpec& spec, const SamplingGrid& grid);

IntensityTrace intensity_of(const Waveform& w);
Waveform amplitude_from_intensity(const IntensityTrace& trace);

}  // namespace slowlight
