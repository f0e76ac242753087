#pragma once

#include <optional>
#include <span>
#include <vector>

#include "slowlight/signal.hpp"

namespace slowlight {

/// Complex amplitude spectrum E(detuning) on the conjugate lattice of a grid,
/// bin n/2 being the carrier (zero detuning).
class Spectrum {
public:
    Spectrum(SamplingGrid grid, std::vector<Complex> samples);

    const SamplingGrid& grid() const noexcept { return grid_; }
    std::span<const Complex> samples() const noexcept { return samples_; }
    std::size_t size() const noexcept { return samples_.size(); }
    const Complex& operator[](std::size_t k) const { return samples_[k]; }
    double detuning(std::size_t k) const noexcept { return grid_.detuning(k); }

    /// Sum |E|^2 df.
    double energy() const;

private:
    SamplingGrid grid_;
    std::vector<Complex> samples_;
};

/// In-place radix-2 FFT, exp(-i 2 pi k n / N) when `inverse` is false,
/// exp(+i ...) otherwise. Unnormalized. Size must be a power of two.
void fft_in_place(std::span<Complex> data, bool inverse);

/// E(D_k) = sum_n e(t_n) exp(-i 2 pi D_k t_n) dt, absolute time reference.
Spectrum dft(const Waveform& w);

/// e(t_n) = sum_k E(D_k) exp(+i 2 pi D_k t_n) df. Exact inverse of dft.
Waveform idft(const Spectrum& s);

/// Circular shift by +tau (delay) through the shift theorem,
/// idft(dft(w) * exp(-i 2 pi D tau)).
Waveform time_shift(const Waveform& w, double tau);

/// |E(D)|^2 per bin.
std::vector<double> intensity_spectrum(const Spectrum& s);

/// Half width of the Gaussian intensity spectrum in
/// exp[-(ln2) D^2 / omega0^2], i.e. ln2/(2 pi t0). Its FWHM is 2*omega0.
double spectral_half_width(double t0);

/// Three-Gaussian AMG intensity spectrum relative to the carrier peak:
/// I1(D) + (a^2/4)[I1(D - delta_mod) + I1(D + delta_mod)]. Cross terms between
/// components are dropped, so this is only accurate for delta_mod >> omega0.
double amg_spectrum_closed_form(double t0, double a, double delta_mod, double detuning);

/// Copy of `s` with every bin outside [lo, hi) zeroed. Throws unless lo < hi.
Spectrum band_extract(const Spectrum& s, double lo, double hi);

struct Band {
    double lo;
    double hi;
};

/// Canonical AMG split at the midpoints between the carrier and sidebands.
struct AmgBands {
    Band left;
    Band carrier;
    Band right;

    static AmgBands canonical(double delta_mod);
};

/// Full width at half maximum around the global maximum of `values`, with
/// crossings located by linear interpolation. The half level is
/// (peak + baseline)/2. Throws Error(Numeric) if either side never crosses.
double fwhm(std::span<const double> axis, std::span<const double> values,
            double baseline = 0.0);

/// Global maximum refined by a three-point parabola through its neighbours.
/// Falls back to the raw sample at the array ends or on a flat top.
double peak_location(std::span<const double> axis, std::span<const double> values);

}  // namespace slowlight
