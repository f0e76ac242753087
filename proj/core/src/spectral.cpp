#include "slowlight/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "slowlight/error.hpp"

namespace slowlight {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Bin k of the centered lattice sits (k - n/2) bins from the carrier, so
// exp(-i 2 pi (k - n/2) m / n) = (-1)^m exp(-i 2 pi k m / n): the recentering
// is a sign flip of the time samples, no index shuffle needed.
double alternating_sign(std::size_t m) { return (m & 1U) ? -1.0 : 1.0; }

}  // namespace

Spectrum::Spectrum(SamplingGrid grid, std::vector<Complex> samples)
    : grid_(grid), samples_(std::move(samples)) {
    if (samples_.size() != grid_.size()) {
        fail_validation("spectrum: bin count " + std::to_string(samples_.size()) +
                        " does not match grid size " + std::to_string(grid_.size()));
    }
}

double Spectrum::energy() const {
    double sum = 0.0;
    for (const auto& s : samples_) sum += std::norm(s);
    return sum * grid_.df();
}

void fft_in_place(std::span<Complex> data, bool inverse) {
    const std::size_t n = data.size();
    if (n == 0 || !std::has_single_bit(n)) {
        fail_validation("fft: size must be a power of two, got " + std::to_string(n));
    }

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }

    // Twiddles evaluated directly rather than by recurrence to keep the
    // round-trip error at the 1e-15 level for n in the tens of thousands.
    const double sign = inverse ? 1.0 : -1.0;
    std::vector<Complex> twiddle(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
        twiddle[k] = std::polar(1.0, sign * kTwoPi * static_cast<double>(k) / static_cast<double>(n));
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t stride = n / len;
        for (std::size_t start = 0; start < n; start += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const Complex u = data[start + k];
                const Complex v = data[start + k + half] * twiddle[k * stride];
                data[start + k] = u + v;
                data[start + k + half] = u - v;
            }
        }
    }
}

Spectrum dft(const Waveform& w) {
    const SamplingGrid& grid = w.grid();
    const std::size_t n = grid.size();
    std::vector<Complex> buf(n);
    for (std::size_t m = 0; m < n; ++m) buf[m] = w[m] * alternating_sign(m);
    fft_in_place(buf, false);
    for (std::size_t k = 0; k < n; ++k) {
        const double phase = -kTwoPi * grid.detuning(k) * grid.t_start();
        buf[k] *= std::polar(grid.dt(), phase);
    }
    return Spectrum(grid, std::move(buf));
}

Waveform idft(const Spectrum& s) {
    const SamplingGrid& grid = s.grid();
    const std::size_t n = grid.size();
    std::vector<Complex> buf(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double phase = kTwoPi * grid.detuning(k) * grid.t_start();
        buf[k] = s[k] * std::polar(1.0, phase);
    }
    fft_in_place(buf, true);
    const double df = grid.df();
    for (std::size_t m = 0; m < n; ++m) buf[m] *= df * alternating_sign(m);
    return Waveform(grid, std::move(buf));
}

Waveform time_shift(const Waveform& w, double tau) {
    Spectrum s = dft(w);
    std::vector<Complex> shifted(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
        shifted[k] = s[k] * std::polar(1.0, -kTwoPi * s.detuning(k) * tau);
    }
    return idft(Spectrum(s.grid(), std::move(shifted)));
}

std::vector<double> intensity_spectrum(const Spectrum& s) {
    std::vector<double> out(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) out[k] = std::norm(s[k]);
    return out;
}

double spectral_half_width(double t0) { return std::numbers::ln2 / (kTwoPi * t0); }

double amg_spectrum_closed_form(double t0, double a, double delta_mod, double detuning) {
    const double omega0 = spectral_half_width(t0);
    const auto component = [omega0](double d) {
        return std::exp(-std::numbers::ln2 * d * d / (omega0 * omega0));
    };
    return component(detuning) +
           a * a / 4.0 * (component(detuning - delta_mod) + component(detuning + delta_mod));
}

Spectrum band_extract(const Spectrum& s, double lo, double hi) {
    if (!(lo < hi)) fail_validation("band_extract: lower edge must be below upper edge");
    std::vector<Complex> out(s.samples().begin(), s.samples().end());
    for (std::size_t k = 0; k < out.size(); ++k) {
        const double d = s.detuning(k);
        if (!(d >= lo && d < hi)) out[k] = 0.0;
    }
    return Spectrum(s.grid(), std::move(out));
}

AmgBands AmgBands::canonical(double delta_mod) {
    const double h = delta_mod / 2.0;
    return AmgBands{{-3.0 * h, -h}, {-h, h}, {h, 3.0 * h}};
}

double fwhm(std::span<const double> axis, std::span<const double> values, double baseline) {
    if (axis.size() != values.size() || values.size() < 3) {
        fail_validation("fwhm: axis and values must have equal length >= 3");
    }
    const auto peak_it = std::max_element(values.begin(), values.end());
    const std::size_t k = static_cast<std::size_t>(peak_it - values.begin());
    const double half = (*peak_it + baseline) / 2.0;

    const auto cross = [&](std::size_t below, std::size_t above) {
        const double t = (half - values[below]) / (values[above] - values[below]);
        return axis[below] + t * (axis[above] - axis[below]);
    };

    std::optional<double> left;
    for (std::size_t i = k; i > 0; --i) {
        if (values[i - 1] <= half) {
            left = cross(i - 1, i);
            break;
        }
    }
    std::optional<double> right;
    for (std::size_t i = k; i + 1 < values.size(); ++i) {
        if (values[i + 1] <= half) {
            right = cross(i + 1, i);
            break;
        }
    }
    if (!left || !right) {
        fail_numeric("fwhm: curve never drops to half maximum on the " +
                     std::string(!left ? "left" : "right") + " side (truncated by window?)");
    }
    return *right - *left;
}

double peak_location(std::span<const double> axis, std::span<const double> values) {
    if (values.empty() || axis.size() != values.size()) {
        fail_validation("peak_location: axis and values must be nonempty and equal length");
    }
    const auto it = std::max_element(values.begin(), values.end());
    const std::size_t k = static_cast<std::size_t>(it - values.begin());
    if (k == 0 || k + 1 == values.size()) return axis[k];

    const double a = values[k - 1];
    const double b = values[k];
    const double c = values[k + 1];
    const double curvature = a - 2.0 * b + c;
    if (!(curvature < 0.0)) return axis[k];
    const double offset = 0.5 * (a - c) / curvature;
    return axis[k] + offset * 0.5 * (axis[k + 1] - axis[k - 1]);
}

}  // namespace slowlight
