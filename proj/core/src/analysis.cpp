#include "slowlight/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "slowlight/error.hpp"

namespace slowlight {

namespace {

// Sideband energy below this fraction means the spectrum is not AMG-shaped.
constexpr double kMinSidebandEnergy = 1e-6;

// Energy trimmed from each tail when picking the shape-comparison support.
constexpr double kSupportTail = 0.005;

void check_transmission(std::span<const double> transmission, std::size_t bins) {
    if (transmission.size() != bins) {
        fail_validation("compensation: transmission has " + std::to_string(transmission.size()) +
                        " bins, spectrum has " + std::to_string(bins));
    }
    for (std::size_t k = 0; k < transmission.size(); ++k) {
        if (!(transmission[k] >= 0.0 && transmission[k] <= 1.0)) {
            fail_validation("compensation: transmission at bin " + std::to_string(k) +
                            " outside [0, 1]");
        }
    }
}

std::vector<double> unit_peak_intensity(const Waveform& w) {
    std::vector<double> out(w.size());
    double peak = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        out[i] = std::norm(w[i]);
        peak = std::max(peak, out[i]);
    }
    if (peak > 0.0) {
        for (double& v : out) v /= peak;
    }
    return out;
}

double peak_time(const Waveform& w) {
    const std::vector<double> t = w.grid().times();
    const IntensityTrace i = intensity_of(w);
    return peak_location(t, i.samples());
}

}  // namespace

void CompensationConfig::validate() const {
    if (!(floor > 0.0 && floor < 1.0)) {
        std::ostringstream os;
        os << "compensation.floor: must be in (0, 1), got " << floor;
        fail_validation(os.str());
    }
}

std::vector<double> compensate_intensity_spectrum(std::span<const double> i_out,
                                                  std::span<const double> transmission,
                                                  const CompensationConfig& cfg) {
    cfg.validate();
    check_transmission(transmission, i_out.size());
    std::vector<double> out(i_out.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = i_out[k] / std::max(transmission[k], cfg.floor);
    }
    return out;
}

Waveform recover_waveform(const Spectrum& s_out, std::span<const double> transmission,
                          const CompensationConfig& cfg) {
    cfg.validate();
    check_transmission(transmission, s_out.size());
    const double amplitude_floor = std::sqrt(cfg.floor);
    std::vector<Complex> comp(s_out.size());
    for (std::size_t k = 0; k < comp.size(); ++k) {
        comp[k] = s_out[k] / std::max(std::sqrt(transmission[k]), amplitude_floor);
    }
    return idft(Spectrum(s_out.grid(), std::move(comp)));
}

std::vector<double> export_gain_spectrum(std::span<const double> transmission,
                                         const CompensationConfig& cfg) {
    cfg.validate();
    check_transmission(transmission, transmission.size());
    std::vector<double> gain(transmission.size());
    for (std::size_t k = 0; k < gain.size(); ++k) {
        gain[k] = 1.0 / std::max(transmission[k], cfg.floor);
    }
    return gain;
}

ComponentDecomposition decompose_components(const Spectrum& s_out, const Spectrum& s_in,
                                            double delta_mod) {
    if (!(s_out.grid() == s_in.grid())) {
        fail_validation("decompose: input and output spectra are on different grids");
    }
    if (!(delta_mod > 0.0)) fail_validation("decompose: modulation frequency must be positive");

    const AmgBands bands = AmgBands::canonical(delta_mod);
    const double total = s_in.energy();
    for (const Band& b : {bands.left, bands.right}) {
        const double e = band_extract(s_in, b.lo, b.hi).energy();
        if (!(total > 0.0) || e < kMinSidebandEnergy * total) {
            fail_validation("decompose: sideband band holds too little energy; not an AMG pulse");
        }
    }

    Waveform reference = idft(band_extract(s_in, bands.carrier.lo, bands.carrier.hi));
    Waveform carrier = idft(band_extract(s_out, bands.carrier.lo, bands.carrier.hi));
    Waveform left = idft(band_extract(s_out, bands.left.lo, bands.left.hi));
    Waveform right = idft(band_extract(s_out, bands.right.lo, bands.right.hi));

    const double t_ref = peak_time(reference);
    const double carrier_delay = peak_time(carrier) - t_ref;
    const double left_delay = peak_time(left) - t_ref;
    const double right_delay = peak_time(right) - t_ref;
    return ComponentDecomposition{std::move(reference), std::move(carrier), std::move(left),
                                  std::move(right),     carrier_delay,      left_delay,
                                  right_delay};
}

PulseMetrics measure_metrics(const Waveform& out, const Waveform& input) {
    if (!(out.grid() == input.grid())) {
        fail_validation("metrics: output and input are on different grids");
    }
    const double e_in = input.energy();
    if (!(e_in > 0.0)) fail_validation("metrics: input pulse has no energy");

    const std::vector<double> t = input.grid().times();
    const IntensityTrace i_out = intensity_of(out);

    PulseMetrics m;
    m.delay = peak_time(out) - peak_time(input);
    m.loss = 1.0 - out.energy() / e_in;
    m.fwhm_time = fwhm(t, i_out.samples());

    const std::vector<double> ref = unit_peak_intensity(input);
    const std::vector<double> aligned = unit_peak_intensity(time_shift(out, -m.delay));

    double total = 0.0;
    for (double v : ref) total += v;
    double cumulative = 0.0;
    double sum_sq = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
        cumulative += ref[i];
        const double frac = cumulative / total;
        if (frac < kSupportTail || frac > 1.0 - kSupportTail) continue;
        const double d = aligned[i] - ref[i];
        sum_sq += d * d;
        ++count;
    }
    m.nrmse = count > 0 ? std::sqrt(sum_sq / static_cast<double>(count)) : 0.0;
    return m;
}

}  // namespace slowlight
