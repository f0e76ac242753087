#pragma once

#include <span>
#include <vector>

#include "slowlight/propagation.hpp"
#include "slowlight/spectral.hpp"

namespace slowlight {

enum class TransmissionSource { Model, Measured };

/// Spectral compensation settings. Bins whose transmission is below `floor`
/// are amplified by at most 1/floor.
struct CompensationConfig {
    double floor = 1e-3;
    TransmissionSource source = TransmissionSource::Model;

    void validate() const;
};

struct PulseMetrics {
    double delay = 0.0;      // s, peak-to-peak; negative is advancement
    double loss = 0.0;       // fraction of input energy lost
    double nrmse = 0.0;      // unit-peak shape error after peak alignment
    double fwhm_time = 0.0;  // s, around the highest peak of the output
};

/// i_out / max(transmission, floor), bin-wise.
std::vector<double> compensate_intensity_spectrum(std::span<const double> i_out,
                                                  std::span<const double> transmission,
                                                  const CompensationConfig& cfg);

/// Field-level compensation E_out / max(sqrt(T), sqrt(floor)), keeping the
/// propagated phase, transformed back to the time domain.
Waveform recover_waveform(const Spectrum& s_out, std::span<const double> transmission,
                          const CompensationConfig& cfg);

/// Intensity gain 1 / max(T, floor) an amplifier would need to undo the
/// channel loss bin by bin.
std::vector<double> export_gain_spectrum(std::span<const double> transmission,
                                         const CompensationConfig& cfg);

struct ComponentDecomposition {
    Waveform reference;  // carrier band of the input
    Waveform carrier;
    Waveform left;
    Waveform right;
    double carrier_delay = 0.0;  // s, each measured against the reference peak
    double left_delay = 0.0;
    double right_delay = 0.0;
};

/// Splits the output spectrum of an AMG pulse at AmgBands::canonical(delta_mod)
/// and times each component against the carrier band of the input.
/// Throws Error(Validation) if either sideband band of `s_in` holds less
/// than 1e-6 of its energy.
ComponentDecomposition decompose_components(const Spectrum& s_out, const Spectrum& s_in,
                                            double delta_mod);

/// Delay, loss, shape error and width of `out` relative to `input`.
///
/// The shape error compares both intensities scaled to unit peak, with the
/// output shifted back by the measured delay, over the span holding the
/// central 99% of the input energy.
PulseMetrics measure_metrics(const Waveform& out, const Waveform& input);

}  // namespace slowlight
