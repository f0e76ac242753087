#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "slowlight/medium.hpp"
#include "slowlight/spectral.hpp"

namespace slowlight {

/// Linear channel assembled from an amplitude source and an optional phase
/// source. Measured tables hold intensity transmission, so their field
/// response is sqrt(T). Without a phase source the channel is a zero-phase
/// filter, which is only meaningful for compensation studies.
class Channel {
public:
    using AmplitudeSource = std::variant<EitMedium, MeasuredTransmission>;

    Channel(AmplitudeSource amplitude, std::optional<EitMedium> phase);

    /// Amplitude and phase both from `m`.
    static Channel analytic(const EitMedium& m) { return Channel(m, m); }
    static Channel amplitude_only(const EitMedium& m) { return Channel(m, std::nullopt); }
    /// Measured amplitude with the model phase of `phase` (if any).
    static Channel hybrid(MeasuredTransmission t, std::optional<EitMedium> phase) {
        return Channel(std::move(t), std::move(phase));
    }

    const AmplitudeSource& amplitude_source() const noexcept { return amplitude_; }
    const std::optional<EitMedium>& phase_source() const noexcept { return phase_; }

    Complex response(double detuning) const;
    /// Intensity transmission |H|^2.
    double transmission(double detuning) const;
    /// transmission() on every bin of the grid's detuning lattice.
    std::vector<double> transmission_on(const SamplingGrid& grid) const;

private:
    AmplitudeSource amplitude_;
    std::optional<EitMedium> phase_;
};

using FrequencyResponse = std::function<Complex(double detuning)>;

/// Bin-wise product s(D_k) * h(D_k).
Spectrum apply_response(const Spectrum& s, const FrequencyResponse& h);

Spectrum propagate_spectrum(const Spectrum& s_in, const Channel& ch);

/// Output energy allowed in the outer 5% at either end of the window before
/// the circular-wrap warning trips.
inline constexpr double kEdgeEnergyLimit = 1e-6;

struct Propagation {
    Waveform output;
    /// Fraction of output energy in the outer 5% of the window at each end.
    double edge_energy_fraction = 0.0;

    bool wrap_warning() const noexcept { return edge_energy_fraction > kEdgeEnergyLimit; }
};

/// Fraction of energy sitting in the first and last 5% of the window.
double edge_energy_fraction(const Waveform& w);

/// idft(propagate_spectrum(dft(w), ch)), plus the wrap diagnostic.
Propagation propagate_waveform(const Waveform& w, const Channel& ch);

}  // namespace slowlight
