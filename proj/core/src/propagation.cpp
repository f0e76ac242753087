#include "slowlight/propagation.hpp"

#include <cmath>

namespace slowlight {

Channel::Channel(AmplitudeSource amplitude, std::optional<EitMedium> phase)
    : amplitude_(std::move(amplitude)), phase_(std::move(phase)) {}

double Channel::transmission(double detuning) const {
    if (const auto* m = std::get_if<EitMedium>(&amplitude_)) {
        return slowlight::transmission(*m, detuning);
    }
    return std::get<MeasuredTransmission>(amplitude_).lookup(detuning);
}

Complex Channel::response(double detuning) const {
    double amplitude = 0.0;
    if (const auto* m = std::get_if<EitMedium>(&amplitude_)) {
        amplitude = amplitude_response(*m, detuning);
    } else {
        amplitude = std::sqrt(std::get<MeasuredTransmission>(amplitude_).lookup(detuning));
    }
    if (!phase_) return amplitude;
    return std::polar(amplitude, -phase_response(*phase_, detuning));
}

std::vector<double> Channel::transmission_on(const SamplingGrid& grid) const {
    std::vector<double> out(grid.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = transmission(grid.detuning(k));
    return out;
}

Spectrum apply_response(const Spectrum& s, const FrequencyResponse& h) {
    std::vector<Complex> out(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) out[k] = s[k] * h(s.detuning(k));
    return Spectrum(s.grid(), std::move(out));
}

Spectrum propagate_spectrum(const Spectrum& s_in, const Channel& ch) {
    return apply_response(s_in, [&ch](double d) { return ch.response(d); });
}

double edge_energy_fraction(const Waveform& w) {
    const std::size_t n = w.size();
    const std::size_t edge = std::max<std::size_t>(1, n / 20);
    double total = 0.0;
    double outer = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = std::norm(w[i]);
        total += e;
        if (i < edge || i >= n - edge) outer += e;
    }
    return total > 0.0 ? outer / total : 0.0;
}

Propagation propagate_waveform(const Waveform& w, const Channel& ch) {
    Waveform out = idft(propagate_spectrum(dft(w), ch));
    const double edge = edge_energy_fraction(out);
    return Propagation{std::move(out), edge};
}

}  // namespace slowlight
