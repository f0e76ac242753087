#pragma once

#include <optional>
#include <vector>

#include "slowlight/signal.hpp"

namespace slowlight {

/// Single-window EIT channel
///
///   H(D) = sqrt(scale) * exp[-D Z / (D - i G)]
///        = A(D) exp(-i Phi(D)),
///   A(D)   = sqrt(scale) * exp[-D^2 Z / (D^2 + G^2)],
///   Phi(D) = D Z G / (D^2 + G^2),
///
/// with detuning D and half-linewidth G both in Hz. `scale` is the peak
/// intensity transmission; far from resonance the intensity transmission
/// falls to scale * exp(-2Z).
class EitMedium {
public:
    /// Throws Error(Validation) unless gamma_eit > 0, z >= 0, 0 < scale <= 1.
    EitMedium(double gamma_eit, double z, double scale = 1.0);

    /// G = omega_rabi^2 / gamma_ground; both rates are kept on the medium.
    static EitMedium from_coupling(double omega_rabi, double gamma_ground, double z,
                                   double scale = 1.0);

    double gamma_eit() const noexcept { return gamma_eit_; }
    double z() const noexcept { return z_; }
    double scale() const noexcept { return scale_; }
    std::optional<double> omega_rabi() const noexcept { return omega_rabi_; }
    std::optional<double> gamma_ground() const noexcept { return gamma_ground_; }

private:
    double gamma_eit_;
    double z_;
    double scale_;
    std::optional<double> omega_rabi_;
    std::optional<double> gamma_ground_;
};

Complex transfer_function(const EitMedium& m, double detuning);
double amplitude_response(const EitMedium& m, double detuning);
double phase_response(const EitMedium& m, double detuning);

/// Intensity transmission A(D)^2.
double transmission(const EitMedium& m, double detuning);

/// (1/2pi) dPhi/dD in seconds. Positive is delay, negative advancement;
/// changes sign at |D| = G.
double group_delay(const EitMedium& m, double detuning);

/// Medium whose transmission has the given peak, far-detuned background and
/// full width at (peak + background)/2. Throws Error(Validation) if
/// background >= peak, background <= 0, peak > 1 or fwhm <= 0.
EitMedium calibrate_from_transmission(double peak, double background, double fwhm);

struct TransmissionPoint {
    double detuning;      // Hz
    double transmission;  // intensity, [0, 1]
};

/// Tabulated intensity transmission with linear interpolation inside the
/// table and a fixed value outside it.
class MeasuredTransmission {
public:
    /// Throws Error(Validation) on fewer than 4 points, non-increasing
    /// detunings, or values outside [0, 1].
    MeasuredTransmission(std::vector<TransmissionPoint> points, double extrapolation_value);

    const std::vector<TransmissionPoint>& points() const noexcept { return points_; }
    double extrapolation_value() const noexcept { return extrapolation_; }

    double lookup(double detuning) const;

private:
    std::vector<TransmissionPoint> points_;
    double extrapolation_;
};

inline double transmission_lookup(const MeasuredTransmission& t, double detuning) {
    return t.lookup(detuning);
}

}  // namespace slowlight
