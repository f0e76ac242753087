#include "slowlight/medium.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "slowlight/error.hpp"

namespace slowlight {

namespace {

std::string describe(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

// D^2 / (D^2 + G^2), the absorbed fraction of the optical depth.
double absorbed_fraction(double detuning, double gamma) {
    const double d2 = detuning * detuning;
    return d2 / (d2 + gamma * gamma);
}

}  // namespace

EitMedium::EitMedium(double gamma_eit, double z, double scale)
    : gamma_eit_(gamma_eit), z_(z), scale_(scale) {
    if (!(gamma_eit > 0.0) || !std::isfinite(gamma_eit)) {
        fail_validation("medium.gamma_eit: must be positive, got " + describe(gamma_eit));
    }
    if (!(z >= 0.0) || !std::isfinite(z)) {
        fail_validation("medium.z: must be >= 0, got " + describe(z));
    }
    if (!(scale > 0.0 && scale <= 1.0)) {
        fail_validation("medium.scale: must be in (0, 1], got " + describe(scale));
    }
}

EitMedium EitMedium::from_coupling(double omega_rabi, double gamma_ground, double z,
                                   double scale) {
    if (!(omega_rabi > 0.0) || !(gamma_ground > 0.0)) {
        fail_validation("medium: omega_rabi and gamma_ground must be positive");
    }
    EitMedium m(omega_rabi * omega_rabi / gamma_ground, z, scale);
    m.omega_rabi_ = omega_rabi;
    m.gamma_ground_ = gamma_ground;
    return m;
}

Complex transfer_function(const EitMedium& m, double detuning) {
    const Complex denom(detuning, -m.gamma_eit());
    return std::sqrt(m.scale()) * std::exp(-detuning * m.z() / denom);
}

double amplitude_response(const EitMedium& m, double detuning) {
    return std::sqrt(m.scale()) * std::exp(-m.z() * absorbed_fraction(detuning, m.gamma_eit()));
}

double phase_response(const EitMedium& m, double detuning) {
    const double g = m.gamma_eit();
    return detuning * m.z() * g / (detuning * detuning + g * g);
}

double transmission(const EitMedium& m, double detuning) {
    return m.scale() * std::exp(-2.0 * m.z() * absorbed_fraction(detuning, m.gamma_eit()));
}

double group_delay(const EitMedium& m, double detuning) {
    const double g2 = m.gamma_eit() * m.gamma_eit();
    const double d2 = detuning * detuning;
    const double s = d2 + g2;
    return m.z() * m.gamma_eit() * (g2 - d2) / (s * s) / (2.0 * std::numbers::pi);
}

EitMedium calibrate_from_transmission(double peak, double background, double fwhm) {
    if (!(peak > 0.0 && peak <= 1.0)) {
        fail_validation("calibrate.peak: must be in (0, 1], got " + describe(peak));
    }
    if (!(background > 0.0)) {
        fail_validation("calibrate.background: must be positive, got " + describe(background));
    }
    if (!(background < peak)) {
        fail_validation("calibrate.background: must be below peak (no transparency window), got " +
                        describe(background) + " >= " + describe(peak));
    }
    if (!(fwhm > 0.0) || !std::isfinite(fwhm)) {
        fail_validation("calibrate.fwhm: must be positive, got " + describe(fwhm));
    }

    const double ratio = background / peak;  // exp(-2Z)
    const double z = -0.5 * std::log(ratio);
    // exp(-2 Z x) = (1 + ratio)/2 at the half points.
    const double x = -std::log1p((ratio - 1.0) / 2.0) / (2.0 * z);
    const double gamma = 0.5 * fwhm * std::sqrt((1.0 - x) / x);
    return EitMedium(gamma, z, peak);
}

MeasuredTransmission::MeasuredTransmission(std::vector<TransmissionPoint> points,
                                           double extrapolation_value)
    : points_(std::move(points)), extrapolation_(extrapolation_value) {
    if (points_.size() < 4) {
        fail_validation("transmission: need at least 4 points, got " +
                        std::to_string(points_.size()));
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const auto& p = points_[i];
        if (!std::isfinite(p.detuning)) {
            fail_validation("transmission: detuning at row " + std::to_string(i) + " is not finite");
        }
        if (!(p.transmission >= 0.0 && p.transmission <= 1.0)) {
            fail_validation("transmission: value at row " + std::to_string(i) +
                            " outside [0, 1]: " + describe(p.transmission));
        }
        if (i > 0 && !(p.detuning > points_[i - 1].detuning)) {
            fail_validation("transmission: detunings must be strictly increasing (row " +
                            std::to_string(i) + ")");
        }
    }
    if (!(extrapolation_ >= 0.0 && extrapolation_ <= 1.0)) {
        fail_validation("transmission.extrapolation: must be in [0, 1], got " +
                        describe(extrapolation_));
    }
}

double MeasuredTransmission::lookup(double detuning) const {
    if (detuning < points_.front().detuning || detuning > points_.back().detuning) {
        return extrapolation_;
    }
    const auto hi = std::upper_bound(
        points_.begin(), points_.end(), detuning,
        [](double d, const TransmissionPoint& p) { return d < p.detuning; });
    if (hi == points_.end()) return std::clamp(points_.back().transmission, 0.0, 1.0);
    const auto lo = hi - 1;
    const double t = (detuning - lo->detuning) / (hi->detuning - lo->detuning);
    const double v = lo->transmission + t * (hi->transmission - lo->transmission);
    return std::clamp(v, 0.0, 1.0);
}

}  // namespace slowlight
