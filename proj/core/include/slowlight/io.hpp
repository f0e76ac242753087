#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "slowlight/medium.hpp"
#include "slowlight/signal.hpp"
#include "slowlight/spectral.hpp"

namespace slowlight::io {

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

// Time-domain traces: `time_s,value`, uniform spacing checked to 1e-6 of dt.
void write_trace(std::ostream& os, const IntensityTrace& trace);
IntensityTrace read_trace(std::istream& is, std::string_view source = "<stream>");

// Complex spectra: `detuning_hz,re,im`.
void write_spectrum(std::ostream& os, const Spectrum& s);
Spectrum read_spectrum(std::istream& is, std::string_view source = "<stream>");

/// Real per-bin profile on the grid's detuning lattice, header
/// `detuning_hz,<column>` (e.g. `intensity` or `intensity_gain`).
void write_profile(std::ostream& os, const SamplingGrid& grid, std::span<const double> values,
                   std::string_view column);

// Measured transmission: `detuning_hz,transmission`. When no extrapolation
// value is given, the smaller endpoint transmission is used.
void write_transmission(std::ostream& os, const MeasuredTransmission& t);
MeasuredTransmission read_transmission(std::istream& is,
                                       std::optional<double> extrapolation = std::nullopt,
                                       std::string_view source = "<stream>");

// Path wrappers; open failures throw Error(Io).
void write_trace(const std::filesystem::path& path, const IntensityTrace& trace);
IntensityTrace read_trace(const std::filesystem::path& path);
void write_spectrum(const std::filesystem::path& path, const Spectrum& s);
Spectrum read_spectrum(const std::filesystem::path& path);
void write_profile(const std::filesystem::path& path, const SamplingGrid& grid,
                   std::span<const double> values, std::string_view column);
void write_transmission(const std::filesystem::path& path, const MeasuredTransmission& t);
MeasuredTransmission read_transmission(const std::filesystem::path& path,
                                       std::optional<double> extrapolation = std::nullopt);

}  // namespace slowlight::io
